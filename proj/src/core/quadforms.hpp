// Copyright 2026 The smfp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Index set of q-expansions: half-integral symmetric matrices T, stored as
// the integer matrix M = 2dT at a denominator scale d. The diagonal of M is
// always even, so T has diagonal in (1/d)Z and off-diagonal in (1/2d)Z.
// At d = 1 these are exactly the classical half-integral matrices, and M
// holds the exponents of q^T = prod q_ii^{T_ii} prod_{i<j} q_ij^{2T_ij}.

#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "core/coeffdomain.hpp"

namespace smfp {

class HalfIntegralForm {
 public:
  /// Upper triangle of M, row-major: M11, M12, ..., M1g, M22, ..., Mgg.
  using Entries = boost::container::small_vector<std::int64_t, 6>;

  HalfIntegralForm() : HalfIntegralForm(1, 1, Entries{0}) {}
  HalfIntegralForm(int genus, std::int64_t scale, Entries upper);

  /// Builds from a full symmetric matrix; rejects asymmetric input.
  static HalfIntegralForm from_rows(std::int64_t scale,
                                    std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static HalfIntegralForm from_matrix(int genus, std::int64_t scale, const std::vector<std::int64_t>& full);
  static HalfIntegralForm zero(int genus, std::int64_t scale);

  int genus() const { return genus_; }
  std::int64_t scale() const { return scale_; }
  std::int64_t at(int i, int j) const;
  const Entries& upper() const { return upper_; }
  std::vector<std::int64_t> full_matrix() const;

  bool is_zero() const;
  /// trace(M) = 2d * trace(T).
  std::int64_t trace_scaled() const;
  BigRational trace() const;
  BigInt det_scaled() const;
  /// det(T) = det(M) / (2d)^g.
  BigRational det() const;

  /// Same T at a finer scale; new_scale must be a multiple of scale().
  HalfIntegralForm rescaled(std::int64_t new_scale) const;
  /// Smallest scale dividing scale() at which T is representable.
  std::int64_t minimal_scale() const;

  /// k divides every entry of M.
  bool entries_divisible_by(std::int64_t k) const;
  HalfIntegralForm times(std::int64_t k) const;
  HalfIntegralForm divided_by(std::int64_t k) const;

  /// Drops the last row and column.
  HalfIntegralForm leading_block() const;

  /// "g;d;M11,M12,...,Mgg".
  std::string render() const;
  static HalfIntegralForm parse(const std::string& text);

  friend HalfIntegralForm operator+(const HalfIntegralForm& a, const HalfIntegralForm& b);
  friend bool operator==(const HalfIntegralForm& a, const HalfIntegralForm& b) {
    return a.genus_ == b.genus_ && a.scale_ == b.scale_ && a.upper_ == b.upper_;
  }
  /// Canonical order: genus, scale, trace, then lexicographic on the upper
  /// triangle. Within one series (fixed genus and scale) this is "by trace,
  /// then lexicographic on M".
  friend std::strong_ordering operator<=>(const HalfIntegralForm& a, const HalfIntegralForm& b);

  std::size_t hash() const noexcept;

 private:
  static std::size_t index(int genus, int i, int j);
  int genus_;
  std::int64_t scale_;
  Entries upper_;
};

struct FormHash {
  std::size_t operator()(const HalfIntegralForm& f) const noexcept { return f.hash(); }
};

/// All principal minors of M are nonnegative.
bool is_psd(const HalfIntegralForm& t);

class UnimodularMatrix {
 public:
  /// Row-major entries; throws InvalidArgument unless det = +-1.
  UnimodularMatrix(int genus, std::vector<std::int64_t> entries);
  UnimodularMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static UnimodularMatrix identity(int genus);

  int genus() const { return genus_; }
  std::int64_t at(int i, int j) const { return entries_[static_cast<std::size_t>(i * genus_ + j)]; }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::int64_t det() const;

  UnimodularMatrix inverse() const;
  friend UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b);
  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

 private:
  int genus_;
  std::vector<std::int64_t> entries_;
};

/// T -> tU T U at the same scale.
HalfIntegralForm act(const UnimodularMatrix& u, const HalfIntegralForm& t);

struct Reduction {
  HalfIntegralForm form;
  UnimodularMatrix witness;  // act(witness, input) == form
};

/// GL(2,Z) reduction of a psd binary form to 0 <= 2 M12 <= M11 <= M22.
Reduction reduce_g2(const HalfIntegralForm& t);

/// All psd forms at scale d with trace(T) <= bound, in canonical order.
std::vector<HalfIntegralForm> enumerate(int genus, std::int64_t bound, std::int64_t scale);

/// All g x g matrices with entries in [-max_entry, max_entry] and det +-1.
std::vector<UnimodularMatrix> unimodular_box(int genus, std::int64_t max_entry);

}  // namespace smfp
