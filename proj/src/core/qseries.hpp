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

// Truncated Fourier expansions sum_T a(T) q^T over psd half-integral T.
//
// A series knows its trace bound B: every coefficient with trace(T) <= B is
// exact, nothing beyond B is stored. Because trace is additive, products
// truncate consistently at min(B_f, B_g). Zero coefficients are never stored.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core/coeffdomain.hpp"
#include "core/quadforms.hpp"

namespace smfp {

/// Modular weight; denominators 1 or 2 (theta constants have weight 1/2).
class Weight {
 public:
  Weight() = default;
  Weight(long num, long den = 1);  // NOLINT(google-explicit-constructor)

  long num() const { return num_; }
  long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  /// "num/den".
  std::string to_string() const;
  static Weight parse(const std::string& text);

  friend Weight operator+(Weight a, Weight b);
  friend Weight operator*(Weight a, long k);
  friend bool operator==(Weight, Weight) = default;

 private:
  long num_ = 0;
  long den_ = 1;
};

template <class V>
using Terms = std::vector<std::pair<HalfIntegralForm, V>>;

class QSeries {
 public:
  using RationalTerms = Terms<BigRational>;
  using ResidueTerms = Terms<std::uint32_t>;

  QSeries() : QSeries(1, CoeffDomain::rational(), Weight{}, 0, 1, RationalTerms{}) {}

  /// Validating factories. Keys must be psd, of the given genus and scale,
  /// with trace <= bound; zero values are dropped.
  static QSeries from_rational(int genus, Weight weight, std::int64_t bound, std::int64_t scale,
                               const std::map<HalfIntegralForm, BigRational>& coeffs);
  static QSeries from_residues(int genus, std::uint32_t p, Weight weight, std::int64_t bound, std::int64_t scale,
                               const std::map<HalfIntegralForm, std::int64_t>& coeffs);
  static QSeries constant(int genus, CoeffDomain domain, Weight weight, std::int64_t bound, long value);
  static QSeries zero(int genus, CoeffDomain domain, Weight weight, std::int64_t bound, std::int64_t scale = 1);

  /// Unchecked factories for kernels that already produce sorted, nonzero,
  /// in-bound terms.
  static QSeries adopt(int genus, Weight weight, std::int64_t bound, std::int64_t scale, RationalTerms terms);
  static QSeries adopt(int genus, std::uint32_t p, Weight weight, std::int64_t bound, std::int64_t scale,
                       ResidueTerms terms);

  int genus() const { return genus_; }
  const CoeffDomain& domain() const { return domain_; }
  Weight weight() const { return weight_; }
  std::int64_t bound() const { return bound_; }
  std::int64_t scale() const { return scale_; }
  /// Largest admissible trace(M) = 2 d B.
  std::int64_t max_trace_scaled() const { return 2 * scale_ * bound_; }

  std::size_t size() const;
  bool is_zero() const { return size() == 0; }
  std::vector<HalfIntegralForm> support() const;

  /// Coefficient at t (rescaled to this series' scale when t is coarser).
  /// InsufficientPrecision when trace(t) exceeds the bound.
  Coefficient coefficient(const HalfIntegralForm& t) const;

  const RationalTerms& rational_terms() const;
  const ResidueTerms& residue_terms() const;

  QSeries with_weight(Weight w) const;
  QSeries truncated(std::int64_t bound) const;
  QSeries rescaled(std::int64_t scale) const;
  /// Same series at the smallest scale that represents every key.
  QSeries compacted() const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  QSeries(int genus, CoeffDomain domain, Weight weight, std::int64_t bound, std::int64_t scale,
          std::variant<RationalTerms, ResidueTerms> terms)
      : genus_(genus), domain_(domain), weight_(weight), bound_(bound), scale_(scale), terms_(std::move(terms)) {}

  int genus_;
  CoeffDomain domain_;
  Weight weight_;
  std::int64_t bound_;
  std::int64_t scale_;
  std::variant<RationalTerms, ResidueTerms> terms_;
};

/// Symmetric g x g matrix over F_p, stored as its upper triangle.
class SymMatrixFp {
 public:
  SymMatrixFp(int genus, std::uint32_t p);
  SymMatrixFp(int genus, std::uint32_t p, std::vector<std::uint32_t> upper);

  int genus() const { return genus_; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t at(int i, int j) const;
  void set(int i, int j, std::int64_t value);
  const std::vector<std::uint32_t>& upper() const { return upper_; }
  bool is_zero() const;

  /// tU S U with U reduced mod p.
  SymMatrixFp congruent(const UnimodularMatrix& u) const;

  friend SymMatrixFp operator+(const SymMatrixFp& a, const SymMatrixFp& b);
  friend bool operator==(const SymMatrixFp&, const SymMatrixFp&) = default;

 private:
  int genus_;
  std::uint32_t p_;
  std::vector<std::uint32_t> upper_;
};

/// Expansion with symmetric-matrix coefficients over F_p: the coefficient
/// a(T) pairs with dlog(q) as Trace(a(T) dlog q) q^T.
class MatrixQSeries {
 public:
  MatrixQSeries(int genus, std::uint32_t p, std::int64_t bound, std::int64_t scale,
                const std::map<HalfIntegralForm, SymMatrixFp>& coeffs, Weight weight = Weight{});

  int genus() const { return genus_; }
  std::uint32_t modulus() const { return p_; }
  std::int64_t bound() const { return bound_; }
  std::int64_t scale() const { return scale_; }
  Weight weight() const { return weight_; }
  std::int64_t max_trace_scaled() const { return 2 * scale_ * bound_; }
  const Terms<SymMatrixFp>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Zero matrix when t is not stored.
  SymMatrixFp coefficient(const HalfIntegralForm& t) const;

  friend bool operator==(const MatrixQSeries&, const MatrixQSeries&) = default;

 private:
  int genus_;
  std::uint32_t p_;
  std::int64_t bound_;
  std::int64_t scale_;
  Weight weight_;
  Terms<SymMatrixFp> terms_;
};

/// Index-nu Fourier-Jacobi coefficient of a genus-2 series. Keys are
/// (M11, M12) of the form [[t0, t1], [t1, nu]] at the slice's scale d.
struct JacobiSlice {
  std::int64_t index = 1;
  CoeffDomain domain = CoeffDomain::rational();
  std::int64_t scale = 1;
  /// Every t0 <= t0_bound is complete.
  std::int64_t t0_bound = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, Coefficient> coeffs;

  friend bool operator==(const JacobiSlice&, const JacobiSlice&) = default;
};

/// Theta decomposition of a slice: component r collects the coefficients
/// along the orbit t1 -> t1 + g*nu, keyed by the discriminant.
/// At scale d: r = M12 mod 2*nu*d and D = 2*nu*d*M11 - M12^2; at d = 1 these
/// are r = 2 t1 mod 2 nu and D = 4 nu t0 - (2 t1)^2.
struct ThetaComponents {
  std::int64_t index = 1;
  CoeffDomain domain = CoeffDomain::rational();
  std::int64_t scale = 1;
  std::map<std::int64_t, std::map<std::int64_t, Coefficient>> components;

  friend bool operator==(const ThetaComponents&, const ThetaComponents&) = default;
};

/// Graded element as an explicit list of homogeneous pieces (e.g. A - 1).
struct GradedElement {
  std::vector<QSeries> components;
};

// --- Ring operations ----------------------------------------------------------

/// Coefficient-wise sum; WeightMismatch unless weights agree.
QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);
QSeries negate(const QSeries& f);
QSeries scalar_mul(const QSeries& f, const BigRational& c);
/// Convolution; weight adds, bound = min.
QSeries mul(const QSeries& f, const QSeries& g);
QSeries pow(const QSeries& f, unsigned n);
/// Coefficient-wise reduce_mod_p; NonIntegralAtP names the offending key.
QSeries reduce_series(const QSeries& f, std::uint32_t p);
/// Agreement on every key with trace <= bound; InsufficientPrecision when
/// bound exceeds either series' bound.
bool eq_upto(const QSeries& f, const QSeries& g, std::int64_t bound);
/// Image of a graded element in the ungraded power-series ring; the
/// result carries weight label 0.
QSeries q_expansion(const GradedElement& element);

// --- Serialization ------------------------------------------------------------

std::string serialize(const QSeries& f);
std::string serialize(const MatrixQSeries& f);
using AnySeries = std::variant<QSeries, MatrixQSeries>;
/// ParseError with a line number on malformed input.
AnySeries deserialize(const std::string& text);

/// Human-readable coefficient table up to a trace limit.
std::string format_table(const AnySeries& series, std::int64_t max_trace);

}  // namespace smfp
