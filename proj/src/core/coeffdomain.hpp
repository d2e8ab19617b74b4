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

// Exact coefficient arithmetic: big integers and rationals (GMP-backed),
// prime fields F_p for odd p, Bernoulli numbers and reduction Q -> F_p.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "core/error.hpp"

namespace smfp {

using BigInt = mpz_class;

/// Rational number kept in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  explicit BigRational(const BigInt& n) : v_(n) {}
  BigRational(const BigInt& num, const BigInt& den);

  /// Parses "n" or "n/d".
  static BigRational parse(const std::string& text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Always "num/den", also for integers.
  std::string to_string() const;

  const mpq_class& raw() const { return v_; }

  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.v_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit BigRational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  mpq_class v_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Element of F_p, p an odd prime.
class FpElement {
 public:
  FpElement(std::int64_t value, std::uint32_t p);

  std::uint32_t residue() const { return residue_; }
  std::uint32_t modulus() const { return p_; }

  FpElement inverse() const;
  FpElement pow(std::uint64_t e) const;

  friend FpElement operator+(FpElement a, FpElement b);
  friend FpElement operator-(FpElement a, FpElement b);
  friend FpElement operator*(FpElement a, FpElement b);
  friend FpElement operator-(FpElement a);
  friend bool operator==(FpElement a, FpElement b) = default;

 private:
  struct Raw {};
  FpElement(Raw, std::uint32_t r, std::uint32_t p) : residue_(r), p_(p) {}
  std::uint32_t residue_;
  std::uint32_t p_;
};

class CoeffDomain {
 public:
  enum class Kind { ExactRational, PrimeField };

  static CoeffDomain rational() { return CoeffDomain(Kind::ExactRational, 0); }
  /// Throws InvalidArgument unless p is an odd prime.
  static CoeffDomain prime_field(std::uint32_t p);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::ExactRational; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  /// 0 for the rational domain.
  std::uint32_t modulus() const { return p_; }

  /// "Q" or "Fp:<p>", the spelling used in series file headers.
  std::string to_string() const;
  static CoeffDomain parse(const std::string& text);

  friend bool operator==(const CoeffDomain&, const CoeffDomain&) = default;

 private:
  CoeffDomain(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

/// A single coefficient as seen from outside a series.
using Coefficient = std::variant<BigRational, FpElement>;
std::string to_string(const Coefficient& c);

/// B_n with B_1 = -1/2. Odd n > 1 is rejected with BernoulliOddIndex.
BigRational bernoulli(int n);

/// numerator * denominator^{-1} mod p; NonIntegralAtP when p | denominator.
FpElement reduce_mod_p(const BigRational& x, std::uint32_t p);

/// Residue of an integer modulo p in [0, p).
std::uint32_t residue_mod(const BigInt& x, std::uint32_t p);

// --- Ring policies used by the sparse series kernels -----------------------

struct RationalRing {
  using value_type = BigRational;
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type from_int(long n) const { return BigRational(n); }
  void add_to(value_type& acc, const value_type& a) const { acc += a; }
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
};

struct IntegerRing {
  using value_type = BigInt;
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type from_int(long n) const { return BigInt(n); }
  void add_to(value_type& acc, const value_type& a) const { acc += a; }
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
};

/// Residues in [0, p) stored as plain integers; the modulus lives in the ring.
struct PrimeFieldRing {
  using value_type = std::uint32_t;
  std::uint32_t p;

  bool is_zero(value_type a) const { return a == 0; }
  value_type from_int(long n) const {
    const long r = n % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
  void add_to(value_type& acc, value_type a) const {
    acc = static_cast<value_type>((static_cast<std::uint64_t>(acc) + a) % p);
  }
  void add_mul(value_type& acc, value_type a, value_type b) const {
    acc = static_cast<value_type>((acc + static_cast<std::uint64_t>(a) * b) % p);
  }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
};

}  // namespace smfp
