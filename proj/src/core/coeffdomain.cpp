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

#include "core/coeffdomain.hpp"

#include <vector>

namespace smfp {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::NonIntegralAtP: return "NonIntegralAtP";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::OddCharacteristic: return "OddCharacteristic";
    case ErrorCode::WeightInfeasible: return "WeightInfeasible";
    case ErrorCode::ScaleModulusClash: return "ScaleModulusClash";
    case ErrorCode::NotThetaDecomposable: return "NotThetaDecomposable";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::BernoulliOddIndex: return "BernoulliOddIndex";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

// --- BigRational -------------------------------------------------------------

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRational BigRational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, "malformed rational '" + text + "'");
  }
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

std::string BigRational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

// --- F_p ---------------------------------------------------------------------

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FpElement::FpElement(std::int64_t value, std::uint32_t p) : p_(p) {
  if (p == 2 || !is_prime(p))
    fail(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not an odd prime");
  const std::int64_t r = value % static_cast<std::int64_t>(p);
  residue_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

FpElement operator+(FpElement a, FpElement b) {
  return FpElement(FpElement::Raw{}, static_cast<std::uint32_t>((std::uint64_t{a.residue_} + b.residue_) % a.p_), a.p_);
}

FpElement operator-(FpElement a, FpElement b) { return a + (-b); }

FpElement operator-(FpElement a) {
  return FpElement(FpElement::Raw{}, a.residue_ == 0 ? 0 : a.p_ - a.residue_, a.p_);
}

FpElement operator*(FpElement a, FpElement b) {
  return FpElement(FpElement::Raw{}, static_cast<std::uint32_t>(std::uint64_t{a.residue_} * b.residue_ % a.p_), a.p_);
}

FpElement FpElement::pow(std::uint64_t e) const {
  FpElement result(Raw{}, 1 % p_, p_);
  FpElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FpElement FpElement::inverse() const {
  if (residue_ == 0) fail(ErrorCode::InvalidArgument, "inverse of zero in F_p");
  return pow(p_ - 2);
}

CoeffDomain CoeffDomain::prime_field(std::uint32_t p) {
  if (p == 2 || !is_prime(p))
    fail(ErrorCode::InvalidArgument, "prime field requires an odd prime, got " + std::to_string(p));
  return CoeffDomain(Kind::PrimeField, p);
}

std::string CoeffDomain::to_string() const {
  return is_rational() ? "Q" : "Fp:" + std::to_string(p_);
}

CoeffDomain CoeffDomain::parse(const std::string& text) {
  if (text == "Q") return rational();
  if (text.rfind("Fp:", 0) == 0) {
    try {
      std::size_t used = 0;
      const unsigned long p = std::stoul(text.substr(3), &used);
      if (used == text.size() - 3 && p < (1ul << 31)) return prime_field(static_cast<std::uint32_t>(p));
    } catch (const std::exception&) {
    }
  }
  fail(ErrorCode::ParseError, "unknown coefficient domain '" + text + "'");
}

std::string to_string(const Coefficient& c) {
  if (const auto* q = std::get_if<BigRational>(&c)) return q->to_string();
  return std::to_string(std::get<FpElement>(c).residue());
}

// --- Bernoulli numbers and reduction ----------------------------------------

BigRational bernoulli(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "Bernoulli index must be nonnegative");
  if (n > 1 && n % 2 == 1)
    fail(ErrorCode::BernoulliOddIndex,
         "B_" + std::to_string(n) + " is zero by convention, request rejected to avoid convention bugs");
  // sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1.
  std::vector<BigRational> b(static_cast<std::size_t>(n) + 1);
  b[0] = BigRational(1);
  for (int m = 1; m <= n; ++m) {
    BigRational acc;
    BigInt binom = 1;  // C(m+1, k), advanced incrementally
    for (int k = 0; k < m; ++k) {
      acc += BigRational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / BigRational(m + 1);
  }
  return b[n];
}

std::uint32_t residue_mod(const BigInt& x, std::uint32_t p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

FpElement reduce_mod_p(const BigRational& x, std::uint32_t p) {
  const BigInt den = x.denominator();
  if (mpz_divisible_ui_p(den.get_mpz_t(), p))
    fail(ErrorCode::NonIntegralAtP, x.to_string() + " has p = " + std::to_string(p) + " in its denominator");
  return FpElement(residue_mod(x.numerator(), p), p) * FpElement(residue_mod(den, p), p).inverse();
}

}  // namespace smfp
