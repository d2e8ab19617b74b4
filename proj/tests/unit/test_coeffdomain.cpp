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

#include <random>

#include "core/coeffdomain.hpp"
#include "doctest.h"

using namespace smfp;

namespace {

BigInt binom(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

TEST_CASE("bernoulli: frozen table") {
  CHECK(bernoulli(0) == BigRational(1));
  CHECK(bernoulli(1) == BigRational(BigInt(-1), BigInt(2)));
  CHECK(bernoulli(2) == BigRational(BigInt(1), BigInt(6)));
  CHECK(bernoulli(4) == BigRational(BigInt(-1), BigInt(30)));
  CHECK(bernoulli(6) == BigRational(BigInt(1), BigInt(42)));
  CHECK(bernoulli(10) == BigRational(BigInt(5), BigInt(66)));
  CHECK(bernoulli(12) == BigRational(BigInt(-691), BigInt(2730)));
  CHECK(bernoulli(30) == BigRational(BigInt("8615841276005"), BigInt(14322)));
}

TEST_CASE("bernoulli: recurrence holds") {
  std::vector<BigRational> b;
  for (int n = 0; n <= 40; ++n) b.push_back(n > 1 && n % 2 ? BigRational(0) : bernoulli(n));
  for (int n = 1; n <= 40; ++n) {
    BigRational s(0);
    for (int k = 0; k <= n; ++k) s += BigRational(binom(n + 1, k)) * b[static_cast<std::size_t>(k)];
    CHECK(s.is_zero());
  }
}

TEST_CASE("bernoulli: odd index rejected") {
  try {
    bernoulli(7);
    FAIL("expected BernoulliOddIndex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BernoulliOddIndex);
  }
}

TEST_CASE("rational: lowest terms and rendering") {
  const BigRational q(BigInt(10), BigInt(-4));
  CHECK(q.to_string() == "-5/2");
  CHECK(BigRational(3).to_string() == "3/1");
  CHECK(BigRational::parse("6/8") == BigRational(BigInt(3), BigInt(4)));
  CHECK(BigRational::parse("-7") == BigRational(-7));
  CHECK_THROWS_AS(BigRational::parse("1/0"), Error);
  CHECK_THROWS_AS(BigRational::parse("abc"), Error);
}

TEST_CASE("reduce_mod_p: examples") {
  CHECK(reduce_mod_p(BigRational(BigInt(5), BigInt(66)), 5).residue() == 0);
  CHECK(reduce_mod_p(BigRational(1), 11).residue() == 1);
  CHECK(reduce_mod_p(BigRational(BigInt(-1), BigInt(30)), 7).residue() == 3);
  try {
    reduce_mod_p(BigRational(BigInt(1), BigInt(10)), 5);
    FAIL("expected NonIntegralAtP");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegralAtP);
  }
}

TEST_CASE("reduce_mod_p is a ring homomorphism") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 60);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (int t = 0; t < 200; ++t) {
      long d1 = den(rng), d2 = den(rng);
      if (d1 % p == 0) ++d1;
      if (d2 % p == 0) ++d2;
      const BigRational x(BigInt(num(rng)), BigInt(d1)), y(BigInt(num(rng)), BigInt(d2));
      CHECK(reduce_mod_p(x + y, p) == reduce_mod_p(x, p) + reduce_mod_p(y, p));
      CHECK(reduce_mod_p(x * y, p) == reduce_mod_p(x, p) * reduce_mod_p(y, p));
    }
  }
}

TEST_CASE("prime field: exhaustive axioms for p <= 7") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::uint32_t a = 0; a < p; ++a) {
      const FpElement x(a, p);
      CHECK(x + FpElement(0, p) == x);
      CHECK(x * FpElement(1, p) == x);
      CHECK(x + (-x) == FpElement(0, p));
      if (a) CHECK(x * x.inverse() == FpElement(1, p));
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c) {
          const FpElement y(b, p), z(c, p);
          CHECK((x + y) + z == x + (y + z));
          CHECK((x * y) * z == x * (y * z));
          CHECK(x * (y + z) == x * y + x * z);
          CHECK(x * y == y * x);
        }
    }
  }
  for (std::uint32_t p : {11u, 13u})
    for (std::uint32_t a = 1; a < p; ++a) CHECK(FpElement(a, p).pow(p - 1) == FpElement(1, p));
}

TEST_CASE("prime field: invalid moduli") {
  CHECK_THROWS_AS(FpElement(1, 2), Error);
  CHECK_THROWS_AS(FpElement(1, 9), Error);
  CHECK_THROWS_AS(CoeffDomain::prime_field(15), Error);
  CHECK(FpElement(-1, 7).residue() == 6);
  CHECK(CoeffDomain::parse("Fp:13") == CoeffDomain::prime_field(13));
  CHECK(CoeffDomain::parse("Q").is_rational());
  CHECK_THROWS_AS(CoeffDomain::parse("Fp:4"), Error);
}
