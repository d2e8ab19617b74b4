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

#include "core/generators.hpp"
#include "core/operators.hpp"
#include "core/structure.hpp"
#include "core/suites.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace smfp;
using namespace smfp::testing;

namespace {

std::map<G1Monomial, BigRational> nonzero(const std::map<G1Monomial, BigRational>& m) {
  std::map<G1Monomial, BigRational> out;
  for (const auto& [k, v] : m)
    if (!v.is_zero()) out.emplace(k, v);
  return out;
}

BigRational frac(long n, long d) { return BigRational(BigInt(n), BigInt(d)); }

}  // namespace

TEST_CASE("p-singularity and p-th roots") {
  const auto d5 = reduce_series(delta_g1(40), 5);
  CHECK_FALSE(is_p_singular(d5));
  const auto v = op_V(d5.truncated(8));
  CHECK(is_p_singular(v));
  const auto root = p_root(v, 60);
  CHECK(root.r == 0);
  CHECK(root.kprime == 12);
  CHECK(root.h == d5.truncated(8));

  // A^r h^p with r > 0: the weight label alone decides r.
  const auto a = hasse_series(1, 5, 20);
  const auto f = mul(pow(a, 2), op_V(d5.truncated(4), 20));
  const auto r2 = p_root(f.with_weight(Weight(68)), 68);
  CHECK(r2.r == 2);
  CHECK(r2.kprime == 12);

  CHECK(code_of([&] { p_root(d5, 12); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { p_root(v, 12); }) == ErrorCode::WeightMismatch);
  const auto low = QSeries::constant(1, CoeffDomain::prime_field(5), Weight(2), 10, 1);
  CHECK(code_of([&] { p_root(low, 2); }) == ErrorCode::WeightInfeasible);
  const auto clash = QSeries::zero(2, CoeffDomain::prime_field(5), Weight{}, 2, 5);
  CHECK(code_of([&] { is_p_singular(clash); }) == ErrorCode::ScaleModulusClash);
}

TEST_CASE("weight congruence") {
  CHECK(weight_congruence(4, 8, 5));
  CHECK(weight_congruence(12, 0, 7));
  CHECK_FALSE(weight_congruence(4, 6, 5));
  CHECK(weight_congruence(2, 12, 11));
}

TEST_CASE("genus-1 generators: monomials and solve") {
  CHECK(g1_monomials(12).size() == 2);
  CHECK(g1_monomials(2).empty());
  CHECK(g1_monomials(0).size() == 1);
  CHECK(g1_monomials(24).size() == 3);
  CHECK(nonzero(express_in_generators_g1(eisenstein_g1(10, 4), 10)) ==
        std::map<G1Monomial, BigRational>{{{1, 1}, BigRational(1)}});
  CHECK(nonzero(express_in_generators_g1(delta_g1(6), 12)) ==
        std::map<G1Monomial, BigRational>{{{3, 0}, frac(1, 1728)}, {{0, 2}, frac(-1, 1728)}});
  CHECK(nonzero(express_in_generators_g1(eisenstein_g1(12, 6), 12)) ==
        std::map<G1Monomial, BigRational>{{{3, 0}, frac(441, 691)}, {{0, 2}, frac(250, 691)}});
  CHECK(code_of([] { express_in_generators_g1(delta_g1(1), 12); }) == ErrorCode::InsufficientPrecision);
  const auto bogus = QSeries::from_rational(1, Weight(12), 6, 1, {{g1(1), BigRational(1)}});
  CHECK(code_of([&] { express_in_generators_g1(bogus, 12); }) == ErrorCode::NoSolution);
}

TEST_CASE("irreducibility of A - 1") {
  const std::map<std::uint32_t, std::string> hasse = {{5, "x4"}, {7, "x6"}, {11, "x4*x6"}};
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const auto r = irreducibility_search_g1(p);
    CHECK(r.irreducible);
    if (hasse.count(p)) CHECK(render(r.hasse) == hasse.at(p));
  }
  CHECK(code_of([] { irreducibility_search_g1(3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("(**) solver") {
  // Nondegenerate forms at p = 5 and 7: only S = 0.
  for (std::uint32_t p : {5u, 7u})
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          if ((a * c + p * p - b * b % p) % p != 0) CHECK(star_star_solver(p, {a, b, c}).empty());
  // Zero form: no constraint at all.
  CHECK(star_star_solver(5, {0, 0, 0}).size() == 3);
  // Hyperbolic plane at p = 3: diag(1, -1) survives.
  const auto sols = star_star_solver(3, {0, 1, 0});
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == Sym2{2, 0, 1});  // 2 * diag(1, -1)
  // Rank one: empty space as well.
  for (std::uint32_t p : {3u, 5u, 7u})
    for (const auto& t : rank1_classify(p, 1)) CHECK(star_star_solver(p, t).empty());
}

TEST_CASE("rank-one classification") {
  const auto r = rank1_classify(5, 2);
  CHECK(r.size() == 5);
  CHECK(r[0] == Sym2{0, 0, 2});
  for (std::uint32_t p : {3u, 5u, 7u, 11u})
    for (std::uint32_t nu = 1; nu < p; ++nu) CHECK(rank1_classify(p, nu).size() == p);
  for (const auto& t : r) CHECK((t[0] * t[2] + 25 - t[1] * t[1] % 5) % 5 == 0);
  CHECK(code_of([] { rank1_classify(3, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("equivariance") {
  Rng rng(3);
  const auto eta = random_equivariant_series(rng, 5, 4);
  const auto box = unimodular_box(2, 1);
  CHECK(equivariance_check(eta, box));
  MatrixQSeries bad(2, 5, 3, 1, {{g2(2, 0, 4), SymMatrixFp(2, 5, {1, 0, 0})}});
  CHECK_FALSE(equivariance_check(bad, box));
}

TEST_CASE("T(p) on integral lifts") {
  CHECK_FALSE(tp_equals_v_check(delta_g1(30), 5, 12));
  CHECK(tp_equals_u_check(delta_g1(30), 5, 12));
  CHECK(tp_equals_v_check(eisenstein_g1(4, 30), 5, 4));
  CHECK(tp_equals_u_check(eisenstein_g1(4, 30), 5, 4));
}
