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
#include "doctest.h"
#include "helpers.hpp"

using namespace smfp;
using namespace smfp::testing;

TEST_CASE("U and V: genus-1 examples") {
  const auto e4 = reduce_series(eisenstein_g1(4, 12), 5);
  OperatorLog log;
  const auto u = op_U(e4, &log);
  CHECK(u.bound() == 2);
  CHECK(log.to_string() == "op=U k_in=4/1 k_out=4/1 B_in=12 B_out=2");
  CHECK(fcoef(u, g1(1)) == fcoef(e4, g1(5)));
  CHECK(fcoef(u, g1(2)) == fcoef(e4, g1(10)));

  const auto v = op_V(e4.truncated(3), std::nullopt, &log);
  CHECK(v.bound() == 15);
  CHECK(v.weight() == Weight(20));
  CHECK(fcoef(v, g1(5)) == fcoef(e4, g1(1)));
  CHECK(fcoef(v, g1(6)) == 0);
  CHECK(op_V(e4, 20).bound() == 20);
  CHECK(op_U(op_V(e4)) == e4.with_weight(Weight(20)));
  CHECK(code_of([] { op_U(eisenstein_g1(4, 3)); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("V equals p-th power over F_p") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto f = reduce_series(delta_g1(3), p);
    CHECK(op_V(f, f.bound()) == pow(f, p));
  }
}

TEST_CASE("U: genus-2 example") {
  const auto f = QSeries::from_residues(2, 3, Weight(2), 6, 1,
                                        {{g2(6, 3, 6), 1}, {g2(2, 1, 2), 2}, {g2(6, 0, 0), 4}});
  const auto u = op_U(f);
  CHECK(u.bound() == 2);
  CHECK(fcoef(u, g2(2, 1, 2)) == 1);
  CHECK(fcoef(u, g2(2, 0, 0)) == 1);
  CHECK(u.size() == 2);
}

TEST_CASE("Phi: keeps the boundary row") {
  const auto f = QSeries::from_rational(2, Weight(4), 3, 1,
                                        {{g2(0, 0, 0), BigRational(1)},
                                         {g2(2, 0, 0), BigRational(5)},
                                         {g2(2, 1, 2), BigRational(7)},
                                         {g2(0, 0, 2), BigRational(9)}});
  const auto g = op_phi(f);
  CHECK(g.genus() == 1);
  CHECK(g.size() == 2);
  CHECK(qcoef(g, g1(1)) == BigRational(5));
  CHECK(code_of([&] { op_phi(g); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Hecke: Delta and E4 are eigenforms") {
  const auto d = delta_g1(20);
  const auto t2 = hecke_Tl_g1(d, 2, 12);
  CHECK(t2.bound() == 10);
  CHECK(eq_upto(t2, scalar_mul(d, BigRational(-24)).truncated(10), 10));
  const auto t3 = hecke_Tl_g1(d, 3, 12);
  CHECK(eq_upto(t3, scalar_mul(d, BigRational(252)).truncated(6), 6));
  const auto e4 = eisenstein_g1(4, 12);
  CHECK(eq_upto(hecke_Tl_g1(e4, 3, 4), scalar_mul(e4, BigRational(1 + 27)).truncated(4), 4));
  CHECK(code_of([&] { hecke_Tl_g1(reduce_series(d, 5), 5, 12); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { hecke_Tl_g1(d, 4, 12); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { hecke_Tl_g1(d, 2, 10); }) == ErrorCode::WeightMismatch);
}

TEST_CASE("Cartier: example") {
  MatrixQSeries eta(2, 3, 6, 1,
                    {{g2(6, 3, 6), SymMatrixFp(2, 3, {1, 0, 2})}, {g2(2, 1, 2), SymMatrixFp(2, 3, {1, 1, 1})}});
  const auto c = cartier(eta);
  CHECK(c.bound() == 2);
  CHECK(c.size() == 1);
  CHECK(c.coefficient(g2(2, 1, 2)) == SymMatrixFp(2, 3, {1, 0, 2}));
}

TEST_CASE("theta operators") {
  const auto f = QSeries::from_residues(2, 5, Weight(4), 5, 1, {{g2(4, 1, 6), 1}});
  // T = [[2, 1/2], [1/2, 3]], det 23/4.
  CHECK(fcoef(op_theta_det(f), g2(4, 1, 6)) == reduce_mod_p(BigRational(BigInt(23), BigInt(4)), 5).residue());
  const auto m = op_theta_matrix(f);
  const auto half = reduce_mod_p(BigRational(BigInt(1), BigInt(2)), 5).residue();
  CHECK(m.coefficient(g2(4, 1, 6)) == SymMatrixFp(2, 5, {2, half, 3}));
  const auto q = QSeries::from_rational(2, Weight{}, 5, 1, {{g2(4, 1, 6), BigRational(2)}});
  CHECK(qcoef(op_theta_det(q), g2(4, 1, 6)) == BigRational(BigInt(23), BigInt(2)));
  const auto clash = QSeries::from_residues(2, 5, Weight{}, 1, 5, {{g2(2, 1, 2, 5), 1}});
  CHECK(code_of([&] { op_theta_det(clash); }) == ErrorCode::ScaleModulusClash);
  CHECK(code_of([&] { op_theta_matrix(clash); }) == ErrorCode::ScaleModulusClash);
}

TEST_CASE("Fourier-Jacobi slice, theta decomposition and embedding") {
  const auto chi = chi10_prop(6);
  for (std::int64_t nu = 1; nu <= 3; ++nu) {
    const auto slice = fourier_jacobi(chi, nu);
    CHECK(slice.t0_bound == 6 - nu);
    const auto comps = theta_decompose(slice);
    const auto back = embed(comps, slice.t0_bound);
    // The embedding is the full orbit, so it only contains keys with t0 <= t0_bound.
    for (const auto& [k, v] : slice.coeffs)
      if (k.first <= 2 * slice.t0_bound) CHECK(back.coeffs.at(k) == v);
    for (const auto& [k, v] : back.coeffs) CHECK(slice.coeffs.at(k) == v);
  }
  JacobiSlice one;
  one.index = 1;
  one.coeffs = {{{2, 1}, BigRational(5)}};  // (t0, t1) = (1, 1/2)
  const auto oc = theta_decompose(one);
  REQUIRE(oc.components.count(1) == 1);
  CHECK(oc.components.at(1).count(3) == 1);
  JacobiSlice bad;
  bad.index = 1;
  bad.coeffs = {{{2, 1}, BigRational(1)}, {{2, -1}, BigRational(2)}};
  CHECK(code_of([&] { theta_decompose(bad); }) == ErrorCode::NotThetaDecomposable);
  const auto s = slice_to_series(fourier_jacobi(chi, 1), 6, chi.weight());
  CHECK(s.size() == fourier_jacobi(chi, 1).coeffs.size());
}

TEST_CASE("theta f_a and the derivative identity") {
  const auto f = theta_fa(1, 1, 0, 3);
  CHECK(f.scale() == 4);
  CHECK(f.weight() == Weight(1, 2));
  for (std::int64_t nu = 1; nu <= 3; ++nu)
    for (std::int64_t a = -nu; a <= nu; ++a)
      CHECK(verify_theta_identity({3, -1, 2}, a, nu, 6));
  CHECK(code_of([] { theta_fa(0, 0, 0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { theta_fa(1, 0, 3, 1); }) == ErrorCode::InvalidArgument);
}
