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


// Verification algorithms: p-singularity and p-th roots, weight
// congruences, the genus-1 generator solve and the irreducibility search for
// A - 1, and the finite-field constraint solvers of the vanishing argument.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/qseries.hpp"

namespace smfp {

/// "p | T" is read as: p divides every entry of M = 2dT. Needs p coprime to 2d.
bool is_p_singular(const QSeries& f);

struct PRoot {
  long r = 0;
  long kprime = 0;
  QSeries h;
};

/// f = A^r h^p with k = r(p - 1) + p kprime, 0 <= r <= p - 1.
PRoot p_root(const QSeries& f, long k);

bool weight_congruence(long k1, long k2, std::uint32_t p);

/// Exponents (a, b) of E4^a E6^b.
using G1Monomial = std::pair<int, int>;
std::vector<G1Monomial> g1_monomials(long k);
/// Coefficients of f in the monomials of weight k; NoSolution when none fit.
std::map<G1Monomial, BigRational> express_in_generators_g1(const QSeries& f, long k);

/// Element of F_p[x4, x6] graded by weight, one coefficient map per weight.
using GradedPoly = std::map<long, std::map<G1Monomial, std::uint32_t>>;
std::string render(const GradedPoly& f);

struct IrreducibilityResult {
  std::uint32_t p = 0;
  bool irreducible = true;
  /// Hasse invariant in F_p[x4, x6].
  GradedPoly hasse;
  std::vector<std::pair<long, long>> splits;
  std::uint64_t assignments = 0;
  GradedPoly factor_f;
  GradedPoly factor_g;
};

/// Exhaustive search for A - 1 = F G in F_p[x4, x6] with F_0 = 1, G_0 = -1.
IrreducibilityResult irreducibility_search_g1(std::uint32_t p);

/// Symmetric 2x2 matrix over F_p as (s11, s12, s22).
using Sym2 = std::array<std::uint32_t, 3>;

/// Basis (reduced echelon) of {S : tv S v = 0 whenever tv Tbar v != 0}.
std::vector<Sym2> star_star_solver(std::uint32_t p, const Sym2& tbar);

/// Every symmetric Tbar of rank <= 1 with Tbar22 = nu, i.e. [[x^2 nu, x nu], [x nu, nu]].
std::vector<Sym2> rank1_classify(std::uint32_t p, std::uint32_t nu);

/// a(tU T U) = tU a(T) U for all in-bound pairs, and a(0) = 0.
bool equivariance_check(const MatrixQSeries& eta, const std::vector<UnimodularMatrix>& us);

/// Every component key D gives the q11 exponent n / M with n = D M / (4 nu d^2);
/// true iff p | n throughout.
bool section_p_singularity_check(const ThetaComponents& components, std::uint32_t p, std::int64_t level_scale);

/// Classical T(p) on an integral lift, reduced mod p, against V of the reduction.
bool tp_equals_v_check(const QSeries& lift, std::uint32_t p, long k);
/// Same T(p) image against U of the reduction.
bool tp_equals_u_check(const QSeries& lift, std::uint32_t p, long k);

}  // namespace smfp
