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

// Operators on expansions: U, V, Siegel Phi, genus-1 Hecke T(l), Cartier,
// the det(T) and T-multiplier operators, Fourier-Jacobi slices and theta
// decomposition.

#pragma once

#include <array>
#include <optional>
#include <string>

#include "core/qseries.hpp"

namespace smfp {

/// Weight and bound bookkeeping of one operator application.
struct OperatorLog {
  std::string name;
  Weight input_weight;
  Weight output_weight;
  std::int64_t input_bound = 0;
  std::int64_t output_bound = 0;

  std::string to_string() const;
};

/// a(T) -> a(pT). Bound floor(B/p); the weight label is carried unchanged.
QSeries op_U(const QSeries& f, OperatorLog* log = nullptr);

/// Support T -> pT. Bound min(pB, cap); weight multiplied by p.
QSeries op_V(const QSeries& f, std::optional<std::int64_t> cap = std::nullopt, OperatorLog* log = nullptr);

/// Siegel Phi: keeps the keys whose last row and column vanish.
QSeries op_phi(const QSeries& f, OperatorLog* log = nullptr);

/// Genus-1 T(l): a(n) -> a(ln) + l^{k-1} a(n/l). Rejects l = p over F_p.
QSeries hecke_Tl_g1(const QSeries& f, std::int64_t l, long k, OperatorLog* log = nullptr);

/// Cartier operator on a matrix-valued expansion: a(T) -> a(pT).
MatrixQSeries cartier(const MatrixQSeries& eta, OperatorLog* log = nullptr);

/// a(T) -> det(T) a(T).
QSeries op_theta_det(const QSeries& f, OperatorLog* log = nullptr);

/// a(T) -> T a(T) as a symmetric-matrix-valued series over F_p.
MatrixQSeries op_theta_matrix(const QSeries& f, OperatorLog* log = nullptr);

JacobiSlice fourier_jacobi(const QSeries& f, std::int64_t nu);
/// Genus-2 series carrying exactly the slice's coefficients (T22 = nu).
QSeries slice_to_series(const JacobiSlice& slice, std::int64_t bound, Weight weight = Weight{});

/// NotThetaDecomposable when two slice keys of one orbit disagree.
ThetaComponents theta_decompose(const JacobiSlice& slice);
/// Inverse of theta_decompose: spreads every (r, D) over its orbit, keeping t0 <= t0_bound.
JacobiSlice embed(const ThetaComponents& components, std::int64_t t0_bound);

/// f_a^{(i)} q22^nu = sum_g g^i q^{[[nu y^2, nu y], [nu y, nu]]}, y = g + a/nu,
/// a = a_numerator / 2. Genus 2 over Q at scale 4 nu, weight label 1/2.
QSeries theta_fa(std::int64_t nu, std::int64_t a_numerator, int i, std::int64_t bound);

/// Compares the matrix lattice sum sum_g tV_g A V_g q^{T_g} with
/// A f_a + [[2a1, a2], [a2, 0]] f_a' + [[a2, 0], [0, 0]] f_a'' up to bound.
/// A = {a0, a1, a2} = [[a0, a1], [a1, a2]].
bool verify_theta_identity(const std::array<std::int64_t, 3>& a, std::int64_t a_numerator, std::int64_t nu,
                           std::int64_t bound);

}  // namespace smfp
