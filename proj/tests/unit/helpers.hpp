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

#pragma once

#include <variant>

#include "core/qseries.hpp"

namespace smfp::testing {

/// q^n in genus 1.
inline HalfIntegralForm g1(std::int64_t n) { return HalfIntegralForm(1, 1, HalfIntegralForm::Entries{2 * n}); }

/// T = M / 2d with M = [[a, b], [b, c]].
inline HalfIntegralForm g2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d = 1) {
  return HalfIntegralForm(2, d, HalfIntegralForm::Entries{a, b, c});
}

inline BigRational qcoef(const QSeries& f, const HalfIntegralForm& t) {
  return std::get<BigRational>(f.coefficient(t));
}

inline std::uint32_t fcoef(const QSeries& f, const HalfIntegralForm& t) {
  return std::get<FpElement>(f.coefficient(t)).residue();
}

inline QSeries g1_series(std::vector<long> coeffs, Weight w = Weight{}, std::int64_t bound = -1) {
  std::map<HalfIntegralForm, BigRational> m;
  for (std::size_t n = 0; n < coeffs.size(); ++n) m[g1(static_cast<std::int64_t>(n))] = BigRational(coeffs[n]);
  return QSeries::from_rational(1, w, bound < 0 ? static_cast<std::int64_t>(coeffs.size()) - 1 : bound, 1, m);
}

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

}  // namespace smfp::testing
