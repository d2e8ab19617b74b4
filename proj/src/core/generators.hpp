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


// Concrete forms: genus-1 Eisenstein series and Delta, the Hasse invariant
// series, and genus-2 theta constants with the products built from them.

#pragma once

#include <string>
#include <vector>

#include "core/qseries.hpp"

namespace smfp {

/// Characteristic (m', m'') in {0, 1/2}^g, bit i set when component i is 1/2.
class ThetaCharacteristic {
 public:
  ThetaCharacteristic(int genus, unsigned mprime_bits, unsigned mdoubleprime_bits);
  /// Digits of 2m' then 2m'', e.g. "1001" is m' = (1/2, 0), m'' = (0, 1/2).
  static ThetaCharacteristic parse(const std::string& digits);

  int genus() const { return genus_; }
  unsigned mprime() const { return mprime_; }
  unsigned mdoubleprime() const { return mdoubleprime_; }
  /// (-1)^{4 m'.m''}.
  int parity() const;
  bool is_even() const { return parity() == 1; }
  std::string to_string() const;

  static std::vector<ThetaCharacteristic> all(int genus);
  static std::vector<ThetaCharacteristic> even(int genus);

  friend bool operator==(const ThetaCharacteristic&, const ThetaCharacteristic&) = default;

 private:
  int genus_;
  unsigned mprime_;
  unsigned mdoubleprime_;
};

/// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n.
QSeries eisenstein_g1(long k, std::int64_t bound);
/// q prod (1 - q^n)^24.
QSeries delta_g1(std::int64_t bound);
/// Constant series 1 over F_p of weight p - 1.
QSeries hasse_series(int genus, std::uint32_t p, std::int64_t bound);

/// theta[m] = sum_{x in Z^2} e^{2 pi i x.m''} q^{(1/2) n tn}, n = x + m'.
/// The constant factor e^{2 pi i m'.m''} is dropped. Scale 8, weight 1/2.
QSeries theta_constant_g2(const ThetaCharacteristic& m, std::int64_t bound);

/// prod over the ten even m of theta[m]^2, scaled so that the first
/// coefficient in canonical order is 1.
QSeries chi10_prop(std::int64_t bound);
/// (1/4) sum over the ten even m of theta[m]^8, constant term 1.
QSeries psi4_prop(std::int64_t bound);

}  // namespace smfp
