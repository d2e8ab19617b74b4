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


// Verification suites behind `smfp verify`, and the seeded random inputs
// they share with the test programs.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "core/qseries.hpp"

namespace smfp {

/// One report line: "CHECK <name> <params> PASS|FAIL|REPORT <data>".
struct CheckLine {
  enum class Status { Pass, Fail, Report };
  std::string name;
  std::string params;
  Status status = Status::Pass;
  std::string data;

  std::string to_string() const;
};

struct Report {
  std::vector<CheckLine> lines;

  bool passed() const;
  std::string to_string() const;
};

struct SuiteOptions {
  std::optional<std::uint32_t> p;
  std::optional<std::int64_t> bound;
  std::uint64_t seed = 42;
};

const std::vector<std::string>& suite_names();
/// InvalidArgument for an unknown suite name.
Report run_suite(const std::string& name, const SuiteOptions& options);

using Rng = std::mt19937_64;

/// Random series at scale 1 over Q (p = 0) or F_p; roughly `density` of the
/// keys up to the bound carry a nonzero coefficient.
QSeries random_series(Rng& rng, int genus, std::uint32_t p, std::int64_t bound, Weight weight = Weight{},
                      double density = 0.35);
MatrixQSeries random_matrix_series(Rng& rng, int genus, std::uint32_t p, std::int64_t bound, double density = 0.35);
/// Genus-2 matrix series satisfying a(tU T U) = tU a(T) U, built from
/// stabilizer-symmetrized seeds at reduced positive definite forms.
MatrixQSeries random_equivariant_series(Rng& rng, std::uint32_t p, std::int64_t bound);

}  // namespace smfp
