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

#include "core/suites.hpp"
#include "doctest.h"

using namespace smfp;

TEST_CASE("suite names") {
  const auto& names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "all") != names.end());
  CHECK(std::find(names.begin(), names.end(), "ring-laws") != names.end());
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), Error);
}

TEST_CASE("suites are deterministic for a seed") {
  SuiteOptions opts;
  opts.seed = 7;
  const auto a = run_suite("frobenius", opts).to_string();
  const auto b = run_suite("frobenius", opts).to_string();
  CHECK(a == b);
  CHECK(a.rfind("CHECK ", 0) == 0);
}

TEST_CASE("fast suites pass") {
  for (const char* name : {"ring-laws", "frobenius", "hasse-lift", "corollary", "theta-identity", "phi-tower"}) {
    CAPTURE(name);
    const auto r = run_suite(name, {});
    CHECK(r.passed());
  }
}

TEST_CASE("report lines") {
  const auto r = run_suite("corollary", {});
  for (const auto& l : r.lines) {
    CHECK_FALSE(l.name.empty());
    CHECK(l.name.find(' ') == std::string::npos);
  }
}
