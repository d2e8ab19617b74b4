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

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "core/quadforms.hpp"
#include "doctest.h"

using namespace smfp;

namespace {

HalfIntegralForm g2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d = 1) {
  return HalfIntegralForm(2, d, HalfIntegralForm::Entries{a, b, c});
}

/// Brute-force orbit minimum over a box of unimodular matrices, ordered by
/// (M11, M22, |M12|) then M12 >= 0 preferred.
HalfIntegralForm brute_min(const HalfIntegralForm& t, const std::vector<UnimodularMatrix>& box) {
  HalfIntegralForm best = t;
  auto key = [](const HalfIntegralForm& f) {
    return std::tuple(f.at(0, 0), f.at(1, 1), std::abs(f.at(0, 1)), -f.at(0, 1));
  };
  for (const auto& u : box) {
    const auto img = act(u, t);
    if (key(img) < key(best)) best = img;
  }
  return best;
}

}  // namespace

TEST_CASE("is_psd: examples") {
  CHECK(is_psd(g2(2, 1, 2)));
  CHECK_FALSE(is_psd(g2(2, 3, 2)));
  CHECK(is_psd(g2(0, 0, 0)));
  CHECK_FALSE(is_psd(g2(0, 1, 2)));
}

TEST_CASE("forms: construction invariants") {
  CHECK_THROWS_AS(g2(1, 0, 2), Error);  // odd diagonal
  CHECK_THROWS_AS(g2(2, 0, 2, 0), Error);
  const auto t = g2(2, 1, 4);
  CHECK(t.render() == "2;1;2,1,4");
  CHECK(HalfIntegralForm::parse("2;1;2,1,4") == t);
  CHECK(t.trace() == BigRational(3));
  CHECK(t.det() == BigRational(BigInt(7), BigInt(4)));
  CHECK(t.rescaled(4) == g2(8, 4, 16, 4));
  CHECK(g2(8, 4, 16, 4).minimal_scale() == 1);
  CHECK(g2(2, 1, 2, 8).minimal_scale() == 8);
}

TEST_CASE("act: examples and invariants") {
  const UnimodularMatrix u{{1, 0}, {1, 1}};
  CHECK(act(u, g2(0, 0, 2)) == g2(2, 2, 2));
  CHECK(act(UnimodularMatrix::identity(2), g2(4, 1, 6)) == g2(4, 1, 6));
  std::mt19937_64 rng(3);
  const auto box = unimodular_box(2, 3);
  for (const auto& t : enumerate(2, 4, 1)) {
    const auto& v = box[std::uniform_int_distribution<std::size_t>(0, box.size() - 1)(rng)];
    const auto img = act(v, t);
    CHECK(img.det_scaled() == t.det_scaled());
    CHECK(is_psd(img));
  }
}

TEST_CASE("reduce_g2: examples") {
  // [[2,4],[4,10]] has det 4 and minimum 2; its reduced form is diag(2,2).
  auto r = reduce_g2(g2(2, 4, 10));
  CHECK(r.form == g2(2, 0, 2));
  CHECK(act(r.witness, g2(2, 4, 10)) == r.form);
  r = reduce_g2(g2(2, 1, 2));
  CHECK(r.form == g2(2, 1, 2));
  CHECK(r.witness == UnimodularMatrix::identity(2));
  r = reduce_g2(g2(4, 0, 6));
  CHECK(r.witness == UnimodularMatrix::identity(2));
  r = reduce_g2(g2(2, 2, 2));
  CHECK(r.form == g2(0, 0, 2));
  CHECK(act(r.witness, g2(2, 2, 2)) == r.form);
}

TEST_CASE("reduce_g2: agrees with brute force and is orbit constant") {
  const auto small = unimodular_box(2, 3);
  const auto box3 = unimodular_box(2, 3);
  std::mt19937_64 rng(11);
  for (const auto& t : enumerate(2, 6, 1)) {
    const auto r = reduce_g2(t);
    CHECK(act(r.witness, t) == r.form);
    const auto& f = r.form;
    CHECK(0 <= 2 * f.at(0, 1));
    CHECK(2 * f.at(0, 1) <= f.at(0, 0));
    CHECK(f.at(0, 0) <= f.at(1, 1));
    CHECK(reduce_g2(f).form == f);
    CHECK(brute_min(t, small) == f);
    for (int n = 0; n < 3; ++n) {
      const auto& u = box3[std::uniform_int_distribution<std::size_t>(0, box3.size() - 1)(rng)];
      CHECK(reduce_g2(act(u, t)).form == f);
    }
  }
}

TEST_CASE("enumerate: counts against brute force") {
  CHECK(enumerate(2, 2, 1).size() == 10);
  CHECK(enumerate(1, 5, 1).size() == 6);
  CHECK(enumerate(2, 0, 1).size() == 1);
  for (std::int64_t d : {1, 2, 4}) {
    for (std::int64_t b = 0; b <= 4; ++b) {
      std::set<HalfIntegralForm> brute;
      const std::int64_t lim = 2 * d * b;
      for (std::int64_t m11 = 0; m11 <= lim; m11 += 2)
        for (std::int64_t m22 = 0; m11 + m22 <= lim; m22 += 2)
          for (std::int64_t m12 = -lim; m12 <= lim; ++m12)
            if (m12 * m12 <= m11 * m22) brute.insert(g2(m11, m12, m22, d));
      const auto got = enumerate(2, b, d);
      CHECK(got.size() == brute.size());
      CHECK(std::is_sorted(got.begin(), got.end()));
      CHECK(std::set<HalfIntegralForm>(got.begin(), got.end()) == brute);
    }
  }
}

TEST_CASE("enumerate: closed under reduction") {
  const auto forms = enumerate(2, 6, 1);
  const std::set<HalfIntegralForm> all(forms.begin(), forms.end());
  for (const auto& t : forms) {
    const auto f = reduce_g2(t).form;
    CHECK(f.trace_scaled() <= t.trace_scaled());
    CHECK(all.count(f) == 1);
  }
}

TEST_CASE("unimodular matrices") {
  CHECK_THROWS_AS((UnimodularMatrix{{2, 0}, {0, 1}}), Error);
  const UnimodularMatrix u{{2, 1}, {1, 1}};
  CHECK(u * u.inverse() == UnimodularMatrix::identity(2));
  int count = 0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) count += std::abs(a * d - b * c) == 1;
  CHECK(unimodular_box(2, 2).size() == static_cast<std::size_t>(count));
  CHECK(unimodular_box(1, 3).size() == 2);
}
