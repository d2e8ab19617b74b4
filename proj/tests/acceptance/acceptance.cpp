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

// Acceptance checks: one line per criterion, "ACCEPT <n> <name> PASS|FAIL ...".
// Coefficient comparisons are exact (zero tolerance); each criterion also has
// a wall-clock limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "core/generators.hpp"
#include "core/operators.hpp"
#include "core/structure.hpp"
#include "core/suites.hpp"

using namespace smfp;

namespace {

// Zero tolerance on every coefficient comparison.
constexpr long kCoefficientTolerance = 0;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Exact agreement: with zero tolerance this is plain equality of the stored terms.
bool exact_equal(const QSeries& a, const QSeries& b) {
  static_assert(kCoefficientTolerance == 0);
  return a == b;
}

Outcome hasse_lift() {
  constexpr std::int64_t kBound = 30;
  Outcome o{true, ""};
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool eq = exact_equal(reduce_series(eisenstein_g1(static_cast<long>(p) - 1, kBound), p),
                                hasse_series(1, p, kBound));
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool fast = s < 1.0;  // per prime
    o.ok = o.ok && eq && fast;
    o.detail += "p=" + std::to_string(p) + (eq ? ":equal" : ":differ") + (fast ? "" : ":slow") + " ";
  }
  return o;
}

Outcome frobenius() {
  constexpr int kTrials = 100;
  constexpr std::int64_t kMaxBound = 6;
  const std::uint32_t primes[] = {3, 5, 7};
  Rng rng(kSeed);
  int ok = 0;
  for (int i = 0; i < kTrials; ++i) {
    const std::uint32_t p = primes[i % 3];
    const int g = 1 + (i / 3) % 2;
    const QSeries f = random_series(rng, g, p, uniform(rng, 0, kMaxBound), Weight(uniform(rng, 0, 3)));
    if (exact_equal(op_V(f, f.bound()), pow(f, p))) ++ok;
  }
  return {ok == kTrials, "ok=" + std::to_string(ok) + "/" + std::to_string(kTrials)};
}

Outcome corollary() {
  constexpr int kTrials = 100;
  const std::uint32_t primes[] = {3, 5, 7};
  Rng rng(kSeed);
  int ok = 0;
  for (int i = 0; i < kTrials; ++i) {
    const std::uint32_t p = primes[i % 3];
    const int g = 1 + (i / 3) % 2;
    const std::int64_t b = uniform(rng, p, 2 * static_cast<std::int64_t>(p));
    const long kh = uniform(rng, 0, 3);
    const long r0 = uniform(rng, 0, p - 1);
    const QSeries h0 = random_series(rng, g, p, b, Weight(kh));
    const QSeries f = mul(pow(hasse_series(g, p, b), static_cast<unsigned>(r0)), pow(h0, p));
    const long k = r0 * (static_cast<long>(p) - 1) + static_cast<long>(p) * kh;
    if (!is_p_singular(f)) continue;
    const PRoot root = p_root(f, k);
    const std::int64_t hb = b / p;
    if (root.r == r0 && root.kprime == kh && eq_upto(root.h, h0, hb) && eq_upto(pow(root.h, p), f, hb)) ++ok;
  }
  int infeasible = 0;
  for (std::uint32_t p : primes) {
    for (long k = 0; k < static_cast<long>(p) - 1; ++k) {
      const QSeries f = op_V(random_series(rng, 1, p, 3, Weight(0))).with_weight(Weight(k));
      try {
        p_root(f, k);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::WeightInfeasible) ++infeasible;
      }
    }
  }
  // k = 0 is feasible (r = 0, k' = 0); every 0 < k < p - 1 must raise.
  const int expected = (3 - 2) + (5 - 2) + (7 - 2);
  return {ok == kTrials && infeasible == expected,
          "roundtrip=" + std::to_string(ok) + "/" + std::to_string(kTrials) + " infeasible=" + std::to_string(infeasible) +
              "/" + std::to_string(expected)};
}

Outcome irreducibility() {
  Outcome o{true, ""};
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const auto r = irreducibility_search_g1(p);
    o.ok = o.ok && r.irreducible;
    o.detail += "p=" + std::to_string(p) + (r.irreducible ? ":irreducible " : ":reducible ");
  }
  return o;
}

Outcome starstar() {
  Outcome o{true, ""};
  for (std::uint32_t p : {3u, 5u, 7u}) {
    int forms = 0, zero = 0;
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c) {
          if ((static_cast<std::uint64_t>(a) * c + static_cast<std::uint64_t>(p - b) * b) % p == 0) continue;
          ++forms;
          if (star_star_solver(p, {a, b, c}).empty()) ++zero;
        }
    bool classify = true;
    for (std::uint32_t nu = 1; nu < p; ++nu) classify = classify && rank1_classify(p, nu).size() == p;
    o.ok = o.ok && forms == zero && classify;
    o.detail += "p=" + std::to_string(p) + ":zero=" + std::to_string(zero) + "/" + std::to_string(forms) +
                (classify ? ",rank1=p " : ",rank1!=p ");
  }
  return o;
}

Outcome theta_identity() {
  constexpr std::int64_t kBound = 8;
  int total = 0, ok = 0;
  for (std::int64_t nu = 1; nu <= 3; ++nu)
    for (std::int64_t a0 = -2; a0 <= 2; ++a0)
      for (std::int64_t a1 = -2; a1 <= 2; ++a1)
        for (std::int64_t a2 = -2; a2 <= 2; ++a2)
          for (std::int64_t a = 0; a < 2 * nu; ++a) {
            ++total;
            if (verify_theta_identity({a0, a1, a2}, a, nu, kBound)) ++ok;
          }
  return {ok == total, "ok=" + std::to_string(ok) + "/" + std::to_string(total)};
}

Outcome phi_tower() {
  constexpr std::int64_t kBound = 8;
  const QSeries phi = op_phi(psi4_prop(kBound));
  const BigRational c = std::get<BigRational>(phi.coefficient(HalfIntegralForm::zero(1, 1)));
  const bool psi_ok = !c.is_zero() && exact_equal(phi, scalar_mul(eisenstein_g1(4, kBound), c));
  const bool chi_ok = op_phi(chi10_prop(kBound)).is_zero();
  return {psi_ok && chi_ok, "Phi(psi4)=" + c.to_string() + "*E4:" + (psi_ok ? "yes" : "no") +
                                " Phi(chi10)=0:" + (chi_ok ? "yes" : "no")};
}

Outcome hecke() {
  constexpr std::uint32_t kP = 7;
  constexpr std::int64_t kBound = 15;
  constexpr int kCases = 20;
  const QSeries delta = reduce_series(delta_g1(2 * kBound), kP);
  const bool eigen = eq_upto(hecke_Tl_g1(delta, 2, 12), scalar_mul(delta, BigRational(-24)), kBound);
  Rng rng(kSeed);
  int comm = 0;
  const std::int64_t ls[] = {2, 3, 5, 11, 13};
  for (int i = 0; i < kCases; ++i) {
    const std::int64_t l = ls[uniform(rng, 0, 4)];
    const long k = 2 * uniform(rng, 1, 6);
    const std::int64_t b = uniform(rng, l, 4 * l);
    const QSeries f = random_series(rng, 1, kP, b, Weight(k));
    const QSeries a = hasse_series(1, kP, b);
    if (exact_equal(hecke_Tl_g1(mul(a, f), l, k + static_cast<long>(kP) - 1), mul(a, hecke_Tl_g1(f, l, k)))) ++comm;
  }
  return {eigen && comm == kCases,
          std::string("T(2)Delta=-24Delta:") + (eigen ? "yes" : "no") + " commute=" + std::to_string(comm) + "/" +
              std::to_string(kCases)};
}

Outcome cartier_termination() {
  constexpr int kSeriesPerPrime = 20;
  Rng rng(kSeed);
  int total = 0, ok = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int i = 0; i < kSeriesPerPrime; ++i) {
      ++total;
      const std::int64_t b = uniform(rng, 0, 4 * static_cast<std::int64_t>(p));
      MatrixQSeries eta = random_matrix_series(rng, 1 + i % 2, p, b);
      int allowed = 1;
      for (std::int64_t pk = 1; pk < b; pk *= p) ++allowed;  // ceil(log_p B) + 1
      bool good = true;
      int steps = 0;
      auto at_origin = [](const MatrixQSeries& s) {
        return std::all_of(s.terms().begin(), s.terms().end(), [](const auto& t) { return t.first.is_zero(); });
      };
      while (!at_origin(eta) && steps < allowed) {
        const MatrixQSeries next = cartier(eta);
        for (const auto& [k, v] : next.terms()) good = good && eta.coefficient(k.times(p)) == v;
        eta = next;
        ++steps;
      }
      if (good && at_origin(eta)) ++ok;
    }
  }
  return {ok == total, "ok=" + std::to_string(ok) + "/" + std::to_string(total)};
}

Outcome ring_hygiene() {
  SuiteOptions opts;
  opts.seed = kSeed;
  const Report r = run_suite("ring-laws", opts);
  std::string detail;
  for (const auto& l : r.lines) detail += l.name + "=" + (l.status == CheckLine::Status::Pass ? "ok " : "fail ");
  return {r.passed(), detail};
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "hasse-lift", 4.0, hasse_lift},
      {2, "frobenius-V", 10.0, frobenius},
      {3, "corollary-roundtrip", 10.0, corollary},
      {4, "irreducibility", 60.0, irreducibility},
      {5, "starstar-solver", 5.0, starstar},
      {6, "theta-derivative-identity", 30.0, theta_identity},
      {7, "phi-tower", 60.0, phi_tower},
      {8, "hecke-sanity", 5.0, hecke},
      {9, "cartier-termination", 5.0, cartier_termination},
      {10, "ring-serialization", 10.0, ring_hygiene},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const Error& e) {
      o = {false, std::string("error ") + std::string(error_name(e.code())) + ": " + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("ACCEPT %2d %-26s %s time=%.3fs limit=%.0fs %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", s,
                c.limit_seconds, o.detail.c_str(), in_time ? "" : " (over time limit)");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
