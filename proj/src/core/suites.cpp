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

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "core/generators.hpp"
#include "core/operators.hpp"
#include "core/structure.hpp"

namespace smfp {
namespace {

using Status = CheckLine::Status;

std::string params(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ',';
    out += std::string(k) + '=' + v;
  }
  return out.empty() ? "-" : out;
}

std::string str(std::int64_t v) { return std::to_string(v); }

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : "/") + std::to_string(x);
  return out;
}

std::vector<std::uint32_t> primes_or(const SuiteOptions& o, std::vector<std::uint32_t> fallback) {
  if (o.p) return {*o.p};
  return fallback;
}

Status verdict(bool ok) { return ok ? Status::Pass : Status::Fail; }

void convention_line(Report& r) {
  r.lines.push_back({"convention.p-divides-T", "-", Status::Report, "p|T read as p dividing every entry of M=2dT"});
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Keeps keys divisible by p with trace <= bound.
QSeries p_divisible_part(const QSeries& f, std::int64_t bound) {
  std::map<HalfIntegralForm, std::int64_t> out;
  const auto p = f.domain().modulus();
  for (const auto& [k, v] : f.residue_terms())
    if (k.entries_divisible_by(p) && k.trace_scaled() <= 2 * f.scale() * bound) out.emplace(k, v);
  return QSeries::from_residues(f.genus(), p, f.weight(), bound, f.scale(), out);
}

std::size_t rank_fp(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  std::size_t rank = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    auto it = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(), [&](const auto& r) { return r[col] != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<long>(rank), it);
    const std::uint64_t inv = FpElement(rows[rank][col], p).inverse().residue();
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const std::uint64_t c = rows[r][col] * inv % p;
      for (std::size_t j = 0; j < ncols; ++j) rows[r][j] = static_cast<std::uint32_t>((rows[r][j] + (p - c) * rows[rank][j]) % p);
    }
    ++rank;
  }
  return rank;
}

/// Dense genus-1 coefficient vector 0..bound.
std::vector<std::uint32_t> dense_g1(const QSeries& f, std::int64_t bound) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(bound + 1), 0);
  const QSeries g = f.compacted();
  for (const auto& [k, v] : g.residue_terms())
    if (k.at(0, 0) / 2 <= bound) out[static_cast<std::size_t>(k.at(0, 0) / 2)] = v;
  return out;
}

/// Scalar invariance a(tU T U) = a(T) on all in-bound pairs.
bool unimodular_invariant(const QSeries& f, const std::vector<UnimodularMatrix>& us) {
  const std::int64_t max_trace = f.max_trace_scaled();
  for (const auto& t : enumerate(f.genus(), f.bound(), f.scale()))
    for (const auto& u : us) {
      const auto image = act(u, t);
      if (image.trace_scaled() <= max_trace && !(f.coefficient(image) == f.coefficient(t))) return false;
    }
  return true;
}

// --- suites ----------------------------------------------------------------------

void suite_ring_laws(const SuiteOptions& o, Report& rep) {
  const std::uint32_t p = o.p.value_or(5);
  const std::int64_t bmax = o.bound.value_or(6);
  Rng rng(o.seed);
  constexpr int kTrials = 200;
  int assoc = 0, comm = 0, dist = 0, roundtrip = 0;
  for (int i = 0; i < kTrials; ++i) {
    const int g = 1 + i % 2;
    const std::uint32_t dom = (i / 2) % 2 ? p : 0;
    const std::int64_t b = uniform(rng, 0, bmax);
    const QSeries f = random_series(rng, g, dom, b), h1 = random_series(rng, g, dom, b), h2 = random_series(rng, g, dom, b);
    if (mul(mul(f, h1), h2) == mul(f, mul(h1, h2))) ++assoc;
    if (mul(f, h1) == mul(h1, f) && add(f, h1) == add(h1, f)) ++comm;
    if (mul(f, add(h1, h2)) == add(mul(f, h1), mul(f, h2))) ++dist;
    const std::string text = serialize(f);
    const AnySeries back = deserialize(text);
    if (std::get<QSeries>(back) == f && serialize(std::get<QSeries>(back)) == text) ++roundtrip;
  }
  const std::string ps = params({{"p", str(p)}, {"Bmax", str(bmax)}, {"seed", str(static_cast<std::int64_t>(o.seed))},
                                 {"trials", str(kTrials)}});
  rep.lines.push_back({"ring-laws.associativity", ps, verdict(assoc == kTrials), "ok=" + str(assoc)});
  rep.lines.push_back({"ring-laws.commutativity", ps, verdict(comm == kTrials), "ok=" + str(comm)});
  rep.lines.push_back({"ring-laws.distributivity", ps, verdict(dist == kTrials), "ok=" + str(dist)});
  rep.lines.push_back({"serialize.random-roundtrip", ps, verdict(roundtrip == kTrials), "ok=" + str(roundtrip)});

  // Every generator and operator output the CLI can write.
  std::vector<AnySeries> artifacts{eisenstein_g1(4, 12), eisenstein_g1(12, 8), delta_g1(10), hasse_series(2, p, 4),
                                   theta_constant_g2(ThetaCharacteristic::parse("1001"), 3), chi10_prop(3),
                                   psi4_prop(3)};
  const QSeries e4p = reduce_series(eisenstein_g1(4, 12), p == 5 ? 7 : p);
  artifacts.emplace_back(op_V(e4p, 12));
  artifacts.emplace_back(op_theta_det(e4p));
  artifacts.emplace_back(op_theta_matrix(reduce_series(psi4_prop(3), p == 5 ? 7 : p)));
  artifacts.emplace_back(random_matrix_series(rng, 2, p, 3));
  artifacts.emplace_back(QSeries::zero(2, CoeffDomain::prime_field(p), Weight(1, 2), 2));
  int ok = 0;
  for (const auto& a : artifacts) {
    const std::string text = std::visit([](const auto& s) { return serialize(s); }, a);
    const AnySeries back = deserialize(text);
    const std::string again = std::visit([](const auto& s) { return serialize(s); }, back);
    if (back == a && again == text) ++ok;
  }
  rep.lines.push_back({"serialize.artifact-roundtrip", params({{"p", str(p)}, {"files", str(static_cast<std::int64_t>(artifacts.size()))}}),
                       verdict(ok == static_cast<int>(artifacts.size())), "ok=" + str(ok)});
}

void suite_frobenius(const SuiteOptions& o, Report& rep) {
  const auto primes = primes_or(o, {3, 5, 7});
  const std::int64_t bmax = o.bound.value_or(6);
  Rng rng(o.seed);
  constexpr int kTrials = 100;
  int vp = 0, uv = 0, vu = 0;
  for (int i = 0; i < kTrials; ++i) {
    const std::uint32_t p = primes[static_cast<std::size_t>(i) % primes.size()];
    const int g = 1 + (i / static_cast<int>(primes.size())) % 2;
    const std::int64_t b = uniform(rng, 0, bmax);
    const QSeries f = random_series(rng, g, p, b, Weight(uniform(rng, 0, 3)));
    if (op_V(f, b) == pow(f, p)) ++vp;
    if (op_U(op_V(f)) == f.with_weight(f.weight() * static_cast<long>(p))) ++uv;
    const std::int64_t pb = static_cast<std::int64_t>(p) * (b / p);
    if (eq_upto(op_V(op_U(f), b), p_divisible_part(f, pb), pb)) ++vu;
  }
  const std::string ps = params({{"p", join(primes)}, {"Bmax", str(bmax)}, {"seed", str(static_cast<std::int64_t>(o.seed))},
                                 {"trials", str(kTrials)}});
  rep.lines.push_back({"frobenius.V-equals-pth-power", ps, verdict(vp == kTrials), "ok=" + str(vp)});
  rep.lines.push_back({"frobenius.U-after-V", ps, verdict(uv == kTrials), "ok=" + str(uv)});
  rep.lines.push_back({"frobenius.V-after-U-projects", ps, verdict(vu == kTrials), "ok=" + str(vu)});
}

void suite_hasse_lift(const SuiteOptions& o, Report& rep) {
  const auto primes = primes_or(o, {5, 7, 11, 13});
  const std::int64_t b = o.bound.value_or(30);
  for (auto p : primes) {
    const std::string ps = params({{"p", str(p)}, {"B", str(b)}});
    if (p < 5) {
      rep.lines.push_back({"hasse-lift.eisenstein", ps, Status::Report, "no level-1 Eisenstein series of weight p-1"});
      continue;
    }
    const QSeries lifted = reduce_series(eisenstein_g1(static_cast<long>(p) - 1, b), p);
    rep.lines.push_back({"hasse-lift.eisenstein", ps, verdict(lifted == hasse_series(1, p, b)),
                         "E_" + str(p - 1) + " mod " + str(p) + " has " + str(static_cast<std::int64_t>(lifted.size())) + " terms"});
  }

  // Hecke on Delta and commutation with multiplication by A.
  const std::uint32_t hp = o.p.value_or(7);
  const std::int64_t hb = 15;
  const QSeries delta = reduce_series(delta_g1(2 * hb), hp);
  const bool eigen = hp != 2 && eq_upto(hecke_Tl_g1(delta, 2, 12), scalar_mul(delta, BigRational(-24)), hb);
  rep.lines.push_back({"hecke.delta-eigenform", params({{"p", str(hp)}, {"l", "2"}, {"B", str(hb)}}), verdict(eigen),
                       "T(2) Delta = -24 Delta"});
  Rng rng(o.seed);
  int comm = 0;
  constexpr int kCases = 20;
  const std::uint32_t ls[] = {2, 3, 5, 7, 11};
  for (int i = 0; i < kCases; ++i) {
    std::uint32_t l = ls[static_cast<std::size_t>(uniform(rng, 0, 4))];
    if (l == hp) l = 2;
    const long k = 2 * uniform(rng, 1, 6);
    const std::int64_t b2 = uniform(rng, l, 4 * static_cast<std::int64_t>(l));
    const QSeries f = random_series(rng, 1, hp, b2, Weight(k));
    const QSeries a = hasse_series(1, hp, b2);
    const QSeries lhs = hecke_Tl_g1(mul(a, f), l, k + static_cast<long>(hp) - 1);
    const QSeries rhs = mul(a, hecke_Tl_g1(f, l, k));
    if (lhs == rhs) ++comm;
  }
  rep.lines.push_back({"hecke.hasse-commutation",
                       params({{"p", str(hp)}, {"seed", str(static_cast<std::int64_t>(o.seed))}, {"cases", str(kCases)}}),
                       verdict(comm == kCases), "ok=" + str(comm)});

  // T(p) against V and U on integral lifts.
  const std::uint32_t tp = o.p.value_or(5);
  const QSeries dl = delta_g1(6 * tp);
  const QSeries one = QSeries::constant(1, CoeffDomain::rational(), Weight(12), 6 * tp, 1);
  rep.lines.push_back({"tp.equals-U", params({{"p", str(tp)}, {"k", "12"}}),
                       verdict(tp_equals_u_check(dl, tp, 12) && tp_equals_u_check(one, tp, 12)), "delta and constant"});
  rep.lines.push_back({"tp.versus-V", params({{"p", str(tp)}, {"k", "12"}}), Status::Report,
                       std::string("delta:") + (tp_equals_v_check(dl, tp, 12) ? "equal" : "differ") +
                           " constant:" + (tp_equals_v_check(one, tp, 12) ? "equal" : "differ")});

  // Genus-2 experiment: psi4 modulo 5.
  const std::int64_t gb = std::min<std::int64_t>(b, 6);
  const QSeries psi = reduce_series(psi4_prop(gb), 5);
  rep.lines.push_back({"hasse-lift.psi4-mod-5", params({{"B", str(gb)}}), Status::Report,
                       std::string("constant_one=") + (psi == hasse_series(2, 5, gb) ? "yes" : "no")});
}

void suite_corollary(const SuiteOptions& o, Report& rep) {
  convention_line(rep);
  const auto primes = primes_or(o, {3, 5, 7});
  Rng rng(o.seed);
  constexpr int kTrials = 100;
  int singular = 0, recovered = 0;
  for (int i = 0; i < kTrials; ++i) {
    const std::uint32_t p = primes[static_cast<std::size_t>(i) % primes.size()];
    const int g = 1 + (i / static_cast<int>(primes.size())) % 2;
    const std::int64_t b = o.bound.value_or(uniform(rng, p, 2 * static_cast<std::int64_t>(p)));
    const long kh = uniform(rng, 0, 3);
    const long r0 = uniform(rng, 0, p - 1);
    const QSeries h0 = random_series(rng, g, p, b, Weight(kh));
    const QSeries f = mul(pow(hasse_series(g, p, b), static_cast<unsigned>(r0)), pow(h0, p));
    const long k = r0 * (static_cast<long>(p) - 1) + static_cast<long>(p) * kh;
    if (!is_p_singular(f)) continue;
    ++singular;
    const PRoot root = p_root(f, k);
    const std::int64_t hb = b / p;
    if (root.r == r0 && root.kprime == kh && eq_upto(root.h, h0, hb) && eq_upto(pow(root.h, p), f, hb)) ++recovered;
  }
  const std::string ps = params({{"p", join(primes)}, {"seed", str(static_cast<std::int64_t>(o.seed))}, {"trials", str(kTrials)}});
  rep.lines.push_back({"corollary.power-is-p-singular", ps, verdict(singular == kTrials), "ok=" + str(singular)});
  rep.lines.push_back({"corollary.p-root-roundtrip", ps, verdict(recovered == kTrials), "ok=" + str(recovered)});

  for (auto p : primes) {
    const QSeries f = op_V(random_series(rng, 1, p, 3, Weight(0))).with_weight(Weight(static_cast<long>(p) - 2));
    bool raised = false;
    try {
      p_root(f, static_cast<long>(p) - 2);
    } catch (const Error& e) {
      raised = e.code() == ErrorCode::WeightInfeasible;
    }
    rep.lines.push_back({"corollary.low-weight-infeasible", params({{"p", str(p)}, {"k", str(p - 2)}}), verdict(raised),
                         raised ? "WeightInfeasible" : "no error"});
    const PRoot a = p_root(hasse_series(2, p, 2 * static_cast<std::int64_t>(p)), static_cast<long>(p) - 1);
    const bool hasse_ok =
        a.r == 1 && a.kprime == 0 && a.h == QSeries::constant(2, CoeffDomain::prime_field(p), Weight(0), a.h.bound(), 1);
    rep.lines.push_back({"corollary.hasse-root", params({{"p", str(p)}}), verdict(hasse_ok),
                         "r=" + str(a.r) + " kprime=" + str(a.kprime)});
    rep.lines.push_back({"corollary.weight-congruence", params({{"p", str(p)}}),
                         verdict(weight_congruence(static_cast<long>(p) - 1, 0, p) && !weight_congruence(1, 0, p)),
                         "A versus 1"});
  }
}

void suite_irreducibility(const SuiteOptions& o, Report& rep) {
  for (auto p : primes_or(o, {5, 7, 11, 13})) {
    const auto res = irreducibility_search_g1(p);
    std::string splits;
    for (const auto& [s, t] : res.splits) splits += (splits.empty() ? "" : "/") + str(s) + "+" + str(t);
    std::string data = "A=" + render(res.hasse) + " splits=" + (splits.empty() ? "none" : splits) +
                       " assignments=" + str(static_cast<std::int64_t>(res.assignments));
    if (!res.irreducible) data += " F=" + render(res.factor_f) + " G=" + render(res.factor_g);
    rep.lines.push_back({"irreducibility.A-minus-1", params({{"p", str(p)}}), verdict(res.irreducible), data});
  }
}

void suite_starstar(const SuiteOptions& o, Report& rep) {
  Rng rng(o.seed);
  for (auto p : primes_or(o, {3, 5, 7})) {
    int nondeg = 0, nondeg_zero = 0;
    std::map<std::size_t, int> rank1_dims;
    bool zero_full = false;
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c) {
          const Sym2 t{a, b, c};
          const auto basis = star_star_solver(p, t);
          const std::uint64_t det = (static_cast<std::uint64_t>(a) * c + static_cast<std::uint64_t>(p - b) * b) % p;
          if (det != 0) {
            ++nondeg;
            if (basis.empty()) ++nondeg_zero;
          } else if (a == 0 && b == 0 && c == 0) {
            zero_full = basis.size() == 3;
          } else {
            ++rank1_dims[basis.size()];
          }
        }
    rep.lines.push_back({"starstar.nondegenerate", params({{"p", str(p)}}), verdict(nondeg == nondeg_zero),
                         "forms=" + str(nondeg) + " zero_solution=" + str(nondeg_zero)});
    rep.lines.push_back({"starstar.zero-form", params({{"p", str(p)}}), verdict(zero_full), "dim=3"});
    std::string dims;
    for (const auto& [d, n] : rank1_dims) dims += (dims.empty() ? "" : ",") + str(static_cast<std::int64_t>(d)) + ":" + str(n);
    rep.lines.push_back({"starstar.rank1-dimensions", params({{"p", str(p)}}), Status::Report, "dim:count=" + dims});

    bool classify_ok = true;
    for (std::uint32_t nu = 1; nu < p; ++nu) {
      auto got = rank1_classify(p, nu);
      std::vector<Sym2> want;
      for (std::uint64_t x = 0; x < p; ++x)
        want.push_back({static_cast<std::uint32_t>(x * x % p * nu % p), static_cast<std::uint32_t>(x * nu % p), nu});
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      classify_ok = classify_ok && got.size() == p && got == want;
    }
    rep.lines.push_back({"starstar.rank1-classify", params({{"p", str(p)}}), verdict(classify_ok), "count=p for every nu"});

    // Cartier termination on random matrix series.
    int cartier_ok = 0;
    constexpr int kSeries = 10;
    for (int i = 0; i < kSeries; ++i) {
      const std::int64_t b = uniform(rng, 0, 3 * static_cast<std::int64_t>(p));
      MatrixQSeries eta = random_matrix_series(rng, 2, p, b);
      const int allowed = (b <= 1 ? 0 : static_cast<int>(std::ceil(std::log(static_cast<double>(b)) / std::log(p) - 1e-12))) + 1;
      bool ok = true;
      int steps = 0;
      while (steps < allowed && !(eta.size() == 0 || (eta.size() == 1 && eta.terms().front().first.is_zero()))) {
        const MatrixQSeries next = cartier(eta);
        for (const auto& [k, v] : next.terms()) ok = ok && eta.coefficient(k.times(p)) == v;
        for (const auto& [k, v] : eta.terms())
          if (k.entries_divisible_by(p) && k.trace_scaled() <= p * next.max_trace_scaled())
            ok = ok && next.coefficient(k.divided_by(p)) == v;
        eta = next;
        ++steps;
      }
      for (const auto& [k, v] : eta.terms()) ok = ok && k.is_zero();
      if (ok) ++cartier_ok;
    }
    rep.lines.push_back({"vanishing.cartier-terminates",
                         params({{"p", str(p)}, {"seed", str(static_cast<std::int64_t>(o.seed))}, {"series", str(kSeries)}}),
                         verdict(cartier_ok == kSeries), "ok=" + str(cartier_ok)});

    // Equivariance: constructed series pass, a(0) != 0 and a broken key fail.
    const auto us = unimodular_box(2, 1);
    const MatrixQSeries good = random_equivariant_series(rng, p, 4);
    std::map<HalfIntegralForm, SymMatrixFp> with_zero(good.terms().begin(), good.terms().end());
    with_zero.insert_or_assign(HalfIntegralForm::zero(2, 1), SymMatrixFp(2, p, {1, 0, 0}));
    const MatrixQSeries bad_zero(2, p, good.bound(), 1, with_zero);
    const MatrixQSeries bad_key(2, p, 4, 1, {{HalfIntegralForm(2, 1, HalfIntegralForm::Entries{2, 1, 4}), SymMatrixFp(2, p, {1, 0, 0})}});
    rep.lines.push_back({"vanishing.equivariance", params({{"p", str(p)}, {"seed", str(static_cast<std::int64_t>(o.seed))}}),
                         verdict(equivariance_check(good, us) && !equivariance_check(bad_zero, us) && !equivariance_check(bad_key, us)),
                         "constructed=true a(0)!=0:false broken:false"});
  }
}

void suite_theta_identity(const SuiteOptions& o, Report& rep) {
  const std::int64_t b = o.bound.value_or(8);
  for (std::int64_t nu = 1; nu <= 3; ++nu) {
    int total = 0, ok = 0;
    for (std::int64_t a0 = -2; a0 <= 2; ++a0)
      for (std::int64_t a1 = -2; a1 <= 2; ++a1)
        for (std::int64_t a2 = -2; a2 <= 2; ++a2)
          for (std::int64_t an = 0; an < 2 * nu; ++an) {
            ++total;
            if (verify_theta_identity({a0, a1, a2}, an, nu, b)) ++ok;
          }
    rep.lines.push_back({"theta.derivative-identity", params({{"nu", str(nu)}, {"B", str(b)}}), verdict(ok == total),
                         "ok=" + str(ok) + "/" + str(total)});
  }

  const std::uint32_t p = o.p.value_or(5);
  const std::int64_t cb = std::min<std::int64_t>(b, 6);
  const QSeries chi = chi10_prop(cb);
  bool decomposes = true, roundtrip = true;
  for (std::int64_t nu = 1; nu <= 2; ++nu) {
    const JacobiSlice s = fourier_jacobi(chi, nu);
    try {
      const ThetaComponents c = theta_decompose(s);
      roundtrip = roundtrip && embed(c, s.t0_bound) == s;
    } catch (const Error&) {
      decomposes = false;
    }
  }
  rep.lines.push_back({"theta.chi10-decomposes", params({{"B", str(cb)}}), verdict(decomposes && roundtrip),
                       "nu=1,2 slices decompose and re-embed"});

  // Sections of a V-image are p-singular, those of chi10 itself are not.
  const QSeries chip = reduce_series(chi10_prop(2 * static_cast<std::int64_t>(p) + 2), p);
  const QSeries vimg = op_V(chip);
  const ThetaComponents vc = theta_decompose(fourier_jacobi(vimg, p));
  const ThetaComponents gc = theta_decompose(fourier_jacobi(chip, 1));
  const bool v_ok = section_p_singularity_check(vc, p, 4);
  const bool g_ok = section_p_singularity_check(gc, p, 4);
  rep.lines.push_back({"theta.section-p-singularity", params({{"p", str(p)}, {"M", "4"}}), verdict(v_ok && !g_ok && !vc.components.empty()),
                       std::string("V-image:") + (v_ok ? "singular" : "not") + " chi10:" + (g_ok ? "singular" : "not")});
}

void suite_phi_tower(const SuiteOptions& o, Report& rep) {
  const std::int64_t b = o.bound.value_or(8);
  const std::uint32_t p = o.p.value_or(7);
  const QSeries psi = psi4_prop(b), chi = chi10_prop(b);
  const QSeries e4 = eisenstein_g1(4, b);
  const QSeries phi = op_phi(psi);
  const BigRational c = std::get<BigRational>(phi.coefficient(HalfIntegralForm::zero(1, 1)));
  rep.lines.push_back({"phi.psi4-is-E4", params({{"B", str(b)}}), verdict(!c.is_zero() && eq_upto(phi, scalar_mul(e4, c), b)),
                       "constant=" + c.to_string()});
  rep.lines.push_back({"phi.chi10-vanishes", params({{"B", str(b)}}), verdict(op_phi(chi).is_zero()), "cusp"});
  const auto coeffs = express_in_generators_g1(phi, 4);
  const bool in_ring = coeffs.size() == 1 && coeffs.count({1, 0}) && coeffs.at({1, 0}) == c;
  rep.lines.push_back({"phi.in-genus1-ring", params({{"B", str(b)}}), verdict(in_ring), "Phi(psi4) = c*E4"});

  const auto us = unimodular_box(2, 1);
  const std::int64_t ib = std::min<std::int64_t>(b, 5);
  rep.lines.push_back({"generators.unimodular-invariance", params({{"B", str(ib)}}),
                       verdict(unimodular_invariant(psi.truncated(ib), us) && unimodular_invariant(chi.truncated(ib), us)),
                       "psi4 and chi10"});

  Rng rng(o.seed);
  int hom = 0;
  constexpr int kPairs = 20;
  for (int i = 0; i < kPairs; ++i) {
    const std::int64_t pb = uniform(rng, 0, 5);
    const QSeries f = random_series(rng, 2, i % 2 ? p : 0, pb), g = random_series(rng, 2, i % 2 ? p : 0, pb);
    if (op_phi(mul(f, g)) == mul(op_phi(f), op_phi(g))) ++hom;
  }
  rep.lines.push_back({"phi.ring-homomorphism", params({{"p", str(p)}, {"seed", str(static_cast<std::int64_t>(o.seed))}, {"pairs", str(kPairs)}}),
                       verdict(hom == kPairs), "ok=" + str(hom)});

  // Open-question experiments on the theta operators.
  const long k = 4;
  const std::int64_t qb = 3 * static_cast<std::int64_t>(p) + 6;
  const QSeries theta_e4 = op_theta_det(reduce_series(eisenstein_g1(k, qb), p));
  const long target = k + static_cast<long>(p) + 1;
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& [a, bb] : g1_monomials(target)) {
    const QSeries m = mul(pow(eisenstein_g1(4, qb), static_cast<unsigned>(a)), pow(eisenstein_g1(6, qb), static_cast<unsigned>(bb)));
    rows.push_back(dense_g1(reduce_series(m, p), qb));
  }
  const std::size_t base_rank = rank_fp(rows, p);
  rows.push_back(dense_g1(theta_e4, qb));
  const bool in_span = rank_fp(rows, p) == base_rank;
  rep.lines.push_back({"question.thetadet-genus1", params({{"p", str(p)}, {"k", str(k)}, {"B", str(qb)}}), Status::Report,
                       "theta(E4) in span of weight " + str(target) + ": " + (in_span ? "yes" : "no")});

  const std::int64_t gb = std::min<std::int64_t>(b, 4);
  const QSeries psip = reduce_series(psi.truncated(gb), p);
  const QSeries det_img = op_theta_det(psip);
  rep.lines.push_back({"question.thetadet-genus2", params({{"p", str(p)}, {"B", str(gb)}}), Status::Report,
                       std::string("invariant=") + (unimodular_invariant(det_img, us) ? "yes" : "no") +
                           " phi_zero=" + (op_phi(det_img).is_zero() ? "yes" : "no") +
                           " terms=" + str(static_cast<std::int64_t>(det_img.size()))});
  if ((2 * psip.scale()) % p != 0) {
    const MatrixQSeries mat = op_theta_matrix(psip);
    rep.lines.push_back({"question.thetamatrix-genus2", params({{"p", str(p)}, {"B", str(gb)}}), Status::Report,
                         std::string("equivariant=") + (equivariance_check(mat, us) ? "yes" : "no") +
                             " terms=" + str(static_cast<std::int64_t>(mat.size()))});
  }
}

using SuiteFn = void (*)(const SuiteOptions&, Report&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"ring-laws", suite_ring_laws},         {"frobenius", suite_frobenius},
      {"hasse-lift", suite_hasse_lift},       {"corollary", suite_corollary},
      {"irreducibility", suite_irreducibility}, {"starstar", suite_starstar},
      {"theta-identity", suite_theta_identity}, {"phi-tower", suite_phi_tower}};
  return r;
}

}  // namespace

std::string CheckLine::to_string() const {
  static const char* names[] = {"PASS", "FAIL", "REPORT"};
  std::string out = "CHECK " + name + ' ' + params + ' ' + names[static_cast<int>(status)];
  if (!data.empty()) out += ' ' + data;
  return out;
}

bool Report::passed() const {
  return std::none_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.status == Status::Fail; });
}

std::string Report::to_string() const {
  std::string out;
  for (const auto& l : lines) out += l.to_string() + '\n';
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

Report run_suite(const std::string& name, const SuiteOptions& options) {
  if (options.p) CoeffDomain::prime_field(*options.p);
  if (options.bound && *options.bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  Report rep;
  for (const auto& [n, fn] : registry())
    if (name == "all" || name == n) fn(options, rep);
  if (name != "all" && std::none_of(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; }))
    fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
  return rep;
}

QSeries random_series(Rng& rng, int genus, std::uint32_t p, std::int64_t bound, Weight weight, double density) {
  std::bernoulli_distribution keep(density);
  if (p == 0) {
    std::map<HalfIntegralForm, BigRational> coeffs;
    for (const auto& k : enumerate(genus, bound, 1))
      if (keep(rng)) coeffs.emplace(k, BigRational(BigInt(static_cast<long>(uniform(rng, -9, 9))), BigInt(static_cast<long>(uniform(rng, 1, 4)))));
    return QSeries::from_rational(genus, weight, bound, 1, coeffs);
  }
  std::map<HalfIntegralForm, std::int64_t> coeffs;
  for (const auto& k : enumerate(genus, bound, 1))
    if (keep(rng)) coeffs.emplace(k, uniform(rng, 1, p - 1));
  return QSeries::from_residues(genus, p, weight, bound, 1, coeffs);
}

MatrixQSeries random_matrix_series(Rng& rng, int genus, std::uint32_t p, std::int64_t bound, double density) {
  std::bernoulli_distribution keep(density);
  std::map<HalfIntegralForm, SymMatrixFp> coeffs;
  const std::size_t n = static_cast<std::size_t>(genus * (genus + 1) / 2);
  for (const auto& k : enumerate(genus, bound, 1)) {
    if (!keep(rng)) continue;
    std::vector<std::uint32_t> upper(n);
    for (auto& x : upper) x = static_cast<std::uint32_t>(uniform(rng, 0, p - 1));
    coeffs.emplace(k, SymMatrixFp(genus, p, std::move(upper)));
  }
  return MatrixQSeries(genus, p, bound, 1, coeffs);
}

MatrixQSeries random_equivariant_series(Rng& rng, std::uint32_t p, std::int64_t bound) {
  const auto box = unimodular_box(2, 1);
  std::map<HalfIntegralForm, SymMatrixFp> seeds;
  std::map<HalfIntegralForm, SymMatrixFp> coeffs;
  for (const auto& t : enumerate(2, bound, 1)) {
    if (t.det_scaled() <= 0) continue;
    const Reduction red = reduce_g2(t);
    auto it = seeds.find(red.form);
    if (it == seeds.end()) {
      SymMatrixFp s(2, p, {static_cast<std::uint32_t>(uniform(rng, 0, p - 1)), static_cast<std::uint32_t>(uniform(rng, 0, p - 1)),
                           static_cast<std::uint32_t>(uniform(rng, 0, p - 1))});
      SymMatrixFp sym(2, p);
      for (const auto& u : box)
        if (act(u, red.form) == red.form) sym = sym + s.congruent(u);
      it = seeds.emplace(red.form, sym).first;
    }
    // act(W, t) = T_red, so a(t) = t(W^-1) a(T_red) W^-1.
    coeffs.emplace(t, it->second.congruent(red.witness.inverse()));
  }
  return MatrixQSeries(2, p, bound, 1, coeffs);
}

}  // namespace smfp
