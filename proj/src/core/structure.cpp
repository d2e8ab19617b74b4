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


#include "core/structure.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "core/generators.hpp"
#include "core/operators.hpp"

namespace smfp {
namespace {

std::uint32_t require_prime_field(const QSeries& f, const char* what) {
  if (!f.domain().is_prime_field()) fail(ErrorCode::DomainMismatch, std::string(what) + " needs a series over F_p");
  return f.domain().modulus();
}

void require_odd_prime(std::uint32_t p) { CoeffDomain::prime_field(p); }

/// Null space of rows (each of length ncols) over F_p; one basis vector per
/// free column, with that column set to 1.
std::vector<std::vector<std::uint32_t>> nullspace_fp(std::vector<std::vector<std::uint32_t>> rows, std::size_t ncols,
                                                     std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    auto it = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(), [&](const auto& r) { return r[col] != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<long>(rank), it);
    auto& piv = rows[rank];
    const std::uint32_t inv = FpElement(piv[col], p).inverse().residue();
    for (auto& x : piv) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint64_t c = rows[r][col];
      for (std::size_t j = 0; j < ncols; ++j)
        rows[r][j] = static_cast<std::uint32_t>((rows[r][j] + (p - c) * piv[j]) % p);
    }
    pivots.push_back(col);
    ++rank;
  }
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<std::uint32_t> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = rows[r][free] == 0 ? 0 : p - rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// --- graded polynomials over F_p ------------------------------------------------

using Component = std::map<G1Monomial, std::uint32_t>;

Component multiply(const Component& a, const Component& b, std::uint32_t p) {
  Component out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto& slot = out[{ma.first + mb.first, ma.second + mb.second}];
      slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(ca) * cb) % p);
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void accumulate(Component& acc, const Component& x, std::uint32_t p) {
  for (const auto& [m, c] : x) acc[m] = (acc[m] + c) % p;
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
}

GradedPoly graded_product(const GradedPoly& f, const GradedPoly& g, std::uint32_t p) {
  GradedPoly out;
  for (const auto& [wf, cf] : f)
    for (const auto& [wg, cg] : g) accumulate(out[wf + wg], multiply(cf, cg, p), p);
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

/// Positive weights up to `top` that carry at least one monomial.
std::vector<long> realizable_weights(long top) {
  std::vector<long> out;
  for (long w = 4; w <= top; w += 2)
    if (!g1_monomials(w).empty()) out.push_back(w);
  return out;
}

/// Visits every assignment of the components of weights 4..top (top
/// component nonzero) with constant term c0; stops when visit returns true.
bool for_each_graded(std::uint32_t p, long top, std::uint32_t c0, std::uint64_t& count,
                     const std::function<bool(const GradedPoly&)>& visit) {
  struct Slot {
    long weight;
    G1Monomial mono;
  };
  std::vector<Slot> slots;
  for (long w : realizable_weights(top))
    for (const auto& m : g1_monomials(w)) slots.push_back({w, m});
  std::vector<std::uint32_t> digits(slots.size(), 0);
  while (true) {
    GradedPoly f;
    f[0][{0, 0}] = c0;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (digits[i]) f[slots[i].weight][slots[i].mono] = digits[i];
    if (f.count(top)) {
      ++count;
      if (visit(f)) return true;
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) return false;
  }
}

}  // namespace

bool is_p_singular(const QSeries& f) {
  const std::uint32_t p = require_prime_field(f, "is_p_singular");
  if ((2 * f.scale()) % p == 0)
    fail(ErrorCode::ScaleModulusClash, "p = " + std::to_string(p) + " divides 2d = " + std::to_string(2 * f.scale()));
  for (const auto& [k, v] : f.residue_terms())
    if (!k.entries_divisible_by(p)) return false;
  return true;
}

PRoot p_root(const QSeries& f, long k) {
  const std::uint32_t p = require_prime_field(f, "p_root");
  if (k < 0) fail(ErrorCode::InvalidArgument, "weight must be nonnegative");
  if (f.weight() != Weight(k))
    fail(ErrorCode::WeightMismatch, "series has weight " + f.weight().to_string() + ", expected " + std::to_string(k));
  if (!is_p_singular(f)) fail(ErrorCode::InvalidArgument, "series is not totally p-singular");
  const long pl = static_cast<long>(p);
  PRoot out;
  out.r = ((-k) % pl + pl) % pl;
  const long rest = k - out.r * (pl - 1);
  if (rest < 0)
    fail(ErrorCode::WeightInfeasible, "k = " + std::to_string(k) + " admits no r(p-1) + p k' with k' >= 0 at p = " +
                                          std::to_string(p));
  out.kprime = rest / pl;
  out.h = op_U(f).with_weight(Weight(out.kprime));
  const std::int64_t b = out.h.bound();
  if (!eq_upto(pow(out.h, p), f, b) || !eq_upto(op_V(out.h, p * b).with_weight(f.weight()), f, p * b))
    fail(ErrorCode::NoSolution, "p-th root does not reproduce the input");
  return out;
}

bool weight_congruence(long k1, long k2, std::uint32_t p) {
  require_odd_prime(p);
  const long m = static_cast<long>(p) - 1;
  return ((k1 - k2) % m + m) % m == 0;
}

std::vector<G1Monomial> g1_monomials(long k) {
  std::vector<G1Monomial> out;
  if (k < 0 || k % 2) return out;
  for (int a = 0; 4L * a <= k; ++a)
    if ((k - 4L * a) % 6 == 0) out.emplace_back(a, static_cast<int>((k - 4L * a) / 6));
  return out;
}

std::map<G1Monomial, BigRational> express_in_generators_g1(const QSeries& f, long k) {
  if (f.genus() != 1) fail(ErrorCode::InvalidArgument, "express_in_generators_g1 needs genus 1");
  if (!f.domain().is_rational()) fail(ErrorCode::DomainMismatch, "express_in_generators_g1 works over Q");
  if (k < 0 || k % 2) fail(ErrorCode::InvalidArgument, "weight must be even and nonnegative");
  if (f.weight() != Weight(k))
    fail(ErrorCode::WeightMismatch, "series has weight " + f.weight().to_string() + ", expected " + std::to_string(k));
  const auto monos = g1_monomials(k);
  const std::int64_t bound = f.bound();
  if (bound < static_cast<std::int64_t>(monos.size()))
    fail(ErrorCode::InsufficientPrecision, "bound " + std::to_string(bound) + " is below the " +
                                               std::to_string(monos.size()) + " monomials of weight " + std::to_string(k));
  const QSeries g = f.compacted();
  if (g.scale() != 1) fail(ErrorCode::NoSolution, "series has non-integral exponents");

  const QSeries e4 = eisenstein_g1(4, bound), e6 = eisenstein_g1(6, bound);
  const auto n = monos.size();
  // Augmented system: one row per exponent 0..bound.
  std::vector<std::vector<BigRational>> rows(static_cast<std::size_t>(bound + 1), std::vector<BigRational>(n + 1));
  for (std::size_t c = 0; c < n; ++c) {
    const QSeries m = mul(pow(e4, static_cast<unsigned>(monos[c].first)), pow(e6, static_cast<unsigned>(monos[c].second)));
    for (const auto& [key, v] : m.rational_terms()) rows[static_cast<std::size_t>(key.at(0, 0) / 2)][c] = v;
  }
  for (const auto& [key, v] : g.rational_terms()) rows[static_cast<std::size_t>(key.at(0, 0) / 2)][n] = v;

  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < n; ++col) {
    auto it = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(), [&](const auto& r) { return !r[col].is_zero(); });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<long>(rank), it);
    const BigRational inv = BigRational(1) / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const BigRational c = rows[r][col];
      for (std::size_t j = 0; j <= n; ++j) rows[r][j] -= c * rows[rank][j];
    }
    pivots.push_back(col);
    ++rank;
  }
  if (rank < n) fail(ErrorCode::InsufficientPrecision, "too few coefficients to separate the monomials");
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (!rows[r][n].is_zero()) fail(ErrorCode::NoSolution, "series is not in the span of E4^a E6^b of weight " + std::to_string(k));
  std::map<G1Monomial, BigRational> out;
  for (std::size_t r = 0; r < rank; ++r)
    if (!rows[r][n].is_zero()) out.emplace(monos[pivots[r]], rows[r][n]);
  return out;
}

std::string render(const GradedPoly& f) {
  std::string out;
  for (const auto& [w, comp] : f)
    for (const auto& [m, c] : comp) {
      if (!out.empty()) out += " + ";
      std::string mono;
      auto var = [&](const char* name, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += '*';
        mono += name;
        if (e > 1) mono += '^' + std::to_string(e);
      };
      var("x4", m.first);
      var("x6", m.second);
      if (mono.empty()) out += std::to_string(c);
      else out += (c == 1 ? "" : std::to_string(c) + "*") + mono;
    }
  return out.empty() ? "0" : out;
}

IrreducibilityResult irreducibility_search_g1(std::uint32_t p) {
  require_odd_prime(p);
  if (p < 5 || p > 13) fail(ErrorCode::InvalidArgument, "search is supported for 5 <= p <= 13");
  IrreducibilityResult res;
  res.p = p;
  const long top = static_cast<long>(p) - 1;
  const auto monos = g1_monomials(top);
  const auto coeffs = express_in_generators_g1(eisenstein_g1(top, static_cast<std::int64_t>(monos.size()) + 4), top);
  for (const auto& [m, c] : coeffs) {
    const auto r = reduce_mod_p(c, p).residue();
    if (r) res.hasse[top][m] = r;
  }

  for (long s : realizable_weights(top)) {
    const long t = top - s;
    if (t < 4 || g1_monomials(t).empty()) continue;
    res.splits.emplace_back(s, t);
    const bool found = for_each_graded(p, s, 1, res.assignments, [&](const GradedPoly& f) {
      return for_each_graded(p, t, p - 1, res.assignments, [&](const GradedPoly& g) {
        GradedPoly prod = graded_product(f, g, p);
        GradedPoly target = res.hasse;
        target[0][{0, 0}] = p - 1;
        if (prod != target) return false;
        res.factor_f = f;
        res.factor_g = g;
        return true;
      });
    });
    if (found) {
      res.irreducible = false;
      break;
    }
  }
  return res;
}

std::vector<Sym2> star_star_solver(std::uint32_t p, const Sym2& tbar) {
  require_odd_prime(p);
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::uint32_t v1 = 0; v1 < p; ++v1)
    for (std::uint32_t v2 = 0; v2 < p; ++v2) {
      const std::uint64_t a = static_cast<std::uint64_t>(v1) * v1 % p, b = 2ULL * v1 * v2 % p,
                          c = static_cast<std::uint64_t>(v2) * v2 % p;
      if ((tbar[0] % p * a + tbar[1] % p * b + tbar[2] % p * c) % p == 0) continue;
      rows.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)});
    }
  std::vector<Sym2> basis;
  for (const auto& v : nullspace_fp(rows, 3, p)) basis.push_back({v[0], v[1], v[2]});
  return basis;
}

std::vector<Sym2> rank1_classify(std::uint32_t p, std::uint32_t nu) {
  require_odd_prime(p);
  if (nu % p == 0) fail(ErrorCode::InvalidArgument, "nu must be nonzero mod p");
  nu %= p;
  std::vector<Sym2> out;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      if ((static_cast<std::uint64_t>(a) * nu + static_cast<std::uint64_t>(p - b) * b) % p == 0) out.push_back({a, b, nu});
  return out;
}

bool equivariance_check(const MatrixQSeries& eta, const std::vector<UnimodularMatrix>& us) {
  const std::int64_t max_trace = eta.max_trace_scaled();
  for (const auto& [t, s] : eta.terms()) {
    if (t.is_zero()) return false;
    for (const auto& u : us) {
      if (u.genus() != eta.genus()) fail(ErrorCode::InvalidArgument, "unimodular matrix has the wrong genus");
      const HalfIntegralForm image = act(u, t);
      if (image.trace_scaled() > max_trace) continue;
      if (!(eta.coefficient(image) == s.congruent(u))) return false;
    }
  }
  return true;
}

bool section_p_singularity_check(const ThetaComponents& components, std::uint32_t p, std::int64_t level_scale) {
  require_odd_prime(p);
  if (level_scale <= 0 || level_scale % p == 0)
    fail(ErrorCode::InvalidArgument, "level scale must be positive and prime to p");
  const BigInt den = BigInt(4) * components.index * components.scale * components.scale;
  for (const auto& [r, by_disc] : components.components)
    for (const auto& [disc, c] : by_disc) {
      const bool zero = std::visit([](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, BigRational>) return v.is_zero();
        else return v.residue() == 0;
      }, c);
      if (zero) continue;
      const BigInt num = BigInt(static_cast<long>(disc)) * level_scale;
      if (num % den != 0)
        fail(ErrorCode::InvalidArgument, "level scale " + std::to_string(level_scale) + " does not clear the exponent of D = " +
                                             std::to_string(disc));
      if (BigInt(num / den) % p != 0) return false;
    }
  return true;
}

namespace {

std::pair<QSeries, QSeries> tp_sides(const QSeries& lift, std::uint32_t p, long k) {
  require_odd_prime(p);
  if (lift.genus() != 1) fail(ErrorCode::InvalidArgument, "T(p) comparison is genus 1");
  if (!lift.domain().is_rational()) fail(ErrorCode::DomainMismatch, "T(p) comparison needs an integral lift over Q");
  if (k < 2) fail(ErrorCode::InvalidArgument, "T(p) comparison needs k >= g + 1 = 2");
  const QSeries reduced = reduce_series(lift, p);
  const QSeries tp = reduce_series(hecke_Tl_g1(lift, p, k), p);
  return {tp, reduced};
}

}  // namespace

bool tp_equals_v_check(const QSeries& lift, std::uint32_t p, long k) {
  const auto [tp, reduced] = tp_sides(lift, p, k);
  return eq_upto(tp, op_V(reduced, tp.bound()), tp.bound());
}

bool tp_equals_u_check(const QSeries& lift, std::uint32_t p, long k) {
  const auto [tp, reduced] = tp_sides(lift, p, k);
  return eq_upto(tp, op_U(reduced), tp.bound());
}

}  // namespace smfp
