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


#include "core/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

namespace smfp {
namespace {

HalfIntegralForm g1_key(std::int64_t n) { return HalfIntegralForm(1, 1, HalfIntegralForm::Entries{2 * n}); }

BigInt divisor_power_sum(std::int64_t n, unsigned long e) {
  BigInt s = 0, t;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), e);
    s += t;
    if (d * d != n) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(n / d), e);
      s += t;
    }
  }
  return s;
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// A theta constant at scale 8 has keys M = 2 k tk with k = 2n, so every
// entry of M is even. Grid cells store (M11/2, M22/2, M12/2) = (k1^2, k2^2, k1 k2)
// and their sums; the trace in these units is at most 8B.
struct GridTerm {
  std::int64_t i, j, s;
  long c;
};

std::vector<GridTerm> theta_terms(const ThetaCharacteristic& m, std::int64_t bound) {
  const std::int64_t lim = 8 * bound;
  const std::int64_t r = isqrt(lim);
  std::vector<GridTerm> out;
  const std::int64_t b1 = m.mprime() & 1u, b2 = (m.mprime() >> 1) & 1u;
  const std::int64_t c1 = m.mdoubleprime() & 1u, c2 = (m.mdoubleprime() >> 1) & 1u;
  for (std::int64_t k1 = -r; k1 <= r; ++k1) {
    if (((k1 - b1) & 1) != 0) continue;
    for (std::int64_t k2 = -r; k2 <= r; ++k2) {
      if (((k2 - b2) & 1) != 0 || k1 * k1 + k2 * k2 > lim) continue;
      const std::int64_t x1 = (k1 - b1) / 2, x2 = (k2 - b2) / 2;
      const long sign = ((x1 * c1 + x2 * c2) & 1) ? -1 : 1;
      out.push_back({k1 * k1, k2 * k2, k1 * k2, sign});
    }
  }
  // Merge +k and -k.
  std::sort(out.begin(), out.end(), [](const GridTerm& a, const GridTerm& b) {
    return std::tuple(a.i + a.j, a.i, a.s, a.j) < std::tuple(b.i + b.j, b.i, b.s, b.j);
  });
  std::vector<GridTerm> merged;
  for (const auto& t : out) {
    if (!merged.empty() && merged.back().i == t.i && merged.back().j == t.j && merged.back().s == t.s)
      merged.back().c += t.c;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const GridTerm& t) { return t.c == 0; });
  return merged;
}

std::int64_t min_trace(const std::vector<GridTerm>& f) { return f.empty() ? 0 : f.front().i + f.front().j; }

/// Dense accumulator for products of theta constants. Values are signed
/// lattice-point counts; __int128 leaves ample headroom at desk-scale
/// bounds and every operation is overflow-checked.
class ThetaGrid {
 public:
  explicit ThetaGrid(std::int64_t lim)
      : lim_(lim), cells_(static_cast<std::size_t>((lim + 1) * (lim + 1) * (2 * lim + 1)), 0) {}

  __int128& at(std::int64_t i, std::int64_t j, std::int64_t s) {
    return cells_[static_cast<std::size_t>((i * (lim_ + 1) + j) * (2 * lim_ + 1) + (s + lim_))];
  }

  static ThetaGrid from_terms(std::int64_t lim, const std::vector<GridTerm>& f, std::int64_t room) {
    ThetaGrid g(lim);
    for (const auto& t : f)
      if (t.i + t.j <= room) g.at(t.i, t.j, t.s) += t.c;
    return g;
  }

  /// this * f, keeping cells with trace <= room.
  ThetaGrid times(const std::vector<GridTerm>& f, std::int64_t room) {
    ThetaGrid out(lim_);
    for (std::int64_t i = 0; i <= room; ++i)
      for (std::int64_t j = 0; i + j <= room; ++j) {
        const std::int64_t sl = isqrt(i * j);
        for (std::int64_t s = -sl; s <= sl; ++s) {
          const __int128 c = at(i, j, s);
          if (c == 0) continue;
          const std::int64_t left = room - i - j;
          for (const auto& t : f) {
            if (t.i + t.j > left) break;
            __int128 prod;
            __int128& dst = out.at(i + t.i, j + t.j, s + t.s);
            if (__builtin_mul_overflow(c, static_cast<__int128>(t.c), &prod) ||
                __builtin_add_overflow(dst, prod, &dst))
              fail(ErrorCode::Overflow, "theta product coefficient exceeds 127 bits");
          }
        }
      }
    return out;
  }

  void add(const ThetaGrid& o) {
    for (std::size_t n = 0; n < cells_.size(); ++n)
      if (__builtin_add_overflow(cells_[n], o.cells_[n], &cells_[n]))
        fail(ErrorCode::Overflow, "theta sum coefficient exceeds 127 bits");
  }

  /// Genus-2 series at scale 8 with every coefficient divided by `divisor`.
  QSeries to_series(Weight weight, std::int64_t bound, const BigRational& divisor) {
    std::map<HalfIntegralForm, BigRational> coeffs;
    for (std::int64_t i = 0; i <= lim_; ++i)
      for (std::int64_t j = 0; i + j <= lim_; ++j) {
        const std::int64_t sl = isqrt(i * j);
        for (std::int64_t s = -sl; s <= sl; ++s) {
          const __int128 c = at(i, j, s);
          if (c == 0) continue;
          coeffs.emplace(HalfIntegralForm(2, 8, HalfIntegralForm::Entries{2 * i, 2 * s, 2 * j}),
                         BigRational(to_bigint(c)) / divisor);
        }
      }
    return QSeries::from_rational(2, weight, bound, 8, coeffs);
  }

  static BigInt to_bigint(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(u >> 64));
    BigInt r = (hi << 64) + BigInt(static_cast<unsigned long>(u & ~0ULL));
    return neg ? BigInt(-r) : r;
  }

 private:
  std::int64_t lim_;
  std::vector<__int128> cells_;
};

/// Product of the given factors, truncating every partial product at the
/// room left after the minimal traces of the factors still to come.
ThetaGrid theta_product(const std::vector<std::vector<GridTerm>>& factors, std::int64_t lim) {
  std::int64_t rest = 0;
  for (const auto& f : factors) rest += min_trace(f);
  rest -= min_trace(factors.front());
  ThetaGrid acc = ThetaGrid::from_terms(lim, factors.front(), lim - rest);
  for (std::size_t n = 1; n < factors.size(); ++n) {
    rest -= min_trace(factors[n]);
    acc = acc.times(factors[n], lim - rest);
  }
  return acc;
}

}  // namespace

ThetaCharacteristic::ThetaCharacteristic(int genus, unsigned mprime_bits, unsigned mdoubleprime_bits)
    : genus_(genus), mprime_(mprime_bits), mdoubleprime_(mdoubleprime_bits) {
  if (genus < 1 || genus > 16) fail(ErrorCode::InvalidArgument, "characteristic genus out of range");
  const unsigned mask = (1u << genus) - 1;
  if ((mprime_bits & ~mask) || (mdoubleprime_bits & ~mask))
    fail(ErrorCode::InvalidArgument, "characteristic bits exceed the genus");
}

ThetaCharacteristic ThetaCharacteristic::parse(const std::string& digits) {
  if (digits.empty() || digits.size() % 2 || digits.size() > 32)
    fail(ErrorCode::InvalidArgument, "characteristic '" + digits + "' must have 2g binary digits");
  const int g = static_cast<int>(digits.size() / 2);
  unsigned a = 0, b = 0;
  for (int i = 0; i < 2 * g; ++i) {
    const char ch = digits[static_cast<std::size_t>(i)];
    if (ch != '0' && ch != '1') fail(ErrorCode::InvalidArgument, "characteristic '" + digits + "' is not binary");
    if (ch == '1') (i < g ? a : b) |= 1u << (i < g ? i : i - g);
  }
  return ThetaCharacteristic(g, a, b);
}

int ThetaCharacteristic::parity() const { return std::popcount(mprime_ & mdoubleprime_) % 2 ? -1 : 1; }

std::string ThetaCharacteristic::to_string() const {
  std::string s;
  for (int i = 0; i < genus_; ++i) s += ((mprime_ >> i) & 1u) ? '1' : '0';
  for (int i = 0; i < genus_; ++i) s += ((mdoubleprime_ >> i) & 1u) ? '1' : '0';
  return s;
}

std::vector<ThetaCharacteristic> ThetaCharacteristic::all(int genus) {
  std::vector<ThetaCharacteristic> out;
  for (unsigned a = 0; a < (1u << genus); ++a)
    for (unsigned b = 0; b < (1u << genus); ++b) out.emplace_back(genus, a, b);
  return out;
}

std::vector<ThetaCharacteristic> ThetaCharacteristic::even(int genus) {
  auto out = all(genus);
  std::erase_if(out, [](const ThetaCharacteristic& m) { return !m.is_even(); });
  return out;
}

QSeries eisenstein_g1(long k, std::int64_t bound) {
  if (k < 4 || k % 2) fail(ErrorCode::InvalidArgument, "Eisenstein weight must be even and >= 4");
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  const BigRational c = BigRational(-2 * k) / bernoulli(static_cast<int>(k));
  std::map<HalfIntegralForm, BigRational> coeffs{{g1_key(0), BigRational(1)}};
  for (std::int64_t n = 1; n <= bound; ++n)
    coeffs.emplace(g1_key(n), c * BigRational(divisor_power_sum(n, static_cast<unsigned long>(k - 1))));
  return QSeries::from_rational(1, Weight(k), bound, 1, coeffs);
}

QSeries delta_g1(std::int64_t bound) {
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  std::vector<BigInt> a(static_cast<std::size_t>(bound + 1), 0);
  if (bound >= 1) a[0] = 1;
  for (std::int64_t n = 1; n < bound; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::int64_t i = bound - 1; i >= n; --i) a[static_cast<std::size_t>(i)] -= a[static_cast<std::size_t>(i - n)];
  std::map<HalfIntegralForm, BigRational> coeffs;
  for (std::int64_t m = 1; m <= bound; ++m) coeffs.emplace(g1_key(m), BigRational(a[static_cast<std::size_t>(m - 1)]));
  return QSeries::from_rational(1, Weight(12), bound, 1, coeffs);
}

QSeries hasse_series(int genus, std::uint32_t p, std::int64_t bound) {
  const auto domain = CoeffDomain::prime_field(p);
  return QSeries::constant(genus, domain, Weight(static_cast<long>(p) - 1), bound, 1);
}

QSeries theta_constant_g2(const ThetaCharacteristic& m, std::int64_t bound) {
  if (m.genus() != 2) fail(ErrorCode::InvalidArgument, "theta constants are built at genus 2");
  if (!m.is_even()) fail(ErrorCode::OddCharacteristic, "characteristic " + m.to_string() + " is odd");
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  std::map<HalfIntegralForm, BigRational> coeffs;
  for (const auto& t : theta_terms(m, bound))
    coeffs.emplace(HalfIntegralForm(2, 8, HalfIntegralForm::Entries{2 * t.i, 2 * t.s, 2 * t.j}), BigRational(t.c));
  return QSeries::from_rational(2, Weight(1, 2), bound, 8, coeffs);
}

QSeries chi10_prop(std::int64_t bound) {
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  const std::int64_t lim = 8 * bound;
  std::vector<std::vector<GridTerm>> factors;
  for (const auto& m : ThetaCharacteristic::even(2)) {
    auto t = theta_terms(m, bound);
    factors.push_back(t);
    factors.push_back(std::move(t));
  }
  // Largest minimal traces first keeps early partial products small.
  std::stable_sort(factors.begin(), factors.end(),
                   [](const auto& a, const auto& b) { return min_trace(a) > min_trace(b); });
  QSeries raw = theta_product(factors, lim).to_series(Weight(10), bound, BigRational(1));
  if (raw.is_zero()) return raw.compacted();
  const BigRational lead = raw.rational_terms().front().second;
  return scalar_mul(raw, BigRational(1) / lead).compacted();
}

QSeries psi4_prop(std::int64_t bound) {
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  const std::int64_t lim = 8 * bound;
  ThetaGrid sum(lim);
  for (const auto& m : ThetaCharacteristic::even(2)) {
    const auto t = theta_terms(m, bound);
    sum.add(theta_product(std::vector<std::vector<GridTerm>>(8, t), lim));
  }
  return sum.to_series(Weight(4), bound, BigRational(4)).compacted();
}

}  // namespace smfp
