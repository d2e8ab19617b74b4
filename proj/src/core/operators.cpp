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

#include "core/operators.hpp"

#include <cmath>

#include "core/series_kernels.hpp"

namespace smfp {
namespace {

void record(OperatorLog* log, std::string name, const QSeries& in, Weight out_weight, std::int64_t out_bound) {
  if (!log) return;
  *log = OperatorLog{std::move(name), in.weight(), out_weight, in.bound(), out_bound};
}

std::uint32_t require_prime_field(const QSeries& f, const char* op) {
  if (!f.domain().is_prime_field())
    fail(ErrorCode::DomainMismatch, std::string(op) + " needs a series over F_p");
  return f.domain().modulus();
}

/// Rebuilds a series after mapping every key through fn (nullopt drops it).
template <class Fn>
QSeries remap_keys(const QSeries& f, int genus, Weight weight, std::int64_t bound, std::int64_t scale, Fn fn) {
  const std::int64_t max_trace = 2 * scale * bound;
  auto remap = [&](const auto& terms) {
    std::decay_t<decltype(terms)> out;
    for (const auto& [k, v] : terms)
      if (auto nk = fn(k); nk && nk->trace_scaled() <= max_trace) out.emplace_back(*nk, v);
    detail::sort_terms(out);
    return out;
  };
  if (f.domain().is_rational()) return QSeries::adopt(genus, weight, bound, scale, remap(f.rational_terms()));
  return QSeries::adopt(genus, f.domain().modulus(), weight, bound, scale, remap(f.residue_terms()));
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::string OperatorLog::to_string() const {
  return "op=" + name + " k_in=" + input_weight.to_string() + " k_out=" + output_weight.to_string() +
         " B_in=" + std::to_string(input_bound) + " B_out=" + std::to_string(output_bound);
}

QSeries op_U(const QSeries& f, OperatorLog* log) {
  const auto p = static_cast<std::int64_t>(require_prime_field(f, "U"));
  const std::int64_t bound = f.bound() / p;
  record(log, "U", f, f.weight(), bound);
  return remap_keys(f, f.genus(), f.weight(), bound, f.scale(), [p](const HalfIntegralForm& k) {
    return k.entries_divisible_by(p) ? std::optional(k.divided_by(p)) : std::nullopt;
  });
}

QSeries op_V(const QSeries& f, std::optional<std::int64_t> cap, OperatorLog* log) {
  const auto p = static_cast<std::int64_t>(require_prime_field(f, "V"));
  std::int64_t bound = f.bound() * p;
  if (cap) bound = std::min(bound, *cap);
  const Weight w = f.weight() * p;
  record(log, "V", f, w, bound);
  return remap_keys(f, f.genus(), w, bound, f.scale(),
                    [p](const HalfIntegralForm& k) { return std::optional(k.times(p)); });
}

QSeries op_phi(const QSeries& f, OperatorLog* log) {
  if (f.genus() < 2) fail(ErrorCode::InvalidArgument, "Phi needs genus >= 2");
  const int g = f.genus();
  record(log, "phi", f, f.weight(), f.bound());
  return remap_keys(f, g - 1, f.weight(), f.bound(), f.scale(), [g](const HalfIntegralForm& k) {
    // psd: M_gg = 0 forces the whole last row to vanish.
    return k.at(g - 1, g - 1) == 0 ? std::optional(k.leading_block()) : std::nullopt;
  });
}

QSeries hecke_Tl_g1(const QSeries& f, std::int64_t l, long k, OperatorLog* log) {
  if (f.genus() != 1) fail(ErrorCode::InvalidArgument, "hecke_Tl_g1 needs genus 1");
  if (l < 2 || !is_prime(static_cast<std::uint64_t>(l))) fail(ErrorCode::InvalidArgument, "l must be prime");
  if (!(f.weight() == Weight(k))) fail(ErrorCode::WeightMismatch, "k must equal the weight of f");
  if (f.domain().is_prime_field() && static_cast<std::uint32_t>(l) == f.domain().modulus())
    fail(ErrorCode::InvalidArgument, "T(p) is not available over F_p; it is compared with V separately");
  const QSeries g = f.compacted();
  if (g.scale() != 1) fail(ErrorCode::InvalidArgument, "hecke_Tl_g1 needs integral exponents");
  const std::int64_t bound = f.bound() / l;
  record(log, "hecke", f, f.weight(), bound);
  auto key = [](std::int64_t n) { return HalfIntegralForm(1, 1, HalfIntegralForm::Entries{2 * n}); };

  if (f.domain().is_rational()) {
    BigInt lk;
    BigRational factor;
    if (k >= 1) {
      mpz_ui_pow_ui(lk.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(k - 1));
      factor = BigRational(lk);
    } else {
      mpz_ui_pow_ui(lk.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(1 - k));
      factor = BigRational(BigInt(1), lk);
    }
    std::map<HalfIntegralForm, BigRational> out;
    for (std::int64_t n = 0; n <= bound; ++n) {
      BigRational c = std::get<BigRational>(g.coefficient(key(l * n)));
      if (n % l == 0) c += factor * std::get<BigRational>(g.coefficient(key(n / l)));
      out.emplace(key(n), c);
    }
    return QSeries::from_rational(1, f.weight(), bound, 1, out);
  }
  const std::uint32_t p = f.domain().modulus();
  FpElement lf(l, p);
  const FpElement factor = k >= 1 ? lf.pow(static_cast<std::uint64_t>(k - 1)) : lf.inverse().pow(static_cast<std::uint64_t>(1 - k));
  std::map<HalfIntegralForm, std::int64_t> out;
  for (std::int64_t n = 0; n <= bound; ++n) {
    FpElement c = std::get<FpElement>(g.coefficient(key(l * n)));
    if (n % l == 0) c = c + factor * std::get<FpElement>(g.coefficient(key(n / l)));
    out.emplace(key(n), c.residue());
  }
  return QSeries::from_residues(1, p, f.weight(), bound, 1, out);
}

MatrixQSeries cartier(const MatrixQSeries& eta, OperatorLog* log) {
  const auto p = static_cast<std::int64_t>(eta.modulus());
  const std::int64_t bound = eta.bound() / p;
  if (log) *log = OperatorLog{"cartier", eta.weight(), eta.weight(), eta.bound(), bound};
  std::map<HalfIntegralForm, SymMatrixFp> out;
  for (const auto& [k, v] : eta.terms())
    if (k.entries_divisible_by(p)) {
      auto nk = k.divided_by(p);
      if (nk.trace_scaled() <= 2 * eta.scale() * bound) out.emplace(std::move(nk), v);  // x^{1/p} = x on F_p
    }
  return MatrixQSeries(eta.genus(), eta.modulus(), bound, eta.scale(), out, eta.weight());
}

QSeries op_theta_det(const QSeries& f, OperatorLog* log) {
  record(log, "thetadet", f, f.weight(), f.bound());
  if (f.domain().is_rational()) {
    std::map<HalfIntegralForm, BigRational> out;
    for (const auto& [k, v] : f.rational_terms()) out.emplace(k, v * k.det());
    return QSeries::from_rational(f.genus(), f.weight(), f.bound(), f.scale(), out);
  }
  const std::uint32_t p = f.domain().modulus();
  std::map<HalfIntegralForm, std::int64_t> out;
  for (const auto& [k, v] : f.residue_terms()) {
    FpElement det(0, p);
    try {
      det = reduce_mod_p(k.det(), p);
    } catch (const Error&) {
      fail(ErrorCode::ScaleModulusClash, "det(T) at " + k.render() + " is not representable mod " + std::to_string(p));
    }
    out.emplace(k, (det * FpElement(v, p)).residue());
  }
  return QSeries::from_residues(f.genus(), p, f.weight(), f.bound(), f.scale(), out);
}

MatrixQSeries op_theta_matrix(const QSeries& f, OperatorLog* log) {
  const std::uint32_t p = require_prime_field(f, "thetamatrix");
  if ((2 * f.scale()) % p == 0)
    fail(ErrorCode::ScaleModulusClash, "entries of T at scale " + std::to_string(f.scale()) + " are not representable mod " + std::to_string(p));
  record(log, "thetamatrix", f, f.weight(), f.bound());
  const FpElement inv2d = FpElement(2 * f.scale(), p).inverse();
  std::map<HalfIntegralForm, SymMatrixFp> out;
  for (const auto& [k, v] : f.residue_terms()) {
    SymMatrixFp m(f.genus(), p);
    for (int i = 0; i < f.genus(); ++i)
      for (int j = i; j < f.genus(); ++j)
        m.set(i, j, (FpElement(k.at(i, j), p) * inv2d * FpElement(v, p)).residue());
    out.emplace(k, std::move(m));
  }
  return MatrixQSeries(f.genus(), p, f.bound(), f.scale(), out, f.weight());
}

JacobiSlice fourier_jacobi(const QSeries& f, std::int64_t nu) {
  if (f.genus() != 2) fail(ErrorCode::InvalidArgument, "Fourier-Jacobi slices need genus 2");
  if (nu < 1) fail(ErrorCode::InvalidArgument, "slice index must be positive");
  JacobiSlice s;
  s.index = nu;
  s.domain = f.domain();
  s.scale = f.scale();
  s.t0_bound = f.bound() - nu;
  const std::int64_t m22 = 2 * f.scale() * nu;
  if (f.domain().is_rational()) {
    for (const auto& [k, v] : f.rational_terms())
      if (k.at(1, 1) == m22) s.coeffs.emplace(std::pair{k.at(0, 0), k.at(0, 1)}, v);
  } else {
    for (const auto& [k, v] : f.residue_terms())
      if (k.at(1, 1) == m22) s.coeffs.emplace(std::pair{k.at(0, 0), k.at(0, 1)}, FpElement(v, f.domain().modulus()));
  }
  return s;
}

QSeries slice_to_series(const JacobiSlice& slice, std::int64_t bound, Weight weight) {
  const std::int64_t m22 = 2 * slice.scale * slice.index;
  auto key = [&](const std::pair<std::int64_t, std::int64_t>& k) {
    return HalfIntegralForm(2, slice.scale, HalfIntegralForm::Entries{k.first, k.second, m22});
  };
  const std::int64_t max_trace = 2 * slice.scale * bound;
  if (slice.domain.is_rational()) {
    std::map<HalfIntegralForm, BigRational> out;
    for (const auto& [k, v] : slice.coeffs)
      if (k.first + m22 <= max_trace) out.emplace(key(k), std::get<BigRational>(v));
    return QSeries::from_rational(2, weight, bound, slice.scale, out);
  }
  std::map<HalfIntegralForm, std::int64_t> out;
  for (const auto& [k, v] : slice.coeffs)
    if (k.first + m22 <= max_trace) out.emplace(key(k), std::get<FpElement>(v).residue());
  return QSeries::from_residues(2, slice.domain.modulus(), weight, bound, slice.scale, out);
}

ThetaComponents theta_decompose(const JacobiSlice& slice) {
  ThetaComponents c;
  c.index = slice.index;
  c.domain = slice.domain;
  c.scale = slice.scale;
  const std::int64_t period = 2 * slice.index * slice.scale;
  for (const auto& [k, v] : slice.coeffs) {
    const auto [m11, m12] = k;
    const std::int64_t r = floor_mod(m12, period);
    const std::int64_t disc = period * m11 - m12 * m12;
    if (disc < 0) fail(ErrorCode::InvalidArgument, "slice key is not positive semidefinite");
    auto [it, inserted] = c.components[r].emplace(disc, v);
    if (!inserted && !(it->second == v))
      fail(ErrorCode::NotThetaDecomposable,
           "keys in orbit r=" + std::to_string(r) + " D=" + std::to_string(disc) + " carry different coefficients");
  }
  return c;
}

JacobiSlice embed(const ThetaComponents& components, std::int64_t t0_bound) {
  JacobiSlice s;
  s.index = components.index;
  s.domain = components.domain;
  s.scale = components.scale;
  s.t0_bound = t0_bound;
  const std::int64_t period = 2 * components.index * components.scale;
  const std::int64_t max_m11 = 2 * components.scale * t0_bound;
  if (max_m11 < 0) return s;
  // M12^2 = period * M11 - D <= period * max_m11.
  const auto lim = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(period) * max_m11)) + 1;
  for (const auto& [r, by_disc] : components.components)
    for (const auto& [disc, v] : by_disc) {
      for (std::int64_t m12 = -lim + floor_mod(r + lim, period); m12 <= lim; m12 += period) {
        const std::int64_t num = disc + m12 * m12;
        if (num % period != 0 || (num / period) % 2 != 0)
          fail(ErrorCode::InvalidArgument, "theta component (r, D) = (" + std::to_string(r) + ", " +
                                               std::to_string(disc) + ") is not well formed");
        const std::int64_t m11 = num / period;
        if (m11 <= max_m11) s.coeffs.emplace(std::pair{m11, m12}, v);
      }
    }
  return s;
}

QSeries theta_fa(std::int64_t nu, std::int64_t a_numerator, int i, std::int64_t bound) {
  if (nu < 1) fail(ErrorCode::InvalidArgument, "nu must be positive");
  if (i < 0 || i > 2) fail(ErrorCode::InvalidArgument, "derivative order must be 0, 1 or 2");
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  const std::int64_t scale = 4 * nu;
  const std::int64_t max_trace = 2 * scale * bound;
  std::map<HalfIntegralForm, BigRational> out;
  // With w = 2 nu g + a: M = 8 nu T = [[2 w^2, 4 nu w], [4 nu w, 8 nu^2]].
  const std::int64_t reach = bound + std::abs(a_numerator) + 1;
  for (std::int64_t g = -reach; g <= reach; ++g) {
    const std::int64_t w = 2 * nu * g + a_numerator;
    const HalfIntegralForm key(2, scale, HalfIntegralForm::Entries{2 * w * w, 4 * nu * w, 8 * nu * nu});
    if (key.trace_scaled() > max_trace) continue;
    long c = 1;
    for (int e = 0; e < i; ++e) c *= g;
    out.emplace(key, BigRational(c));
  }
  return QSeries::from_rational(2, Weight(1, 2), bound, scale, out);
}

bool verify_theta_identity(const std::array<std::int64_t, 3>& a, std::int64_t a_numerator, std::int64_t nu,
                           std::int64_t bound) {
  using Mat = std::array<BigInt, 3>;  // [[m0, m1], [m1, m2]]
  const auto [a0, a1, a2] = a;
  const std::int64_t scale = 4 * nu;
  const std::int64_t max_trace = 2 * scale * bound;

  // Left side straight from the lattice sum of tV_g A V_g, V_g = [[1, 0], [g, 1]].
  std::map<HalfIntegralForm, Mat> lhs;
  for (std::int64_t g = -(bound + std::abs(a_numerator) + 1); g <= bound + std::abs(a_numerator) + 1; ++g) {
    const std::int64_t y_num = 2 * nu * g + a_numerator;  // 2 nu y
    const std::int64_t m11 = 2 * y_num * y_num;
    const std::int64_t m22 = 8 * nu * nu;
    if (m11 + m22 > max_trace) continue;
    const HalfIntegralForm key(2, scale, HalfIntegralForm::Entries{m11, 4 * nu * y_num, m22});
    Mat m{BigInt(static_cast<long>(a0 + 2 * g * a1 + g * g * a2)), BigInt(static_cast<long>(a1 + g * a2)),
          BigInt(static_cast<long>(a2))};
    if (m[0] != 0 || m[1] != 0 || m[2] != 0) lhs.emplace(key, m);
  }

  // Right side assembled from the theta derivatives.
  const QSeries f0 = theta_fa(nu, a_numerator, 0, bound);
  const QSeries f1 = theta_fa(nu, a_numerator, 1, bound);
  const QSeries f2 = theta_fa(nu, a_numerator, 2, bound);
  std::map<HalfIntegralForm, Mat> rhs;
  auto accumulate = [&](const QSeries& f, const std::array<std::int64_t, 3>& coeff) {
    for (const auto& [k, v] : f.rational_terms()) {
      auto& m = rhs.try_emplace(k, Mat{BigInt(0), BigInt(0), BigInt(0)}).first->second;
      for (int e = 0; e < 3; ++e) m[static_cast<std::size_t>(e)] += v.numerator() * coeff[static_cast<std::size_t>(e)];
    }
  };
  accumulate(f0, {a0, a1, a2});
  accumulate(f1, {2 * a1, a2, 0});
  accumulate(f2, {a2, 0, 0});
  std::erase_if(rhs, [](const auto& kv) { return kv.second[0] == 0 && kv.second[1] == 0 && kv.second[2] == 0; });
  return lhs == rhs;
}

}  // namespace smfp
