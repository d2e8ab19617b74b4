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

#include "core/qseries.hpp"

#include <numeric>

#include "core/series_kernels.hpp"

namespace smfp {

// --- Weight ------------------------------------------------------------------

Weight::Weight(long num, long den) {
  if (den <= 0) fail(ErrorCode::InvalidArgument, "weight denominator must be positive");
  const long g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
  if (den_ != 1 && den_ != 2)
    fail(ErrorCode::InvalidArgument, "weight must be integral or half-integral");
}

std::string Weight::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Weight Weight::parse(const std::string& text) {
  const auto q = BigRational::parse(text);
  if (!q.numerator().fits_slong_p() || !q.denominator().fits_slong_p())
    fail(ErrorCode::ParseError, "weight out of range '" + text + "'");
  try {
    return Weight(q.numerator().get_si(), q.denominator().get_si());
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Weight operator+(Weight a, Weight b) { return Weight(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
Weight operator*(Weight a, long k) { return Weight(a.num_ * k, a.den_); }

// --- QSeries -----------------------------------------------------------------

namespace {

void check_key(const HalfIntegralForm& k, int genus, std::int64_t scale, std::int64_t bound) {
  if (k.genus() != genus) fail(ErrorCode::InvalidArgument, "key " + k.render() + " has wrong genus");
  if (k.scale() != scale) fail(ErrorCode::InvalidArgument, "key " + k.render() + " has wrong scale");
  if (!is_psd(k)) fail(ErrorCode::InvalidArgument, "key " + k.render() + " is not positive semidefinite");
  if (k.trace_scaled() > 2 * scale * bound)
    fail(ErrorCode::InvalidArgument, "key " + k.render() + " exceeds trace bound " + std::to_string(bound));
}

void check_header(int genus, std::int64_t bound, std::int64_t scale) {
  if (genus < 1) fail(ErrorCode::InvalidArgument, "genus must be positive");
  if (bound < 0) fail(ErrorCode::InvalidArgument, "bound must be nonnegative");
  if (scale < 1) fail(ErrorCode::InvalidArgument, "scale must be positive");
}

HalfIntegralForm coarsen(const HalfIntegralForm& k, std::int64_t scale) {
  const std::int64_t factor = k.scale() / scale;
  HalfIntegralForm::Entries e;
  for (auto v : k.upper()) e.push_back(v / factor);
  return HalfIntegralForm(k.genus(), scale, std::move(e));
}

}  // namespace

QSeries QSeries::from_rational(int genus, Weight weight, std::int64_t bound, std::int64_t scale,
                               const std::map<HalfIntegralForm, BigRational>& coeffs) {
  check_header(genus, bound, scale);
  RationalTerms terms;
  for (const auto& [k, v] : coeffs) {
    check_key(k, genus, scale, bound);
    if (!v.is_zero()) terms.emplace_back(k, v);
  }
  return QSeries(genus, CoeffDomain::rational(), weight, bound, scale, std::move(terms));
}

QSeries QSeries::from_residues(int genus, std::uint32_t p, Weight weight, std::int64_t bound, std::int64_t scale,
                               const std::map<HalfIntegralForm, std::int64_t>& coeffs) {
  check_header(genus, bound, scale);
  const auto domain = CoeffDomain::prime_field(p);
  const PrimeFieldRing ring{p};
  ResidueTerms terms;
  for (const auto& [k, v] : coeffs) {
    check_key(k, genus, scale, bound);
    const auto r = ring.from_int(static_cast<long>(v));
    if (r != 0) terms.emplace_back(k, r);
  }
  return QSeries(genus, domain, weight, bound, scale, std::move(terms));
}

QSeries QSeries::constant(int genus, CoeffDomain domain, Weight weight, std::int64_t bound, long value) {
  const auto zero_key = HalfIntegralForm::zero(genus, 1);
  if (domain.is_rational()) return from_rational(genus, weight, bound, 1, {{zero_key, BigRational(value)}});
  return from_residues(genus, domain.modulus(), weight, bound, 1, {{zero_key, value}});
}

QSeries QSeries::zero(int genus, CoeffDomain domain, Weight weight, std::int64_t bound, std::int64_t scale) {
  check_header(genus, bound, scale);
  if (domain.is_rational()) return QSeries(genus, domain, weight, bound, scale, RationalTerms{});
  return QSeries(genus, domain, weight, bound, scale, ResidueTerms{});
}

QSeries QSeries::adopt(int genus, Weight weight, std::int64_t bound, std::int64_t scale, RationalTerms terms) {
  return QSeries(genus, CoeffDomain::rational(), weight, bound, scale, std::move(terms));
}

QSeries QSeries::adopt(int genus, std::uint32_t p, Weight weight, std::int64_t bound, std::int64_t scale,
                       ResidueTerms terms) {
  return QSeries(genus, CoeffDomain::prime_field(p), weight, bound, scale, std::move(terms));
}

std::size_t QSeries::size() const {
  return std::visit([](const auto& t) { return t.size(); }, terms_);
}

std::vector<HalfIntegralForm> QSeries::support() const {
  std::vector<HalfIntegralForm> out;
  std::visit([&](const auto& t) { for (const auto& kv : t) out.push_back(kv.first); }, terms_);
  return out;
}

const QSeries::RationalTerms& QSeries::rational_terms() const {
  if (!domain_.is_rational()) fail(ErrorCode::DomainMismatch, "series is over " + domain_.to_string());
  return std::get<RationalTerms>(terms_);
}

const QSeries::ResidueTerms& QSeries::residue_terms() const {
  if (!domain_.is_prime_field()) fail(ErrorCode::DomainMismatch, "series is over Q");
  return std::get<ResidueTerms>(terms_);
}

Coefficient QSeries::coefficient(const HalfIntegralForm& t) const {
  if (t.genus() != genus_) fail(ErrorCode::InvalidArgument, "key genus does not match series genus");
  if (t.trace() > BigRational(static_cast<long>(bound_)))
    fail(ErrorCode::InsufficientPrecision, "trace of " + t.render() + " exceeds bound " + std::to_string(bound_));
  const auto zero = [&]() -> Coefficient {
    if (domain_.is_rational()) return BigRational(0);
    return FpElement(0, domain_.modulus());
  };
  const std::int64_t coarse = t.minimal_scale();
  if (scale_ % coarse != 0) return zero();  // not representable here, so not in the support
  const HalfIntegralForm key = coarsen(t.rescaled(t.scale() * (scale_ / std::gcd(scale_, t.scale()))), scale_);
  if (domain_.is_rational()) {
    const auto* v = detail::find_term(std::get<RationalTerms>(terms_), key);
    return v ? *v : BigRational(0);
  }
  const auto* v = detail::find_term(std::get<ResidueTerms>(terms_), key);
  return FpElement(v ? *v : 0, domain_.modulus());
}

QSeries QSeries::with_weight(Weight w) const {
  QSeries r = *this;
  r.weight_ = w;
  return r;
}

QSeries QSeries::truncated(std::int64_t bound) const {
  if (bound > bound_)
    fail(ErrorCode::InsufficientPrecision, "cannot extend bound " + std::to_string(bound_) + " to " + std::to_string(bound));
  QSeries r = *this;
  r.bound_ = bound;
  std::visit([&](auto& t) { t = detail::truncate_terms(t, r.max_trace_scaled()); }, r.terms_);
  return r;
}

QSeries QSeries::rescaled(std::int64_t scale) const {
  if (scale == scale_) return *this;
  if (scale % scale_ != 0) fail(ErrorCode::InvalidArgument, "can only rescale to a multiple of the scale");
  QSeries r = *this;
  r.scale_ = scale;
  std::visit([&](auto& t) { t = detail::rescale_terms(t, scale); }, r.terms_);
  return r;
}

QSeries QSeries::compacted() const {
  std::int64_t best = scale_;
  for (std::int64_t d = 1; d < scale_; ++d) {
    if (scale_ % d != 0) continue;
    bool ok = true;
    std::visit([&](const auto& t) {
      for (const auto& kv : t)
        if (d % kv.first.minimal_scale() != 0) { ok = false; break; }
    }, terms_);
    if (ok) { best = d; break; }
  }
  if (best == scale_) return *this;
  QSeries r = *this;
  r.scale_ = best;
  std::visit([&](auto& t) { for (auto& kv : t) kv.first = coarsen(kv.first, best); }, r.terms_);
  return r;
}

// --- SymMatrixFp / MatrixQSeries ----------------------------------------------

SymMatrixFp::SymMatrixFp(int genus, std::uint32_t p)
    : genus_(genus), p_(p), upper_(static_cast<std::size_t>(genus * (genus + 1) / 2), 0) {}

SymMatrixFp::SymMatrixFp(int genus, std::uint32_t p, std::vector<std::uint32_t> upper)
    : genus_(genus), p_(p), upper_(std::move(upper)) {
  if (upper_.size() != static_cast<std::size_t>(genus * (genus + 1) / 2))
    fail(ErrorCode::InvalidArgument, "symmetric matrix has wrong number of entries");
  for (auto& v : upper_) v %= p_;
}

std::uint32_t SymMatrixFp::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return upper_[static_cast<std::size_t>(i * genus_ - i * (i - 1) / 2 + (j - i))];
}

void SymMatrixFp::set(int i, int j, std::int64_t value) {
  if (i > j) std::swap(i, j);
  const std::int64_t r = value % static_cast<std::int64_t>(p_);
  upper_[static_cast<std::size_t>(i * genus_ - i * (i - 1) / 2 + (j - i))] =
      static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
}

bool SymMatrixFp::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](std::uint32_t v) { return v == 0; });
}

SymMatrixFp SymMatrixFp::congruent(const UnimodularMatrix& u) const {
  if (u.genus() != genus_) fail(ErrorCode::InvalidArgument, "genus mismatch in congruence");
  const auto p = static_cast<std::int64_t>(p_);
  auto red = [p](std::int64_t v) { const auto r = v % p; return r < 0 ? r + p : r; };
  SymMatrixFp out(genus_, p_);
  for (int i = 0; i < genus_; ++i)
    for (int j = i; j < genus_; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < genus_; ++k)
        for (int l = 0; l < genus_; ++l)
          s = red(s + red(red(u.at(k, i)) * at(k, l)) * red(u.at(l, j)));
      out.set(i, j, s);
    }
  return out;
}

SymMatrixFp operator+(const SymMatrixFp& a, const SymMatrixFp& b) {
  if (a.genus_ != b.genus_ || a.p_ != b.p_) fail(ErrorCode::InvalidArgument, "adding incompatible matrices");
  SymMatrixFp r = a;
  for (std::size_t i = 0; i < r.upper_.size(); ++i) r.upper_[i] = (r.upper_[i] + b.upper_[i]) % r.p_;
  return r;
}

MatrixQSeries::MatrixQSeries(int genus, std::uint32_t p, std::int64_t bound, std::int64_t scale,
                             const std::map<HalfIntegralForm, SymMatrixFp>& coeffs, Weight weight)
    : genus_(genus), p_(p), bound_(bound), scale_(scale), weight_(weight) {
  check_header(genus, bound, scale);
  CoeffDomain::prime_field(p);
  for (const auto& [k, v] : coeffs) {
    check_key(k, genus, scale, bound);
    if (v.genus() != genus || v.modulus() != p)
      fail(ErrorCode::InvalidArgument, "matrix coefficient at " + k.render() + " has wrong genus or modulus");
    if (!v.is_zero()) terms_.emplace_back(k, v);
  }
}

SymMatrixFp MatrixQSeries::coefficient(const HalfIntegralForm& t) const {
  const auto* v = detail::find_term(terms_, t);
  return v ? *v : SymMatrixFp(genus_, p_);
}

// --- Ring operations ----------------------------------------------------------

namespace {

void require_compatible(const QSeries& f, const QSeries& g) {
  if (f.genus() != g.genus()) fail(ErrorCode::InvalidArgument, "genus mismatch");
  if (!(f.domain() == g.domain()))
    fail(ErrorCode::DomainMismatch, "domain mismatch: " + f.domain().to_string() + " vs " + g.domain().to_string());
}

std::int64_t common_scale(const QSeries& f, const QSeries& g) { return std::lcm(f.scale(), g.scale()); }

QSeries combine_add(const QSeries& f, const QSeries& g, Weight w) {
  const std::int64_t d = common_scale(f, g);
  const std::int64_t bound = std::min(f.bound(), g.bound());
  const QSeries a = f.rescaled(d);
  const QSeries b = g.rescaled(d);
  const std::int64_t max_trace = 2 * d * bound;
  if (a.domain().is_rational())
    return QSeries::adopt(f.genus(), w, bound, d,
                          detail::add_terms(RationalRing{}, a.rational_terms(), b.rational_terms(), max_trace));
  const std::uint32_t p = a.domain().modulus();
  return QSeries::adopt(f.genus(), p, w, bound, d,
                        detail::add_terms(PrimeFieldRing{p}, a.residue_terms(), b.residue_terms(), max_trace));
}

}  // namespace

QSeries add(const QSeries& f, const QSeries& g) {
  require_compatible(f, g);
  if (!(f.weight() == g.weight()))
    fail(ErrorCode::WeightMismatch, "adding weight " + f.weight().to_string() + " to weight " + g.weight().to_string());
  return combine_add(f, g, f.weight());
}

QSeries negate(const QSeries& f) { return scalar_mul(f, BigRational(-1)); }

QSeries sub(const QSeries& f, const QSeries& g) { return add(f, negate(g)); }

QSeries scalar_mul(const QSeries& f, const BigRational& c) {
  if (f.domain().is_rational())
    return QSeries::adopt(f.genus(), f.weight(), f.bound(), f.scale(),
                          detail::scale_terms(RationalRing{}, f.rational_terms(), c));
  const std::uint32_t p = f.domain().modulus();
  return QSeries::adopt(f.genus(), p, f.weight(), f.bound(), f.scale(),
                        detail::scale_terms(PrimeFieldRing{p}, f.residue_terms(), reduce_mod_p(c, p).residue()));
}

QSeries mul(const QSeries& f, const QSeries& g) {
  require_compatible(f, g);
  const std::int64_t d = common_scale(f, g);
  const std::int64_t bound = std::min(f.bound(), g.bound());
  const QSeries a = f.rescaled(d);
  const QSeries b = g.rescaled(d);
  const Weight w = f.weight() + g.weight();
  if (a.domain().is_rational())
    return QSeries::adopt(f.genus(), w, bound, d,
                          detail::mul_terms(RationalRing{}, a.rational_terms(), b.rational_terms(), 2 * d * bound));
  const std::uint32_t p = a.domain().modulus();
  return QSeries::adopt(f.genus(), p, w, bound, d,
                        detail::mul_terms(PrimeFieldRing{p}, a.residue_terms(), b.residue_terms(), 2 * d * bound));
}

QSeries pow(const QSeries& f, unsigned n) {
  const auto zero_key = HalfIntegralForm::zero(f.genus(), f.scale());
  const Weight w = f.weight() * static_cast<long>(n);
  if (f.domain().is_rational())
    return QSeries::adopt(f.genus(), w, f.bound(), f.scale(),
                          detail::pow_terms(RationalRing{}, f.rational_terms(), n, zero_key, f.max_trace_scaled()));
  const std::uint32_t p = f.domain().modulus();
  return QSeries::adopt(f.genus(), p, w, f.bound(), f.scale(),
                        detail::pow_terms(PrimeFieldRing{p}, f.residue_terms(), n, zero_key, f.max_trace_scaled()));
}

QSeries reduce_series(const QSeries& f, std::uint32_t p) {
  CoeffDomain::prime_field(p);
  if (!f.domain().is_rational()) fail(ErrorCode::DomainMismatch, "reduce_series expects a series over Q");
  QSeries::ResidueTerms out;
  for (const auto& [k, v] : f.rational_terms()) {
    std::uint32_t r = 0;
    try {
      r = reduce_mod_p(v, p).residue();
    } catch (const Error& e) {
      fail(e.code(), "coefficient at " + k.render() + ": " + e.what());
    }
    if (r != 0) out.emplace_back(k, r);
  }
  return QSeries::adopt(f.genus(), p, f.weight(), f.bound(), f.scale(), std::move(out));
}

bool eq_upto(const QSeries& f, const QSeries& g, std::int64_t bound) {
  require_compatible(f, g);
  if (bound > f.bound() || bound > g.bound())
    fail(ErrorCode::InsufficientPrecision, "comparison bound " + std::to_string(bound) + " exceeds series precision");
  const std::int64_t d = common_scale(f, g);
  const QSeries a = f.rescaled(d).truncated(bound);
  const QSeries b = g.rescaled(d).truncated(bound);
  if (a.domain().is_rational()) return a.rational_terms() == b.rational_terms();
  return a.residue_terms() == b.residue_terms();
}

QSeries q_expansion(const GradedElement& element) {
  if (element.components.empty()) fail(ErrorCode::InvalidArgument, "empty graded element");
  QSeries acc = element.components.front().with_weight(Weight{});
  for (std::size_t i = 1; i < element.components.size(); ++i) {
    require_compatible(acc, element.components[i]);
    acc = combine_add(acc, element.components[i], Weight{});
  }
  return acc;
}

}  // namespace smfp
