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

#include "core/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace smfp {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "form entry overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "form entry overflow");
  return r;
}

// Fraction-free Gaussian elimination.
BigInt bareiss_det(std::vector<BigInt> a, int n) {
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  auto at = [&](int i, int j) -> BigInt& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { swap = i; break; }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace

// --- HalfIntegralForm --------------------------------------------------------

std::size_t HalfIntegralForm::index(int genus, int i, int j) {
  if (i > j) std::swap(i, j);
  // Row i of the upper triangle starts after rows 0..i-1.
  return static_cast<std::size_t>(i * genus - i * (i - 1) / 2 + (j - i));
}

HalfIntegralForm::HalfIntegralForm(int genus, std::int64_t scale, Entries upper)
    : genus_(genus), scale_(scale), upper_(std::move(upper)) {
  if (genus < 1) fail(ErrorCode::InvalidArgument, "genus must be positive");
  if (scale < 1) fail(ErrorCode::InvalidArgument, "scale must be positive");
  if (upper_.size() != static_cast<std::size_t>(genus * (genus + 1) / 2))
    fail(ErrorCode::InvalidArgument, "wrong number of entries for genus " + std::to_string(genus));
  for (int i = 0; i < genus; ++i)
    if (at(i, i) % 2 != 0)
      fail(ErrorCode::InvalidArgument, "diagonal of M = 2dT must be even");
}

HalfIntegralForm HalfIntegralForm::from_matrix(int genus, std::int64_t scale, const std::vector<std::int64_t>& full) {
  if (full.size() != static_cast<std::size_t>(genus * genus))
    fail(ErrorCode::InvalidArgument, "matrix has wrong size");
  Entries upper;
  for (int i = 0; i < genus; ++i)
    for (int j = i; j < genus; ++j) {
      if (full[static_cast<std::size_t>(i * genus + j)] != full[static_cast<std::size_t>(j * genus + i)])
        fail(ErrorCode::InvalidArgument, "matrix is not symmetric");
      upper.push_back(full[static_cast<std::size_t>(i * genus + j)]);
    }
  return HalfIntegralForm(genus, scale, std::move(upper));
}

HalfIntegralForm HalfIntegralForm::from_rows(std::int64_t scale,
                                             std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::int64_t> full;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) fail(ErrorCode::InvalidArgument, "matrix is not square");
    full.insert(full.end(), r.begin(), r.end());
  }
  return from_matrix(static_cast<int>(rows.size()), scale, full);
}

HalfIntegralForm HalfIntegralForm::zero(int genus, std::int64_t scale) {
  return HalfIntegralForm(genus, scale, Entries(static_cast<std::size_t>(genus * (genus + 1) / 2), 0));
}

std::int64_t HalfIntegralForm::at(int i, int j) const { return upper_[index(genus_, i, j)]; }

std::vector<std::int64_t> HalfIntegralForm::full_matrix() const {
  std::vector<std::int64_t> m(static_cast<std::size_t>(genus_ * genus_));
  for (int i = 0; i < genus_; ++i)
    for (int j = 0; j < genus_; ++j) m[static_cast<std::size_t>(i * genus_ + j)] = at(i, j);
  return m;
}

bool HalfIntegralForm::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t HalfIntegralForm::trace_scaled() const {
  std::int64_t t = 0;
  for (int i = 0; i < genus_; ++i) t = checked_add(t, at(i, i));
  return t;
}

BigRational HalfIntegralForm::trace() const {
  return BigRational(BigInt(static_cast<long>(trace_scaled())), BigInt(static_cast<long>(2 * scale_)));
}

BigInt HalfIntegralForm::det_scaled() const {
  std::vector<BigInt> a;
  a.reserve(static_cast<std::size_t>(genus_ * genus_));
  for (std::int64_t v : full_matrix()) a.emplace_back(static_cast<long>(v));
  return bareiss_det(std::move(a), genus_);
}

BigRational HalfIntegralForm::det() const {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(2 * scale_), static_cast<unsigned long>(genus_));
  return BigRational(det_scaled(), den);
}

HalfIntegralForm HalfIntegralForm::rescaled(std::int64_t new_scale) const {
  if (new_scale == scale_) return *this;
  if (new_scale <= 0 || new_scale % scale_ != 0)
    fail(ErrorCode::InvalidArgument, "cannot rescale from d=" + std::to_string(scale_) + " to d=" + std::to_string(new_scale));
  HalfIntegralForm r = times(new_scale / scale_);
  r.scale_ = new_scale;
  return r;
}

std::int64_t HalfIntegralForm::minimal_scale() const {
  for (std::int64_t d = 1; d <= scale_; ++d) {
    if (scale_ % d != 0) continue;
    const std::int64_t factor = scale_ / d;
    bool ok = entries_divisible_by(factor);
    for (int i = 0; ok && i < genus_; ++i) ok = (at(i, i) / factor) % 2 == 0;
    if (ok) return d;
  }
  return scale_;
}

bool HalfIntegralForm::entries_divisible_by(std::int64_t k) const {
  return std::all_of(upper_.begin(), upper_.end(), [k](std::int64_t v) { return v % k == 0; });
}

HalfIntegralForm HalfIntegralForm::times(std::int64_t k) const {
  HalfIntegralForm r = *this;
  for (auto& v : r.upper_) v = checked_mul(v, k);
  return r;
}

HalfIntegralForm HalfIntegralForm::divided_by(std::int64_t k) const {
  if (!entries_divisible_by(k)) fail(ErrorCode::InvalidArgument, "form entries not divisible by " + std::to_string(k));
  HalfIntegralForm r = *this;
  for (auto& v : r.upper_) v /= k;
  for (int i = 0; i < genus_; ++i)
    if (r.at(i, i) % 2 != 0) fail(ErrorCode::InvalidArgument, "quotient form has odd diagonal");
  return r;
}

HalfIntegralForm HalfIntegralForm::leading_block() const {
  if (genus_ < 2) fail(ErrorCode::InvalidArgument, "leading block needs genus >= 2");
  Entries upper;
  for (int i = 0; i < genus_ - 1; ++i)
    for (int j = i; j < genus_ - 1; ++j) upper.push_back(at(i, j));
  return HalfIntegralForm(genus_ - 1, scale_, std::move(upper));
}

std::string HalfIntegralForm::render() const {
  std::string out = std::to_string(genus_) + ";" + std::to_string(scale_) + ";";
  for (std::size_t i = 0; i < upper_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(upper_[i]);
  }
  return out;
}

HalfIntegralForm HalfIntegralForm::parse(const std::string& text) {
  const auto s1 = text.find(';');
  const auto s2 = s1 == std::string::npos ? s1 : text.find(';', s1 + 1);
  if (s2 == std::string::npos) fail(ErrorCode::ParseError, "malformed form '" + text + "'");
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (s.empty() || used != s.size()) fail(ErrorCode::ParseError, "malformed integer '" + s + "' in form '" + text + "'");
    return v;
  };
  const auto genus = parse_int(text.substr(0, s1));
  const auto scale = parse_int(text.substr(s1 + 1, s2 - s1 - 1));
  Entries upper;
  std::stringstream ss(text.substr(s2 + 1));
  std::string item;
  while (std::getline(ss, item, ',')) upper.push_back(parse_int(item));
  if (genus < 1 || genus > 64 || scale < 1) fail(ErrorCode::ParseError, "bad genus/scale in form '" + text + "'");
  try {
    return HalfIntegralForm(static_cast<int>(genus), scale, std::move(upper));
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, std::string(e.what()) + " in form '" + text + "'");
  }
}

HalfIntegralForm operator+(const HalfIntegralForm& a, const HalfIntegralForm& b) {
  if (a.genus_ != b.genus_ || a.scale_ != b.scale_)
    fail(ErrorCode::InvalidArgument, "adding forms of different genus or scale");
  HalfIntegralForm r = a;
  for (std::size_t i = 0; i < r.upper_.size(); ++i) r.upper_[i] = checked_add(r.upper_[i], b.upper_[i]);
  return r;
}

std::strong_ordering operator<=>(const HalfIntegralForm& a, const HalfIntegralForm& b) {
  if (auto c = a.genus_ <=> b.genus_; c != 0) return c;
  if (auto c = a.scale_ <=> b.scale_; c != 0) return c;
  if (auto c = a.trace_scaled() <=> b.trace_scaled(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.upper_.begin(), a.upper_.end(), b.upper_.begin(), b.upper_.end());
}

std::size_t HalfIntegralForm::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(genus_) * 0x9E3779B97F4A7C15ull ^ static_cast<std::size_t>(scale_);
  for (std::int64_t v : upper_) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001B3ull + (h >> 29);
  return h;
}

bool is_psd(const HalfIntegralForm& t) {
  const int g = t.genus();
  for (unsigned mask = 1; mask < (1u << g); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < g; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int n = static_cast<int>(idx.size());
    std::vector<BigInt> sub;
    for (int i : idx)
      for (int j : idx) sub.emplace_back(static_cast<long>(t.at(i, j)));
    if (bareiss_det(std::move(sub), n) < 0) return false;
  }
  return true;
}

// --- UnimodularMatrix --------------------------------------------------------

UnimodularMatrix::UnimodularMatrix(int genus, std::vector<std::int64_t> entries)
    : genus_(genus), entries_(std::move(entries)) {
  if (genus < 1 || entries_.size() != static_cast<std::size_t>(genus * genus))
    fail(ErrorCode::InvalidArgument, "unimodular matrix has wrong size");
  const auto d = det();
  if (d != 1 && d != -1) fail(ErrorCode::InvalidArgument, "matrix is not unimodular (det " + std::to_string(d) + ")");
}

UnimodularMatrix::UnimodularMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : UnimodularMatrix(static_cast<int>(rows.size()), [&] {
        std::vector<std::int64_t> e;
        for (const auto& r : rows) {
          if (r.size() != rows.size()) fail(ErrorCode::InvalidArgument, "matrix is not square");
          e.insert(e.end(), r.begin(), r.end());
        }
        return e;
      }()) {}

UnimodularMatrix UnimodularMatrix::identity(int genus) {
  std::vector<std::int64_t> e(static_cast<std::size_t>(genus * genus), 0);
  for (int i = 0; i < genus; ++i) e[static_cast<std::size_t>(i * genus + i)] = 1;
  return UnimodularMatrix(genus, std::move(e));
}

std::int64_t UnimodularMatrix::det() const {
  std::vector<BigInt> a;
  for (std::int64_t v : entries_) a.emplace_back(static_cast<long>(v));
  const BigInt d = bareiss_det(std::move(a), genus_);
  return d.fits_slong_p() ? d.get_si() : 0;
}

UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b) {
  if (a.genus_ != b.genus_) fail(ErrorCode::InvalidArgument, "genus mismatch in matrix product");
  const int g = a.genus_;
  std::vector<std::int64_t> e(static_cast<std::size_t>(g * g), 0);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < g; ++k) s = checked_add(s, checked_mul(a.at(i, k), b.at(k, j)));
      e[static_cast<std::size_t>(i * g + j)] = s;
    }
  return UnimodularMatrix(g, std::move(e));
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  // adj(U) / det(U) with det = +-1; cofactors via exact minors.
  const int g = genus_;
  const std::int64_t d = det();
  std::vector<std::int64_t> inv(static_cast<std::size_t>(g * g));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      std::vector<BigInt> minor;
      for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c)
          if (r != j && c != i) minor.emplace_back(static_cast<long>(at(r, c)));
      BigInt cof = bareiss_det(std::move(minor), g - 1);
      if ((i + j) % 2) cof = -cof;
      inv[static_cast<std::size_t>(i * g + j)] = cof.get_si() * d;
    }
  return UnimodularMatrix(g, std::move(inv));
}

HalfIntegralForm act(const UnimodularMatrix& u, const HalfIntegralForm& t) {
  const int g = t.genus();
  if (u.genus() != g) fail(ErrorCode::InvalidArgument, "genus mismatch between matrix and form");
  HalfIntegralForm::Entries upper;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      // (tU M U)_ij = sum_{k,l} U_ki M_kl U_lj
      std::int64_t s = 0;
      for (int k = 0; k < g; ++k) {
        if (u.at(k, i) == 0) continue;
        std::int64_t row = 0;
        for (int l = 0; l < g; ++l) row = checked_add(row, checked_mul(t.at(k, l), u.at(l, j)));
        s = checked_add(s, checked_mul(u.at(k, i), row));
      }
      upper.push_back(s);
    }
  return HalfIntegralForm(g, t.scale(), std::move(upper));
}

Reduction reduce_g2(const HalfIntegralForm& t) {
  if (t.genus() != 2) fail(ErrorCode::InvalidArgument, "reduce_g2 needs genus 2");
  if (!is_psd(t)) fail(ErrorCode::InvalidArgument, "reduce_g2 needs a psd form");
  HalfIntegralForm cur = t;
  UnimodularMatrix w = UnimodularMatrix::identity(2);
  auto apply = [&](const UnimodularMatrix& s) {
    cur = act(s, cur);
    w = w * s;
  };
  const UnimodularMatrix swap{{0, 1}, {1, 0}};
  for (;;) {
    if (cur.at(0, 0) > cur.at(1, 1)) apply(swap);
    const std::int64_t a = cur.at(0, 0);
    const std::int64_t b = cur.at(0, 1);
    if (a == 0) break;  // psd forces b == 0
    // x -> x + k y brings 2|b + k a| <= a.
    const std::int64_t num = 2 * b + a;
    const std::int64_t den = 2 * a;
    const std::int64_t k =
        2 * std::abs(b) <= a ? 0 : -(num / den - ((num % den != 0) && (num < 0) ? 1 : 0));
    if (k != 0) apply(UnimodularMatrix{{1, k}, {0, 1}});
    if (cur.at(0, 0) <= cur.at(1, 1)) break;
  }
  if (cur.at(0, 1) < 0) apply(UnimodularMatrix{{1, 0}, {0, -1}});
  return {cur, w};
}

std::vector<HalfIntegralForm> enumerate(int genus, std::int64_t bound, std::int64_t scale) {
  if (genus < 1 || genus > 2) fail(ErrorCode::InvalidArgument, "enumerate supports genus 1 and 2");
  if (bound < 0) fail(ErrorCode::InvalidArgument, "trace bound must be nonnegative");
  if (scale < 1) fail(ErrorCode::InvalidArgument, "scale must be positive");
  const std::int64_t max_trace = checked_mul(2 * scale, bound);
  std::vector<HalfIntegralForm> out;
  if (genus == 1) {
    for (std::int64_t m = 0; m <= max_trace; m += 2) out.emplace_back(1, scale, HalfIntegralForm::Entries{m});
  } else {
    for (std::int64_t a = 0; a <= max_trace; a += 2)
      for (std::int64_t c = 0; a + c <= max_trace; c += 2) {
        const auto lim = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(a) * c)) + 1;
        for (std::int64_t b = -lim; b <= lim; ++b)
          if (b * b <= a * c) out.emplace_back(2, scale, HalfIntegralForm::Entries{a, b, c});
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UnimodularMatrix> unimodular_box(int genus, std::int64_t max_entry) {
  const int n = genus * genus;
  const std::int64_t width = 2 * max_entry + 1;
  std::vector<UnimodularMatrix> out;
  std::vector<std::int64_t> e(static_cast<std::size_t>(n), -max_entry);
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= width;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      e[static_cast<std::size_t>(i)] = rest % width - max_entry;
      rest /= width;
    }
    std::vector<BigInt> a;
    for (auto v : e) a.emplace_back(static_cast<long>(v));
    const BigInt d = bareiss_det(std::move(a), genus);
    if (d == 1 || d == -1) out.emplace_back(genus, e);
  }
  return out;
}

}  // namespace smfp
