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

// Sparse kernels over term vectors sorted in canonical order (so sorted by
// trace first). Internal to the core library.

#pragma once

#include <algorithm>
#include <unordered_map>

#include "core/qseries.hpp"

namespace smfp::detail {

template <class V>
void sort_terms(Terms<V>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

/// Prefix of terms with trace(M) <= max_trace.
template <class V>
Terms<V> truncate_terms(const Terms<V>& terms, std::int64_t max_trace) {
  auto end = std::find_if(terms.begin(), terms.end(),
                          [max_trace](const auto& t) { return t.first.trace_scaled() > max_trace; });
  return Terms<V>(terms.begin(), end);
}

template <class V>
Terms<V> rescale_terms(const Terms<V>& terms, std::int64_t scale) {
  Terms<V> out;
  out.reserve(terms.size());
  for (const auto& [k, v] : terms) out.emplace_back(k.rescaled(scale), v);
  // Multiplying every key by the same factor preserves canonical order.
  return out;
}

template <class Ring>
Terms<typename Ring::value_type> add_terms(const Ring& ring, const Terms<typename Ring::value_type>& a,
                                           const Terms<typename Ring::value_type>& b, std::int64_t max_trace) {
  Terms<typename Ring::value_type> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  auto keep = [&](const HalfIntegralForm& k) { return k.trace_scaled() <= max_trace; };
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      if (keep(i->first)) out.push_back(*i);
      ++i;
    } else if (i == a.end() || j->first < i->first) {
      if (keep(j->first)) out.push_back(*j);
      ++j;
    } else {
      auto v = i->second;
      ring.add_to(v, j->second);
      if (!ring.is_zero(v) && keep(i->first)) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Truncated convolution c(T) = sum_{T1 + T2 = T} a(T1) b(T2).
template <class Ring>
Terms<typename Ring::value_type> mul_terms(const Ring& ring, const Terms<typename Ring::value_type>& a,
                                           const Terms<typename Ring::value_type>& b, std::int64_t max_trace) {
  using V = typename Ring::value_type;
  std::unordered_map<HalfIntegralForm, V, FormHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  const auto& outer = a.size() <= b.size() ? a : b;
  const auto& inner = a.size() <= b.size() ? b : a;
  for (const auto& [ka, va] : outer) {
    const std::int64_t room = max_trace - ka.trace_scaled();
    if (room < 0) break;
    for (const auto& [kb, vb] : inner) {
      if (kb.trace_scaled() > room) break;
      auto [it, inserted] = acc.try_emplace(ka + kb, ring.from_int(0));
      ring.add_mul(it->second, va, vb);
    }
  }
  Terms<V> out;
  out.reserve(acc.size());
  for (auto& [k, v] : acc)
    if (!ring.is_zero(v)) out.emplace_back(k, std::move(v));
  sort_terms(out);
  return out;
}

template <class Ring>
Terms<typename Ring::value_type> pow_terms(const Ring& ring, const Terms<typename Ring::value_type>& base,
                                           unsigned n, const HalfIntegralForm& zero_key, std::int64_t max_trace) {
  Terms<typename Ring::value_type> result{{zero_key, ring.from_int(1)}};
  Terms<typename Ring::value_type> sq = base;
  while (n > 0) {
    if (n & 1u) result = mul_terms(ring, result, sq, max_trace);
    n >>= 1;
    if (n > 0) sq = mul_terms(ring, sq, sq, max_trace);
  }
  return result;
}

template <class Ring>
Terms<typename Ring::value_type> scale_terms(const Ring& ring, const Terms<typename Ring::value_type>& a,
                                             const typename Ring::value_type& c) {
  Terms<typename Ring::value_type> out;
  if (ring.is_zero(c)) return out;
  out.reserve(a.size());
  for (const auto& [k, v] : a) {
    auto w = ring.mul(v, c);
    if (!ring.is_zero(w)) out.emplace_back(k, std::move(w));
  }
  return out;
}

/// Binary search in canonically sorted terms.
template <class V>
const V* find_term(const Terms<V>& terms, const HalfIntegralForm& key) {
  auto it = std::lower_bound(terms.begin(), terms.end(), key,
                             [](const auto& t, const HalfIntegralForm& k) { return t.first < k; });
  return (it != terms.end() && it->first == key) ? &it->second : nullptr;
}

}  // namespace smfp::detail
