// Copyright 2026 The Authors.
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

#ifndef ACFG_TESTS_ORACLE_HPP
#define ACFG_TESTS_ORACLE_HPP

// Brute-force reference computations over F_p^n. Nothing here calls the
// library's echelon code.

#include <cstdint>
#include <set>
#include <vector>

#include "acfg/fp.hpp"

namespace oracle {

using Vec = std::vector<std::uint32_t>;
using VecSet = std::set<Vec>;

inline Vec axpy(const Vec& x, std::uint32_t c, const Vec& y, std::uint32_t p) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + c * y[i]) % p;
  return out;
}

/// Every F_p-combination of the generators.
inline VecSet span(const std::vector<Vec>& gens, std::uint32_t p, std::size_t n) {
  VecSet out{Vec(n, 0)};
  for (const Vec& g : gens) {
    VecSet next;
    for (const Vec& v : out) {
      for (std::uint32_t c = 0; c < p; ++c) next.insert(axpy(v, c, g, p));
    }
    out.swap(next);
  }
  return out;
}

inline VecSet meet(const VecSet& a, const VecSet& b) {
  VecSet out;
  for (const Vec& v : a) {
    if (b.count(v)) out.insert(v);
  }
  return out;
}

inline VecSet join(const VecSet& a, const VecSet& b, std::uint32_t p) {
  VecSet out;
  for (const Vec& u : a) {
    for (const Vec& v : b) out.insert(axpy(u, 1, v, p));
  }
  return out;
}

/// log_p of a subgroup's size.
inline std::size_t dim(const VecSet& s, std::uint32_t p) {
  std::size_t d = 0;
  for (std::size_t n = 1; n < s.size(); n *= p) ++d;
  return d;
}

/// prod_{i<k} (p^n - p^i) / (p^k - p^i).
inline std::uint64_t gaussian(std::uint64_t p, std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  std::uint64_t pn = 1, pk = 1;
  for (std::size_t i = 0; i < n; ++i) pn *= p;
  for (std::size_t i = 0; i < k; ++i) pk *= p;
  std::uint64_t pi = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= pn - pi;
    den *= pk - pi;
    pi *= p;
  }
  return num / den;
}

/// Counts additive subgroups of F_p^n by testing every subset for closure.
inline std::uint64_t count_subgroups_by_subsets(std::uint32_t p, std::size_t n) {
  std::vector<Vec> all;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec v(n);
    std::size_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = r % p;
      r /= p;
    }
    all.push_back(v);
  }
  std::uint64_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << total); ++mask) {
    if (!(mask & 1)) continue;  // must contain 0
    VecSet s;
    for (std::size_t i = 0; i < total; ++i) {
      if (mask >> i & 1) s.insert(all[i]);
    }
    bool closed = true;
    for (auto it = s.begin(); closed && it != s.end(); ++it) {
      for (const Vec& v : s) {
        if (!s.count(axpy(*it, 1, v, p))) {
          closed = false;
          break;
        }
      }
    }
    count += closed;
  }
  return count;
}

}  // namespace oracle

#endif  // ACFG_TESTS_ORACLE_HPP
