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

#include "acfg/subspace.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "acfg/error.hpp"

namespace acfg {

namespace {

// Row reduction restricted to pivot columns [0, width). Returns the number
// of pivot rows; rows past that index are zero on [0, width).
std::size_t echelon(std::vector<Coeffs>& rows, std::size_t width, Residue p,
                    std::vector<std::size_t>* pivots, bool reduce_above) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    Coeffs& piv = rows[rank];
    const Residue inv = inv_mod(piv[col], p);
    if (inv != 1) {
      for (Residue& c : piv) c = mul_mod(c, inv, p);
    }
    for (std::size_t r = reduce_above ? 0 : rank + 1; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Residue f = rows[r][col];
      if (!f) continue;
      Coeffs& row = rows[r];
      const Residue nf = p - f;
      for (std::size_t j = col; j < row.size(); ++j) {
        if (piv[j]) row[j] = static_cast<Residue>((row[j] + std::uint64_t{nf} * piv[j]) % p);
      }
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

void check_compatible(const Subspace& u, const Subspace& v) {
  require(u.p() == v.p() && u.ambient() == v.ambient() && u.level() == v.level(),
          ErrorCode::kLevelMismatch,
          "subspaces live in different spaces (levels " + std::to_string(u.level()) + ", " +
              std::to_string(v.level()) + ")");
}

}  // namespace

Subspace::Subspace(Residue p, std::size_t ambient, std::size_t level)
    : p_(p), n_(ambient), level_(level) {
  require(is_prime(p), ErrorCode::kInvalidArgument, "subspace over non-prime p");
}

Subspace Subspace::span(Residue p, std::size_t ambient, std::span<const Coeffs> vectors,
                        std::size_t level) {
  Subspace s(p, ambient, level);
  std::vector<Coeffs> rows;
  rows.reserve(vectors.size());
  for (const Coeffs& v : vectors) {
    require(v.size() == ambient, ErrorCode::kLevelMismatch,
            "vector of length " + std::to_string(v.size()) + " in ambient dimension " +
                std::to_string(ambient));
    if (is_zero(v)) continue;
    Coeffs r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] % p;
    rows.push_back(std::move(r));
  }
  const std::size_t rank = echelon(rows, ambient, p, &s.pivots_, true);
  rows.resize(rank);
  s.rows_ = std::move(rows);
  return s;
}

Subspace Subspace::full(Residue p, std::size_t ambient, std::size_t level) {
  std::vector<Coeffs> unit;
  for (std::size_t i = 0; i < ambient; ++i) {
    Coeffs e(ambient, 0);
    e[i] = 1;
    unit.push_back(std::move(e));
  }
  return span(p, ambient, unit, level);
}

Coeffs Subspace::reduce(Coeffs x) const {
  require(x.size() == n_, ErrorCode::kLevelMismatch, "vector length differs from ambient");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Residue f = x[pivots_[i]];
    if (!f) continue;
    const Residue nf = p_ - f;
    const Coeffs& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < n_; ++j) {
      if (row[j]) x[j] = static_cast<Residue>((x[j] + std::uint64_t{nf} * row[j]) % p_);
    }
  }
  return x;
}

bool Subspace::contains(const Coeffs& x) const { return is_zero(reduce(x)); }

Coeffs Subspace::element(std::uint64_t index) const {
  Coeffs out(n_, 0);
  for (std::size_t i = 0; i < rows_.size() && index; ++i) {
    const Residue d = static_cast<Residue>(index % p_);
    index /= p_;
    if (!d) continue;
    for (std::size_t j = 0; j < n_; ++j) out[j] = add_mod(out[j], mul_mod(d, rows_[i][j], p_), p_);
  }
  return out;
}

Subspace sum(const Subspace& u, const Subspace& v) {
  check_compatible(u, v);
  std::vector<Coeffs> rows = u.basis();
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.p(), u.ambient(), rows, u.level());
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  check_compatible(u, v);
  const std::size_t n = u.ambient();
  const Residue p = u.p();
  // Zassenhaus: rows (u|u) and (v|0); rows with zero left half span U ∩ V.
  std::vector<Coeffs> rows;
  for (const Coeffs& r : u.basis()) {
    Coeffs row(2 * n);
    std::copy(r.begin(), r.end(), row.begin());
    std::copy(r.begin(), r.end(), row.begin() + n);
    rows.push_back(std::move(row));
  }
  for (const Coeffs& r : v.basis()) {
    Coeffs row(2 * n, 0);
    std::copy(r.begin(), r.end(), row.begin());
    rows.push_back(std::move(row));
  }
  const std::size_t rank = echelon(rows, n, p, nullptr, false);
  std::vector<Coeffs> right;
  for (std::size_t i = rank; i < rows.size(); ++i) {
    right.emplace_back(rows[i].begin() + n, rows[i].end());
  }
  return Subspace::span(p, n, right, u.level());
}

bool equals(const Subspace& u, const Subspace& v) {
  check_compatible(u, v);
  return u == v;
}

bool modular_law_check(const Subspace& a, const Subspace& b, const Subspace& c) {
  const Subspace lhs = intersect(a, sum(b, c));
  const Subspace rhs = intersect(a, sum(b, intersect(c, sum(a, b))));
  return lhs == rhs;
}

Subspace kernel(Residue p, std::span<const Coeffs> images, std::size_t level) {
  const std::size_t n = images.size();
  const std::size_t m = n ? images[0].size() : 0;
  std::vector<Coeffs> rows;
  for (std::size_t k = 0; k < n; ++k) {
    require(images[k].size() == m, ErrorCode::kInvalidArgument, "ragged linear map");
    Coeffs row(m + n, 0);
    std::copy(images[k].begin(), images[k].end(), row.begin());
    row[m + k] = 1;
    rows.push_back(std::move(row));
  }
  const std::size_t rank = echelon(rows, m, p, nullptr, false);
  std::vector<Coeffs> ker;
  for (std::size_t i = rank; i < rows.size(); ++i) {
    ker.emplace_back(rows[i].begin() + m, rows[i].end());
  }
  return Subspace::span(p, n, ker, level);
}

bool canonical_less(const Subspace& u, const Subspace& v) {
  if (u.dim() != v.dim()) return u.dim() < v.dim();
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const int c = compare_base_p(u.basis()[i], v.basis()[i]);
    if (c) return c < 0;
  }
  return false;
}

std::uint64_t gaussian_binomial(Residue p, std::size_t n, std::size_t k) {
  if (k > n) return 0;
  // prod_{i<k} (p^(n-i) - 1) / (p^(i+1) - 1), computed incrementally; each
  // partial product is itself a Gaussian binomial, hence integral.
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned __int128 num = saturating_pow(p, n - i) - 1;
    const unsigned __int128 den = saturating_pow(p, i + 1) - 1;
    r = r * num / den;
    require(r <= std::numeric_limits<std::uint64_t>::max(), ErrorCode::kGuardExceeded,
            "Gaussian binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t count_subspaces(Residue p, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const std::uint64_t g = gaussian_binomial(p, n, k);
    require(total <= std::numeric_limits<std::uint64_t>::max() - g, ErrorCode::kGuardExceeded,
            "subspace count overflows 64 bits");
    total += g;
  }
  return total;
}

void for_each_subspace(Residue p, std::size_t n, const std::function<void(const Subspace&)>& fn) {
  require(is_prime(p), ErrorCode::kInvalidArgument, "p must be prime");
  const std::uint64_t total = count_subspaces(p, n);
  require(total <= kEnumerationGuard, ErrorCode::kGuardExceeded,
          "enumeration of " + std::to_string(total) + " subspaces exceeds the guard");
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Subspace> layer;
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      // Free positions: (row i, column j > piv[i], j not a pivot).
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = piv[i] + 1; j < n; ++j) {
          if (!std::binary_search(piv.begin(), piv.end(), j)) free.emplace_back(i, j);
        }
      }
      const std::uint64_t count = saturating_pow(p, free.size());
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Coeffs> rows(k, Coeffs(n, 0));
        for (std::size_t i = 0; i < k; ++i) rows[i][piv[i]] = 1;
        std::uint64_t rest = idx;
        for (const auto& [i, j] : free) {
          rows[i][j] = static_cast<Residue>(rest % p);
          rest /= p;
        }
        layer.push_back(Subspace::span(p, n, rows));
      }
      // Next pivot combination.
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(layer.begin(), layer.end(), canonical_less);
    for (const Subspace& s : layer) fn(s);
  }
}

std::vector<Subspace> enumerate_subspaces(Residue p, std::size_t n) {
  std::vector<Subspace> out;
  for_each_subspace(p, n, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

Coeffs random_vector(Residue p, std::size_t n, std::mt19937_64& rng) {
  Coeffs v(n);
  for (Residue& c : v) c = static_cast<Residue>(rng() % p);
  return v;
}

Subspace random_subspace(Residue p, std::size_t n, std::size_t dim_hint, std::mt19937_64& rng) {
  std::vector<Coeffs> vs;
  for (std::size_t i = 0; i < dim_hint; ++i) vs.push_back(random_vector(p, n, rng));
  return Subspace::span(p, n, vs);
}

// ------------------------------------------------------------ tower-aware

Subspace span_elements(const Tower& t, std::size_t level, std::span<const TowerElement> xs) {
  std::vector<Coeffs> rows;
  for (const TowerElement& x : xs) {
    require(x.level == level, ErrorCode::kLevelMismatch,
            "element at level " + std::to_string(x.level) + ", expected " + std::to_string(level));
    rows.push_back(x.coeffs);
  }
  return Subspace::span(t.p(), t.degree(level), rows, level);
}

Subspace subfield_span(const Tower& t, std::size_t level, std::size_t m) {
  const Field& F = t.field(level);
  require(m >= 1 && F.degree() % m == 0, ErrorCode::kInvalidArgument,
          "subfield degree " + std::to_string(m) + " does not divide " +
              std::to_string(F.degree()));
  // Frob^m is multiplicative, so its value on x^k is (Frob^m x)^k.
  const Coeffs y = F.frobenius(F.generator(), m);
  std::vector<Coeffs> images;
  Coeffs pw = F.one();
  for (std::size_t k = 0; k < F.degree(); ++k) {
    Coeffs e(F.degree(), 0);
    e[k] = 1;
    images.push_back(F.sub(pw, e));
    pw = F.mul(pw, y);
  }
  return kernel(t.p(), images, level);
}

Subspace intersect_subfield(const Tower& t, const Subspace& g, std::size_t m) {
  return intersect(g, subfield_span(t, g.level(), m));
}

Subspace lift(const Tower& t, const Subspace& u, std::size_t target) {
  require(target >= u.level(), ErrorCode::kInvalidArgument, "cannot lift to a lower level");
  std::vector<Coeffs> rows;
  for (const Coeffs& r : u.basis()) rows.push_back(t.embed_coeffs(r, u.level(), target));
  return Subspace::span(t.p(), t.degree(target), rows, target);
}

bool fp_independent_over(const Tower& t, std::span<const TowerElement> tuple, std::size_t m) {
  if (tuple.empty()) return true;
  const std::size_t level = tuple[0].level;
  const Subspace w = subfield_span(t, level, m);
  const Subspace s = sum(w, span_elements(t, level, tuple));
  return s.dim() == w.dim() + tuple.size();
}

}  // namespace acfg
