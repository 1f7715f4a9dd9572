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

#ifndef ACFG_SUBSPACE_HPP
#define ACFG_SUBSPACE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "acfg/fp.hpp"
#include "acfg/tower.hpp"

namespace acfg {

/// An F_p-subspace of F_p^n, held as a canonical reduced row-echelon basis:
/// each row's pivot is its lowest nonzero index, pivots equal 1, pivot
/// columns are zero in every other row, and rows are ordered by pivot.
/// `level` tags the tower level when the ambient space is a field.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace.
  Subspace(Residue p, std::size_t ambient, std::size_t level = 0);

  static Subspace span(Residue p, std::size_t ambient, std::span<const Coeffs> vectors,
                       std::size_t level = 0);
  static Subspace full(Residue p, std::size_t ambient, std::size_t level = 0);

  Residue p() const { return p_; }
  std::size_t ambient() const { return n_; }
  std::size_t level() const { return level_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Coeffs>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of x after clearing pivot columns; zero iff x is in the space.
  Coeffs reduce(Coeffs x) const;
  bool contains(const Coeffs& x) const;
  /// Combination of basis rows with the base-p digits of `index`.
  Coeffs element(std::uint64_t index) const;
  /// Number of elements, saturating.
  std::uint64_t size() const { return saturating_pow(p_, dim()); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Residue p_ = 2;
  std::size_t n_ = 0;
  std::size_t level_ = 0;
  std::vector<Coeffs> rows_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
bool equals(const Subspace& u, const Subspace& v);
/// A ∩ (B + C) == A ∩ (B + C ∩ (A + B)).
bool modular_law_check(const Subspace& a, const Subspace& b, const Subspace& c);

/// Kernel of the linear map sending e_k to images[k] (all images length m).
Subspace kernel(Residue p, std::span<const Coeffs> images, std::size_t level = 0);

/// Canonical order: by dimension, then rows compared as base-p integers.
bool canonical_less(const Subspace& u, const Subspace& v);

std::uint64_t gaussian_binomial(Residue p, std::size_t n, std::size_t k);
std::uint64_t count_subspaces(Residue p, std::size_t n);
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;
/// Visits every subspace of F_p^n once in canonical order.
void for_each_subspace(Residue p, std::size_t n, const std::function<void(const Subspace&)>& fn);
std::vector<Subspace> enumerate_subspaces(Residue p, std::size_t n);

/// Span of `dim_hint` random vectors (the result may be smaller).
Subspace random_subspace(Residue p, std::size_t n, std::size_t dim_hint, std::mt19937_64& rng);
Coeffs random_vector(Residue p, std::size_t n, std::mt19937_64& rng);

// Tower-aware operations. Subspaces of a level carry its index.

Subspace span_elements(const Tower& t, std::size_t level, std::span<const TowerElement> xs);
/// F_p-span of the subfield F_{p^m} inside the given level.
Subspace subfield_span(const Tower& t, std::size_t level, std::size_t m);
Subspace intersect_subfield(const Tower& t, const Subspace& g, std::size_t m);
Subspace lift(const Tower& t, const Subspace& u, std::size_t target);

}  // namespace acfg

#endif  // ACFG_SUBSPACE_HPP
