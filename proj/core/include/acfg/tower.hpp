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

#ifndef ACFG_TOWER_HPP
#define ACFG_TOWER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "acfg/fp.hpp"

namespace acfg {

/// Arithmetic in one finite field F_p[x]/(f). Elements are coefficient
/// vectors of length degree() in the power basis 1, x, ..., x^(n-1).
class Field {
 public:
  Field(Residue p, Coeffs modulus);

  Residue p() const { return p_; }
  std::size_t degree() const { return n_; }
  /// Monic modulus, constant term first, length degree()+1.
  const Coeffs& modulus() const { return modulus_; }

  Coeffs zero() const { return Coeffs(n_, 0); }
  Coeffs one() const;
  Coeffs constant(Residue c) const;
  /// The class of x. For degree 1 this is the root of the linear modulus.
  Coeffs generator() const;

  Coeffs add(const Coeffs& a, const Coeffs& b) const;
  Coeffs sub(const Coeffs& a, const Coeffs& b) const;
  Coeffs neg(const Coeffs& a) const;
  Coeffs scale(const Coeffs& a, Residue c) const;
  Coeffs mul(const Coeffs& a, const Coeffs& b) const;
  Coeffs inv(const Coeffs& a) const;
  Coeffs pow(const Coeffs& a, std::uint64_t e) const;
  /// a^(p^e), via the precomputed Frobenius matrix.
  Coeffs frobenius(const Coeffs& a, std::uint64_t e = 1) const;

  /// Number of elements if it fits in 64 bits.
  std::optional<std::uint64_t> size() const;
  Coeffs from_index(std::uint64_t index) const { return digits(index, p_, n_); }

  /// Columns are the images of the basis vectors under x -> x^p.
  const std::vector<Coeffs>& frobenius_matrix() const { return frob_; }

 private:
  Residue p_;
  std::size_t n_;
  Coeffs modulus_;
  // reduce_[i] = x^(n+i) mod f, for i in [0, n-1).
  std::vector<Coeffs> reduce_;
  std::vector<Coeffs> frob_;
};

struct TowerConfig {
  Residue p = 2;
  std::size_t n0 = 1;
  /// Bound on exhaustive enumeration work (points or nodes visited).
  std::uint64_t search_budget = std::uint64_t{1} << 24;
  /// Bound on random samples when a space is too large to enumerate.
  std::uint64_t sample_budget = 4096;
  /// Cap on the degree of any level.
  std::size_t max_degree = 256;
};

void validate(const TowerConfig& config);

struct TowerElement {
  std::size_t level = 0;
  Coeffs coeffs;

  friend bool operator==(const TowerElement&, const TowerElement&) = default;
};

/// A chain F_{p^n0} < F_{p^n1} < ... with n_i | n_{i+1}. Level i+1 stores the
/// image of the level-i generator; all choices are canonical so equal
/// configs and growth sequences give identical towers.
class Tower {
 public:
  static Tower create(const TowerConfig& config);
  /// Rebuilds a tower from serialized parts, validating every invariant.
  static Tower restore(const TowerConfig& config,
                       const std::vector<Coeffs>& moduli,
                       const std::vector<Coeffs>& embeddings);

  void grow(std::size_t multiplier);

  const TowerConfig& config() const { return config_; }
  Residue p() const { return config_.p; }
  std::size_t size() const { return fields_.size(); }
  const Field& field(std::size_t level) const;
  std::size_t degree(std::size_t level) const { return field(level).degree(); }
  std::size_t top() const { return fields_.size() - 1; }
  std::optional<std::size_t> level_of_degree(std::size_t degree) const;
  /// embeddings()[i] is the image of the level-i generator at level i+1.
  const std::vector<Coeffs>& embeddings() const { return embeddings_; }

  TowerElement zero(std::size_t level) const;
  TowerElement one(std::size_t level) const;
  TowerElement generator(std::size_t level) const;
  TowerElement element(std::size_t level, Coeffs coeffs) const;

  Coeffs embed_coeffs(const Coeffs& x, std::size_t from, std::size_t to) const;
  TowerElement embed(const TowerElement& x, std::size_t target) const;

 private:
  explicit Tower(const TowerConfig& config) : config_(config) {}
  void append_level(Coeffs modulus, Coeffs embedding);

  TowerConfig config_;
  std::vector<Field> fields_;
  std::vector<Coeffs> embeddings_;
  // embed_cols_[i][k] = image of x^k (level i) at level i+1.
  std::vector<std::vector<Coeffs>> embed_cols_;
};

/// Lexicographically least monic irreducible of the given degree, where
/// lower coefficients are read as a base-p integer (constant term least
/// significant).
Coeffs least_irreducible(Residue p, std::size_t degree);

/// All roots in `field` of a polynomial with F_p coefficients that splits
/// there into distinct linear factors, sorted by base-p order.
std::vector<Coeffs> roots_in_field(const Field& field, const Coeffs& fp_poly);

// Dense univariate polynomials over a Field, index i = coefficient of X^i,
// kept trimmed.
namespace upoly {
using UPoly = std::vector<Coeffs>;
void trim(UPoly& f);
UPoly mod(const Field& F, UPoly a, const UPoly& m);
/// Monic gcd; empty when both inputs are zero.
UPoly gcd(const Field& F, UPoly a, UPoly b);
Coeffs eval(const Field& F, const UPoly& f, const Coeffs& x);
}  // namespace upoly

TowerElement add(const Tower& t, const TowerElement& a, const TowerElement& b);
TowerElement sub(const Tower& t, const TowerElement& a, const TowerElement& b);
TowerElement neg(const Tower& t, const TowerElement& a);
TowerElement mul(const Tower& t, const TowerElement& a, const TowerElement& b);
TowerElement inv(const Tower& t, const TowerElement& a);
TowerElement pow(const Tower& t, const TowerElement& a, std::uint64_t e);
TowerElement frobenius(const Tower& t, const TowerElement& x, std::uint64_t e);
/// x^(p^m) == x. m must divide the degree of x's level.
bool in_subfield(const Tower& t, const TowerElement& x, std::size_t m);
/// No nontrivial F_p-combination of the tuple lies in F_{p^m}.
bool fp_independent_over(const Tower& t, std::span<const TowerElement> tuple,
                         std::size_t m);

}  // namespace acfg

#endif  // ACFG_TOWER_HPP
