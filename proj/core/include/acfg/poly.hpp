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

#ifndef ACFG_POLY_HPP
#define ACFG_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acfg/fp.hpp"
#include "acfg/tower.hpp"

namespace acfg {

using Exponents = std::vector<std::uint32_t>;

/// Polynomial with F_p coefficients in witness variables x1..x_nx followed
/// by parameter variables y1..y_ny. Zero coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  Poly(Residue p, std::size_t nx, std::size_t ny);

  static Poly constant(Residue p, std::size_t nx, std::size_t ny, std::int64_t c);
  /// Variable by flat index: 0..nx-1 are x's, nx..nx+ny-1 are y's.
  static Poly variable(Residue p, std::size_t nx, std::size_t ny, std::size_t index);

  Residue p() const { return p_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nvars() const { return nx_ + ny_; }
  const std::map<Exponents, Residue>& terms() const { return terms_; }

  void add_term(const Exponents& e, Residue c);
  bool is_zero() const { return terms_.empty(); }
  std::size_t total_degree() const;
  std::size_t degree_in(std::size_t var) const;
  bool uses(std::size_t var) const { return degree_in(var) > 0; }
  /// Same polynomial viewed with more variables of each kind.
  Poly with_arity(std::size_t nx, std::size_t ny) const;
  std::string to_string() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  Residue p_ = 2;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::map<Exponents, Residue> terms_;
};

Poly pow(const Poly& a, std::uint32_t e);

/// Conjunction of equations P = 0 and inequations Q != 0.
struct QFConjunction {
  Residue p = 2;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<Poly> equations;
  std::vector<Poly> inequations;
  std::string text;
};

/// Grammar: literal ('&' literal)*; literal: expr [('=' | '!=') expr];
/// expr: ['+'|'-'] term (('+'|'-') term)*; term: factor ('*' factor)*;
/// factor: atom ['^' n]; atom: integer | xN | yN | '(' expr ')'.
/// A bare expr means expr = 0. Arity is the larger of the hint and the
/// highest index used.
QFConjunction parse_formula(std::string_view text, Residue p, std::size_t nx_hint = 0,
                            std::size_t ny_hint = 0);
Poly parse_poly(std::string_view text, Residue p, std::size_t nx_hint = 0,
                std::size_t ny_hint = 0);
/// Field element written as a polynomial in w, the level generator,
/// e.g. "w^2+1" or "3".
Coeffs parse_element(std::string_view text, const Field& field);
std::string format_element(const Coeffs& x);

/// Polynomial with coefficients in one tower level.
class FieldPoly {
 public:
  FieldPoly() = default;
  FieldPoly(std::size_t level, std::size_t nvars) : level_(level), nvars_(nvars) {}

  std::size_t level() const { return level_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Coeffs>& terms() const { return terms_; }

  void add_term(const Field& F, const Exponents& e, const Coeffs& c);
  bool is_zero() const { return terms_.empty(); }
  std::size_t total_degree() const;
  std::size_t degree_in(std::size_t var) const;
  std::string to_string() const;

  friend bool operator==(const FieldPoly&, const FieldPoly&) = default;

 private:
  std::size_t level_ = 0;
  std::size_t nvars_ = 0;
  std::map<Exponents, Coeffs> terms_;
};

FieldPoly add(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly sub(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly mul(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly scale(const Field& F, const FieldPoly& a, const Coeffs& c);

/// Lifts all variables of P to a FieldPoly at `level`.
FieldPoly to_field_poly(const Tower& t, const Poly& p, std::size_t level);
/// Substitutes parameter values (embedded to `level` as needed) for the y
/// variables, leaving a FieldPoly in x1..x_nx.
FieldPoly substitute_params(const Tower& t, const Poly& p, std::span<const TowerElement> params,
                            std::size_t level);
Coeffs eval(const Field& F, const FieldPoly& f, std::span<const Coeffs> values);
/// Evaluates P at witness values x and parameter values y, all at one level.
TowerElement eval(const Tower& t, const Poly& p, std::span<const TowerElement> x,
                  std::span<const TowerElement> y);
bool satisfies(const Tower& t, const QFConjunction& phi, std::span<const TowerElement> x,
               std::span<const TowerElement> y);

}  // namespace acfg

#endif  // ACFG_POLY_HPP
