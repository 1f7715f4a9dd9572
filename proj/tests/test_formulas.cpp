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

#include <doctest.h>

#include <algorithm>
#include <array>

#include "acfg/error.hpp"
#include "acfg/flatness.hpp"
#include "acfg/solver.hpp"

using namespace acfg;

namespace {

Tower tower(Residue p, std::size_t n0) {
  TowerConfig c;
  c.p = p;
  c.n0 = n0;
  return Tower::create(c);
}

// Coefficients of X^2, XY, Y^2, X, Y, 1 in a two-variable polynomial over F_p.
using Quad = std::array<Residue, 6>;

Quad quad_of(const Poly& P) {
  Quad q{};
  for (const auto& [e, c] : P.terms()) {
    const std::uint32_t a = e.size() > 0 ? e[0] : 0, b = e.size() > 1 ? e[1] : 0;
    if (a == 2 && b == 0) q[0] = c;
    else if (a == 1 && b == 1) q[1] = c;
    else if (a == 0 && b == 2) q[2] = c;
    else if (a == 1 && b == 0) q[3] = c;
    else if (a == 0 && b == 1) q[4] = c;
    else if (a == 0 && b == 0) q[5] = c;
  }
  return q;
}

// Is P = k (a1 X + b1 Y - c1)(a2 X + b2 Y - c2) for some k, a_i, b_i, c_i in F_p?
bool splits_over_fp(const Quad& q, Residue p) {
  for (Residue k = 1; k < p; ++k)
    for (Residue a1 = 0; a1 < p; ++a1)
      for (Residue b1 = 0; b1 < p; ++b1)
        for (Residue c1 = 0; c1 < p; ++c1)
          for (Residue a2 = 0; a2 < p; ++a2)
            for (Residue b2 = 0; b2 < p; ++b2)
              for (Residue c2 = 0; c2 < p; ++c2) {
                const Residue m1 = (p - c1) % p, m2 = (p - c2) % p;
                const Quad r{k * a1 * a2 % p,
                             k * (a1 * b2 + a2 * b1) % p,
                             k * b1 * b2 % p,
                             k * (a1 * m2 + a2 * m1) % p,
                             k * (b1 * m2 + b2 * m1) % p,
                             k * m1 * m2 % p};
                if (r == q) return true;
              }
  return false;
}

FlatnessVerdict flat(Residue p, const std::string& text, Tower& t) {
  return is_fp_flat(t, to_field_poly(t, parse_poly(text, p), 0), std::uint64_t{1} << 20);
}

}  // namespace

TEST_SUITE("formulas") {

TEST_CASE("evaluation") {
  const Tower t = tower(2, 2);
  const TowerElement w = t.generator(0);
  const Poly a = parse_poly("x1 + y1", 2);
  const std::vector<TowerElement> x{w}, y{neg(t, w)};
  CHECK(eval(t, a, x, y) == t.zero(0));

  const Poly b = parse_poly("x1*x2 - y1", 2);
  const std::vector<TowerElement> x2{w, w}, y2{add(t, w, t.one(0))};
  CHECK(eval(t, b, x2, y2) == t.zero(0));
  CHECK(eval(t, Poly(2, 1, 0), x, {}) == t.zero(0));
}

TEST_CASE("parser rejects garbage") {
  CHECK_THROWS_AS(parse_formula("x1 * * 2", 2), Error);
  CHECK_THROWS_AS(parse_formula("z1 = 0", 2), Error);
  const QFConjunction f = parse_formula("x1*x2 = y1 & x1 != 0 & x2 != 0", 2);
  CHECK(f.nx == 2);
  CHECK(f.ny == 1);
  CHECK(f.equations.size() == 1);
  CHECK(f.inequations.size() == 2);
}

TEST_CASE("solving at one level") {
  const Tower t = tower(2, 2);
  const QFConjunction sq = parse_formula("x1^2 = y1", 2);
  const std::vector<TowerElement> w{t.generator(0)};
  const std::vector<Witness> roots = solve(t, sq, w, 0, 1 << 20);
  REQUIRE(roots.size() == 1);
  CHECK(mul(t, roots[0][0], roots[0][0]) == t.generator(0));

  const Tower t1 = tower(2, 1);
  const QFConjunction m = parse_formula("x1*x2 = y1 & x1 != 0", 2);
  const std::vector<TowerElement> one{t1.one(0)};
  const std::vector<Witness> sols = solve(t1, m, one, 0, 1 << 20);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == Witness{t1.one(0), t1.one(0)});

  CHECK(solve(t1, parse_formula("x1 = 0 & x1 != 0", 2), {}, 0, 1 << 20).empty());
}

TEST_CASE("solve honours the budget") {
  Tower t = tower(2, 2);
  t.grow(8);
  CHECK_THROWS_AS(solve(t, parse_formula("x1*x2 = 1", 2), {}, 1, 1000), Error);
}

TEST_CASE("theta search") {
  TowerConfig c;
  c.p = 2;
  c.n0 = 2;
  Tower t = Tower::create(c);
  const std::vector<TowerElement> w{t.generator(0)};

  const QFConjunction mult = parse_formula("x1*x2 = y1 & x1 != 0 & x2 != 0", 2);
  const ThetaResult found = theta_search(t, mult, w, 2, 256, search_options(c, 1));
  REQUIRE(found.status == ThetaStatus::kFound);
  CHECK(t.degree(found.level) <= 256);
  CHECK(satisfies(t, mult, found.witness, std::vector<TowerElement>{t.embed(w[0], found.level)}));
  CHECK(fp_independent_over(t, found.witness, 2));

  const QFConjunction sq = parse_formula("x1^2 = y1", 2);
  const ThetaResult none = theta_search(t, sq, w, 2, 16, search_options(c, 1));
  CHECK(none.status == ThetaStatus::kNotFound);
  CHECK(theta_search(t, parse_formula("x1 = y1", 2), w, 2, 16, search_options(c, 1)).status ==
        ThetaStatus::kNotFound);
}

TEST_CASE("joint independent solutions") {
  TowerConfig c;
  c.p = 2;
  c.n0 = 1;
  Tower t = Tower::create(c);
  const QFConjunction phi = parse_formula("x1*x2 = 1", 2);
  const JointResult r = find_joint_independent_solutions(t, phi, {}, 3, 1, 256, search_options(c, 1));
  REQUIRE(r.status == ThetaStatus::kFound);
  REQUIRE(r.rows.size() == 3);
  std::vector<TowerElement> all;
  for (const Witness& row : r.rows) {
    CHECK(satisfies(t, phi, row, {}));
    all.insert(all.end(), row.begin(), row.end());
  }
  CHECK(fp_independent_over(t, all, 1));

  const JointResult empty = find_joint_independent_solutions(t, phi, {}, 0, 1, 256, search_options(c, 1));
  CHECK(empty.rows.empty());

  Tower t4 = tower(2, 2);
  const std::vector<TowerElement> w{t4.generator(0)};
  CHECK(find_joint_independent_solutions(t4, parse_formula("x1^2 = y1", 2), w, 1, 2, 16,
                                         search_options(t4.config(), 1))
            .status != ThetaStatus::kFound);
}

TEST_CASE("flatness of x^2 + y^2") {
  Tower t5 = tower(5, 1);
  const FlatnessVerdict v5 = flat(5, "x1^2 + x2^2", t5);
  CHECK(v5.flat);
  CHECK(splits_over_fp(quad_of(parse_poly("x1^2 + x2^2", 5)), 5));
  const FieldPoly f5 = to_field_poly(t5, parse_poly("x1^2 + x2^2", 5), 0);
  CHECK(expand(t5, 0, 2, v5) == f5);
  // factors X+2Y and X+3Y up to order
  std::vector<Coeffs> lambdas;
  for (const LinearFactor& lf : v5.factors) {
    CHECK(is_zero(lf.b));
    for (std::size_t m = 0; m < lf.multiplicity; ++m) lambdas.push_back(lf.lambda);
  }
  std::sort(lambdas.begin(), lambdas.end());
  CHECK(lambdas == std::vector<Coeffs>{{1, 2}, {1, 3}});

  Tower t3 = tower(3, 1);
  CHECK_FALSE(flat(3, "x1^2 + x2^2", t3).flat);
  CHECK_FALSE(splits_over_fp(quad_of(parse_poly("x1^2 + x2^2", 3)), 3));
}

TEST_CASE("xy - 1 is never flat") {
  for (Residue p : {2u, 3u, 5u}) {
    Tower t = tower(p, 1);
    const FlatnessVerdict v = flat(p, "x1*x2 - 1", t);
    CHECK_FALSE(v.flat);
    CHECK(v.reason == FlatReason::kNonLinearResidual);
    CHECK_FALSE(splits_over_fp(quad_of(parse_poly("x1*x2 - 1", p)), p));
  }
}

TEST_CASE("linear forms are flat") {
  for (Residue p : {2u, 3u, 7u}) {
    Tower t = tower(p, 1);
    const FlatnessVerdict v = flat(p, "x1 + x2 + 1", t);
    CHECK(v.flat);
    REQUIRE(v.factors.size() == 1);
    CHECK(v.factors[0].lambda == Coeffs{1, 1});
  }
}

TEST_CASE("flat polynomials give rational zero combinations") {
  // X^2 + Y^2 over p = 5: every zero (x, y) in F_25 has x + 2y = 0 or x + 3y = 0.
  Tower t = tower(5, 1);
  t.grow(2);
  const Field& F = t.field(1);
  int zeros = 0;
  for (std::uint64_t i = 0; i < 25; ++i) {
    for (std::uint64_t j = 0; j < 25; ++j) {
      const Coeffs x = F.from_index(i), y = F.from_index(j);
      if (!is_zero(F.add(F.mul(x, x), F.mul(y, y)))) continue;
      ++zeros;
      const bool a = is_zero(F.add(x, F.scale(y, 2))), b = is_zero(F.add(x, F.scale(y, 3)));
      CHECK((a || b));
    }
  }
  CHECK(zeros == 49);
}

}
