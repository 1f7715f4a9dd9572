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

#include <random>

#include "acfg/subspace.hpp"
#include "oracle.hpp"

using namespace acfg;

namespace {

oracle::VecSet elements(const Subspace& s) { return oracle::span(s.basis(), s.p(), s.ambient()); }

Subspace sp(Residue p, std::size_t n, std::vector<Coeffs> rows) { return Subspace::span(p, n, rows); }

Tower tower(Residue p, std::size_t n0) {
  TowerConfig c;
  c.p = p;
  c.n0 = n0;
  return Tower::create(c);
}

}  // namespace

TEST_SUITE("subgroups") {

TEST_CASE("canonical basis") {
  const Subspace s = sp(3, 3, {{0, 2, 1}, {1, 2, 0}, {1, 0, 2}});
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const std::size_t piv = s.pivots()[i];
    CHECK(s.basis()[i][piv] == 1);
    for (std::size_t j = 0; j < piv; ++j) CHECK(s.basis()[i][j] == 0);
    for (std::size_t k = 0; k < s.dim(); ++k) {
      if (k != i) CHECK(s.basis()[k][piv] == 0);
    }
  }
  CHECK(s == sp(3, 3, {{1, 0, 2}, {0, 2, 1}}));
}

TEST_CASE("sum and intersection against element sets") {
  std::mt19937_64 rng(3);
  for (Residue p : {2u, 3u}) {
    const std::size_t n = p == 2 ? 6 : 4;
    for (int i = 0; i < 200; ++i) {
      const Subspace u = random_subspace(p, n, rng() % (n + 1), rng);
      const Subspace v = random_subspace(p, n, rng() % (n + 1), rng);
      const oracle::VecSet eu = elements(u), ev = elements(v);
      CHECK(elements(sum(u, v)) == oracle::join(eu, ev, p));
      CHECK(elements(intersect(u, v)) == oracle::meet(eu, ev));
      CHECK(sum(u, v).dim() + intersect(u, v).dim() == u.dim() + v.dim());
      CHECK(sum(u, Subspace(p, n)) == u);
    }
  }
}

TEST_CASE("small intersection") {
  CHECK(intersect(sp(2, 2, {{1, 0}}), sp(2, 2, {{1, 1}})).dim() == 0);
}

TEST_CASE("kernel") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::vector<Coeffs> images;
    for (int j = 0; j < 4; ++j) images.push_back(random_vector(3, 3, rng));
    const Subspace k = kernel(3, images);
    // every element of F_3^4 mapped to zero is in the kernel and nothing else
    for (std::uint64_t idx = 0; idx < 81; ++idx) {
      const Coeffs c = digits(idx, 3, 4);
      Coeffs img(3, 0);
      for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t r = 0; r < 3; ++r) img[r] = (img[r] + c[j] * images[j][r]) % 3;
      }
      CHECK(k.contains(c) == is_zero(img));
    }
  }
}

TEST_CASE("modular law") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Subspace a = random_subspace(2, 8, rng() % 9, rng);
    const Subspace b = random_subspace(2, 8, rng() % 9, rng);
    const Subspace c = random_subspace(2, 8, rng() % 9, rng);
    CHECK(modular_law_check(a, b, c));
  }
  const Subspace f = Subspace::full(2, 4);
  CHECK(modular_law_check(f, f, f));
  const Subspace b = sp(2, 4, {{1, 1, 0, 0}});
  CHECK(modular_law_check(sp(2, 4, {{1, 0, 0, 0}}), b, b));
}

TEST_CASE("modular law against element sets") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const Subspace a = random_subspace(3, 3, rng() % 4, rng);
    const Subspace b = random_subspace(3, 3, rng() % 4, rng);
    const Subspace c = random_subspace(3, 3, rng() % 4, rng);
    const oracle::VecSet ea = elements(a), eb = elements(b), ec = elements(c);
    const oracle::VecSet lhs = oracle::meet(ea, oracle::join(eb, ec, 3));
    const oracle::VecSet rhs = oracle::meet(ea, oracle::join(eb, oracle::meet(ec, oracle::join(ea, eb, 3)), 3));
    CHECK(lhs == rhs);
    CHECK(modular_law_check(a, b, c));
  }
}

TEST_CASE("subspace counts") {
  CHECK(count_subspaces(2, 3) == 16);
  CHECK(count_subspaces(2, 4) == 67);
  CHECK(count_subspaces(3, 2) == 6);
  for (auto [p, n] : std::vector<std::pair<Residue, std::size_t>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    std::uint64_t closed = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(gaussian_binomial(p, n, k) == oracle::gaussian(p, n, k));
      closed += oracle::gaussian(p, n, k);
    }
    CHECK(enumerate_subspaces(p, n).size() == closed);
  }
  CHECK(oracle::count_subgroups_by_subsets(2, 4) == 67);
  CHECK(oracle::count_subgroups_by_subsets(3, 2) == 6);
}

TEST_CASE("enumeration order and distinctness") {
  const std::vector<Subspace> all = enumerate_subspaces(2, 4);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(canonical_less(all[i - 1], all[i]));
}

TEST_CASE("subfield traces") {
  Tower t = tower(2, 1);
  t.grow(2);
  t.grow(2);
  const Subspace full = Subspace::full(2, 4, 2);
  CHECK(intersect_subfield(t, full, 2) == subfield_span(t, 2, 2));
  CHECK(subfield_span(t, 2, 2).dim() == 2);
  CHECK(intersect_subfield(t, Subspace(2, 4, 2), 1).dim() == 0);

  const TowerElement w = t.embed(t.generator(1), 2);
  const std::vector<TowerElement> gen{w};
  const Subspace g = span_elements(t, 2, gen);
  CHECK(intersect_subfield(t, g, 1).dim() == 0);
  CHECK(intersect_subfield(t, g, 2) == g);
}

TEST_CASE("lift") {
  Tower t = tower(3, 1);
  t.grow(2);
  t.grow(3);
  const std::vector<TowerElement> gen{t.generator(1)};
  const Subspace u = span_elements(t, 1, gen);
  CHECK(lift(t, u, 1) == u);
  const Subspace l = lift(t, u, 2);
  CHECK(l.dim() == u.dim());
  CHECK(l.contains(t.embed(t.generator(1), 2).coeffs));
  CHECK(intersect_subfield(t, l, 2) == l);
}

}
