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

#include "acfg/error.hpp"
#include "acfg/tower.hpp"

using namespace acfg;

namespace {

// Schoolbook product reduced by the monic modulus.
Coeffs naive_mul(const Coeffs& a, const Coeffs& b, const Coeffs& modulus, Residue p) {
  const std::size_t n = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t k = 2 * n - 1; k >= n; --k) {
    const std::uint64_t c = prod[k];
    if (!c) continue;
    for (std::size_t i = 0; i <= n; ++i) {
      prod[k - n + i] = (prod[k - n + i] + (p - c) * modulus[i]) % p;
    }
  }
  return Coeffs(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n));
}

// Trial division by every monic polynomial of degree at most n/2.
bool naive_irreducible(const Coeffs& f, Residue p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t j = 0; j < count; ++j) {
      Coeffs g = digits(j, p, d);
      g.push_back(1);
      Coeffs r = f;
      for (std::size_t k = n; k >= d; --k) {
        const Residue c = r[k];
        for (std::size_t i = 0; i <= d; ++i) r[k - d + i] = (r[k - d + i] + (p - c) * g[i]) % p;
      }
      bool zero = true;
      for (std::size_t i = 0; i < d; ++i) zero = zero && r[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

Tower tower(Residue p, std::size_t n0, std::size_t max_degree = 256) {
  TowerConfig c;
  c.p = p;
  c.n0 = n0;
  c.max_degree = max_degree;
  return Tower::create(c);
}

}  // namespace

TEST_SUITE("tower") {

TEST_CASE("base level moduli") {
  const Tower t1 = tower(2, 1);
  CHECK(t1.degree(0) == 1);
  CHECK(t1.field(0).modulus().size() == 2);
  const Tower t2 = tower(2, 2);
  CHECK(t2.field(0).modulus() == Coeffs{1, 1, 1});
  // exhaustive: x^2+x+1 is the only monic quadratic without a root in F_2
  int irreducible = 0;
  for (Residue a = 0; a < 2; ++a) {
    for (Residue b = 0; b < 2; ++b) {
      const bool root0 = a == 0, root1 = (1 + a + b) % 2 == 0;
      if (!root0 && !root1) ++irreducible;
    }
  }
  CHECK(irreducible == 1);
}

TEST_CASE("invalid characteristic") {
  TowerConfig c;
  c.p = 4;
  CHECK_THROWS_AS(Tower::create(c), Error);
}

TEST_CASE("growth and embeddings") {
  Tower t = tower(2, 1);
  t.grow(2);
  REQUIRE(t.size() == 2);
  CHECK(t.field(1).modulus() == Coeffs{1, 1, 1});
  CHECK(t.embed(t.one(0), 1) == t.one(1));

  t.grow(2);
  const Coeffs& f16 = t.field(2).modulus();
  const TowerElement r = t.embed(t.generator(1), 2);
  const Coeffs r2 = naive_mul(r.coeffs, r.coeffs, f16, 2);
  Coeffs lhs(4);
  for (std::size_t i = 0; i < 4; ++i) lhs[i] = (r2[i] + r.coeffs[i] + (i == 0 ? 1 : 0)) % 2;
  CHECK(is_zero(lhs));
}

TEST_CASE("growth past the degree cap") {
  Tower t = tower(2, 2, 8);
  t.grow(2);
  t.grow(2);
  CHECK(t.degree(t.top()) == 8);
  CHECK_THROWS_AS(t.grow(2), Error);
}

TEST_CASE("F_4 arithmetic") {
  const Tower t = tower(2, 2);
  const TowerElement w = t.generator(0);
  CHECK(mul(t, w, w).coeffs == Coeffs{1, 1});
}

TEST_CASE("field axioms on random elements") {
  Tower t = tower(3, 2);
  t.grow(3);
  std::mt19937_64 rng(5);
  const Field& F = t.field(1);
  for (int i = 0; i < 200; ++i) {
    const TowerElement a = t.element(1, digits(rng() % 729, 3, 6));
    const TowerElement b = t.element(1, digits(rng() % 729, 3, 6));
    CHECK(is_zero(add(t, a, neg(t, a)).coeffs));
    CHECK(mul(t, a, b).coeffs == naive_mul(a.coeffs, b.coeffs, F.modulus(), 3));
    if (!is_zero(a.coeffs)) CHECK(mul(t, inv(t, a), a) == t.one(1));
    CHECK(frobenius(t, add(t, a, b), 1) == add(t, frobenius(t, a, 1), frobenius(t, b, 1)));
  }
}

TEST_CASE("embedding is a ring map") {
  Tower t = tower(2, 2);
  t.grow(3);
  t.grow(2);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const TowerElement a = t.element(0, digits(rng() % 4, 2, 2));
    const TowerElement b = t.element(0, digits(rng() % 4, 2, 2));
    CHECK(t.embed(mul(t, a, b), 2) == mul(t, t.embed(a, 2), t.embed(b, 2)));
    CHECK(t.embed(add(t, a, b), 2) == add(t, t.embed(a, 2), t.embed(b, 2)));
  }
  const TowerElement w = t.embed(t.generator(0), 2);
  CHECK(add(t, add(t, mul(t, w, w), w), t.one(2)) == t.zero(2));
}

TEST_CASE("subfield membership and independence") {
  Tower t = tower(2, 2);
  const TowerElement w = t.generator(0);
  CHECK_FALSE(in_subfield(t, w, 1));
  for (std::uint64_t i = 0; i < 4; ++i) CHECK(in_subfield(t, t.element(0, digits(i, 2, 2)), 2));
  const std::vector<TowerElement> one{w};
  CHECK(fp_independent_over(t, one, 1));
  const std::vector<TowerElement> two{w, add(t, w, t.one(0))};
  CHECK_FALSE(fp_independent_over(t, two, 1));
  const std::vector<TowerElement> zero{t.zero(0)};
  CHECK_FALSE(fp_independent_over(t, zero, 1));
  CHECK_FALSE(fp_independent_over(t, zero, 2));
}

TEST_CASE("least irreducible is irreducible and least") {
  for (Residue p : {2u, 3u, 5u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const Coeffs f = least_irreducible(p, n);
      CHECK(naive_irreducible(f, p));
      // no smaller monic candidate of the same degree is irreducible
      std::uint64_t idx = 0;
      for (std::size_t i = n; i-- > 0;) idx = idx * p + f[i];
      for (std::uint64_t j = 0; j < idx; ++j) {
        Coeffs g = digits(j, p, n);
        g.push_back(1);
        CHECK_FALSE(naive_irreducible(g, p));
      }
    }
  }
}

}
