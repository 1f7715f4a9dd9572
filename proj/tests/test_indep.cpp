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

#include <bit>
#include <random>

#include "acfg/error.hpp"
#include "acfg/pregeometry.hpp"
#include "acfg/skeleton.hpp"
#include "acfg/state_io.hpp"
#include "oracle.hpp"

using namespace acfg;

namespace {

// Reference closure on points of F_p^d: linear span, or affine hull.
struct RefGeometry {
  Residue p;
  std::size_t d;
  bool affine;
  std::vector<oracle::Vec> pts;

  RefGeometry(Residue p_, std::size_t d_, bool affine_) : p(p_), d(d_), affine(affine_) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < d; ++i) n *= p;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(digits(i, p, d));
  }

  Mask closure(Mask m) const {
    std::vector<oracle::Vec> gens;
    oracle::Vec base(d, 0);
    bool first = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(m >> i & 1)) continue;
      if (affine && first) {
        base = pts[i];
        first = false;
        continue;
      }
      gens.push_back(affine ? oracle::axpy(pts[i], p - 1, base, p) : pts[i]);
    }
    if (affine && first) return 0;
    Mask out = 0;
    for (const oracle::Vec& v : oracle::span(gens, p, d)) {
      const oracle::Vec q = affine ? oracle::axpy(v, 1, base, p) : v;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] == q) out |= Mask{1} << i;
      }
    }
    return out;
  }

  // Least size of a subset generating the same closure.
  std::size_t rank(Mask m) const {
    const Mask target = closure(m);
    std::size_t best = std::popcount(m);
    for (Mask s = m;; s = (s - 1) & m) {
      if (static_cast<std::size_t>(std::popcount(s)) < best && closure(s) == target) best = std::popcount(s);
      if (s == 0) break;
    }
    return best;
  }

  bool indep_a(Mask a, Mask b, Mask c) const { return (closure(a | c) & closure(b | c)) == closure(c); }
  bool indep_pregeo(Mask a, Mask b, Mask c) const {
    return rank(a | c) + rank(b | c) == rank(c) + rank(a | b | c);
  }
  bool mono_a(Mask a, Mask b, Mask c) const {
    const Mask top = closure(b | c);
    for (Mask dd = top;; dd = (dd - 1) & top) {
      if (!indep_a(a, b | c, c | dd)) return false;
      if (dd == 0) break;
    }
    return true;
  }
};

Subspace sp(std::size_t d, std::vector<Coeffs> rows) { return Subspace::span(2, d, rows); }

oracle::VecSet els(const Subspace& s) { return oracle::span(s.basis(), s.p(), s.ambient()); }

// Weak condition on element sets.
bool ref_weak(const Subspace& ac, const Subspace& bc, const Subspace& c, const Subspace& g) {
  const oracle::VecSet eac = els(ac), ebc = els(bc), eg = els(g);
  if (oracle::meet(eac, ebc) != els(c)) return false;
  return oracle::meet(eg, oracle::join(eac, ebc, 2)) == oracle::join(oracle::meet(eg, eac), oracle::meet(eg, ebc), 2);
}

}  // namespace

TEST_SUITE("indep") {

TEST_CASE("closures match the reference") {
  for (const auto& [s, ref] : {std::pair{Pregeometry::linear(2, 2), RefGeometry(2, 2, false)},
                               std::pair{Pregeometry::linear(3, 2), RefGeometry(3, 2, false)},
                               std::pair{Pregeometry::affine(2, 2), RefGeometry(2, 2, true)},
                               std::pair{Pregeometry::affine(2, 3), RefGeometry(2, 3, true)}}) {
    for (Mask m = 0; m <= s.full(); ++m) {
      CHECK(s.closure(m) == ref.closure(m));
      CHECK(s.rank(m) == ref.rank(m));
    }
  }
}

TEST_CASE("table structures are validated") {
  // free closure on three points
  std::vector<Mask> free(8);
  for (Mask m = 0; m < 8; ++m) free[m] = m;
  CHECK(Pregeometry::table(3, free).rank(7) == 3);
  std::vector<Mask> bad = free;
  bad[1] = 3;
  bad[2] = 2;  // exchange fails: 1 ∈ cl(2 ∪ {0}) would be needed
  bad[3] = 3;
  CHECK_THROWS_AS(Pregeometry::table(3, bad), Error);
}

TEST_CASE("base relations on small examples") {
  const Pregeometry lin = Pregeometry::linear(2, 2);
  const Pregeometry aff = Pregeometry::affine(2, 2);
  const Relation a = Relation::indep_a(), pg = Relation::indep_pregeo();
  // points: 1 = e1, 2 = e2
  CHECK(a(lin, 1u << 1, 1u << 2, 0));
  CHECK(pg(lin, 1u << 1, 1u << 2, 0));
  // parallel lines {0,1} and {2,3}
  CHECK(a(aff, 0b0011, 0b1100, 0));
  CHECK_FALSE(pg(aff, 0b0011, 0b1100, 0));
  CHECK_FALSE(Relation::monotonise(a)(aff, 0b0011, 0b1100, 0));
  CHECK(Relation::monotonise(a)(lin, 1u << 1, 1u << 2, 0));
  for (Mask b = 0; b < 16; ++b) CHECK(pg(aff, 0b0001, b, 0b0001));
}

TEST_CASE("monotonised indep_a equals pregeometric independence") {
  for (auto [s, ref] : {std::pair{Pregeometry::linear(2, 2), RefGeometry(2, 2, false)},
                        std::pair{Pregeometry::affine(2, 2), RefGeometry(2, 2, true)}}) {
    const Relation m = Relation::monotonise(Relation::indep_a());
    std::size_t separating = 0;
    for (Mask a = 0; a <= s.full(); ++a)
      for (Mask b = 0; b <= s.full(); ++b)
        for (Mask c = 0; c <= s.full(); ++c) {
          CHECK(m(s, a, b, c) == ref.mono_a(a, b, c));
          CHECK(ref.mono_a(a, b, c) == ref.indep_pregeo(a, b, c));
          separating += ref.indep_a(a, b, c) && !ref.indep_pregeo(a, b, c);
        }
    const AgreementReport rep = ex_acfmon_check(s);
    CHECK(rep.disagreements == 0);
    CHECK(rep.separating == separating);
  }
  CHECK(ex_acfmon_check(Pregeometry::affine(2, 2)).separating >= 1);
  CHECK(ex_acfmon_check(Pregeometry::linear(2, 3), 2).disagreements == 0);
}

TEST_CASE("star combinator") {
  const Pregeometry lin = Pregeometry::linear(2, 2);
  const Relation st = Relation::star(Relation::trivial());
  for (Mask a = 0; a < 16; ++a)
    for (Mask b = 0; b < 16; ++b)
      for (Mask c = 0; c < 16; ++c) CHECK(st(lin, a, b, c));
  // star(R) implies R for invariant R (take B' = B)
  const Relation sa = Relation::star(Relation::indep_a());
  const Relation a = Relation::indep_a();
  for (Mask x = 0; x < 16; ++x)
    for (Mask y = 0; y < 16; ++y)
      for (Mask z = 0; z < 16; ++z) {
        if (sa(lin, x, y, z)) CHECK(a(lin, x, y, z));
      }
}

TEST_CASE("property checks") {
  const Pregeometry aff = Pregeometry::affine(2, 2);
  const Pregeometry lin = Pregeometry::linear(2, 2);
  const PropertyOptions opt;
  for (const char* r : {"a", "pregeo"}) {
    const Relation base = parse_relation(r);
    for (const Pregeometry* s : {&lin, &aff}) {
      CHECK(check_property(Relation::monotonise(base), *s, Property::kBmon, opt).violations.empty());
      CHECK(check_property(Relation::star(base), *s, Property::kExt2, opt).violations.empty());
      CHECK(check_property(base, *s, Property::kInv, opt).violations.empty());
    }
  }
  CHECK_FALSE(check_property(Relation::indep_a(), aff, Property::kBmon, opt).violations.empty());
  CHECK(check_property(Relation::indep_pregeo(), aff, Property::kSym, opt).violations.empty());
  const PropertyReport rep = check_property(Relation::indep_a(), aff, Property::kBmon, opt);
  CHECK(rep.exhaustive);
}

TEST_CASE("property sampling is seeded") {
  const Pregeometry aff = Pregeometry::affine(2, 3);
  PropertyOptions opt;
  opt.budget = 5000;
  opt.seed = 3;
  const PropertyReport a = check_property(Relation::indep_a(), aff, Property::kBmon, opt);
  const PropertyReport b = check_property(Relation::indep_a(), aff, Property::kBmon, opt);
  CHECK_FALSE(a.exhaustive);
  CHECK(a.instances == b.instances);
  CHECK(a.violations.size() == b.violations.size());
}

TEST_CASE("relation parsing") {
  CHECK(parse_relation("star(m(a))").name() == "star(m(a))");
  CHECK_THROWS_AS(parse_relation("b"), Error);
  CHECK_THROWS_AS(parse_property("LOC"), Error);
}

TEST_CASE("weak and strong independence") {
  SkeletonConfig cfg;
  cfg.p = 2;
  cfg.d = 3;
  cfg.labels["A"] = sp(3, {{1, 0, 0}});
  cfg.labels["B"] = sp(3, {{0, 1, 0}});
  cfg.labels["C"] = Subspace(2, 3);
  cfg.gamma = sp(3, {{1, 1, 0}});
  CHECK_FALSE(indep_w(cfg, "A", "B", "C"));
  cfg.gamma = sp(3, {{1, 0, 0}});
  CHECK(indep_w(cfg, "A", "B", "C"));

  cfg.labels["AB"] = Subspace::full(2, 3);
  cfg.labels["ABC"] = Subspace::full(2, 3);
  cfg.gamma = sp(3, {{0, 0, 1}});
  CHECK(indep_w(cfg, "A", "B", "C"));
  CHECK_FALSE(indep_st(cfg, "A", "B", "C"));
  CHECK(indep_st(cfg, "B", "A", "C") == indep_st(cfg, "A", "B", "C"));
  CHECK(indep_w(cfg, "A", "C", "C"));

  SkeletonConfig missing = cfg;
  CHECK_THROWS_AS(missing.space("Z"), Error);
}

TEST_CASE("weak condition against element sets") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const Subspace c = random_subspace(2, 5, rng() % 2, rng);
    const Subspace ac = sum(c, random_subspace(2, 5, rng() % 3, rng));
    const Subspace bc = sum(c, random_subspace(2, 5, rng() % 3, rng));
    const Subspace g = random_subspace(2, 5, rng() % 4, rng);
    CHECK(weak_condition(ac, bc, c, g) == ref_weak(ac, bc, c, g));
  }
}

TEST_CASE("monotonised weak independence needs its family") {
  SkeletonConfig cfg;
  cfg.p = 2;
  cfg.d = 2;
  cfg.labels["A"] = sp(2, {{1, 0}});
  cfg.labels["B"] = sp(2, {{0, 1}});
  cfg.labels["C"] = Subspace(2, 2);
  cfg.gamma = Subspace(2, 2);
  CHECK_THROWS_AS(indep_wm(cfg, "A", "B", "C", "E"), Error);
  cfg.families["E"] = {FamilyMember{Subspace(2, 2), std::nullopt}, FamilyMember{sp(2, {{0, 1}}), std::nullopt}};
  CHECK(indep_wm(cfg, "A", "B", "C", "E"));
}

TEST_CASE("transitivity suites") {
  std::mt19937_64 rng(4);
  int premises = 0;
  for (int i = 0; i < 500; ++i) {
    const TraOutcome o = weak_tra_check(sample_tra_config(2, 6, rng));
    premises += o.premises;
    CHECK(o.holds());
  }
  CHECK(premises > 0);
  int passing = 0;
  for (int i = 0; i < 500; ++i) {
    const SkeletonConfig cfg = sample_mixed_tran_config(2, 6, rng);
    const MixedTranOutcome o = mixed_tran_check(cfg, "E");
    if (!o.preconditions) continue;
    ++passing;
    CHECK(o.holds());
  }
  CHECK(passing > 0);
}

TEST_CASE("mixed transitivity with B = D") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    SkeletonConfig cfg = sample_mixed_tran_config(2, 5, rng);
    cfg.labels["D"] = cfg.space("B");
    cfg.labels["AD"] = cfg.space("AB");
    const MixedTranOutcome o = mixed_tran_check(cfg, "E");
    if (o.preconditions && o.premise_wm) CHECK(o.conclusion);
  }
}

TEST_CASE("ind* equivalence") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const IndStarResult r = ind_star_equiv_check(sample_ind_star_config(2, 6, rng));
    CHECK(r.verdict == IndStarVerdict::kAgree);
  }
  SkeletonConfig broken;
  broken.p = 2;
  broken.d = 3;
  broken.labels["a"] = sp(3, {{1, 0, 0}, {0, 1, 0}});
  broken.labels["b"] = sp(3, {{0, 1, 0}, {0, 0, 1}});
  broken.labels["C"] = Subspace(2, 3);
  broken.gamma = Subspace(2, 3);
  CHECK(ind_star_equiv_check(broken).verdict == IndStarVerdict::kPrecondition);
}

TEST_CASE("greedy reduction") {
  const Subspace g = sp(4, {{1, 0, 1, 0}});
  const LocReduction r = greedy_loc_reduction(sp(4, {{1, 0, 0, 0}}), sp(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}), g);
  CHECK(r.c == std::vector<Coeffs>{{0, 0, 1, 0}});
  CHECK(r.identity_holds);

  const LocReduction z = greedy_loc_reduction(sp(4, {{1, 0, 0, 0}}), sp(4, {{0, 1, 0, 0}}), Subspace(2, 4));
  CHECK(z.c.empty());

  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Subspace a = random_subspace(2, 6, rng() % 4, rng);
    const Subspace b = random_subspace(2, 6, rng() % 4, rng);
    const Subspace gg = random_subspace(2, 6, rng() % 4, rng);
    const LocReduction lr = greedy_loc_reduction(a, b, gg);
    CHECK(lr.c.size() <= lr.enumerated);
    const oracle::VecSet ea = els(a), eb = els(b), eg = els(gg);
    const oracle::VecSet ec = oracle::span(lr.c, 2, 6);
    for (const Coeffs& c : lr.c) CHECK(eb.count(c));
    const oracle::VecSet lhs = oracle::meet(eg, oracle::join(ea, eb, 2));
    const oracle::VecSet rhs = oracle::join(oracle::meet(eg, oracle::join(ea, ec, 2)), oracle::meet(eg, eb), 2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("local character witness") {
  for (std::size_t r : {2u, 3u}) {
    const LocWitness w = loc_witness_config(r);
    const std::vector<LocSearch> res = loc_failure_search(w);
    CHECK(res.size() == (std::size_t{1} << r) - 1);
    for (const LocSearch& s : res) {
      CHECK(s.failing_d.has_value());
      CHECK(s.designed_d_fails);
    }
    CHECK(w.weak_holds((1u << r) - 1, 0));
  }
  // reference check of the designed failure for r = 2, A0 = {pair 0}
  const LocWitness w = loc_witness_config(2);
  const std::uint32_t base = 0b00010 | 0b01000 | 0b00100;  // t_1, t_1', and D = t_2
  const std::uint32_t block = 0b11110;
  CHECK_FALSE(ref_weak(w.closure(base | 1u), w.closure(block), w.closure(base), w.gamma));
  CHECK_FALSE(w.weak_holds(0b01, 0b00100));
}

TEST_CASE("skeleton files") {
  const SkeletonConfig cfg = parse_skeleton(
      R"({"p":2,"d":3,"labels":{"A":[[1,0,0]],"B":[[0,1,0]],"C":[]},"gamma":[[1,1,0]]})");
  CHECK_FALSE(indep_w(cfg, "A", "B", "C"));
  CHECK_THROWS_AS(parse_skeleton(R"({"p":2,"d":3,"labels":{"A":[[1,0]]},"gamma":[]})"), Error);
  CHECK_THROWS_AS(
      parse_skeleton(R"({"p":2,"d":2,"labels":{"A":[[1,0]],"AB":[[0,1]]},"gamma":[]})"), Error);
}

}
