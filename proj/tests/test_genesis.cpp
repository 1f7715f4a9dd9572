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

#include <json.hpp>

#include "acfg/error.hpp"
#include "acfg/state_io.hpp"

using namespace acfg;

namespace {

constexpr const char* kMult =
    R"({"entries":[{"id":"mult","formula":"x1*x2 = y1 & x1 != 0 & x2 != 0",)"
    R"("params":[["1"],["w"],["w+1"]],"copies":3}]})";
constexpr const char* kEndo =
    R"({"entries":[{"id":"endo","formula":"x2 - x1^2 - y1^2 - y2^2 = 0","params":"all","copies":3}]})";

TowerConfig f4() {
  TowerConfig c;
  c.p = 2;
  c.n0 = 2;
  return c;
}

struct Built {
  ConstructionState state;
  Schedule schedule;
};

Built build(const char* schedule, std::size_t rounds, std::uint64_t seed = 7) {
  const ConstructionState s0 = init(f4(), Subspace(2, 2, 0), seed);
  Schedule sch = parse_schedule(schedule, s0.tower);
  return {run(s0, sch, rounds), std::move(sch)};
}

}  // namespace

TEST_SUITE("genesis") {

TEST_CASE("init") {
  const ConstructionState s = init(f4(), Subspace(2, 2, 0), 1);
  CHECK(s.stages.size() == 1);
  CHECK(s.stages[0].group.dim() == 0);
  const Subspace one = Subspace::span(2, 2, std::vector<Coeffs>{{1, 0}});
  CHECK(init(f4(), one, 1).stages[0].group == one);
  CHECK_THROWS_AS(init(f4(), Subspace(2, 4, 0), 1), Error);
}

TEST_CASE("zero rounds and empty schedules") {
  const ConstructionState s0 = init(f4(), Subspace(2, 2, 0), 1);
  const Schedule sch = parse_schedule(kMult, s0.tower);
  const ConstructionState same = run(s0, sch, 0);
  REQUIRE(same.stages.size() == 1);
  CHECK(same.stages[0].group == s0.stages[0].group);
  CHECK(same.tower.size() == s0.tower.size());
  const Schedule empty = parse_schedule(R"({"entries":[]})", s0.tower);
  const ConstructionState s1 = step(s0, empty);
  REQUIRE(s1.stages.size() == 2);
  CHECK(s1.stages[1].group.dim() == 0);
}

TEST_CASE("multiplication step") {
  const Built b = build(kMult, 1);
  REQUIRE(b.state.stages.size() == 2);
  const Stage& st = b.state.stages[1];
  CHECK(st.log.size() == 3);
  // three copies of a 2-entry row: 0 + 1 + 2 entries per record
  CHECK(st.group.dim() == 9);
  CHECK(intersect_subfield(b.state.tower, st.group, 2).dim() == 0);
  for (const RealizationRecord& rec : st.log) {
    REQUIRE(rec.solutions.size() == 3);
    CHECK(rec.rows_added.size() == 3);
    for (const Witness& w : rec.solutions) {
      const TowerElement prod = mul(b.state.tower, w[0], w[1]);
      CHECK(prod == b.state.tower.embed(rec.params[0], st.level));
    }
    // row j contributes its first j entries
    CHECK(st.group.contains(rec.solutions[1][0].coeffs));
    CHECK(st.group.contains(rec.solutions[2][0].coeffs));
    CHECK(st.group.contains(rec.solutions[2][1].coeffs));
  }
}

TEST_CASE("entries without independent witnesses are skipped") {
  const Built b = build(R"({"entries":[{"id":"sq","formula":"x1^2 = y1","params":[["w"]],"copies":2}]})", 1);
  REQUIRE(b.state.stages.size() == 2);
  CHECK(b.state.stages[1].log.empty());
  CHECK(b.state.stages[1].skipped.size() == 1);
  CHECK(b.state.stages[1].group.dim() == 0);
}

TEST_CASE("verification and negative control") {
  const Built b = build(kMult, 2);
  const VerifyReport rep = verify_state(b.state, b.schedule);
  CHECK(rep.pass());
  CHECK(rep.records_checked == 6);
  CHECK(rep.instances_checked > 0);

  for (std::size_t s = 0; s + 1 < b.state.stages.size(); ++s) {
    for (const auto& params : b.schedule.entries[0].params) {
      for (std::size_t k = 0; k <= 2; ++k) {
        for (std::size_t kp = 0; kp <= 1; ++kp) {
          CHECK(verify_axiom_instance(b.state, s, b.schedule.entries[0], k, kp, params).pass);
        }
      }
    }
  }

  const VerifyReport bad = verify_state(mutate(b.state, "stage=1,drop_row=0"), b.schedule);
  CHECK_FALSE(bad.pass());
  CHECK_THROWS_AS(mutate(b.state, "stage=9,drop_row=0"), Error);
}

TEST_CASE("vacuous instances") {
  const ConstructionState s0 = init(f4(), Subspace::full(2, 2, 0), 3);
  const Schedule sch = parse_schedule(kMult, s0.tower);
  const ConstructionState s1 = run(s0, sch, 1);
  // b' = w lies in G, so the premise fails
  const std::vector<TowerElement> b{s1.tower.generator(0)};
  const AxiomVerdict v = verify_axiom_instance(s1, 0, sch.entries[0], 1, 1, b);
  CHECK(v.pass);
  CHECK(v.vacuous);
}

TEST_CASE("every nonzero element of F_4 is a product of group elements") {
  const Built b = build(kMult, 2);
  const ConstructionState& st = b.state;
  const Stage& last = st.stages.back();
  const Tower& t = st.tower;
  for (std::uint64_t i = 1; i < 4; ++i) {
    const TowerElement target = t.embed(t.element(0, digits(i, 2, 2)), last.level);
    bool found = false;
    for (const Stage& s : st.stages) {
      for (const RealizationRecord& rec : s.log) {
        for (const Witness& w : rec.solutions) {
          const TowerElement x = t.embed(w[0], last.level), y = t.embed(w[1], last.level);
          if (last.group.contains(x.coeffs) && last.group.contains(y.coeffs) && mul(t, x, y) == target) {
            found = true;
          }
        }
      }
    }
    CHECK(found);
  }
}

TEST_CASE("endomorphism grid is covered") {
  const Built b = build(kEndo, 1, 11);
  const ConstructionState& st = b.state;
  const Stage& s1 = st.stages[1];
  const Tower& t = st.tower;
  CHECK(verify_state(st, b.schedule).pass());
  for (std::uint64_t i = 0; i < 4; ++i) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      const TowerElement c1 = t.embed(t.element(0, digits(i, 2, 2)), s1.level);
      const TowerElement c2 = t.embed(t.element(0, digits(j, 2, 2)), s1.level);
      bool hit = false;
      for (const RealizationRecord& rec : s1.log) {
        for (const Witness& w : rec.solutions) {
          const TowerElement x = add(t, w[0], c1);
          const TowerElement d = sub(t, x, c2);
          if (s1.group.contains(sub(t, x, c1).coeffs) && s1.group.contains(mul(t, d, d).coeffs)) hit = true;
        }
      }
      CHECK(hit);
    }
  }
}

TEST_CASE("ball invariant") {
  const Subspace g0 = Subspace::span(2, 2, std::vector<Coeffs>{{0, 1}});
  const ConstructionState s0 = init(f4(), g0, 5);
  const ConstructionState s = run(s0, parse_schedule(kMult, s0.tower), 2);
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    CHECK(ball_check(s, i, g0, 2));
    CHECK(intersect_subfield(s.tower, s.stages[i].group, 2) == lift(s.tower, g0, s.stages[i].level));
  }
  CHECK_FALSE(ball_check(s, 2, Subspace(2, 2, 0), 2));
}

TEST_CASE("density experiments") {
  const TowerConfig c = f4();
  const Tower t = Tower::create(c);
  const DensityResult none = density_experiment(c, 4, Subspace(2, 2, 0), {}, 100, 1, DensityMode::kStrict);
  CHECK(none.fraction == 1.0);
  // subspaces of F_16 meeting F_4 trivially: 1 + 12 + 16 = 29
  CHECK(none.candidates == 29);

  const std::vector<AxiomInstance> batch =
      parse_axiom_batch(R"([{"formula":"x1*x2 = y1 & x1 != 0 & x2 != 0","params":["w"],"k":1,"kp":1}])", t);
  const Subspace full = Subspace::full(2, 2, 0);
  CHECK(density_experiment(c, 4, full, batch, 100, 1, DensityMode::kVacuityOff).fraction == 0.0);
  CHECK(density_experiment(c, 4, full, batch, 100, 1, DensityMode::kStrict).fraction == 1.0);
}

TEST_CASE("state serialization") {
  const Built b = build(kMult, 2);
  const std::string text = state_to_json(b.state);
  CHECK(state_to_json(state_from_json(text)) == text);
  CHECK(text == state_to_json(build(kMult, 2).state));
  CHECK_THROWS_AS(state_from_json("{"), Error);

  nlohmann::json j = nlohmann::json::parse(text);
  j["stages"][1]["group_basis"].erase(0);
  const ConstructionState edited = state_from_json(j.dump());
  CHECK_FALSE(verify_state(edited, b.schedule).pass());
}

TEST_CASE("schedule parsing errors") {
  const Tower t = Tower::create(f4());
  CHECK_THROWS_AS(parse_schedule("[]", t), Error);
  CHECK_THROWS_AS(parse_schedule(R"({"entries":[{"id":"a"}]})", t), Error);
  CHECK_THROWS_AS(parse_schedule(R"({"entries":[{"id":"a","formula":"x1 *"}]})", t), Error);
  const Schedule s = parse_schedule(kMult, t);
  CHECK(s.digest == fnv1a_hex(s.canonical));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

}
