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

#include <benchmark/benchmark.h>

#include <random>

#include "acfg/flatness.hpp"
#include "acfg/genesis.hpp"
#include "acfg/pregeometry.hpp"
#include "acfg/skeleton.hpp"
#include "acfg/state_io.hpp"
#include "acfg/subspace.hpp"

using namespace acfg;

static void BM_FieldMul(benchmark::State& state) {
  TowerConfig c;
  c.p = 2;
  c.n0 = static_cast<std::size_t>(state.range(0));
  const Tower t = Tower::create(c);
  std::mt19937_64 rng(1);
  TowerElement a = t.element(0, random_vector(2, c.n0, rng));
  const TowerElement b = t.element(0, random_vector(2, c.n0, rng));
  for (auto _ : state) {
    a = mul(t, a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(8)->Arg(32)->Arg(64)->Arg(128);

static void BM_Intersect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const Subspace u = random_subspace(2, n, n / 2, rng);
  const Subspace v = random_subspace(2, n, n / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(intersect(u, v));
}
BENCHMARK(BM_Intersect)->Arg(8)->Arg(32)->Arg(64);

static void BM_EnumerateSubspaces(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subspaces(2, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EnumerateSubspaces)->DenseRange(3, 6);

static void BM_Flatness(benchmark::State& state) {
  TowerConfig c;
  c.p = 5;
  c.n0 = 1;
  const Tower t = Tower::create(c);
  const FieldPoly f = to_field_poly(t, parse_poly("x1^2 + x2^2", 5), 0);
  for (auto _ : state) benchmark::DoNotOptimize(is_fp_flat(t, f, 1 << 20));
}
BENCHMARK(BM_Flatness);

static void BM_MultConstruction(benchmark::State& state) {
  TowerConfig c;
  c.p = 2;
  c.n0 = 2;
  const ConstructionState s0 = init(c, Subspace(2, 2, 0), 1);
  const Schedule sch = parse_schedule(
      R"({"entries":[{"id":"mult","formula":"x1*x2 = y1 & x1 != 0 & x2 != 0","params":[["1"],["w"],["w+1"]],"copies":3}]})",
      s0.tower);
  for (auto _ : state) benchmark::DoNotOptimize(run(s0, sch, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_MultConstruction)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_MonotoniseAffine(benchmark::State& state) {
  const Pregeometry s = Pregeometry::affine(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ex_acfmon_check(s));
}
BENCHMARK(BM_MonotoniseAffine)->Unit(benchmark::kMillisecond);

static void BM_MixedTransitivity(benchmark::State& state) {
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_tran_check(sample_mixed_tran_config(2, 6, rng), "E"));
}
BENCHMARK(BM_MixedTransitivity);

BENCHMARK_MAIN();
