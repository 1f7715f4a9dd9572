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

#ifndef ACFG_GENESIS_HPP
#define ACFG_GENESIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acfg/poly.hpp"
#include "acfg/solver.hpp"
#include "acfg/subspace.hpp"
#include "acfg/tower.hpp"

namespace acfg {

struct ScheduleEntry {
  std::string id;
  QFConjunction formula;
  /// Parameter tuples, each element at `param_level`.
  std::vector<std::vector<TowerElement>> params;
  std::size_t param_level = 0;
  /// Realized solution tuples per parameter; at least |x|+1.
  std::size_t copies = 0;
};

struct Schedule {
  std::vector<ScheduleEntry> entries;
  /// Canonical JSON text the schedule was loaded from.
  std::string canonical;
  std::string digest;
};

struct RealizationRecord {
  std::string formula_id;
  std::vector<TowerElement> params;
  /// copies x |x| matrix at the stage level.
  std::vector<Witness> solutions;
  /// Entries adjoined to the group: the first j entries of row j.
  std::vector<TowerElement> rows_added;
};

struct SkipRecord {
  std::string formula_id;
  std::vector<TowerElement> params;
  std::string reason;
};

struct Stage {
  std::size_t level = 0;
  Subspace group;
  /// How this stage was obtained from the previous one.
  std::vector<RealizationRecord> log;
  std::vector<SkipRecord> skipped;
};

struct ConstructionState {
  Tower tower;
  std::vector<Stage> stages;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::string schedule_canonical;
  std::string schedule_digest;
};

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

ConstructionState init(const TowerConfig& config, const Subspace& g0, std::uint64_t seed);

/// One inductive step over every (entry, parameter) pair of the schedule.
ConstructionState step(const ConstructionState& state, const Schedule& schedule);
ConstructionState run(const ConstructionState& state, const Schedule& schedule,
                      std::size_t rounds);

struct AxiomVerdict {
  bool pass = false;
  bool vacuous = false;
  /// "log", "search", "premise" or empty on failure.
  std::string via;
  std::string reason;
};

/// Checks the instance (phi, k, k', b) between stages s and s+1.
AxiomVerdict verify_axiom_instance(const ConstructionState& state, std::size_t s,
                                   const ScheduleEntry& entry, std::size_t k, std::size_t kp,
                                   const std::vector<TowerElement>& b);

struct InstanceFailure {
  std::size_t stage = 0;
  std::string formula_id;
  std::vector<TowerElement> params;
  std::size_t k = 0;
  std::size_t kp = 0;
  std::string reason;
};

struct VerifyReport {
  std::size_t records_checked = 0;
  std::size_t instances_checked = 0;
  std::size_t vacuous_instances = 0;
  std::vector<std::string> record_failures;
  std::vector<std::string> invariant_failures;
  std::vector<InstanceFailure> instance_failures;
  bool pass() const {
    return record_failures.empty() && invariant_failures.empty() && instance_failures.empty();
  }
};

VerifyReport verify_state(const ConstructionState& state, const Schedule& schedule);

/// Applies "stage=S,drop_row=R": removes basis row R of stage S's group.
ConstructionState mutate(const ConstructionState& state, std::string_view plan);

/// intersect_subfield(G_s, n) equals h0 (a subspace of the degree-n level).
bool ball_check(const ConstructionState& state, std::size_t s, const Subspace& h0, std::size_t n);

struct AxiomInstance {
  QFConjunction formula;
  std::vector<TowerElement> params;  // at level 0 (degree n)
  std::size_t k = 0;
  std::size_t kp = 0;
};

enum class DensityMode { kStrict, kVacuityOff };

struct DensityResult {
  std::uint64_t candidates = 0;
  std::uint64_t passing = 0;
  bool exhaustive = false;
  double fraction = 1.0;
};

/// Samples (or exhausts) subgroups H of F_{p^N} with H ∩ F_{p^n} = h0 and
/// reports the fraction satisfying every instance in the batch.
DensityResult density_experiment(const TowerConfig& config, std::size_t N, const Subspace& h0,
                                 const std::vector<AxiomInstance>& batch,
                                 std::uint64_t sample_size, std::uint64_t seed, DensityMode mode);

}  // namespace acfg

#endif  // ACFG_GENESIS_HPP
