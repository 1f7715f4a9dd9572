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

#ifndef ACFG_SOLVER_HPP
#define ACFG_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "acfg/poly.hpp"
#include "acfg/subspace.hpp"
#include "acfg/tower.hpp"

namespace acfg {

struct SearchOptions {
  /// Exhaustive search runs only when p^(n*E) fits, where E is the number
  /// of witness variables the plan has to enumerate.
  std::uint64_t search_budget = std::uint64_t{1} << 24;
  /// Random candidates tried at levels too large to exhaust.
  std::uint64_t sample_budget = 4096;
  std::uint64_t seed = 0;
};

SearchOptions search_options(const TowerConfig& config, std::uint64_t seed);

using Witness = std::vector<TowerElement>;

/// Every witness of phi(x, params) at `level`, ordered as base-p counters
/// with x1 most significant. Throws kBudgetExceeded when the level is too
/// large to exhaust.
std::vector<Witness> solve(const Tower& t, const QFConjunction& phi,
                           std::span<const TowerElement> params, std::size_t level,
                           std::uint64_t budget);

struct WitnessSearch {
  std::optional<Witness> witness;
  /// True when the whole level was searched; a miss is then definitive.
  bool exhaustive = false;
  std::uint64_t visited = 0;
};

/// A witness at `level` whose entries are F_p-independent modulo `avoid`
/// (a subspace of that level).
WitnessSearch find_independent_witness(const Tower& t, const QFConjunction& phi,
                                       std::span<const TowerElement> params, std::size_t level,
                                       const Subspace& avoid, const SearchOptions& options);

enum class ThetaStatus { kFound, kNotFound, kBudgetExceeded };
std::string_view to_string(ThetaStatus s);

struct ThetaResult {
  ThetaStatus status = ThetaStatus::kNotFound;
  std::size_t level = 0;
  Witness witness;
  std::vector<std::size_t> exhaustive_degrees;
  std::vector<std::size_t> sampled_degrees;
};

/// Scans chain levels of degree > m (multiples of m), growing the tower by
/// doubling up to max_degree, for a witness F_p-independent over F_{p^m}
/// and over `avoid` when given. kNotFound means every scanned level was
/// exhausted; kBudgetExceeded means some level was only sampled or no level
/// was available. Neither refutes the existence of a witness.
ThetaResult theta_search(Tower& t, const QFConjunction& phi, std::span<const TowerElement> params,
                         std::size_t m, std::size_t max_degree, const SearchOptions& options,
                         const Subspace* avoid = nullptr);

struct JointResult {
  ThetaStatus status = ThetaStatus::kNotFound;
  std::size_t level = 0;
  std::vector<Witness> rows;
};

/// `count` witnesses at one level whose entries are jointly independent
/// over F_{p^m}.
JointResult find_joint_independent_solutions(Tower& t, const QFConjunction& phi,
                                             std::span<const TowerElement> params,
                                             std::size_t count, std::size_t m,
                                             std::size_t max_degree,
                                             const SearchOptions& options);

}  // namespace acfg

#endif  // ACFG_SOLVER_HPP
