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

#ifndef ACFG_STATE_IO_HPP
#define ACFG_STATE_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "acfg/genesis.hpp"
#include "acfg/pregeometry.hpp"
#include "acfg/skeleton.hpp"

namespace acfg {

/// Deterministic JSON text: object keys sorted, two-space indent, trailing
/// newline.
std::string state_to_json(const ConstructionState& state);
/// Parses and re-validates a state; malformed input raises kCorruptState.
ConstructionState state_from_json(std::string_view text);

/// Schedule JSON:
///   {"entries": [{"id": "mult", "formula": "x1*x2 = y1 & x1 != 0",
///                 "params": [["1"], ["w"]] | "all", "param_level": 0,
///                 "copies": 3}]}
/// Elements are polynomials in w at the parameter level.
Schedule parse_schedule(std::string_view text, const Tower& tower);

/// "zero", "full", or comma-separated elements such as "1,w+1".
Subspace parse_group(std::string_view text, const Tower& tower, std::size_t level);
/// Comma-separated elements at the given level.
std::vector<TowerElement> parse_elements(std::string_view text, const Tower& tower,
                                         std::size_t level);

/// [{"formula": "...", "params": ["w"], "k": 1, "kp": 0}, ...] at level 0.
std::vector<AxiomInstance> parse_axiom_batch(std::string_view text, const Tower& tower);

/// "linear:p:d", "affine:p:d", or a JSON document
/// {"kind": "linear"|"affine"|"table", "p", "d", "n", "closure_table": [...]}.
Pregeometry parse_structure(std::string_view text);

/// {"p", "d", "labels": {"AC": [[...]]}, "gamma": [[...]],
///  "families": {"E": [{"base": [[...]], "left": [[...]]}]},
///  "tuples": {"r_a": [[...]], "r_b": [[...]]}}
SkeletonConfig parse_skeleton(std::string_view text);

}  // namespace acfg

#endif  // ACFG_STATE_IO_HPP
