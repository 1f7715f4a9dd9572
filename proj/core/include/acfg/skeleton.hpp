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

#ifndef ACFG_SKELETON_HPP
#define ACFG_SKELETON_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "acfg/subspace.hpp"

namespace acfg {

/// An intermediate base E, with the closure of A together with E when known.
struct FamilyMember {
  Subspace base;
  std::optional<Subspace> left;
};

/// Subspace-lattice configuration. Keys of `labels` are label sets written as
/// sorted letters ("A", "AC", "ABC"); "" is the empty label set.
struct SkeletonConfig {
  Residue p = 2;
  std::size_t d = 0;
  std::map<std::string, Subspace> labels;
  Subspace gamma;
  std::map<std::string, std::vector<FamilyMember>> families;
  std::vector<Coeffs> r_a;
  std::vector<Coeffs> r_b;

  /// Declared space of a label set, or the sum of the declared spaces of its
  /// letters. Raises kMissingLabel when a letter has no space.
  Subspace space(std::string_view label_set) const;
  /// Common ambient dimension and monotonicity of the declared label map.
  void validate() const;
};

/// Sorted, de-duplicated union of the letters.
std::string label_key(std::string_view a, std::string_view b = "", std::string_view c = "");

/// Γ ∩ U for a subspace U.
Subspace trace(const Subspace& gamma, const Subspace& u);

/// Lattice side E_AC ∩ E_BC = E_C together with Γ(E_AC + E_BC) = Γ(E_AC) + Γ(E_BC).
bool weak_condition(const Subspace& ac, const Subspace& bc, const Subspace& c,
                    const Subspace& gamma);
/// Lattice side together with Γ(E_ABC) = Γ(E_AC) + Γ(E_BC).
bool strong_condition(const Subspace& ac, const Subspace& bc, const Subspace& c,
                      const Subspace& abc, const Subspace& gamma);

bool indep_w(const SkeletonConfig& cfg, std::string_view a, std::string_view b, std::string_view c);
bool indep_st(const SkeletonConfig& cfg, std::string_view a, std::string_view b, std::string_view c);
/// Monotonised weak independence: weak independence of A from BC over every
/// declared intermediate base E with E_C ⊆ E ⊆ E_BC. Without a declared left
/// closure the left side is E_AC + E.
bool indep_wm(const SkeletonConfig& cfg, std::string_view a, std::string_view b,
              std::string_view c, const std::string& family);

/// Closure operator given by rules "P ⊆ V implies q ∈ V".
struct ClosureRules {
  std::vector<std::pair<Subspace, Coeffs>> rules;
  Subspace apply(Subspace v) const;
};

ClosureRules random_rules(Residue p, std::size_t d, std::size_t count, std::mt19937_64& rng);

struct TraOutcome {
  bool premises = false;
  bool conclusion = false;
  bool holds() const { return !premises || conclusion; }
};

/// A |w_{CB} D and B |w_C D imply AB |w_C D, read off the labels A, B, C, D.
TraOutcome weak_tra_check(const SkeletonConfig& cfg);

/// Labels A..D with E_S the closure of the sum of per-letter generator spaces.
SkeletonConfig sample_tra_config(Residue p, std::size_t d, std::mt19937_64& rng);

struct MixedTranOutcome {
  bool preconditions = false;
  std::string failed_precondition;
  bool premise_wm = false;
  bool premise_st = false;
  bool conclusion = false;
  bool holds() const { return !preconditions || !premise_wm || !premise_st || conclusion; }
};

/// A |wm_C B and A |st_B D imply A |wm_C D, with B ⊆ D. Labels A, B, C, D,
/// AB, AD; the family lists every intermediate E between E_C and E_D with the
/// closure of A and E. The declared preconditions are checked per member:
/// cl(AE) ∩ cl(AB) = cl(A(E∩B)) and (cl(AE) + cl(AB)) ∩ D = E + B.
MixedTranOutcome mixed_tran_check(const SkeletonConfig& cfg, const std::string& family);

/// Random closed sets C ⊆ A, B ⊆ D with every intermediate E of D over C.
SkeletonConfig sample_mixed_tran_config(Residue p, std::size_t d, std::mt19937_64& rng);

enum class IndStarVerdict { kAgree, kDisagree, kPrecondition };

std::string_view to_string(IndStarVerdict v);

struct IndStarResult {
  IndStarVerdict verdict = IndStarVerdict::kPrecondition;
  bool quotient_side = false;
  bool sum_side = false;
  std::string detail;
};

/// Compares π(E_a) ∩ π(E_b) = <π(E_C), π(r_a)> (π the quotient by Γ) with
/// Γ(E_a + E_b) = Γ(E_a) + Γ(E_b) + <r_a - r_b>. Labels "a", "b", "C".
IndStarResult ind_star_equiv_check(const SkeletonConfig& cfg);

/// Satisfies the standing hypotheses by construction.
SkeletonConfig sample_ind_star_config(Residue p, std::size_t d, std::mt19937_64& rng);

/// Writes x = u + v with u ∈ U and v ∈ V, if possible.
std::optional<std::pair<Coeffs, Coeffs>> decompose(const Coeffs& x, const Subspace& u,
                                                   const Subspace& v);

struct LocReduction {
  /// Chosen partners c(a), zero vectors dropped, in enumeration order of A.
  std::vector<Coeffs> c;
  std::uint64_t enumerated = 0;
  /// Γ(A + B) = Γ(A + <C>) + Γ(B).
  bool identity_holds = false;
};

constexpr std::uint64_t kLocGuard = 1 << 20;

LocReduction greedy_loc_reduction(const Subspace& a, const Subspace& b, const Subspace& gamma);

/// Ambient F_p^{3r+1}: coordinate 0 is t, 1..r the t_i, r+1..2r the t_i',
/// 2r+1..3r the products t*t_i. Γ = <t*t_i + t_i'>.
struct LocWitness {
  Residue p = 2;
  std::size_t r = 0;
  std::size_t d = 0;
  Subspace gamma;
  /// Closure of a set of generators (bit 0 = t, bits 1..2r the block): its
  /// span plus t*t_i whenever both t and t_i are present.
  Subspace closure(std::uint32_t generators) const;
  /// t |w_{A0 D} block, with A0 given as a set of pair indices and D as
  /// generator bits inside the block.
  bool weak_holds(std::uint32_t a0_pairs, std::uint32_t d_generators) const;
};

LocWitness loc_witness_config(std::size_t r, Residue p = 2);

struct LocSearch {
  std::uint32_t a0_pairs = 0;
  std::optional<std::uint32_t> failing_d;
  /// The t_i block minus A0 fails, as the dimension count predicts.
  bool designed_d_fails = false;
};

/// For every A0 with fewer than r pairs, the least D (as generator bits) with
/// t not weakly independent from the block over A0 ∪ D.
std::vector<LocSearch> loc_failure_search(const LocWitness& w);

}  // namespace acfg

#endif  // ACFG_SKELETON_HPP
