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

#ifndef ACFG_PREGEOMETRY_HPP
#define ACFG_PREGEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "acfg/fp.hpp"

namespace acfg {

/// Subset of the carrier; bit i is point i.
using Mask = std::uint32_t;

enum class ClosureKind { kLinear, kAffine, kTable };

std::string_view to_string(ClosureKind k);

/// A finite closure structure with precomputed closures, ranks and
/// automorphisms (as carrier permutations).
class Pregeometry {
 public:
  static constexpr std::size_t kMaxCarrier = 16;
  static constexpr std::size_t kMaxTableCarrier = 8;

  /// Points of F_p^d; point i has coordinates digits(i, p, d).
  static Pregeometry linear(Residue p, std::size_t d);
  static Pregeometry affine(Residue p, std::size_t d);
  /// closures[m] is cl(m) for every mask m < 2^n. Validated as a pregeometry.
  static Pregeometry table(std::size_t n, std::vector<Mask> closures);

  ClosureKind kind() const { return kind_; }
  Residue p() const { return p_; }
  std::size_t d() const { return d_; }
  std::size_t size() const { return n_; }
  Mask full() const { return n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1; }
  Mask closure(Mask m) const { return cl_[m]; }
  std::size_t rank(Mask m) const { return rank_[m]; }
  const std::vector<std::vector<std::uint8_t>>& automorphisms() const { return autos_; }
  Mask apply(const std::vector<std::uint8_t>& sigma, Mask m) const;
  /// Automorphisms fixing every point of `fixed`.
  std::vector<const std::vector<std::uint8_t>*> stabilizer(Mask fixed) const;
  std::string describe() const;
  /// "{0,3}" style rendering of a mask.
  static std::string format_mask(Mask m);

 private:
  Pregeometry() = default;

  ClosureKind kind_ = ClosureKind::kLinear;
  Residue p_ = 2;
  std::size_t d_ = 0;
  std::size_t n_ = 0;
  std::vector<Mask> cl_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::vector<std::uint8_t>> autos_;
};

/// Ternary relation A |_C B over a pregeometry.
class Relation {
 public:
  using Fn = std::function<bool(const Pregeometry&, Mask, Mask, Mask)>;

  Relation(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  /// cl(AC) ∩ cl(BC) = cl(C).
  static Relation indep_a();
  /// rk(AC) + rk(BC) - rk(C) = rk(ABC).
  static Relation indep_pregeo();
  static Relation trivial();
  /// A |m_C B iff A |_{CD} BC for every D ⊆ cl(BC).
  static Relation monotonise(const Relation& r);
  /// A |*_C B iff for every B' ⊇ B some σ fixing cl(BC) pointwise has σA |_C B'.
  static Relation star(const Relation& r);
  /// A |_C B iff A |_C cl(BC); the closed-sets-only variant of monotonise.
  static Relation monotonise_closed(const Relation& r);

  bool operator()(const Pregeometry& s, Mask a, Mask b, Mask c) const { return fn_(s, a, b, c); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

/// Names: "a", "pregeo", "true", "m(R)", "mc(R)", "star(R)".
Relation parse_relation(std::string_view text);

enum class Property { kInv, kSym, kMon, kBmon, kTra, kEx, kExt, kExt2, kCloRight };

std::string_view to_string(Property p);
Property parse_property(std::string_view text);

struct Violation {
  Property property;
  /// A, B, C, D masks; unused slots are 0.
  std::vector<Mask> instance;
  std::string detail;
  bool operator<(const Violation& o) const {
    return std::tie(property, instance, detail) < std::tie(o.property, o.instance, o.detail);
  }
};

struct PropertyOptions {
  /// Subsets with more points are excluded from the domain.
  std::size_t max_subset_size = 32;
  /// Exhaustive when the instance count fits, sampled otherwise.
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
};

struct PropertyReport {
  std::uint64_t instances = 0;
  bool exhaustive = true;
  std::vector<Violation> violations;
};

PropertyReport check_property(const Relation& r, const Pregeometry& s, Property prop,
                              const PropertyOptions& options);

struct AgreementReport {
  std::uint64_t triples = 0;
  std::uint64_t disagreements = 0;
  /// Triples where indep_a holds but both monotonise(indep_a) and indep_pregeo fail.
  std::uint64_t separating = 0;
  std::vector<std::vector<Mask>> examples;
};

/// Compares monotonise(indep_a) with indep_pregeo on every triple of the domain.
AgreementReport ex_acfmon_check(const Pregeometry& s, std::size_t max_subset_size = 32);

/// Subsets of the carrier with at most k points, ordered by (size, mask).
std::vector<Mask> subset_domain(const Pregeometry& s, std::size_t k);

}  // namespace acfg

#endif  // ACFG_PREGEOMETRY_HPP
