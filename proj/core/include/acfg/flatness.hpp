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

#ifndef ACFG_FLATNESS_HPP
#define ACFG_FLATNESS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "acfg/poly.hpp"
#include "acfg/tower.hpp"

namespace acfg {

/// The factor lambda . X - b, with lambda's first nonzero entry equal to 1.
struct LinearFactor {
  Coeffs lambda;
  Coeffs b;
  std::size_t multiplicity = 1;
};

enum class FlatReason { kFlat, kZeroPolynomial, kNonLinearResidual };
std::string_view to_string(FlatReason r);

struct FlatnessVerdict {
  bool flat = false;
  FlatReason reason = FlatReason::kFlat;
  /// Leading constant; the product of it and the factors is the input
  /// when flat.
  Coeffs constant;
  std::vector<LinearFactor> factors;
  /// What is left after dividing out every linear factor found.
  FieldPoly residual;
};

/// Decides whether f factors into F_p-linear forms minus constants of f's
/// level. Candidate constants are found by scanning the level, so the level
/// size must fit `budget`.
FlatnessVerdict is_fp_flat(const Tower& t, const FieldPoly& f, std::uint64_t budget);

/// constant * prod (lambda . X - b)^multiplicity.
FieldPoly expand(const Tower& t, std::size_t level, std::size_t nvars,
                 const FlatnessVerdict& verdict);

}  // namespace acfg

#endif  // ACFG_FLATNESS_HPP
