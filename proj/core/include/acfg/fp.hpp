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

#ifndef ACFG_FP_HPP
#define ACFG_FP_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace acfg {

using Residue = std::uint32_t;
/// Dense coordinate vector over F_p. For field elements, index i holds the
/// coefficient of x^i.
using Coeffs = std::vector<Residue>;

bool is_prime(std::uint64_t n);

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue p) {
  return a >= b ? a - b : a + p - b;
}
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p);
}
inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }
Residue inv_mod(Residue a, Residue p);
Residue reduce_mod(std::int64_t v, Residue p);

/// p^e, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t p, std::uint64_t e);

/// Base-p digits of `index`, least significant first, padded to `len`.
Coeffs digits(std::uint64_t index, Residue p, std::size_t len);

/// Compare two coordinate vectors read as base-p integers with index 0 the
/// least significant digit. Vectors must have equal length.
int compare_base_p(const Coeffs& a, const Coeffs& b);

bool is_zero(const Coeffs& v);

// Dense polynomials over F_p, index i = coefficient of x^i, kept trimmed
// (no trailing zeros; the zero polynomial is empty).
namespace fpoly {

void trim(Coeffs& f);
std::size_t degree(const Coeffs& f);  // requires f nonzero
Coeffs mul(const Coeffs& a, const Coeffs& b, Residue p);
Coeffs sub(const Coeffs& a, const Coeffs& b, Residue p);
Coeffs mod(Coeffs a, const Coeffs& m, Residue p);
Coeffs gcd(Coeffs a, Coeffs b, Residue p);
Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, Residue p);
/// a^(p^times) mod m.
Coeffs frobenius_mod(Coeffs a, std::size_t times, const Coeffs& m, Residue p);
/// Rabin irreducibility test for a monic f of degree >= 1.
bool is_irreducible(const Coeffs& f, Residue p);

}  // namespace fpoly

}  // namespace acfg

#endif  // ACFG_FP_HPP
