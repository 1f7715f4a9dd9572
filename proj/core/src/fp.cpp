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

#include "acfg/fp.hpp"

#include <algorithm>
#include <limits>

#include "acfg/error.hpp"

namespace acfg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kLevelMismatch: return "level_mismatch";
    case ErrorCode::kDivisionByZero: return "division_by_zero";
    case ErrorCode::kBudgetExceeded: return "budget_exceeded";
    case ErrorCode::kGuardExceeded: return "guard_exceeded";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kPrecondition: return "precondition_violation";
    case ErrorCode::kMissingLabel: return "missing_label";
    case ErrorCode::kCorruptState: return "corrupt_state";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Residue inv_mod(Residue a, Residue p) {
  require(a % p != 0, ErrorCode::kDivisionByZero, "inverse of zero in F_p");
  // Fermat; p is small.
  Residue result = 1;
  Residue base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

Residue reduce_mod(std::int64_t v, Residue p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

std::uint64_t saturating_pow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= p;
  }
  return r;
}

Coeffs digits(std::uint64_t index, Residue p, std::size_t len) {
  Coeffs out(len, 0);
  for (std::size_t i = 0; i < len && index; ++i) {
    out[i] = static_cast<Residue>(index % p);
    index /= p;
  }
  return out;
}

int compare_base_p(const Coeffs& a, const Coeffs& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

bool is_zero(const Coeffs& v) {
  for (Residue c : v) {
    if (c) return false;
  }
  return true;
}

namespace fpoly {

void trim(Coeffs& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::size_t degree(const Coeffs& f) { return f.size() - 1; }

Coeffs mul(const Coeffs& a, const Coeffs& b, Residue p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
  }
  Coeffs out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i] % p;
  trim(out);
  return out;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, Residue p) {
  Coeffs out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Residue x = i < a.size() ? a[i] : 0;
    Residue y = i < b.size() ? b[i] : 0;
    out[i] = sub_mod(x, y, p);
  }
  trim(out);
  return out;
}

Coeffs mod(Coeffs a, const Coeffs& m, Residue p) {
  trim(a);
  const std::size_t dm = degree(m);
  const Residue lead_inv = inv_mod(m.back(), p);
  while (!a.empty() && a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const Residue c = mul_mod(a.back(), lead_inv, p);
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = sub_mod(a[shift + j], mul_mod(c, m[j], p), p);
    }
    trim(a);
  }
  return a;
}

Coeffs gcd(Coeffs a, Coeffs b, Residue p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Residue inv = inv_mod(a.back(), p);
    for (Residue& c : a) c = mul_mod(c, inv, p);
  }
  return a;
}

Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, Residue p) {
  return mod(mul(a, b, p), m, p);
}

Coeffs frobenius_mod(Coeffs a, std::size_t times, const Coeffs& m, Residue p) {
  // Coefficients lie in F_p, so (sum c_i x^i)^p = sum c_i x^(ip).
  for (std::size_t t = 0; t < times; ++t) {
    if (a.empty()) return a;
    Coeffs spread((a.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) spread[i * p] = a[i];
    a = mod(std::move(spread), m, p);
  }
  return a;
}

bool is_irreducible(const Coeffs& f, Residue p) {
  Coeffs g = f;
  trim(g);
  if (g.empty()) return false;
  const std::size_t n = degree(g);
  if (n == 0) return false;
  if (n == 1) return true;
  if (g[0] == 0) return false;
  const Coeffs x = {0, 1};
  // x^(p^n) == x mod f, and no factor of degree dividing a proper divisor.
  Coeffs xp = x;
  std::vector<Coeffs> powers(n + 1);  // powers[d] = x^(p^d) mod f
  powers[0] = x;
  for (std::size_t d = 1; d <= n; ++d) {
    xp = frobenius_mod(xp, 1, g, p);
    powers[d] = xp;
  }
  if (sub(powers[n], x, p).size() != 0) return false;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    Coeffs h = gcd(g, sub(powers[d], x, p), p);
    if (h.size() > 1) return false;
  }
  return true;
}

}  // namespace fpoly

}  // namespace acfg
