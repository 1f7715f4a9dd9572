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

#include "acfg/flatness.hpp"

#include <string>

#include "acfg/error.hpp"

namespace acfg {

std::string_view to_string(FlatReason r) {
  switch (r) {
    case FlatReason::kFlat: return "flat";
    case FlatReason::kZeroPolynomial: return "zero_polynomial";
    case FlatReason::kNonLinearResidual: return "non_linear_residual";
  }
  return "unknown";
}

namespace {

FieldPoly constant_poly(const Field& F, std::size_t level, std::size_t nvars, const Coeffs& c) {
  FieldPoly out(level, nvars);
  out.add_term(F, Exponents(nvars, 0), c);
  return out;
}

FieldPoly power(const Field& F, const FieldPoly& a, std::size_t e) {
  FieldPoly out = constant_poly(F, a.level(), a.nvars(), F.one());
  for (std::size_t i = 0; i < e; ++i) out = mul(F, out, a);
  return out;
}

// lambda . X - b
FieldPoly linear_form(const Field& F, std::size_t level, const Coeffs& lambda, const Coeffs& b) {
  FieldPoly out = constant_poly(F, level, lambda.size(), F.neg(b));
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (!lambda[j]) continue;
    Exponents e(lambda.size(), 0);
    e[j] = 1;
    out.add_term(F, e, F.constant(lambda[j]));
  }
  return out;
}

// B - sum_{j != i} lambda_j X_j, where the variable B sits in slot i.
FieldPoly pivot_substitute(const Field& F, std::size_t level, const Coeffs& lambda, std::size_t i) {
  const std::size_t n = lambda.size();
  FieldPoly s(level, n);
  Exponents eb(n, 0);
  eb[i] = 1;
  s.add_term(F, eb, F.one());
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || !lambda[j]) continue;
    Exponents e(n, 0);
    e[j] = 1;
    s.add_term(F, e, F.constant(neg_mod(lambda[j], F.p())));
  }
  return s;
}

// Values b of the level with f vanishing on the hyperplane lambda . X = b.
std::vector<Coeffs> hyperplane_constants(const Field& F, const FieldPoly& f, const Coeffs& lambda,
                                         std::size_t i, std::uint64_t budget) {
  const std::size_t n = f.nvars();
  const FieldPoly s = pivot_substitute(F, f.level(), lambda, i);
  // Substitute X_i := s term by term.
  FieldPoly g(f.level(), n);
  for (const auto& [e, c] : f.terms()) {
    Exponents rest = e;
    rest[i] = 0;
    FieldPoly term(f.level(), n);
    term.add_term(F, rest, c);
    g = add(F, g, mul(F, term, power(F, s, e[i])));
  }
  // Group by the exponents of the other variables: univariate in B.
  std::map<Exponents, upoly::UPoly> groups;
  for (const auto& [e, c] : g.terms()) {
    Exponents key = e;
    key[i] = 0;
    upoly::UPoly& u = groups[key];
    if (u.size() <= e[i]) u.resize(e[i] + 1, F.zero());
    u[e[i]] = c;
  }
  upoly::UPoly common;
  for (auto& [key, u] : groups) {
    upoly::trim(u);
    common = upoly::gcd(F, common, u);
  }
  std::vector<Coeffs> roots;
  if (common.size() < 2) return roots;
  const std::optional<std::uint64_t> size = F.size();
  require(size && *size <= budget, ErrorCode::kBudgetExceeded,
          "root scan over a level of degree " + std::to_string(F.degree()) + " exceeds budget");
  for (std::uint64_t idx = 0; idx < *size; ++idx) {
    Coeffs b = F.from_index(idx);
    if (is_zero(upoly::eval(F, common, b))) roots.push_back(std::move(b));
  }
  return roots;
}

// Divides f by X_i - s exactly, where s = b - sum_{j != i} lambda_j X_j.
FieldPoly divide_linear(const Field& F, const FieldPoly& f, const Coeffs& lambda, const Coeffs& b,
                        std::size_t i, bool& exact) {
  const std::size_t n = f.nvars();
  const std::size_t level = f.level();
  const std::size_t d = f.degree_in(i);
  std::vector<FieldPoly> a(d + 1, FieldPoly(level, n));
  for (const auto& [e, c] : f.terms()) {
    Exponents rest = e;
    rest[i] = 0;
    a[e[i]].add_term(F, rest, c);
  }
  FieldPoly s = constant_poly(F, level, n, b);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || !lambda[j]) continue;
    Exponents e(n, 0);
    e[j] = 1;
    s.add_term(F, e, F.constant(neg_mod(lambda[j], F.p())));
  }
  exact = false;
  if (d == 0) return f;
  std::vector<FieldPoly> q(d, FieldPoly(level, n));
  q[d - 1] = a[d];
  for (std::size_t k = d - 1; k >= 1; --k) q[k - 1] = add(F, a[k], mul(F, s, q[k]));
  const FieldPoly rem = add(F, a[0], mul(F, s, q[0]));
  exact = rem.is_zero();
  FieldPoly out(level, n);
  for (std::size_t k = 0; k < d; ++k) {
    for (const auto& [e, c] : q[k].terms()) {
      Exponents full = e;
      full[i] = static_cast<std::uint32_t>(k);
      out.add_term(F, full, c);
    }
  }
  return out;
}

}  // namespace

FlatnessVerdict is_fp_flat(const Tower& t, const FieldPoly& f, std::uint64_t budget) {
  const Field& F = t.field(f.level());
  const std::size_t n = f.nvars();
  FlatnessVerdict v;
  v.residual = f;
  if (f.is_zero()) {
    v.flat = false;
    v.reason = FlatReason::kZeroPolynomial;
    v.constant = F.zero();
    return v;
  }
  FieldPoly cur = f;
  const std::uint64_t count = saturating_pow(F.p(), n);
  for (std::uint64_t idx = 1; idx < count && cur.total_degree() > 0; ++idx) {
    const Coeffs lambda = digits(idx, F.p(), n);
    std::size_t pivot = 0;
    while (lambda[pivot] == 0) ++pivot;
    if (lambda[pivot] != 1) continue;
    if (cur.degree_in(pivot) == 0) continue;
    for (const Coeffs& b : hyperplane_constants(F, cur, lambda, pivot, budget)) {
      LinearFactor factor{lambda, b, 0};
      while (true) {
        bool exact = false;
        FieldPoly q = divide_linear(F, cur, lambda, b, pivot, exact);
        if (!exact) break;
        cur = std::move(q);
        ++factor.multiplicity;
      }
      require(factor.multiplicity > 0, ErrorCode::kInternal, "hyperplane root did not divide");
      v.factors.push_back(std::move(factor));
    }
  }
  v.residual = cur;
  if (cur.total_degree() == 0) {
    v.flat = true;
    v.reason = FlatReason::kFlat;
    v.constant = cur.terms().begin()->second;
  } else {
    v.flat = false;
    v.reason = FlatReason::kNonLinearResidual;
    v.constant = F.one();
  }
  return v;
}

FieldPoly expand(const Tower& t, std::size_t level, std::size_t nvars,
                 const FlatnessVerdict& verdict) {
  const Field& F = t.field(level);
  FieldPoly out = constant_poly(F, level, nvars, verdict.constant);
  for (const LinearFactor& f : verdict.factors) {
    out = mul(F, out, power(F, linear_form(F, level, f.lambda, f.b), f.multiplicity));
  }
  if (!verdict.flat) out = mul(F, out, verdict.residual);
  return out;
}

}  // namespace acfg
