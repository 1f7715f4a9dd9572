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

#include "acfg/tower.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "acfg/error.hpp"

namespace acfg {

// ---------------------------------------------------------------- Field

Field::Field(Residue p, Coeffs modulus) : p_(p), modulus_(std::move(modulus)) {
  require(is_prime(p), ErrorCode::kInvalidArgument, "field characteristic must be prime");
  require(modulus_.size() >= 2 && modulus_.back() == 1, ErrorCode::kInvalidArgument,
          "field modulus must be monic of degree >= 1");
  n_ = modulus_.size() - 1;
  for (Residue c : modulus_) {
    require(c < p_, ErrorCode::kInvalidArgument, "modulus coefficient out of range");
  }
  if (n_ >= 2) {
    // x^n = -(f_0 + ... + f_{n-1} x^{n-1}).
    Coeffs cur(n_);
    for (std::size_t i = 0; i < n_; ++i) cur[i] = neg_mod(modulus_[i], p_);
    reduce_.push_back(cur);
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      Coeffs next(n_, 0);
      const Residue top = cur[n_ - 1];
      for (std::size_t j = n_ - 1; j > 0; --j) next[j] = cur[j - 1];
      for (std::size_t j = 0; j < n_; ++j) {
        next[j] = add_mod(next[j], mul_mod(top, reduce_[0][j], p_), p_);
      }
      reduce_.push_back(next);
      cur = std::move(next);
    }
  }
  const Coeffs xp = pow(generator(), p_);
  frob_.reserve(n_);
  Coeffs col = one();
  for (std::size_t k = 0; k < n_; ++k) {
    frob_.push_back(col);
    col = mul(col, xp);
  }
}

Coeffs Field::one() const { return constant(1); }

Coeffs Field::constant(Residue c) const {
  Coeffs out(n_, 0);
  out[0] = c % p_;
  return out;
}

Coeffs Field::generator() const {
  if (n_ == 1) return constant(neg_mod(modulus_[0], p_));
  Coeffs out(n_, 0);
  out[1] = 1;
  return out;
}

Coeffs Field::add(const Coeffs& a, const Coeffs& b) const {
  Coeffs out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = add_mod(a[i], b[i], p_);
  return out;
}

Coeffs Field::sub(const Coeffs& a, const Coeffs& b) const {
  Coeffs out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = sub_mod(a[i], b[i], p_);
  return out;
}

Coeffs Field::neg(const Coeffs& a) const {
  Coeffs out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = neg_mod(a[i], p_);
  return out;
}

Coeffs Field::scale(const Coeffs& a, Residue c) const {
  Coeffs out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = mul_mod(a[i], c, p_);
  return out;
}

Coeffs Field::mul(const Coeffs& a, const Coeffs& b) const {
  if (n_ == 1) return {mul_mod(a[0], b[0], p_)};
  std::vector<std::uint64_t> acc(2 * n_ - 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t ai = a[i];
    if (!ai) continue;
    std::uint64_t* row = acc.data() + i;
    for (std::size_t j = 0; j < n_; ++j) row[j] += ai * b[j];
  }
  std::vector<std::uint64_t> low(acc.begin(), acc.begin() + n_);
  for (std::size_t i = n_; i < acc.size(); ++i) {
    const std::uint64_t c = acc[i] % p_;
    if (!c) continue;
    const Coeffs& r = reduce_[i - n_];
    for (std::size_t j = 0; j < n_; ++j) low[j] += c * r[j];
  }
  Coeffs out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = static_cast<Residue>(low[j] % p_);
  return out;
}

Coeffs Field::inv(const Coeffs& a) const {
  require(!is_zero(a), ErrorCode::kDivisionByZero, "inverse of zero field element");
  // Extended Euclid in F_p[x]: find s with s*a == 1 mod f.
  Coeffs r0 = modulus_, r1 = a;
  fpoly::trim(r1);
  Coeffs s0, s1 = {1};
  while (r1.size() > 1) {
    // q, r = divmod(r0, r1)
    Coeffs r = r0;
    Coeffs q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    const Residue lead_inv = inv_mod(r1.back(), p_);
    while (!r.empty() && r.size() >= r1.size()) {
      const std::size_t shift = r.size() - r1.size();
      const Residue c = mul_mod(r.back(), lead_inv, p_);
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) {
        r[shift + j] = sub_mod(r[shift + j], mul_mod(c, r1[j], p_), p_);
      }
      fpoly::trim(r);
    }
    fpoly::trim(q);
    Coeffs s2 = fpoly::sub(s0, fpoly::mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since f is irreducible.
  const Residue c = inv_mod(r1[0], p_);
  Coeffs s = fpoly::mod(s1, modulus_, p_);
  Coeffs out(n_, 0);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = mul_mod(s[i], c, p_);
  return out;
}

Coeffs Field::pow(const Coeffs& a, std::uint64_t e) const {
  Coeffs result = one();
  Coeffs base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Coeffs Field::frobenius(const Coeffs& a, std::uint64_t e) const {
  Coeffs cur = a;
  e %= n_;
  for (std::uint64_t t = 0; t < e; ++t) {
    std::vector<std::uint64_t> acc(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t c = cur[k];
      if (!c) continue;
      const Coeffs& col = frob_[k];
      for (std::size_t r = 0; r < n_; ++r) acc[r] += c * col[r];
    }
    for (std::size_t r = 0; r < n_; ++r) cur[r] = static_cast<Residue>(acc[r] % p_);
  }
  return cur;
}

std::optional<std::uint64_t> Field::size() const {
  const std::uint64_t s = saturating_pow(p_, n_);
  if (s == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return s;
}

// ------------------------------------------------ irreducibles and roots

Coeffs least_irreducible(Residue p, std::size_t degree) {
  require(degree >= 1, ErrorCode::kInvalidArgument, "degree must be >= 1");
  Coeffs f(degree + 1, 0);
  f[degree] = 1;
  // Base-p counter over the lower coefficients, constant term least
  // significant.
  while (true) {
    if (fpoly::is_irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < degree) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    require(i < degree, ErrorCode::kInternal, "no irreducible polynomial found");
  }
}

namespace upoly {

void trim(UPoly& f) {
  while (!f.empty() && is_zero(f.back())) f.pop_back();
}

UPoly mod(const Field& F, UPoly a, const UPoly& m) {
  trim(a);
  const Coeffs lead_inv = F.inv(m.back());
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const Coeffs c = F.mul(a.back(), lead_inv);
    for (std::size_t j = 0; j < m.size(); ++j) {
      a[shift + j] = F.sub(a[shift + j], F.mul(c, m[j]));
    }
    trim(a);
  }
  return a;
}

UPoly gcd(const Field& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Coeffs inv = F.inv(a.back());
    for (Coeffs& c : a) c = F.mul(c, inv);
  }
  return a;
}

Coeffs eval(const Field& F, const UPoly& f, const Coeffs& x) {
  Coeffs acc = F.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

}  // namespace upoly

namespace {

Coeffs eval_fp_poly(const Field& F, const Coeffs& g, const Coeffs& x) {
  Coeffs acc = F.zero();
  for (std::size_t i = g.size(); i-- > 0;) {
    acc = F.add(F.mul(acc, x), F.constant(g[i]));
  }
  return acc;
}

}  // namespace

std::vector<Coeffs> roots_in_field(const Field& F, const Coeffs& fp_poly) {
  Coeffs g = fp_poly;
  fpoly::trim(g);
  require(g.size() >= 2, ErrorCode::kInvalidArgument, "root finding needs degree >= 1");
  const Residue p = F.p();
  const std::size_t d = g.size() - 1;
  const std::size_t N = F.degree();
  require(N % d == 0, ErrorCode::kInvalidArgument, "polynomial degree must divide field degree");

  Coeffs root;
  if (d == 1) {
    root = F.constant(mul_mod(neg_mod(g[0], p), inv_mod(g[1], p), p));
  } else {
    // Trace splitting. With X^(p^i) mod g over F_p precomputed,
    // Tr(aX) mod g = sum_i a^(p^i) * (X^(p^i) mod g).
    std::vector<Coeffs> xpow(N);
    Coeffs xp = {0, 1};
    for (std::size_t i = 0; i < N; ++i) {
      xpow[i] = xp;
      xp = fpoly::frobenius_mod(xp, 1, g, p);
    }
    upoly::UPoly h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = F.constant(g[i]);
    std::mt19937_64 rng(0x5eedULL ^ (N << 8) ^ d);
    std::size_t attempts = 0;
    while (h.size() > 2) {
      require(++attempts < 10000, ErrorCode::kInternal, "root splitting did not converge");
      Coeffs a(N);
      for (Residue& c : a) c = static_cast<Residue>(rng() % p);
      if (is_zero(a)) continue;
      upoly::UPoly trace(d, F.zero());
      Coeffs apow = a;
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < xpow[i].size(); ++k) {
          if (xpow[i][k]) trace[k] = F.add(trace[k], F.scale(apow, xpow[i][k]));
        }
        apow = F.frobenius(apow, 1);
      }
      for (Residue c = 0; c < p; ++c) {
        upoly::UPoly shifted = trace;
        shifted[0] = F.sub(shifted[0], F.constant(c));
        upoly::UPoly u = upoly::gcd(F, h, shifted);
        if (u.size() >= 2 && u.size() < h.size()) {
          h = std::move(u);
          break;
        }
      }
    }
    const Coeffs lead_inv = F.inv(h[1]);
    root = F.neg(F.mul(h[0], lead_inv));
  }
  require(is_zero(eval_fp_poly(F, g, root)), ErrorCode::kInternal, "root check failed");

  // An irreducible g has the Frobenius conjugates of one root as its roots.
  std::vector<Coeffs> roots;
  Coeffs r = root;
  for (std::size_t i = 0; i < d; ++i) {
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    r = F.frobenius(r, 1);
  }
  std::sort(roots.begin(), roots.end(),
            [](const Coeffs& a, const Coeffs& b) { return compare_base_p(a, b) < 0; });
  return roots;
}

// ---------------------------------------------------------------- Tower

void validate(const TowerConfig& config) {
  require(is_prime(config.p), ErrorCode::kInvalidArgument,
          "p = " + std::to_string(config.p) + " is not prime");
  require(config.p <= 17, ErrorCode::kInvalidArgument, "p above the supported cap of 17");
  require(config.n0 >= 1, ErrorCode::kInvalidArgument, "initial degree must be >= 1");
  require(config.n0 <= config.max_degree, ErrorCode::kInvalidArgument,
          "initial degree exceeds max_degree");
  require(config.search_budget >= 1, ErrorCode::kInvalidArgument, "search budget must be positive");
}

Tower Tower::create(const TowerConfig& config) {
  validate(config);
  Tower t(config);
  t.append_level(least_irreducible(config.p, config.n0), {});
  return t;
}

Tower Tower::restore(const TowerConfig& config, const std::vector<Coeffs>& moduli,
                     const std::vector<Coeffs>& embeddings) {
  validate(config);
  require(!moduli.empty(), ErrorCode::kCorruptState, "tower has no levels");
  require(embeddings.size() + 1 == moduli.size(), ErrorCode::kCorruptState,
          "tower needs one embedding per level above the first");
  Tower t(config);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    require(moduli[i].size() >= 2 && fpoly::is_irreducible(moduli[i], config.p),
            ErrorCode::kCorruptState, "level " + std::to_string(i) + " modulus not irreducible");
    if (i == 0) {
      require(moduli[0].size() - 1 == config.n0, ErrorCode::kCorruptState,
              "first level degree differs from n0");
      t.append_level(moduli[0], {});
      continue;
    }
    const std::size_t prev = moduli[i - 1].size() - 1, cur = moduli[i].size() - 1;
    require(cur > prev && cur % prev == 0, ErrorCode::kCorruptState,
            "level degrees must form a divisibility chain");
    require(embeddings[i - 1].size() == cur, ErrorCode::kCorruptState,
            "embedding image has wrong length");
    t.append_level(moduli[i], embeddings[i - 1]);
    const Field& F = t.fields_.back();
    require(is_zero(eval_fp_poly(F, moduli[i - 1], embeddings[i - 1])), ErrorCode::kCorruptState,
            "embedding image is not a root of the previous modulus");
  }
  return t;
}

void Tower::append_level(Coeffs modulus, Coeffs embedding) {
  fields_.emplace_back(config_.p, std::move(modulus));
  if (fields_.size() == 1) return;
  const Field& prev = fields_[fields_.size() - 2];
  const Field& cur = fields_.back();
  for (Residue c : embedding) {
    require(c < config_.p, ErrorCode::kCorruptState, "embedding coefficient out of range");
  }
  std::vector<Coeffs> cols;
  Coeffs power = cur.one();
  for (std::size_t k = 0; k < prev.degree(); ++k) {
    cols.push_back(power);
    power = cur.mul(power, embedding);
  }
  // For degree-1 levels the generator is a constant, not x; the basis is {1}.
  embeddings_.push_back(std::move(embedding));
  embed_cols_.push_back(std::move(cols));
}

void Tower::grow(std::size_t multiplier) {
  require(multiplier >= 2, ErrorCode::kInvalidArgument, "growth multiplier must be >= 2");
  const Field& last = fields_.back();
  const std::size_t n = last.degree() * multiplier;
  require(n <= config_.max_degree, ErrorCode::kBudgetExceeded,
          "growing to degree " + std::to_string(n) + " exceeds max_degree " +
              std::to_string(config_.max_degree));
  Coeffs f = least_irreducible(config_.p, n);
  const Field next(config_.p, f);
  Coeffs image = roots_in_field(next, last.modulus()).front();
  append_level(std::move(f), std::move(image));
}

const Field& Tower::field(std::size_t level) const {
  require(level < fields_.size(), ErrorCode::kInvalidArgument,
          "level " + std::to_string(level) + " not in tower");
  return fields_[level];
}

std::optional<std::size_t> Tower::level_of_degree(std::size_t degree) const {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].degree() == degree) return i;
  }
  return std::nullopt;
}

TowerElement Tower::zero(std::size_t level) const { return {level, field(level).zero()}; }
TowerElement Tower::one(std::size_t level) const { return {level, field(level).one()}; }
TowerElement Tower::generator(std::size_t level) const {
  return {level, field(level).generator()};
}

TowerElement Tower::element(std::size_t level, Coeffs coeffs) const {
  const Field& F = field(level);
  require(coeffs.size() == F.degree(), ErrorCode::kInvalidArgument,
          "element needs exactly " + std::to_string(F.degree()) + " coefficients");
  for (Residue c : coeffs) {
    require(c < F.p(), ErrorCode::kInvalidArgument, "coefficient out of range");
  }
  return {level, std::move(coeffs)};
}

Coeffs Tower::embed_coeffs(const Coeffs& x, std::size_t from, std::size_t to) const {
  require(to >= from, ErrorCode::kInvalidArgument, "cannot embed into a lower level");
  require(to < fields_.size(), ErrorCode::kInvalidArgument, "target level not in tower");
  Coeffs cur = x;
  for (std::size_t l = from; l < to; ++l) {
    const std::size_t n = fields_[l + 1].degree();
    std::vector<std::uint64_t> acc(n, 0);
    const auto& cols = embed_cols_[l];
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (!cur[k]) continue;
      for (std::size_t r = 0; r < n; ++r) acc[r] += std::uint64_t{cur[k]} * cols[k][r];
    }
    Coeffs next(n);
    for (std::size_t r = 0; r < n; ++r) next[r] = static_cast<Residue>(acc[r] % config_.p);
    cur = std::move(next);
  }
  return cur;
}

TowerElement Tower::embed(const TowerElement& x, std::size_t target) const {
  return {target, embed_coeffs(x.coeffs, x.level, target)};
}

// ------------------------------------------------------- element ops

namespace {
const Field& common(const Tower& t, const TowerElement& a, const TowerElement& b) {
  require(a.level == b.level, ErrorCode::kLevelMismatch,
          "operands at levels " + std::to_string(a.level) + " and " + std::to_string(b.level));
  return t.field(a.level);
}
}  // namespace

TowerElement add(const Tower& t, const TowerElement& a, const TowerElement& b) {
  return {a.level, common(t, a, b).add(a.coeffs, b.coeffs)};
}
TowerElement sub(const Tower& t, const TowerElement& a, const TowerElement& b) {
  return {a.level, common(t, a, b).sub(a.coeffs, b.coeffs)};
}
TowerElement neg(const Tower& t, const TowerElement& a) {
  return {a.level, t.field(a.level).neg(a.coeffs)};
}
TowerElement mul(const Tower& t, const TowerElement& a, const TowerElement& b) {
  return {a.level, common(t, a, b).mul(a.coeffs, b.coeffs)};
}
TowerElement inv(const Tower& t, const TowerElement& a) {
  return {a.level, t.field(a.level).inv(a.coeffs)};
}
TowerElement pow(const Tower& t, const TowerElement& a, std::uint64_t e) {
  return {a.level, t.field(a.level).pow(a.coeffs, e)};
}
TowerElement frobenius(const Tower& t, const TowerElement& x, std::uint64_t e) {
  require(e >= 1, ErrorCode::kInvalidArgument, "frobenius exponent must be >= 1");
  return {x.level, t.field(x.level).frobenius(x.coeffs, e)};
}

bool in_subfield(const Tower& t, const TowerElement& x, std::size_t m) {
  const Field& F = t.field(x.level);
  require(m >= 1 && F.degree() % m == 0, ErrorCode::kInvalidArgument,
          "subfield degree " + std::to_string(m) + " does not divide " +
              std::to_string(F.degree()));
  return F.frobenius(x.coeffs, m) == x.coeffs;
}

}  // namespace acfg
