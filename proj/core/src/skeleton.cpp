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

#include "acfg/skeleton.hpp"

#include <algorithm>
#include <bit>

#include "acfg/error.hpp"

namespace acfg {

namespace {

bool subset_of(const Subspace& u, const Subspace& v) {
  for (const Coeffs& r : u.basis()) {
    if (!v.contains(r)) return false;
  }
  return true;
}

bool letters_within(std::string_view t, std::string_view s) {
  return std::all_of(t.begin(), t.end(), [&](char ch) { return s.find(ch) != std::string_view::npos; });
}

Subspace span_of(Residue p, std::size_t d, const std::vector<Coeffs>& vs) {
  return Subspace::span(p, d, vs);
}

Coeffs random_element(const Subspace& s, std::mt19937_64& rng) {
  if (s.dim() == 0) return Coeffs(s.ambient(), 0);
  std::uniform_int_distribution<std::uint64_t> pick(0, s.size() - 1);
  return s.element(pick(rng));
}

Subspace random_space(Residue p, std::size_t d, std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(lo, hi);
  return random_subspace(p, d, dim(rng), rng);
}

}  // namespace

std::string label_key(std::string_view a, std::string_view b, std::string_view c) {
  std::string out;
  out.append(a).append(b).append(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subspace SkeletonConfig::space(std::string_view label_set) const {
  const std::string key = label_key(label_set);
  if (auto it = labels.find(key); it != labels.end()) return it->second;
  Subspace out(p, d);
  std::string covered;
  for (const auto& [k, s] : labels) {
    if (k.empty() || !letters_within(k, key)) continue;
    out = sum(out, s);
    covered += k;
  }
  for (char ch : key) {
    require(covered.find(ch) != std::string::npos, ErrorCode::kMissingLabel,
            std::string("no space declared for label '") + ch + "'");
  }
  return out;
}

void SkeletonConfig::validate() const {
  auto check = [&](const Subspace& s, const std::string& what) {
    require(s.p() == p && s.ambient() == d, ErrorCode::kInvalidArgument,
            what + " does not live in F_" + std::to_string(p) + "^" + std::to_string(d));
  };
  check(gamma, "gamma");
  for (const auto& [k, s] : labels) check(s, "label '" + k + "'");
  for (const auto& [k1, s1] : labels) {
    for (const auto& [k2, s2] : labels) {
      if (k1 != k2 && letters_within(k1, k2)) {
        require(subset_of(s1, s2), ErrorCode::kPrecondition,
                "label map is not monotone: '" + k1 + "' is not inside '" + k2 + "'");
      }
    }
  }
  for (const auto& [name, members] : families) {
    for (const FamilyMember& m : members) {
      check(m.base, "family '" + name + "'");
      if (m.left) check(*m.left, "family '" + name + "'");
    }
  }
  require(r_a.size() == r_b.size(), ErrorCode::kInvalidArgument, "r_a and r_b differ in length");
  for (const Coeffs& v : r_a) require(v.size() == d, ErrorCode::kInvalidArgument, "bad r_a entry");
  for (const Coeffs& v : r_b) require(v.size() == d, ErrorCode::kInvalidArgument, "bad r_b entry");
}

Subspace trace(const Subspace& gamma, const Subspace& u) { return intersect(gamma, u); }

bool weak_condition(const Subspace& ac, const Subspace& bc, const Subspace& c,
                    const Subspace& gamma) {
  if (!(intersect(ac, bc) == c)) return false;
  return trace(gamma, sum(ac, bc)) == sum(trace(gamma, ac), trace(gamma, bc));
}

bool strong_condition(const Subspace& ac, const Subspace& bc, const Subspace& c,
                      const Subspace& abc, const Subspace& gamma) {
  if (!(intersect(ac, bc) == c)) return false;
  return trace(gamma, abc) == sum(trace(gamma, ac), trace(gamma, bc));
}

bool indep_w(const SkeletonConfig& cfg, std::string_view a, std::string_view b, std::string_view c) {
  return weak_condition(cfg.space(label_key(a, c)), cfg.space(label_key(b, c)), cfg.space(c),
                        cfg.gamma);
}

bool indep_st(const SkeletonConfig& cfg, std::string_view a, std::string_view b, std::string_view c) {
  return strong_condition(cfg.space(label_key(a, c)), cfg.space(label_key(b, c)), cfg.space(c),
                          cfg.space(label_key(a, b, c)), cfg.gamma);
}

bool indep_wm(const SkeletonConfig& cfg, std::string_view a, std::string_view b,
              std::string_view c, const std::string& family) {
  auto it = cfg.families.find(family);
  require(it != cfg.families.end(), ErrorCode::kMissingLabel,
          "monotonised relation needs the declared family '" + family + "'");
  const Subspace ac = cfg.space(label_key(a, c));
  const Subspace bc = cfg.space(label_key(b, c));
  const Subspace cc = cfg.space(c);
  for (const FamilyMember& m : it->second) {
    if (!subset_of(cc, m.base) || !subset_of(m.base, bc)) continue;
    const Subspace left = m.left ? *m.left : sum(ac, m.base);
    if (!weak_condition(left, bc, m.base, cfg.gamma)) return false;
  }
  return true;
}

Subspace ClosureRules::apply(Subspace v) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [premise, q] : rules) {
      if (!v.contains(q) && subset_of(premise, v)) {
        v = sum(v, Subspace::span(v.p(), v.ambient(), std::vector<Coeffs>{q}));
        changed = true;
      }
    }
  }
  return v;
}

ClosureRules random_rules(Residue p, std::size_t d, std::size_t count, std::mt19937_64& rng) {
  ClosureRules out;
  while (out.rules.size() < count) {
    Subspace prem = random_space(p, d, 1, 2, rng);
    if (prem.dim() == 0) continue;
    out.rules.emplace_back(std::move(prem), random_vector(p, d, rng));
  }
  return out;
}

TraOutcome weak_tra_check(const SkeletonConfig& cfg) {
  const Subspace abc = cfg.space("ABC"), bcd = cfg.space("BCD"), bc = cfg.space("BC");
  const Subspace cd = cfg.space("CD"), c = cfg.space("C");
  TraOutcome out;
  out.premises = weak_condition(abc, bcd, bc, cfg.gamma) && weak_condition(bc, cd, c, cfg.gamma);
  out.conclusion = weak_condition(abc, cd, c, cfg.gamma);
  return out;
}

SkeletonConfig sample_tra_config(Residue p, std::size_t d, std::mt19937_64& rng) {
  SkeletonConfig cfg;
  cfg.p = p;
  cfg.d = d;
  std::uniform_int_distribution<std::size_t> nrules(0, 2);
  const ClosureRules rules = random_rules(p, d, nrules(rng), rng);
  const std::string letters = "ABCD";
  std::vector<Subspace> gens;
  for (char ch : letters) gens.push_back(random_space(p, d, 0, ch == 'C' ? 1 : 2, rng));
  for (unsigned m = 0; m < 16; ++m) {
    std::string key;
    Subspace s(p, d);
    for (unsigned i = 0; i < 4; ++i) {
      if (m >> i & 1) {
        key += letters[i];
        s = sum(s, gens[i]);
      }
    }
    cfg.labels[key] = rules.apply(std::move(s));
  }
  cfg.gamma = random_space(p, d, 1, 2, rng);
  return cfg;
}

MixedTranOutcome mixed_tran_check(const SkeletonConfig& cfg, const std::string& family) {
  auto it = cfg.families.find(family);
  require(it != cfg.families.end(), ErrorCode::kMissingLabel,
          "mixed transitivity needs the declared family '" + family + "'");
  const Subspace a = cfg.space("A"), b = cfg.space("B"), c = cfg.space("C"), d = cfg.space("D");
  const Subspace ab = cfg.space("AB"), ad = cfg.space("AD");
  const Subspace& g = cfg.gamma;
  MixedTranOutcome out;
  auto failed = [&](std::string why) {
    out.preconditions = false;
    out.failed_precondition = std::move(why);
    return out;
  };
  if (!subset_of(c, a) || !subset_of(c, b) || !subset_of(b, d)) {
    return failed("needs C inside A and B, and B inside D");
  }
  if (!subset_of(sum(a, b), ab) || !subset_of(sum(a, d), ad) || !subset_of(ab, ad)) {
    return failed("closures of AB and AD are not monotone");
  }
  const std::vector<FamilyMember>& members = it->second;
  auto left_of = [&](const Subspace& e) -> const Subspace* {
    for (const FamilyMember& m : members) {
      if (m.base == e && m.left) return &*m.left;
    }
    return nullptr;
  };
  for (const FamilyMember& m : members) {
    if (!m.left) return failed("family member without the closure of A and E");
    if (!subset_of(c, m.base) || !subset_of(m.base, d)) return failed("family member outside [C, D]");
    if (!subset_of(sum(a, m.base), *m.left) || !subset_of(*m.left, ad)) {
      return failed("closure of AE is not monotone");
    }
    const Subspace* aeb = left_of(intersect(m.base, b));
    if (!aeb) return failed("family is not closed under intersection with B");
    if (!(intersect(*m.left, ab) == *aeb)) return failed("cl(AE) ∩ cl(AB) differs from cl(A(E∩B))");
    if (!(intersect(sum(*m.left, ab), d) == sum(m.base, b))) {
      return failed("(cl(AE) + cl(AB)) ∩ D differs from E + B");
    }
  }
  out.preconditions = true;
  out.premise_wm = true;
  for (const FamilyMember& m : members) {
    if (subset_of(m.base, b) && !weak_condition(*m.left, b, m.base, g)) {
      out.premise_wm = false;
      break;
    }
  }
  out.premise_st = strong_condition(ab, d, b, ad, g);
  out.conclusion = true;
  for (const FamilyMember& m : members) {
    if (!weak_condition(*m.left, d, m.base, g)) {
      out.conclusion = false;
      break;
    }
  }
  return out;
}

SkeletonConfig sample_mixed_tran_config(Residue p, std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> nrules(0, 2);
  while (true) {
    SkeletonConfig cfg;
    cfg.p = p;
    cfg.d = d;
    const ClosureRules rules = random_rules(p, d, nrules(rng), rng);
    const Subspace c = rules.apply(random_space(p, d, 0, 1, rng));
    const Subspace a = rules.apply(sum(c, random_space(p, d, 0, 2, rng)));
    const Subspace b = rules.apply(sum(c, random_space(p, d, 0, 2, rng)));
    const Subspace dd = rules.apply(sum(b, random_space(p, d, 0, 2, rng)));
    if (dd.dim() - c.dim() > 3) continue;
    cfg.labels["A"] = a;
    cfg.labels["B"] = b;
    cfg.labels["C"] = c;
    cfg.labels["D"] = dd;
    cfg.labels["AB"] = rules.apply(sum(a, b));
    cfg.labels["AD"] = rules.apply(sum(a, dd));
    cfg.gamma = random_space(p, d, 1, 2, rng);
    // Intermediate spaces: C plus a subspace of a complement of C in D.
    std::vector<Coeffs> comp;
    Subspace acc = c;
    for (const Coeffs& r : dd.basis()) {
      if (!acc.contains(r)) {
        comp.push_back(r);
        acc = sum(acc, span_of(p, d, {r}));
      }
    }
    std::vector<FamilyMember> members;
    for_each_subspace(p, comp.size(), [&](const Subspace& q) {
      std::vector<Coeffs> vs = c.basis();
      for (const Coeffs& row : q.basis()) {
        Coeffs v(d, 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
          for (std::size_t k = 0; k < d; ++k) v[k] = add_mod(v[k], mul_mod(row[j], comp[j][k], p), p);
        }
        vs.push_back(std::move(v));
      }
      Subspace e = span_of(p, d, vs);
      Subspace left = rules.apply(sum(a, e));
      members.push_back({std::move(e), std::move(left)});
    });
    cfg.families["E"] = std::move(members);
    return cfg;
  }
}

std::string_view to_string(IndStarVerdict v) {
  switch (v) {
    case IndStarVerdict::kAgree: return "agree";
    case IndStarVerdict::kDisagree: return "disagree";
    case IndStarVerdict::kPrecondition: return "precondition_violation";
  }
  return "unknown";
}

namespace {

// Coordinates of x modulo Γ on the non-pivot columns of Γ's canonical basis.
Coeffs quotient(const Subspace& gamma, const Coeffs& x) {
  const Coeffs r = gamma.reduce(x);
  Coeffs out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (k < gamma.pivots().size() && gamma.pivots()[k] == i) {
      ++k;
      continue;
    }
    out.push_back(r[i]);
  }
  return out;
}

Subspace quotient_image(const Subspace& gamma, const std::vector<Coeffs>& vs) {
  std::vector<Coeffs> imgs;
  for (const Coeffs& v : vs) imgs.push_back(quotient(gamma, v));
  return Subspace::span(gamma.p(), gamma.ambient() - gamma.dim(), imgs);
}

}  // namespace

IndStarResult ind_star_equiv_check(const SkeletonConfig& cfg) {
  IndStarResult out;
  const Subspace ea = cfg.space("a"), eb = cfg.space("b"), ec = cfg.space("C");
  const Subspace& g = cfg.gamma;
  if (cfg.r_a.size() != cfg.r_b.size()) {
    out.detail = "r_a and r_b differ in length";
    return out;
  }
  if (!(intersect(ea, eb) == ec)) {
    out.detail = "E_a ∩ E_b differs from E_C";
    return out;
  }
  Residue p = cfg.p;
  std::vector<Coeffs> diffs;
  for (std::size_t i = 0; i < cfg.r_a.size(); ++i) {
    if (!ea.contains(cfg.r_a[i]) || !eb.contains(cfg.r_b[i])) {
      out.detail = "representative " + std::to_string(i) + " is outside its space";
      return out;
    }
    Coeffs diff(cfg.d);
    for (std::size_t k = 0; k < cfg.d; ++k) diff[k] = sub_mod(cfg.r_a[i][k], cfg.r_b[i][k], p);
    if (!g.contains(diff)) {
      out.detail = "representatives " + std::to_string(i) + " have different images";
      return out;
    }
    diffs.push_back(std::move(diff));
  }
  std::vector<Coeffs> cgam = ec.basis();
  cgam.insert(cgam.end(), cfg.r_a.begin(), cfg.r_a.end());
  out.quotient_side = intersect(quotient_image(g, ea.basis()), quotient_image(g, eb.basis())) ==
                      quotient_image(g, cgam);
  const Subspace rhs = sum(sum(trace(g, ea), trace(g, eb)), Subspace::span(p, cfg.d, diffs));
  out.sum_side = trace(g, sum(ea, eb)) == rhs;
  out.verdict = out.quotient_side == out.sum_side ? IndStarVerdict::kAgree : IndStarVerdict::kDisagree;
  return out;
}

std::optional<std::pair<Coeffs, Coeffs>> decompose(const Coeffs& x, const Subspace& u,
                                                   const Subspace& v) {
  const Residue p = u.p();
  std::vector<Coeffs> imgs = u.basis();
  imgs.insert(imgs.end(), v.basis().begin(), v.basis().end());
  imgs.push_back(x);
  const Subspace ker = kernel(p, imgs);
  const std::size_t last = imgs.size() - 1;
  for (const Coeffs& k : ker.basis()) {
    if (k[last] == 0) continue;
    // x = -(1/k_last) * sum k_i img_i
    const Residue s = neg_mod(inv_mod(k[last], p), p);
    Coeffs cu(x.size(), 0), cv(x.size(), 0);
    for (std::size_t i = 0; i < last; ++i) {
      const Residue c = mul_mod(k[i], s, p);
      Coeffs& dst = i < u.dim() ? cu : cv;
      for (std::size_t j = 0; j < x.size(); ++j) dst[j] = add_mod(dst[j], mul_mod(c, imgs[i][j], p), p);
    }
    return std::make_pair(std::move(cu), std::move(cv));
  }
  return std::nullopt;
}

SkeletonConfig sample_ind_star_config(Residue p, std::size_t d, std::mt19937_64& rng) {
  while (true) {
    SkeletonConfig cfg;
    cfg.p = p;
    cfg.d = d;
    const Subspace c = random_space(p, d, 0, 1, rng);
    const Subspace a = sum(c, random_space(p, d, 1, 2, rng));
    const Subspace b = sum(c, random_space(p, d, 1, 2, rng));
    if (!(intersect(a, b) == c)) continue;
    cfg.labels["C"] = c;
    cfg.labels["a"] = a;
    cfg.labels["b"] = b;
    cfg.gamma = random_space(p, d, 1, 3, rng);
    const Subspace shared = intersect(a, sum(b, cfg.gamma));
    std::uniform_int_distribution<std::size_t> count(0, 2);
    for (std::size_t i = count(rng); i > 0; --i) {
      const Coeffs x = random_element(shared, rng);
      const auto parts = decompose(x, b, cfg.gamma);
      require(parts.has_value(), ErrorCode::kInternal, "element of E_a ∩ (E_b + Γ) did not split");
      cfg.r_a.push_back(x);
      cfg.r_b.push_back(parts->first);
    }
    return cfg;
  }
}

LocReduction greedy_loc_reduction(const Subspace& a, const Subspace& b, const Subspace& gamma) {
  require(a.ambient() == b.ambient() && a.ambient() == gamma.ambient() && a.p() == b.p() &&
              a.p() == gamma.p(),
          ErrorCode::kLevelMismatch, "greedy reduction needs a common ambient space");
  require(a.size() <= kLocGuard && b.size() <= kLocGuard, ErrorCode::kGuardExceeded,
          "greedy reduction enumerates A and B; too many points");
  const Residue p = a.p();
  const std::size_t n = a.ambient();
  LocReduction out;
  out.enumerated = a.size();
  for (std::uint64_t ia = 0; ia < a.size(); ++ia) {
    const Coeffs x = a.element(ia);
    for (std::uint64_t ib = 0; ib < b.size(); ++ib) {
      const Coeffs y = b.element(ib);
      Coeffs s(n);
      for (std::size_t k = 0; k < n; ++k) s[k] = add_mod(x[k], y[k], p);
      if (!gamma.contains(s)) continue;
      if (!is_zero(y) && std::find(out.c.begin(), out.c.end(), y) == out.c.end()) out.c.push_back(y);
      break;
    }
  }
  const Subspace cs = Subspace::span(p, n, out.c);
  out.identity_holds =
      trace(gamma, sum(a, b)) == sum(trace(gamma, sum(a, cs)), trace(gamma, b));
  return out;
}

Subspace LocWitness::closure(std::uint32_t generators) const {
  std::vector<Coeffs> vs;
  auto unit = [&](std::size_t i) {
    Coeffs e(d, 0);
    e[i] = 1;
    return e;
  };
  for (std::size_t i = 0; i <= 2 * r; ++i) {
    if (generators >> i & 1) vs.push_back(unit(i));
  }
  if (generators & 1) {
    for (std::size_t i = 1; i <= r; ++i) {
      if (generators >> i & 1) vs.push_back(unit(2 * r + i));
    }
  }
  return Subspace::span(p, d, vs);
}

bool LocWitness::weak_holds(std::uint32_t a0_pairs, std::uint32_t d_generators) const {
  std::uint32_t base = d_generators;
  for (std::size_t i = 0; i < r; ++i) {
    if (a0_pairs >> i & 1) base |= (1u << (1 + i)) | (1u << (1 + r + i));
  }
  const std::uint32_t block = ((1u << (2 * r)) - 1) << 1;
  return weak_condition(closure(base | 1u), closure(block | base), closure(base), gamma);
}

LocWitness loc_witness_config(std::size_t r, Residue p) {
  require(r >= 2 && r <= 6, ErrorCode::kGuardExceeded, "loc witness supports 2 <= r <= 6");
  require(is_prime(p), ErrorCode::kInvalidArgument, "p must be prime");
  LocWitness w;
  w.p = p;
  w.r = r;
  w.d = 3 * r + 1;
  std::vector<Coeffs> gs;
  for (std::size_t i = 1; i <= r; ++i) {
    Coeffs v(w.d, 0);
    v[2 * r + i] = 1;
    v[r + i] = 1;
    gs.push_back(std::move(v));
  }
  w.gamma = Subspace::span(p, w.d, gs);
  return w;
}

std::vector<LocSearch> loc_failure_search(const LocWitness& w) {
  std::vector<LocSearch> out;
  const std::uint32_t nd = 1u << (2 * w.r);
  for (std::uint32_t a0 = 0; a0 < (1u << w.r); ++a0) {
    if (static_cast<std::size_t>(std::popcount(a0)) >= w.r) continue;
    LocSearch s;
    s.a0_pairs = a0;
    for (std::uint32_t dm = 0; dm < nd; ++dm) {
      if (!w.weak_holds(a0, dm << 1)) {
        s.failing_d = dm << 1;
        break;
      }
    }
    std::uint32_t designed = 0;
    for (std::size_t i = 0; i < w.r; ++i) {
      if (!(a0 >> i & 1)) designed |= 1u << (1 + i);
    }
    s.designed_d_fails = !w.weak_holds(a0, designed);
    out.push_back(s);
  }
  return out;
}

}  // namespace acfg
