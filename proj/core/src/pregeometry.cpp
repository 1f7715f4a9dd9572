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

#include "acfg/pregeometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "acfg/error.hpp"
#include "acfg/subspace.hpp"

namespace acfg {

std::string_view to_string(ClosureKind k) {
  switch (k) {
    case ClosureKind::kLinear: return "linear";
    case ClosureKind::kAffine: return "affine";
    case ClosureKind::kTable: return "table";
  }
  return "unknown";
}

namespace {

std::size_t index_of(const Coeffs& v, Residue p) {
  std::size_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

std::vector<Coeffs> points(Residue p, std::size_t d) {
  const std::uint64_t n = saturating_pow(p, d);
  require(n <= Pregeometry::kMaxCarrier, ErrorCode::kGuardExceeded,
          "carrier of " + std::to_string(n) + " points exceeds the limit of 16");
  std::vector<Coeffs> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(digits(i, p, d));
  return out;
}

Coeffs apply_matrix(const std::vector<Coeffs>& cols, const Coeffs& v, Residue p) {
  Coeffs out(v.size(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = add_mod(out[i], mul_mod(cols[j][i], v[j], p), p);
    }
  }
  return out;
}

// Permutations of the points induced by invertible matrices, optionally
// composed with every translation.
std::vector<std::vector<std::uint8_t>> matrix_group(Residue p, std::size_t d, bool affine) {
  const std::vector<Coeffs> pts = points(p, d);
  const std::uint64_t count = saturating_pow(p, d * d);
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t m = 0; m < count; ++m) {
    const Coeffs flat = digits(m, p, d * d);
    std::vector<Coeffs> cols(d);
    for (std::size_t j = 0; j < d; ++j) cols[j].assign(flat.begin() + j * d, flat.begin() + (j + 1) * d);
    if (Subspace::span(p, d, cols).dim() != d) continue;
    for (std::size_t t = 0; t < (affine ? pts.size() : 1); ++t) {
      std::vector<std::uint8_t> perm(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Coeffs img = apply_matrix(cols, pts[i], p);
        for (std::size_t k = 0; k < d; ++k) img[k] = add_mod(img[k], pts[t][k], p);
        perm[i] = static_cast<std::uint8_t>(index_of(img, p));
      }
      out.push_back(std::move(perm));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mask points_in(const Subspace& s, const std::vector<Coeffs>& pts, const Coeffs* shift) {
  Mask out = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Coeffs v = pts[i];
    if (shift) {
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = sub_mod(v[k], (*shift)[k], s.p());
    }
    if (s.contains(v)) out |= Mask{1} << i;
  }
  return out;
}

}  // namespace

Pregeometry Pregeometry::linear(Residue p, std::size_t d) {
  require(is_prime(p) && d >= 1, ErrorCode::kInvalidArgument, "linear structure needs prime p, d >= 1");
  Pregeometry g;
  g.kind_ = ClosureKind::kLinear;
  g.p_ = p;
  g.d_ = d;
  const std::vector<Coeffs> pts = points(p, d);
  g.n_ = pts.size();
  g.cl_.resize(std::size_t{1} << g.n_);
  g.rank_.resize(g.cl_.size());
  for (Mask m = 0; m < g.cl_.size(); ++m) {
    std::vector<Coeffs> vs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (m >> i & 1) vs.push_back(pts[i]);
    }
    const Subspace s = Subspace::span(p, d, vs);
    g.cl_[m] = points_in(s, pts, nullptr);
    g.rank_[m] = static_cast<std::uint8_t>(s.dim());
  }
  g.autos_ = matrix_group(p, d, false);
  return g;
}

Pregeometry Pregeometry::affine(Residue p, std::size_t d) {
  require(is_prime(p) && d >= 1, ErrorCode::kInvalidArgument, "affine structure needs prime p, d >= 1");
  Pregeometry g;
  g.kind_ = ClosureKind::kAffine;
  g.p_ = p;
  g.d_ = d;
  const std::vector<Coeffs> pts = points(p, d);
  g.n_ = pts.size();
  g.cl_.resize(std::size_t{1} << g.n_);
  g.rank_.resize(g.cl_.size());
  for (Mask m = 1; m < g.cl_.size(); ++m) {
    const Coeffs& base = pts[std::countr_zero(m)];
    std::vector<Coeffs> vs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(m >> i & 1)) continue;
      Coeffs v = pts[i];
      for (std::size_t k = 0; k < d; ++k) v[k] = sub_mod(v[k], base[k], p);
      vs.push_back(std::move(v));
    }
    const Subspace s = Subspace::span(p, d, vs);
    g.cl_[m] = points_in(s, pts, &base);
    g.rank_[m] = static_cast<std::uint8_t>(s.dim() + 1);
  }
  g.autos_ = matrix_group(p, d, true);
  return g;
}

Pregeometry Pregeometry::table(std::size_t n, std::vector<Mask> closures) {
  require(n >= 1 && n <= kMaxTableCarrier, ErrorCode::kGuardExceeded,
          "closure tables support 1..8 points");
  require(closures.size() == (std::size_t{1} << n), ErrorCode::kInvalidArgument,
          "closure table needs one entry per subset");
  Pregeometry g;
  g.kind_ = ClosureKind::kTable;
  g.n_ = n;
  g.cl_ = std::move(closures);
  const Mask all = g.full();
  for (Mask m = 0; m <= all; ++m) {
    const Mask c = g.cl_[m];
    require((c & ~all) == 0, ErrorCode::kInvalidArgument, "closure leaves the carrier");
    require((c & m) == m, ErrorCode::kInvalidArgument, "closure is not extensive at " + format_mask(m));
    require(g.cl_[c] == c, ErrorCode::kInvalidArgument, "closure is not idempotent at " + format_mask(m));
    for (std::size_t a = 0; a < n; ++a) {
      const Mask ma = m | Mask{1} << a;
      require((c & g.cl_[ma]) == c, ErrorCode::kInvalidArgument,
              "closure is not monotone at " + format_mask(m));
      for (std::size_t b = 0; b < n; ++b) {
        const bool in_a = g.cl_[ma] >> b & 1;
        if (!in_a || (c >> b & 1)) continue;
        require(g.cl_[m | Mask{1} << b] >> a & 1, ErrorCode::kInvalidArgument,
                "closure fails exchange at " + format_mask(m));
      }
    }
  }
  g.rank_.resize(g.cl_.size());
  for (Mask m = 0; m <= all; ++m) {
    Mask basis = 0;
    std::uint8_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i & 1) && !(g.cl_[basis] >> i & 1)) {
        basis |= Mask{1} << i;
        ++r;
      }
    }
    g.rank_[m] = r;
  }
  std::vector<std::uint8_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Mask m = 0; m <= all && ok; ++m) ok = g.apply(perm, g.cl_[m]) == g.cl_[g.apply(perm, m)];
    if (ok) g.autos_.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return g;
}

Mask Pregeometry::apply(const std::vector<std::uint8_t>& sigma, Mask m) const {
  Mask out = 0;
  for (; m; m &= m - 1) out |= Mask{1} << sigma[std::countr_zero(m)];
  return out;
}

std::vector<const std::vector<std::uint8_t>*> Pregeometry::stabilizer(Mask fixed) const {
  std::vector<const std::vector<std::uint8_t>*> out;
  for (const auto& s : autos_) {
    bool ok = true;
    for (Mask m = fixed; m && ok; m &= m - 1) {
      const int i = std::countr_zero(m);
      ok = s[i] == i;
    }
    if (ok) out.push_back(&s);
  }
  return out;
}

std::string Pregeometry::describe() const {
  if (kind_ == ClosureKind::kTable) return "table(" + std::to_string(n_) + ")";
  return std::string(to_string(kind_)) + "(p=" + std::to_string(p_) + ",d=" + std::to_string(d_) + ")";
}

std::string Pregeometry::format_mask(Mask m) {
  std::string out = "{";
  bool first = true;
  for (; m; m &= m - 1) {
    if (!first) out += ",";
    out += std::to_string(std::countr_zero(m));
    first = false;
  }
  return out + "}";
}

Relation Relation::indep_a() {
  return Relation("a", [](const Pregeometry& s, Mask a, Mask b, Mask c) {
    return (s.closure(a | c) & s.closure(b | c)) == s.closure(c);
  });
}

Relation Relation::indep_pregeo() {
  return Relation("pregeo", [](const Pregeometry& s, Mask a, Mask b, Mask c) {
    return s.rank(a | c) + s.rank(b | c) == s.rank(c) + s.rank(a | b | c);
  });
}

Relation Relation::trivial() {
  return Relation("true", [](const Pregeometry&, Mask, Mask, Mask) { return true; });
}

Relation Relation::monotonise(const Relation& r) {
  return Relation("m(" + r.name() + ")", [r](const Pregeometry& s, Mask a, Mask b, Mask c) {
    const Mask bc = b | c;
    const Mask top = s.closure(bc);
    for (Mask d = top;; d = (d - 1) & top) {
      if (!r(s, a, bc, c | d)) return false;
      if (d == 0) break;
    }
    return true;
  });
}

Relation Relation::monotonise_closed(const Relation& r) {
  return Relation("mc(" + r.name() + ")", [r](const Pregeometry& s, Mask a, Mask b, Mask c) {
    const Mask bc = b | c;
    const Mask top = s.closure(bc);
    for (Mask d = top;; d = (d - 1) & top) {
      if (s.closure(c | d) == (c | d) && !r(s, a, bc, c | d)) return false;
      if (d == 0) break;
    }
    return true;
  });
}

Relation Relation::star(const Relation& r) {
  return Relation("star(" + r.name() + ")", [r](const Pregeometry& s, Mask a, Mask b, Mask c) {
    const auto stab = s.stabilizer(s.closure(b | c));
    const Mask rest = s.full() & ~b;
    for (Mask e = rest;; e = (e - 1) & rest) {
      bool found = false;
      for (const auto* sigma : stab) {
        if (r(s, s.apply(*sigma, a), b | e, c)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
      if (e == 0) break;
    }
    return true;
  });
}

Relation parse_relation(std::string_view text) {
  auto strip = [](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    return t;
  };
  text = strip(text);
  if (text == "a" || text == "indep_a") return Relation::indep_a();
  if (text == "pregeo" || text == "indep_pregeo") return Relation::indep_pregeo();
  if (text == "true") return Relation::trivial();
  const std::size_t open = text.find('(');
  require(open != std::string_view::npos && text.back() == ')', ErrorCode::kParse,
          "unknown relation '" + std::string(text) + "'");
  const std::string_view head = strip(text.substr(0, open));
  const Relation inner = parse_relation(text.substr(open + 1, text.size() - open - 2));
  if (head == "m" || head == "monotonise") return Relation::monotonise(inner);
  if (head == "mc") return Relation::monotonise_closed(inner);
  if (head == "star") return Relation::star(inner);
  fail(ErrorCode::kParse, "unknown combinator '" + std::string(head) + "'");
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::kInv: return "INV";
    case Property::kSym: return "SYM";
    case Property::kMon: return "MON";
    case Property::kBmon: return "BMON";
    case Property::kTra: return "TRA";
    case Property::kEx: return "EX";
    case Property::kExt: return "EXT_finite";
    case Property::kExt2: return "EXT2_finite";
    case Property::kCloRight: return "CLO_right";
  }
  return "unknown";
}

Property parse_property(std::string_view text) {
  for (Property p : {Property::kInv, Property::kSym, Property::kMon, Property::kBmon, Property::kTra,
                     Property::kEx, Property::kExt, Property::kExt2, Property::kCloRight}) {
    if (text == to_string(p)) return p;
  }
  if (text == "EXT") return Property::kExt;
  if (text == "EXT2") return Property::kExt2;
  if (text == "LOC") fail(ErrorCode::kInvalidArgument, "LOC has no finite instance; see loc_witness_config");
  fail(ErrorCode::kInvalidArgument, "unknown property '" + std::string(text) + "'");
}

std::vector<Mask> subset_domain(const Pregeometry& s, std::size_t k) {
  std::vector<Mask> out;
  for (Mask m = 0; m <= s.full(); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) <= k) out.push_back(m);
    if (m == s.full()) break;
  }
  std::stable_sort(out.begin(), out.end(), [](Mask x, Mask y) {
    return std::popcount(x) < std::popcount(y);
  });
  return out;
}

namespace {

std::size_t arity(Property p) {
  switch (p) {
    case Property::kEx: return 2;
    case Property::kInv:
    case Property::kSym:
    case Property::kExt:
    case Property::kCloRight: return 3;
    default: return 4;
  }
}

bool exists_conjugate(const Relation& r, const Pregeometry& s, Mask fixed, Mask a, Mask b, Mask c) {
  for (const auto* sigma : s.stabilizer(fixed)) {
    if (r(s, s.apply(*sigma, a), b, c)) return true;
  }
  return false;
}

// Empty string when the instance satisfies the property.
std::string check_instance(const Relation& r, const Pregeometry& s, Property prop,
                           const std::vector<Mask>& x) {
  const Mask a = x[0], b = x[1];
  const Mask c = x.size() > 2 ? x[2] : 0;
  const Mask d = x.size() > 3 ? x[3] : 0;
  switch (prop) {
    case Property::kInv: {
      const bool base = r(s, a, b, c);
      for (const auto& sigma : s.automorphisms()) {
        if (r(s, s.apply(sigma, a), s.apply(sigma, b), s.apply(sigma, c)) != base) {
          return "value changes under an automorphism";
        }
      }
      return {};
    }
    case Property::kSym:
      return r(s, a, b, c) && !r(s, b, a, c) ? "A|_C B but not B|_C A" : "";
    case Property::kMon:
      return r(s, a, b | d, c) && !r(s, a, b, c) ? "A|_C BD but not A|_C B" : "";
    case Property::kBmon:
      return r(s, a, b | d, c) && !r(s, a, b, c | d) ? "A|_C BD but not A|_CD B" : "";
    case Property::kTra:
      return r(s, a, d, c | b) && r(s, b, d, c) && !r(s, a | b, d, c)
                 ? "A|_CB D and B|_C D but not AB|_C D"
                 : "";
    case Property::kEx:
      return r(s, a, b, b) ? "" : "A|_C C fails";
    case Property::kExt:
      return exists_conjugate(r, s, s.closure(c), a, b, c) ? "" : "no conjugate of A over C is independent";
    case Property::kExt2:
      if (!r(s, a, b, c)) return {};
      return exists_conjugate(r, s, s.closure(b | c), a, b | d, c)
                 ? ""
                 : "no conjugate of A over BC is independent from BD";
    case Property::kCloRight:
      return r(s, a, b, c) && !r(s, a, s.closure(b | c), c) ? "A|_C B but not A|_C cl(BC)" : "";
  }
  return {};
}

}  // namespace

PropertyReport check_property(const Relation& r, const Pregeometry& s, Property prop,
                              const PropertyOptions& options) {
  const std::vector<Mask> dom = subset_domain(s, options.max_subset_size);
  const std::size_t k = arity(prop);
  const std::uint64_t total = saturating_pow(dom.size(), k);
  PropertyReport report;
  report.exhaustive = total <= options.budget;
  report.instances = report.exhaustive ? total : options.budget;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);
  std::vector<Mask> x(k);
  for (std::uint64_t idx = 0; idx < report.instances; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t j = 0; j < k; ++j) {
      if (report.exhaustive) {
        x[j] = dom[rest % dom.size()];
        rest /= dom.size();
      } else {
        x[j] = dom[pick(rng)];
      }
    }
    std::string detail = check_instance(r, s, prop, x);
    if (!detail.empty()) {
      std::vector<Mask> inst = x;
      inst.resize(4, 0);
      report.violations.push_back({prop, inst, std::move(detail)});
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

AgreementReport ex_acfmon_check(const Pregeometry& s, std::size_t max_subset_size) {
  const std::vector<Mask> dom = subset_domain(s, max_subset_size);
  const Relation ra = Relation::indep_a();
  const Relation rm = Relation::monotonise(ra);
  const Relation rp = Relation::indep_pregeo();
  AgreementReport out;
  for (Mask a : dom) {
    for (Mask b : dom) {
      for (Mask c : dom) {
        ++out.triples;
        const bool m = rm(s, a, b, c);
        const bool p = rp(s, a, b, c);
        if (m != p) {
          ++out.disagreements;
          if (out.examples.size() < 8) out.examples.push_back({a, b, c});
        }
        if (!m && !p && ra(s, a, b, c)) ++out.separating;
      }
    }
  }
  return out;
}

}  // namespace acfg
