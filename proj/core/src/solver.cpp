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

#include "acfg/solver.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "acfg/error.hpp"

namespace acfg {

SearchOptions search_options(const TowerConfig& config, std::uint64_t seed) {
  return {config.search_budget, config.sample_budget, seed};
}

std::string_view to_string(ThetaStatus s) {
  switch (s) {
    case ThetaStatus::kFound: return "found";
    case ThetaStatus::kNotFound: return "not_found";
    case ThetaStatus::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Literal {
  FieldPoly f;
  bool equation;
  std::vector<std::size_t> vars;
};

struct Step {
  std::size_t var;
  std::optional<std::size_t> eq;  // set when the variable is solved for
};

struct Plan {
  std::vector<Literal> literals;
  std::vector<Step> steps;
  std::vector<std::vector<std::size_t>> checks_at;  // by depth
  std::vector<std::size_t> initial_checks;
  std::size_t enumerated = 0;
};

std::optional<std::pair<std::size_t, std::size_t>> determinable(const Plan& plan,
                                                                const std::vector<bool>& assigned) {
  for (std::size_t i = 0; i < plan.literals.size(); ++i) {
    const Literal& lit = plan.literals[i];
    if (!lit.equation) continue;
    std::optional<std::size_t> free;
    std::size_t count = 0;
    for (std::size_t v : lit.vars) {
      if (!assigned[v]) {
        free = v;
        ++count;
      }
    }
    if (count == 1 && lit.f.degree_in(*free) == 1) return std::make_pair(*free, i);
  }
  return std::nullopt;
}

Plan make_plan(const Tower& t, const QFConjunction& phi, std::span<const TowerElement> params,
               std::size_t level) {
  Plan plan;
  auto add = [&](const Poly& poly, bool equation) {
    Literal lit{substitute_params(t, poly, params, level), equation, {}};
    for (std::size_t v = 0; v < phi.nx; ++v) {
      if (lit.f.degree_in(v) > 0) lit.vars.push_back(v);
    }
    plan.literals.push_back(std::move(lit));
  };
  for (const Poly& e : phi.equations) add(e, true);
  for (const Poly& q : phi.inequations) add(q, false);

  std::vector<bool> assigned(phi.nx, false);
  std::size_t remaining = phi.nx;
  while (remaining > 0) {
    if (auto d = determinable(plan, assigned)) {
      plan.steps.push_back({d->first, d->second});
      assigned[d->first] = true;
      --remaining;
      continue;
    }
    // Enumerate the variable that unlocks the most solved-for variables.
    std::size_t best = phi.nx, best_gain = 0;
    for (std::size_t v = 0; v < phi.nx; ++v) {
      if (assigned[v]) continue;
      std::vector<bool> trial = assigned;
      trial[v] = true;
      std::size_t gain = 0;
      while (auto d = determinable(plan, trial)) {
        trial[d->first] = true;
        ++gain;
      }
      if (best == phi.nx || gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    plan.steps.push_back({best, std::nullopt});
    assigned[best] = true;
    --remaining;
    ++plan.enumerated;
  }

  std::vector<std::size_t> position(phi.nx, 0);
  for (std::size_t d = 0; d < plan.steps.size(); ++d) position[plan.steps[d].var] = d;
  plan.checks_at.assign(plan.steps.size(), {});
  for (std::size_t i = 0; i < plan.literals.size(); ++i) {
    const Literal& lit = plan.literals[i];
    if (lit.vars.empty()) {
      plan.initial_checks.push_back(i);
      continue;
    }
    std::size_t depth = 0;
    for (std::size_t v : lit.vars) depth = std::max(depth, position[v]);
    plan.checks_at[depth].push_back(i);
  }
  return plan;
}

struct NodeLimit {};

enum class Determined { kValue, kPrune, kFree };

class Engine {
 public:
  Engine(const Field& F, const Plan& plan, std::size_t nx)
      : F_(F), plan_(plan), vals_(nx, F.zero()) {}

  bool holds(std::size_t lit) const {
    const Literal& l = plan_.literals[lit];
    const bool zero = is_zero(eval(F_, l.f, vals_));
    return l.equation ? zero : !zero;
  }

  bool initial_ok() const {
    for (std::size_t i : plan_.initial_checks) {
      if (!holds(i)) return false;
    }
    return true;
  }

  bool checks_pass(std::size_t depth) const {
    for (std::size_t i : plan_.checks_at[depth]) {
      if (!holds(i)) return false;
    }
    return true;
  }

  Determined determine(const Step& s, Coeffs& out) const {
    const FieldPoly& f = plan_.literals[*s.eq].f;
    Coeffs c = F_.zero(), r = F_.zero();
    for (const auto& [e, coeff] : f.terms()) {
      Coeffs m = coeff;
      for (std::size_t u = 0; u < e.size(); ++u) {
        if (u == s.var || !e[u]) continue;
        m = F_.mul(m, e[u] == 1 ? vals_[u] : F_.pow(vals_[u], e[u]));
      }
      if (e[s.var] == 1) {
        c = F_.add(c, m);
      } else {
        r = F_.add(r, m);
      }
    }
    if (is_zero(c)) return is_zero(r) ? Determined::kFree : Determined::kPrune;
    out = F_.neg(F_.mul(r, F_.inv(c)));
    return Determined::kValue;
  }

  // Depth-first search in plan order; `on_leaf` returns true to stop.
  bool dfs(std::size_t depth, const std::function<bool(const std::vector<Coeffs>&)>& on_leaf) {
    if (++visited_ > node_limit_) throw NodeLimit{};
    if (depth == plan_.steps.size()) return on_leaf(vals_);
    const Step& s = plan_.steps[depth];
    auto attempt = [&](const Coeffs& v) {
      vals_[s.var] = v;
      return checks_pass(depth) && dfs(depth + 1, on_leaf);
    };
    if (s.eq) {
      Coeffs v;
      switch (determine(s, v)) {
        case Determined::kValue: return attempt(v);
        case Determined::kPrune: return false;
        case Determined::kFree: break;
      }
    }
    const std::uint64_t size = *F_.size();
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      if (attempt(F_.from_index(idx))) return true;
    }
    return false;
  }

  // One random candidate; returns false if the plan prunes it.
  bool sample(std::mt19937_64& rng) {
    for (std::size_t depth = 0; depth < plan_.steps.size(); ++depth) {
      const Step& s = plan_.steps[depth];
      Coeffs v;
      Determined kind = Determined::kFree;
      if (s.eq) kind = determine(s, v);
      if (kind == Determined::kPrune) return false;
      if (kind == Determined::kFree) v = random_vector(F_.p(), F_.degree(), rng);
      vals_[s.var] = std::move(v);
      if (!checks_pass(depth)) return false;
    }
    return true;
  }

  const std::vector<Coeffs>& values() const { return vals_; }
  std::uint64_t visited() const { return visited_; }
  void set_node_limit(std::uint64_t limit) { node_limit_ = limit; }

 private:
  const Field& F_;
  const Plan& plan_;
  std::vector<Coeffs> vals_;
  std::uint64_t visited_ = 0;
  std::uint64_t node_limit_ = 0;
};

bool exhaustible(const Field& F, std::size_t enumerated, std::uint64_t budget) {
  return saturating_pow(F.p(), F.degree() * std::max<std::size_t>(enumerated, 1)) <= budget;
}

Witness to_witness(std::size_t level, const std::vector<Coeffs>& vals) {
  Witness w;
  for (const Coeffs& v : vals) w.push_back({level, v});
  return w;
}

bool counter_less(const Witness& a, const Witness& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = compare_base_p(a[i].coeffs, b[i].coeffs);
    if (c) return c < 0;
  }
  return false;
}

bool independent_mod(const Subspace& avoid, const std::vector<Coeffs>& xs) {
  std::vector<Coeffs> rows = avoid.basis();
  rows.insert(rows.end(), xs.begin(), xs.end());
  return Subspace::span(avoid.p(), avoid.ambient(), rows).dim() == avoid.dim() + xs.size();
}

}  // namespace

std::vector<Witness> solve(const Tower& t, const QFConjunction& phi,
                           std::span<const TowerElement> params, std::size_t level,
                           std::uint64_t budget) {
  const Field& F = t.field(level);
  const Plan plan = make_plan(t, phi, params, level);
  require(exhaustible(F, plan.enumerated, budget), ErrorCode::kBudgetExceeded,
          "exhaustive solve at degree " + std::to_string(F.degree()) + " exceeds budget " +
              std::to_string(budget));
  std::vector<Witness> out;
  Engine engine(F, plan, phi.nx);
  engine.set_node_limit(2 * budget + 16);
  if (!engine.initial_ok()) return out;
  try {
    engine.dfs(0, [&](const std::vector<Coeffs>& vals) {
      out.push_back(to_witness(level, vals));
      return false;
    });
  } catch (const NodeLimit&) {
    fail(ErrorCode::kBudgetExceeded, "solver node limit reached");
  }
  std::sort(out.begin(), out.end(), counter_less);
  return out;
}

WitnessSearch find_independent_witness(const Tower& t, const QFConjunction& phi,
                                       std::span<const TowerElement> params, std::size_t level,
                                       const Subspace& avoid, const SearchOptions& options) {
  const Field& F = t.field(level);
  require(avoid.level() == level && avoid.ambient() == F.degree(), ErrorCode::kLevelMismatch,
          "avoid space is not at the search level");
  const Plan plan = make_plan(t, phi, params, level);
  WitnessSearch result;
  Engine engine(F, plan, phi.nx);
  if (!engine.initial_ok()) {
    result.exhaustive = true;
    return result;
  }
  auto accept = [&](const std::vector<Coeffs>& vals) { return independent_mod(avoid, vals); };
  if (exhaustible(F, plan.enumerated, options.search_budget)) {
    engine.set_node_limit(2 * options.search_budget + 16);
    try {
      engine.dfs(0, [&](const std::vector<Coeffs>& vals) {
        if (!accept(vals)) return false;
        result.witness = to_witness(level, vals);
        return true;
      });
      result.exhaustive = true;
    } catch (const NodeLimit&) {
      result.exhaustive = false;
    }
    result.visited = engine.visited();
    return result;
  }
  std::mt19937_64 rng(splitmix(options.seed ^ splitmix(level * 0x1000193ULL + avoid.dim())));
  for (std::uint64_t s = 0; s < options.sample_budget; ++s) {
    ++result.visited;
    if (engine.sample(rng) && accept(engine.values())) {
      result.witness = to_witness(level, engine.values());
      return result;
    }
  }
  return result;
}

namespace {

// Walks chain levels of degree > m that m divides, growing by doubling.
template <typename Fn>
ThetaResult scan_levels(Tower& t, std::span<const TowerElement> params, std::size_t m,
                        std::size_t max_degree, Fn&& try_level) {
  require(m >= 1, ErrorCode::kInvalidArgument, "base degree must be >= 1");
  std::size_t param_level = 0;
  for (const TowerElement& b : params) param_level = std::max(param_level, b.level);
  ThetaResult r;
  for (std::size_t level = 0;; ++level) {
    if (level == t.size()) {
      if (t.degree(t.top()) * 2 > max_degree || t.degree(t.top()) * 2 > t.config().max_degree) {
        break;
      }
      t.grow(2);
    }
    const std::size_t n = t.degree(level);
    if (n > max_degree) break;
    if (n <= m || n % m != 0 || level < param_level) continue;
    const bool exhaustive = try_level(level, r);
    (exhaustive ? r.exhaustive_degrees : r.sampled_degrees).push_back(n);
    if (r.status == ThetaStatus::kFound) return r;
  }
  const bool searched = !r.exhaustive_degrees.empty() || !r.sampled_degrees.empty();
  r.status = searched && r.sampled_degrees.empty() ? ThetaStatus::kNotFound
                                                   : ThetaStatus::kBudgetExceeded;
  return r;
}

Subspace base_avoid(const Tower& t, std::size_t level, std::size_t m, const Subspace* avoid) {
  Subspace w = subfield_span(t, level, m);
  if (avoid) {
    require(avoid->level() <= level, ErrorCode::kLevelMismatch, "avoid space above search level");
    w = sum(w, lift(t, *avoid, level));
  }
  return w;
}

}  // namespace

ThetaResult theta_search(Tower& t, const QFConjunction& phi, std::span<const TowerElement> params,
                         std::size_t m, std::size_t max_degree, const SearchOptions& options,
                         const Subspace* avoid) {
  return scan_levels(t, params, m, max_degree, [&](std::size_t level, ThetaResult& r) {
    if (avoid && avoid->level() > level) return false;
    const Subspace w = base_avoid(t, level, m, avoid);
    WitnessSearch ws = find_independent_witness(t, phi, params, level, w, options);
    if (ws.witness) {
      r.status = ThetaStatus::kFound;
      r.level = level;
      r.witness = std::move(*ws.witness);
    }
    return ws.exhaustive;
  });
}

JointResult find_joint_independent_solutions(Tower& t, const QFConjunction& phi,
                                             std::span<const TowerElement> params,
                                             std::size_t count, std::size_t m,
                                             std::size_t max_degree,
                                             const SearchOptions& options) {
  JointResult out;
  if (count == 0) {
    out.status = ThetaStatus::kFound;
    out.level = t.top();
    return out;
  }
  ThetaResult r = scan_levels(t, params, m, max_degree, [&](std::size_t level, ThetaResult& st) {
    Subspace w = base_avoid(t, level, m, nullptr);
    std::vector<Witness> rows;
    bool exhaustive = true;
    while (rows.size() < count) {
      WitnessSearch ws = find_independent_witness(t, phi, params, level, w, options);
      exhaustive = exhaustive && ws.exhaustive;
      if (!ws.witness) break;
      std::vector<Coeffs> entries;
      for (const TowerElement& x : *ws.witness) entries.push_back(x.coeffs);
      w = sum(w, Subspace::span(t.p(), t.degree(level), entries, level));
      rows.push_back(std::move(*ws.witness));
    }
    if (rows.size() == count) {
      st.status = ThetaStatus::kFound;
      st.level = level;
      out.rows = std::move(rows);
    }
    // A greedy miss after earlier picks does not rule the level out.
    return exhaustive && out.rows.empty() && rows.empty();
  });
  out.status = r.status;
  out.level = r.level;
  return out;
}

}  // namespace acfg
