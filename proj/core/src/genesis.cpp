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

#include "acfg/genesis.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>

#include "acfg/error.hpp"

namespace acfg {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t copies_of(const ScheduleEntry& e) {
  return e.copies ? e.copies : e.formula.nx + 1;
}

std::vector<Coeffs> coeffs_of(std::span<const TowerElement> xs) {
  std::vector<Coeffs> out;
  for (const TowerElement& x : xs) out.push_back(x.coeffs);
  return out;
}

std::vector<TowerElement> embed_all(const Tower& t, std::span<const TowerElement> xs,
                                    std::size_t level) {
  std::vector<TowerElement> out;
  for (const TowerElement& x : xs) out.push_back(t.embed(x, level));
  return out;
}

// span(a, b') ∩ G == span(a_1..a_k), everything at G's level.
bool trace_ok(const Tower& t, const Subspace& g, const Witness& a,
              std::span<const TowerElement> bprime, std::size_t k) {
  const std::size_t level = g.level();
  std::vector<Coeffs> all = coeffs_of(a);
  for (const TowerElement& b : bprime) all.push_back(t.embed_coeffs(b.coeffs, b.level, level));
  const Subspace s = Subspace::span(t.p(), t.degree(level), all, level);
  std::vector<Coeffs> prefix(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  return intersect(s, g) == Subspace::span(t.p(), t.degree(level), prefix, level);
}

std::vector<TowerElement> triangle(const std::vector<Witness>& rows) {
  std::vector<TowerElement> out;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < j && i < rows[j].size(); ++i) out.push_back(rows[j][i]);
  }
  return out;
}

const RealizationRecord* find_record(const ConstructionState& state, std::size_t stage,
                                     const std::string& id, const std::vector<TowerElement>& b) {
  const Tower& t = state.tower;
  const std::size_t base = state.stages[stage - 1].level;
  for (const RealizationRecord& r : state.stages[stage].log) {
    if (r.formula_id != id || r.params.size() != b.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < b.size() && same; ++i) {
      same = t.embed(r.params[i], base) == t.embed(b[i], base);
    }
    if (same) return &r;
  }
  return nullptr;
}

const ScheduleEntry* find_entry(const Schedule& schedule, const std::string& id) {
  for (const ScheduleEntry& e : schedule.entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string params_text(std::span<const TowerElement> b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ", ";
    s += format_element(b[i].coeffs);
  }
  return s + ")";
}

}  // namespace

ConstructionState init(const TowerConfig& config, const Subspace& g0, std::uint64_t seed) {
  Tower t = Tower::create(config);
  require(g0.p() == config.p && g0.ambient() == config.n0, ErrorCode::kInvalidArgument,
          "seed group lives in dimension " + std::to_string(g0.ambient()) + ", expected " +
              std::to_string(config.n0));
  Stage s0;
  s0.level = 0;
  s0.group = Subspace::span(config.p, config.n0, g0.basis(), 0);
  ConstructionState state{std::move(t), {std::move(s0)}, seed, 0, "", ""};
  return state;
}

ConstructionState step(const ConstructionState& state, const Schedule& schedule) {
  ConstructionState next = state;
  Tower& t = next.tower;
  const std::size_t s = state.stages.size() - 1;
  const Stage& cur = state.stages.back();
  const std::size_t ns = t.degree(cur.level);

  struct Pair {
    const ScheduleEntry* entry;
    const std::vector<TowerElement>* params;
  };
  std::vector<Pair> pairs;
  std::size_t total = 0;
  for (const ScheduleEntry& e : schedule.entries) {
    require(e.param_level <= cur.level, ErrorCode::kInvalidArgument,
            "entry " + e.id + " has parameters above the current stage level");
    for (const auto& b : e.params) {
      pairs.push_back({&e, &b});
      total += copies_of(e) * e.formula.nx;
    }
  }

  // Target level: room for F_{p^ns} plus every realized entry.
  const std::size_t need = pairs.empty() ? ns + 1 : ns + total;
  std::size_t level = cur.level + 1;
  while (true) {
    while (level >= t.size()) t.grow(2);
    if (t.degree(level) >= need) break;
    ++level;
  }

  Stage nst;
  nst.level = level;
  Subspace w = subfield_span(t, level, ns);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const ScheduleEntry& e = *pairs[i].entry;
    const std::vector<TowerElement>& b = *pairs[i].params;
    SearchOptions opts = search_options(t.config(), mix(mix(state.seed, s), i));
    const ThetaResult th = theta_search(t, e.formula, b, ns, t.degree(level), opts);
    if (th.status != ThetaStatus::kFound) {
      nst.skipped.push_back({e.id, b, "theta premise not witnessed (" +
                                          std::string(to_string(th.status)) + ")"});
      continue;
    }
    Subspace wt = w;
    std::vector<Witness> rows;
    const std::size_t copies = copies_of(e);
    while (rows.size() < copies) {
      opts.seed = mix(mix(mix(state.seed, s), i), rows.size() + 1);
      WitnessSearch ws = find_independent_witness(t, e.formula, b, level, wt, opts);
      if (!ws.witness) break;
      wt = sum(wt, span_elements(t, level, *ws.witness));
      rows.push_back(std::move(*ws.witness));
    }
    if (rows.size() < copies) {
      nst.skipped.push_back({e.id, b, "witness exhaustion after " + std::to_string(rows.size()) +
                                          " of " + std::to_string(copies) + " copies"});
      continue;
    }
    w = std::move(wt);
    RealizationRecord rec{e.id, b, std::move(rows), {}};
    rec.rows_added = triangle(rec.solutions);
    nst.log.push_back(std::move(rec));
  }

  const Subspace lifted = lift(t, cur.group, level);
  std::vector<Coeffs> gens = lifted.basis();
  std::size_t added = 0;
  for (const RealizationRecord& r : nst.log) {
    for (const TowerElement& x : r.rows_added) gens.push_back(x.coeffs);
    added += r.rows_added.size();
  }
  nst.group = Subspace::span(t.p(), t.degree(level), gens, level);
  require(nst.group.dim() == lifted.dim() + added, ErrorCode::kInternal,
          "triangle entries are not in direct sum with the lifted group");
  require(intersect_subfield(t, nst.group, ns) == lifted, ErrorCode::kInternal,
          "new group meets the previous field outside the previous group");
  next.stages.push_back(std::move(nst));
  return next;
}

ConstructionState run(const ConstructionState& state, const Schedule& schedule,
                      std::size_t rounds) {
  ConstructionState cur = state;
  cur.schedule_canonical = schedule.canonical;
  cur.schedule_digest = schedule.digest;
  for (std::size_t r = 0; r < rounds; ++r) {
    cur = step(cur, schedule);
    ++cur.rounds;
  }
  return cur;
}

AxiomVerdict verify_axiom_instance(const ConstructionState& state, std::size_t s,
                                   const ScheduleEntry& entry, std::size_t k, std::size_t kp,
                                   const std::vector<TowerElement>& b) {
  require(s + 1 < state.stages.size(), ErrorCode::kInvalidArgument,
          "stage " + std::to_string(s + 1) + " does not exist");
  const QFConjunction& phi = entry.formula;
  require(k <= phi.nx && kp <= phi.ny, ErrorCode::kInvalidArgument, "split out of range");
  require(b.size() == phi.ny, ErrorCode::kInvalidArgument, "parameter tuple has wrong length");
  const Tower& t = state.tower;
  const Stage& st = state.stages[s];
  const Stage& nx = state.stages[s + 1];
  const std::size_t ns = t.degree(st.level);
  AxiomVerdict v;

  // Group premise: span(b_1..b_k') ∩ G_s = 0.
  const std::vector<TowerElement> bs = embed_all(t, b, st.level);
  const std::vector<TowerElement> bprime(bs.begin(), bs.begin() + static_cast<std::ptrdiff_t>(kp));
  const Subspace bspan = span_elements(t, st.level, bprime);
  if (intersect(bspan, st.group).dim() != 0 || bspan.dim() != kp) {
    v.pass = true;
    v.vacuous = true;
    v.via = "premise";
    v.reason = "parameter prefix meets the group";
    return v;
  }

  // Theta premise: a logged realization, or a bounded search.
  const RealizationRecord* rec = find_record(state, s + 1, entry.id, b);
  if (!rec) {
    Tower probe = t;
    SearchOptions opts = search_options(t.config(), mix(state.seed, 0xa110 + s));
    const ThetaResult th = theta_search(probe, phi, b, ns, t.degree(nx.level), opts);
    if (th.status != ThetaStatus::kFound) {
      v.pass = true;
      v.vacuous = true;
      v.via = "premise";
      v.reason = "theta not witnessed within bounds (" + std::string(to_string(th.status)) + ")";
      return v;
    }
  }

  // Designed witness: row k of the realization matrix.
  if (rec && k < rec->solutions.size()) {
    const Witness& a = rec->solutions[k];
    if (satisfies(t, phi, a, b) && trace_ok(t, nx.group, a, bprime, k)) {
      v.pass = true;
      v.via = "log";
      return v;
    }
  }

  // Fallback: exhaustive search at the next stage.
  try {
    for (const Witness& a : solve(t, phi, b, nx.level, t.config().search_budget)) {
      if (trace_ok(t, nx.group, a, bprime, k)) {
        v.pass = true;
        v.via = "search";
        return v;
      }
    }
    v.reason = "no witness with the required group trace at stage " + std::to_string(s + 1);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExceeded) throw;
    v.reason = "designed witness fails and stage " + std::to_string(s + 1) +
               " is too large for exhaustive search";
  }
  return v;
}

VerifyReport verify_state(const ConstructionState& state, const Schedule& schedule) {
  VerifyReport rep;
  const Tower& t = state.tower;
  for (std::size_t s = 1; s < state.stages.size(); ++s) {
    const Stage& prev = state.stages[s - 1];
    const Stage& st = state.stages[s];
    const std::size_t np = t.degree(prev.level);
    const std::string where = "stage " + std::to_string(s);
    if (st.level <= prev.level) {
      rep.invariant_failures.push_back(where + ": level does not increase");
      continue;
    }
    Subspace w = subfield_span(t, st.level, np);
    std::size_t entries = 0, added = 0;
    for (const RealizationRecord& r : st.log) {
      ++rep.records_checked;
      const std::string rid = where + " record " + r.formula_id + params_text(r.params);
      const ScheduleEntry* e = find_entry(schedule, r.formula_id);
      if (!e) {
        rep.record_failures.push_back(rid + ": formula not in schedule");
        continue;
      }
      for (const Witness& a : r.solutions) {
        bool at_level = a.size() == e->formula.nx;
        for (const TowerElement& x : a) at_level = at_level && x.level == st.level;
        if (!at_level || !satisfies(t, e->formula, a, r.params)) {
          rep.record_failures.push_back(rid + ": a solution row does not satisfy the formula");
          break;
        }
        w = sum(w, span_elements(t, st.level, a));
        entries += a.size();
      }
      if (r.rows_added != triangle(r.solutions)) {
        rep.record_failures.push_back(rid + ": added rows differ from the low triangle");
      }
      for (const TowerElement& x : r.rows_added) {
        if (!st.group.contains(x.coeffs)) {
          rep.record_failures.push_back(rid + ": an added row is missing from the group");
          break;
        }
      }
      added += r.rows_added.size();
    }
    if (w.dim() != np + entries) {
      rep.record_failures.push_back(where + ": solutions are not jointly independent over the "
                                            "previous field");
    }
    const Subspace lifted = lift(t, prev.group, st.level);
    if (intersect_subfield(t, st.group, np) != lifted) {
      rep.invariant_failures.push_back(where + ": group meets the previous field outside the "
                                               "previous group");
    }
    if (st.group.dim() != lifted.dim() + added) {
      rep.invariant_failures.push_back(where + ": group is not the direct sum of the lifted "
                                               "group and the added rows");
    }
  }
  for (std::size_t s = 0; s + 1 < state.stages.size(); ++s) {
    for (const ScheduleEntry& e : schedule.entries) {
      if (e.param_level > state.stages[s].level) continue;
      for (const auto& b : e.params) {
        for (std::size_t k = 0; k <= e.formula.nx; ++k) {
          for (std::size_t kp = 0; kp <= e.formula.ny; ++kp) {
            ++rep.instances_checked;
            const AxiomVerdict v = verify_axiom_instance(state, s, e, k, kp, b);
            if (v.vacuous) ++rep.vacuous_instances;
            if (!v.pass) rep.instance_failures.push_back({s, e.id, b, k, kp, v.reason});
          }
        }
      }
    }
  }
  return rep;
}

ConstructionState mutate(const ConstructionState& state, std::string_view plan) {
  std::optional<std::size_t> stage, row;
  std::size_t pos = 0;
  while (pos <= plan.size()) {
    const std::size_t end = std::min(plan.find(',', pos), plan.size());
    const std::string_view part = plan.substr(pos, end - pos);
    const std::size_t eq = part.find('=');
    require(eq != std::string_view::npos, ErrorCode::kParse,
            "mutation part '" + std::string(part) + "' lacks '='");
    const std::string key(part.substr(0, eq));
    const std::string val(part.substr(eq + 1));
    require(!val.empty() && val.find_first_not_of("0123456789") == std::string::npos,
            ErrorCode::kParse, "mutation value '" + val + "' is not a nonnegative integer");
    const std::size_t n = std::stoul(val);
    if (key == "stage") {
      stage = n;
    } else if (key == "drop_row") {
      row = n;
    } else {
      fail(ErrorCode::kParse, "unknown mutation key '" + key + "'");
    }
    pos = end + 1;
  }
  require(stage && row, ErrorCode::kParse, "mutation needs stage= and drop_row=");
  require(*stage < state.stages.size(), ErrorCode::kInvalidArgument, "mutation stage out of range");
  ConstructionState out = state;
  Stage& st = out.stages[*stage];
  require(*row < st.group.dim(), ErrorCode::kInvalidArgument, "mutation row out of range");
  std::vector<Coeffs> rows = st.group.basis();
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*row));
  st.group = Subspace::span(st.group.p(), st.group.ambient(), rows, st.level);
  return out;
}

bool ball_check(const ConstructionState& state, std::size_t s, const Subspace& h0,
                std::size_t n) {
  require(s < state.stages.size(), ErrorCode::kInvalidArgument, "stage out of range");
  const Tower& t = state.tower;
  require(h0.level() < t.size() && t.degree(h0.level()) == n, ErrorCode::kInvalidArgument,
          "ball centre must live at the degree-n level");
  const Stage& st = state.stages[s];
  require(h0.level() <= st.level, ErrorCode::kInvalidArgument, "ball degree above stage level");
  return intersect_subfield(t, st.group, n) == lift(t, h0, st.level);
}

DensityResult density_experiment(const TowerConfig& config, std::size_t N, const Subspace& h0,
                                 const std::vector<AxiomInstance>& batch,
                                 std::uint64_t sample_size, std::uint64_t seed, DensityMode mode) {
  Tower t = Tower::create(config);
  const std::size_t n = config.n0;
  require(N >= n && N % n == 0, ErrorCode::kInvalidArgument, "N must be a multiple of n");
  if (N > n) t.grow(N / n);
  const std::size_t top = t.top();
  require(h0.ambient() == n && h0.level() == 0, ErrorCode::kInvalidArgument,
          "ball centre must be a subspace of the base level");
  const Subspace h0_top = lift(t, h0, top);

  struct Prepared {
    const AxiomInstance* inst;
    bool theta;
    bool premise;
    std::vector<Witness> solutions;
    std::vector<TowerElement> bprime;
  };
  std::vector<Prepared> prep;
  const SearchOptions opts = search_options(config, seed);
  for (const AxiomInstance& a : batch) {
    require(a.k <= a.formula.nx && a.kp <= a.formula.ny && a.params.size() == a.formula.ny,
            ErrorCode::kInvalidArgument, "axiom instance has an invalid split or arity");
    Prepared p{&a, false, false, {}, {}};
    p.bprime.assign(a.params.begin(), a.params.begin() + static_cast<std::ptrdiff_t>(a.kp));
    const Subspace bs = span_elements(t, 0, p.bprime);
    p.premise = bs.dim() == a.kp && intersect(bs, h0).dim() == 0;
    if (N > n) {
      p.theta = find_independent_witness(t, a.formula, a.params, top, subfield_span(t, top, n), opts)
                    .witness.has_value();
    }
    if (p.theta) p.solutions = solve(t, a.formula, a.params, top, config.search_budget);
    prep.push_back(std::move(p));
  }

  auto passes = [&](const Subspace& h) {
    for (const Prepared& p : prep) {
      if (!p.theta) continue;
      if (!p.premise && mode == DensityMode::kStrict) continue;
      bool ok = false;
      for (const Witness& a : p.solutions) {
        if (trace_ok(t, h, a, p.bprime, p.inst->k)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  };

  DensityResult r;
  const std::uint64_t total = count_subspaces(t.p(), N);
  if (total <= sample_size) {
    r.exhaustive = true;
    for_each_subspace(t.p(), N, [&](const Subspace& s) {
      const Subspace h = Subspace::span(t.p(), N, s.basis(), top);
      if (intersect_subfield(t, h, n) != h0_top) return;
      ++r.candidates;
      if (passes(h)) ++r.passing;
    });
  } else {
    std::mt19937_64 rng(seed);
    const std::uint64_t max_attempts = sample_size * 64;
    for (std::uint64_t attempt = 0; attempt < max_attempts && r.candidates < sample_size;
         ++attempt) {
      std::vector<Coeffs> gens = h0_top.basis();
      const std::size_t extra = rng() % (N - h0_top.dim() + 1);
      for (std::size_t i = 0; i < extra; ++i) gens.push_back(random_vector(t.p(), N, rng));
      const Subspace h = Subspace::span(t.p(), N, gens, top);
      if (intersect_subfield(t, h, n) != h0_top) continue;
      ++r.candidates;
      if (passes(h)) ++r.passing;
    }
  }
  r.fraction = r.candidates ? static_cast<double>(r.passing) / static_cast<double>(r.candidates)
                            : 1.0;
  return r;
}

}  // namespace acfg
