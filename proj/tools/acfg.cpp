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

// Command-line frontend. Every command prints one JSON object
// {status, payload, diagnostics} and exits 0 on pass, 1 on fail or
// inconclusive, 2 on usage or input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acfg/error.hpp"
#include "acfg/flatness.hpp"
#include "acfg/genesis.hpp"
#include "acfg/pregeometry.hpp"
#include "acfg/skeleton.hpp"
#include "acfg/solver.hpp"
#include "acfg/state_io.hpp"
#include "acfg/subspace.hpp"

using json = nlohmann::json;

namespace {

using namespace acfg;

enum class Status { kPass, kFail, kInconclusive, kError };

const char* status_name(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kInconclusive: return "inconclusive";
    case Status::kError: return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::kPass: return 0;
    case Status::kFail:
    case Status::kInconclusive: return 1;
    case Status::kError: return 2;
  }
  return 2;
}

struct Result {
  Status status = Status::kPass;
  json payload = json::object();
  std::vector<std::string> diagnostics;
};

int emit(const Result& r) {
  json out = {{"status", status_name(r.status)}, {"payload", r.payload}, {"diagnostics", r.diagnostics}};
  std::cout << out.dump(2) << "\n";
  return exit_code(r.status);
}

int log_level() {
  const char* v = std::getenv("ACFG_LOG");
  if (!v) return 0;
  const std::string s(v);
  if (s == "debug") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[acfg] " << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kInvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path" reads the file, anything else is taken literally.
std::string inline_or_file(const std::string& v) {
  if (!v.empty() && v[0] == '@') return read_file(v.substr(1));
  return v;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kInvalidArgument, "cannot write " + path);
  out << data;
}

json elements_json(std::span<const TowerElement> xs) {
  json out = json::array();
  for (const TowerElement& x : xs) out.push_back(format_element(x.coeffs));
  return out;
}

json basis_json(const Subspace& s) {
  json out = json::array();
  for (const Coeffs& r : s.basis()) out.push_back(r);
  return out;
}

json mask_json(Mask m) {
  json out = json::array();
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

Mask parse_mask(const std::string& text, const Pregeometry& s) {
  Mask m = 0;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" ") == std::string::npos) continue;
    std::size_t i = 0;
    try {
      i = std::stoul(tok);
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, "point index '" + tok + "' is not a number");
    }
    require(i < s.size(), ErrorCode::kParse, "point " + tok + " is outside the carrier");
    m |= Mask{1} << i;
  }
  return m;
}

std::vector<std::string> split_triple(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t bar = text.find('|', pos);
    parts.push_back(text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  require(parts.size() == 3, ErrorCode::kParse, "triple must be written A|B|C");
  return parts;
}

struct TowerFlags {
  unsigned p = 2;
  std::size_t n0 = 2;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::uint64_t sample_budget = 4096;
  std::size_t max_degree = 256;

  TowerConfig config() const {
    TowerConfig c;
    c.p = p;
    c.n0 = n0;
    c.search_budget = budget;
    c.sample_budget = sample_budget;
    c.max_degree = max_degree;
    return c;
  }
};

void add_tower_flags(CLI::App* app, TowerFlags& f, bool with_n0 = true) {
  app->add_option("--p", f.p, "Characteristic")->capture_default_str();
  if (with_n0) app->add_option("--n0", f.n0, "Degree of the base level")->capture_default_str();
  app->add_option("--budget", f.budget, "Largest field size searched exhaustively")->capture_default_str();
  app->add_option("--sample-budget", f.sample_budget, "Samples per level beyond the budget")
      ->capture_default_str();
  app->add_option("--max-degree", f.max_degree, "Cap on tower degrees")->capture_default_str();
}

json stage_summary(const ConstructionState& st) {
  json stages = json::array();
  for (std::size_t i = 0; i < st.stages.size(); ++i) {
    const Stage& s = st.stages[i];
    json skipped = json::array();
    for (const SkipRecord& k : s.skipped) {
      skipped.push_back({{"formula_id", k.formula_id}, {"params", elements_json(k.params)}, {"reason", k.reason}});
    }
    stages.push_back({{"index", i},
                      {"level_index", s.level},
                      {"degree", st.tower.degree(s.level)},
                      {"group_dim", s.group.dim()},
                      {"realized", s.log.size()},
                      {"skipped", skipped}});
  }
  return stages;
}

Schedule schedule_for(const ConstructionState& st, const std::string& path) {
  if (!path.empty()) return parse_schedule(read_file(path), st.tower);
  require(!st.schedule_canonical.empty(), ErrorCode::kInvalidArgument,
          "state carries no schedule; pass --schedule");
  return parse_schedule(st.schedule_canonical, st.tower);
}

// ------------------------------------------------------------------ commands

struct ConstructArgs {
  TowerFlags tower;
  std::string g0 = "zero";
  std::string schedule;
  std::size_t rounds = 1;
  std::uint64_t seed = 1;
  std::string out;
};

Result cmd_construct(const ConstructArgs& a) {
  const TowerConfig config = a.tower.config();
  const Tower base = Tower::create(config);
  const Subspace g0 = parse_group(inline_or_file(a.g0), base, 0);
  ConstructionState state = init(config, g0, a.seed);
  const Schedule schedule = parse_schedule(read_file(a.schedule), state.tower);
  log_info("schedule " + schedule.digest + " with " + std::to_string(schedule.entries.size()) + " entries");
  state = run(state, schedule, a.rounds);
  write_file(a.out, state_to_json(state));
  Result r;
  r.payload = {{"out", a.out},
               {"rounds", a.rounds},
               {"schedule_digest", schedule.digest},
               {"stages", stage_summary(state)}};
  for (const Stage& s : state.stages) {
    for (const SkipRecord& k : s.skipped) r.diagnostics.push_back("skipped " + k.formula_id + ": " + k.reason);
  }
  return r;
}

struct VerifyArgs {
  std::string state;
  std::string schedule;
  std::string mutate;
};

Result cmd_verify(const VerifyArgs& a) {
  ConstructionState st = state_from_json(read_file(a.state));
  const Schedule schedule = schedule_for(st, a.schedule);
  if (!a.mutate.empty()) st = mutate(st, a.mutate);
  const VerifyReport rep = verify_state(st, schedule);
  Result r;
  json failures = json::array();
  for (const InstanceFailure& f : rep.instance_failures) {
    failures.push_back({{"stage", f.stage},
                        {"formula_id", f.formula_id},
                        {"params", elements_json(f.params)},
                        {"k", f.k},
                        {"kp", f.kp},
                        {"reason", f.reason}});
  }
  r.payload = {{"records_checked", rep.records_checked},
               {"instances_checked", rep.instances_checked},
               {"vacuous_instances", rep.vacuous_instances},
               {"record_failures", rep.record_failures},
               {"invariant_failures", rep.invariant_failures},
               {"instance_failures", failures},
               {"scope", "stage-verified"}};
  if (!a.mutate.empty()) {
    r.payload["mutation"] = a.mutate;
    r.payload["negative_control_detected"] = !rep.pass();
  }
  r.status = rep.pass() ? Status::kPass : Status::kFail;
  return r;
}

struct FlatArgs {
  unsigned p = 2;
  std::size_t n0 = 1;
  std::string poly;
  std::uint64_t budget = std::uint64_t{1} << 20;
};

Result cmd_flat(const FlatArgs& a) {
  TowerConfig c;
  c.p = a.p;
  c.n0 = a.n0;
  const Tower t = Tower::create(c);
  const Poly P = parse_poly(a.poly, a.p);
  const FieldPoly f = to_field_poly(t, P, 0);
  const FlatnessVerdict v = is_fp_flat(t, f, a.budget);
  Result r;
  json factors = json::array();
  for (const LinearFactor& lf : v.factors) {
    factors.push_back({{"lambda", lf.lambda}, {"b", format_element(lf.b)}, {"multiplicity", lf.multiplicity}});
  }
  r.payload = {{"flat", v.flat},
               {"reason", to_string(v.reason)},
               {"constant", format_element(v.constant)},
               {"factors", factors},
               {"residual", v.residual.to_string()},
               {"reconstructs", expand(t, 0, f.nvars(), v) == f}};
  r.status = v.flat ? Status::kPass : Status::kFail;
  return r;
}

struct ThetaArgs {
  TowerFlags tower;
  std::string formula;
  std::string params;
  std::size_t base_degree = 1;
  std::size_t max_level = 64;
  std::uint64_t seed = 1;
};

Result cmd_theta(const ThetaArgs& a) {
  TowerFlags f = a.tower;
  f.n0 = a.base_degree;
  f.max_degree = std::max(f.max_degree, a.max_level);
  const TowerConfig c = f.config();
  Tower t = Tower::create(c);
  const QFConjunction phi = parse_formula(a.formula, a.tower.p);
  const std::vector<TowerElement> b = parse_elements(a.params, t, 0);
  require(b.size() == phi.ny, ErrorCode::kInvalidArgument,
          "formula has " + std::to_string(phi.ny) + " parameters, got " + std::to_string(b.size()));
  const ThetaResult th = theta_search(t, phi, b, a.base_degree, a.max_level, search_options(c, a.seed));
  Result r;
  r.payload = {{"result", to_string(th.status)},
               {"exhaustive_degrees", th.exhaustive_degrees},
               {"sampled_degrees", th.sampled_degrees}};
  if (th.status == ThetaStatus::kFound) {
    r.payload["degree"] = t.degree(th.level);
    r.payload["witness"] = elements_json(th.witness);
    r.status = Status::kPass;
  } else {
    r.status = Status::kInconclusive;
    r.diagnostics.push_back("not found within bounds; this does not decide theta negatively");
  }
  return r;
}

struct IndepArgs {
  std::string mode = "pregeo";
  std::string config;
  std::string structure = "linear:2:2";
  std::string relation = "a";
  std::string triple;
};

Result cmd_indep(const IndepArgs& a) {
  const std::vector<std::string> parts = split_triple(a.triple);
  Result r;
  bool value = false;
  if (a.mode == "pregeo") {
    const Pregeometry s = parse_structure(a.config.empty() ? a.structure : read_file(a.config));
    const Relation rel = parse_relation(a.relation);
    const Mask A = parse_mask(parts[0], s), B = parse_mask(parts[1], s), C = parse_mask(parts[2], s);
    value = rel(s, A, B, C);
    r.payload = {{"structure", s.describe()},
                 {"relation", rel.name()},
                 {"A", mask_json(A)},
                 {"B", mask_json(B)},
                 {"C", mask_json(C)}};
  } else if (a.mode == "skeleton") {
    require(!a.config.empty(), ErrorCode::kInvalidArgument, "skeleton mode needs --config");
    const SkeletonConfig cfg = parse_skeleton(read_file(a.config));
    if (a.relation == "w") {
      value = indep_w(cfg, parts[0], parts[1], parts[2]);
    } else if (a.relation == "st") {
      value = indep_st(cfg, parts[0], parts[1], parts[2]);
    } else if (a.relation.rfind("wm:", 0) == 0) {
      value = indep_wm(cfg, parts[0], parts[1], parts[2], a.relation.substr(3));
    } else {
      fail(ErrorCode::kInvalidArgument, "skeleton relations are w, st and wm:<family>");
    }
    r.payload = {{"relation", a.relation}, {"A", parts[0]}, {"B", parts[1]}, {"C", parts[2]}};
  } else {
    fail(ErrorCode::kInvalidArgument, "mode must be pregeo or skeleton");
  }
  r.payload["value"] = value;
  r.status = value ? Status::kPass : Status::kFail;
  return r;
}

struct PropsArgs {
  std::string relation = "a";
  std::string property = "all";
  std::string structure = "linear:2:2";
  std::uint64_t budget = 1'000'000;
  std::size_t max_subset = 32;
  std::uint64_t seed = 1;
};

Result cmd_props(const PropsArgs& a) {
  const Pregeometry s = parse_structure(inline_or_file(a.structure));
  const Relation rel = parse_relation(a.relation);
  std::vector<Property> props;
  if (a.property == "all") {
    props = {Property::kInv, Property::kSym, Property::kMon, Property::kBmon, Property::kTra,
             Property::kEx, Property::kExt, Property::kExt2};
  } else {
    props = {parse_property(a.property)};
  }
  Result r;
  json reports = json::array();
  bool clean = true;
  for (Property p : props) {
    const PropertyReport rep = check_property(rel, s, p, {a.max_subset, a.budget, a.seed});
    json viol = json::array();
    for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i) {
      const Violation& v = rep.violations[i];
      json inst = json::array();
      for (Mask m : v.instance) inst.push_back(mask_json(m));
      viol.push_back({{"property", to_string(v.property)}, {"instance", inst}, {"detail", v.detail}});
    }
    reports.push_back({{"property", to_string(p)},
                       {"instances", rep.instances},
                       {"exhaustive", rep.exhaustive},
                       {"violation_count", rep.violations.size()},
                       {"violations", viol}});
    clean = clean && rep.violations.empty();
  }
  r.payload = {{"structure", s.describe()}, {"relation", rel.name()}, {"reports", reports}};
  r.status = clean ? Status::kPass : Status::kFail;
  return r;
}

struct CountArgs {
  unsigned p = 2;
  std::size_t n = 1;
};

Result cmd_count(const CountArgs& a) {
  require(is_prime(a.p), ErrorCode::kInvalidArgument, "p must be prime");
  Result r;
  json by_dim = json::array();
  for (std::size_t k = 0; k <= a.n; ++k) by_dim.push_back(gaussian_binomial(a.p, a.n, k));
  const std::uint64_t total = count_subspaces(a.p, a.n);
  r.payload = {{"p", a.p}, {"n", a.n}, {"count", total}, {"by_dimension", by_dim}};
  if (total <= kEnumerationGuard) {
    std::uint64_t seen = 0;
    for_each_subspace(a.p, a.n, [&](const Subspace&) { ++seen; });
    r.payload["enumerated"] = seen;
    if (seen != total) r.status = Status::kFail;
  } else {
    r.diagnostics.push_back("count above the enumeration guard; enumeration skipped");
  }
  return r;
}

struct BallArgs {
  std::string state;
  std::string h0 = "zero";
  std::size_t n = 0;
};

Result cmd_ball(const BallArgs& a) {
  const ConstructionState st = state_from_json(read_file(a.state));
  const std::size_t n = a.n ? a.n : st.tower.degree(0);
  const std::optional<std::size_t> lv = st.tower.level_of_degree(n);
  require(lv.has_value(), ErrorCode::kInvalidArgument, "degree " + std::to_string(n) + " is not a tower level");
  const std::size_t level = *lv;
  const Subspace h0 = parse_group(inline_or_file(a.h0), st.tower, level);
  Result r;
  json per_stage = json::array();
  bool all = true;
  for (std::size_t s = 0; s < st.stages.size(); ++s) {
    if (st.stages[s].level < level) {
      per_stage.push_back(nullptr);
      continue;
    }
    const bool ok = ball_check(st, s, h0, n);
    per_stage.push_back(ok);
    all = all && ok;
  }
  r.payload = {{"n", n}, {"h0_basis", basis_json(h0)}, {"stages", per_stage}};
  r.status = all ? Status::kPass : Status::kFail;
  return r;
}

struct DensityArgs {
  TowerFlags tower;
  std::size_t N = 0;
  std::string h0 = "zero";
  std::string axioms;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string mode = "strict";
};

Result cmd_density(const DensityArgs& a) {
  const TowerConfig c = a.tower.config();
  const Tower t = Tower::create(c);
  const Subspace h0 = parse_group(inline_or_file(a.h0), t, 0);
  const std::vector<AxiomInstance> batch =
      a.axioms.empty() ? std::vector<AxiomInstance>{} : parse_axiom_batch(inline_or_file(a.axioms), t);
  DensityMode mode = DensityMode::kStrict;
  if (a.mode == "vacuity-off") {
    mode = DensityMode::kVacuityOff;
  } else {
    require(a.mode == "strict", ErrorCode::kInvalidArgument, "mode must be strict or vacuity-off");
  }
  const DensityResult d = density_experiment(c, a.N ? a.N : 2 * c.n0, h0, batch, a.samples, a.seed, mode);
  Result r;
  r.payload = {{"candidates", d.candidates},
               {"passing", d.passing},
               {"exhaustive", d.exhaustive},
               {"fraction", d.fraction},
               {"mode", a.mode}};
  r.diagnostics.push_back("finite-scale fraction only; density is not decided");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ACFG laboratory: field towers, generic subgroups, independence relations"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build stages of a generic subgroup");
  add_tower_flags(construct, ca.tower);
  construct->add_option("--g0", ca.g0, "Seed group: zero, full, elements like 1,w or @file")
      ->capture_default_str();
  construct->add_option("--schedule", ca.schedule, "Schedule JSON file")->required();
  construct->add_option("--rounds", ca.rounds)->capture_default_str();
  construct->add_option("--seed", ca.seed)->capture_default_str();
  construct->add_option("--out", ca.out, "State file to write")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Re-check a state against its schedule");
  verify->add_option("--state", va.state)->required();
  verify->add_option("--schedule", va.schedule, "Defaults to the schedule stored in the state");
  verify->add_option("--mutate", va.mutate, "Negative control, e.g. stage=1,drop_row=0");

  FlatArgs fa;
  auto* flat = app.add_subcommand("flat", "Decide F_p-flatness of a polynomial");
  flat->add_option("--p", fa.p)->capture_default_str();
  flat->add_option("--n0", fa.n0, "Degree of the coefficient field")->capture_default_str();
  flat->add_option("--poly", fa.poly)->required();
  flat->add_option("--budget", fa.budget, "Largest field scanned for roots")->capture_default_str();

  ThetaArgs ta;
  auto* theta = app.add_subcommand("theta", "Search for a solution independent over F_{p^m}");
  add_tower_flags(theta, ta.tower, false);
  theta->add_option("--formula", ta.formula)->required();
  theta->add_option("--params", ta.params, "Comma-separated elements of F_{p^m}");
  theta->add_option("--base-degree", ta.base_degree)->capture_default_str();
  theta->add_option("--max-level", ta.max_level, "Largest degree scanned")->capture_default_str();
  theta->add_option("--seed", ta.seed)->capture_default_str();

  IndepArgs ia;
  auto* indep = app.add_subcommand("indep", "Evaluate a relation on one triple");
  indep->add_option("--mode", ia.mode, "pregeo or skeleton")->capture_default_str();
  indep->add_option("--config", ia.config, "Structure or skeleton JSON file");
  indep->add_option("--structure", ia.structure, "linear:p:d or affine:p:d")->capture_default_str();
  indep->add_option("--relation", ia.relation)->capture_default_str();
  indep->add_option("--triple", ia.triple, "A|B|C as point lists or labels")->required();

  PropsArgs pa;
  auto* props = app.add_subcommand("props", "Check relation properties");
  props->add_option("--relation", pa.relation)->capture_default_str();
  props->add_option("--property", pa.property)->capture_default_str();
  props->add_option("--structure", pa.structure, "linear:p:d, affine:p:d or @file")->capture_default_str();
  props->add_option("--budget", pa.budget)->capture_default_str();
  props->add_option("--max-subset", pa.max_subset)->capture_default_str();
  props->add_option("--seed", pa.seed)->capture_default_str();

  CountArgs cn;
  auto* count = app.add_subcommand("count-subspaces", "Count subspaces of F_p^n");
  count->add_option("--p", cn.p)->capture_default_str();
  count->add_option("--n", cn.n)->required();

  BallArgs ba;
  auto* ball = app.add_subcommand("ball", "Check G_s ∩ F_{p^n} = H0 at every stage");
  ball->add_option("--state", ba.state)->required();
  ball->add_option("--h0", ba.h0)->capture_default_str();
  ball->add_option("--n", ba.n, "Defaults to the base degree");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Fraction of a ball satisfying axiom instances");
  add_tower_flags(density, da.tower);
  density->add_option("--N", da.N, "Ambient degree, a multiple of n0");
  density->add_option("--h0", da.h0)->capture_default_str();
  density->add_option("--axioms", da.axioms, "Axiom batch JSON or @file");
  density->add_option("--samples", da.samples)->capture_default_str();
  density->add_option("--seed", da.seed)->capture_default_str();
  density->add_option("--mode", da.mode, "strict or vacuity-off")->capture_default_str();
  // --n is accepted as a synonym for --n0 here.
  density->add_option("--n", da.tower.n0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Result r;
    r.status = Status::kError;
    r.diagnostics.push_back(e.what());
    emit(r);
    return 2;
  }

  try {
    if (*construct) return emit(cmd_construct(ca));
    if (*verify) return emit(cmd_verify(va));
    if (*flat) return emit(cmd_flat(fa));
    if (*theta) return emit(cmd_theta(ta));
    if (*indep) return emit(cmd_indep(ia));
    if (*props) return emit(cmd_props(pa));
    if (*count) return emit(cmd_count(cn));
    if (*ball) return emit(cmd_ball(ba));
    if (*density) return emit(cmd_density(da));
  } catch (const acfg::Error& e) {
    Result r;
    r.status = Status::kError;
    r.payload = {{"code", static_cast<int>(e.code())}};
    r.diagnostics.push_back(e.what());
    return emit(r);
  } catch (const std::exception& e) {
    Result r;
    r.status = Status::kError;
    r.diagnostics.push_back(e.what());
    return emit(r);
  }
  return 2;
}
