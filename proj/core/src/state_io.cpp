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

#include "acfg/state_io.hpp"

#include <algorithm>
#include <json.hpp>
#include <string>

#include "acfg/error.hpp"

namespace acfg {

using json = nlohmann::json;

namespace {

json coeffs_json(const Coeffs& c) { return json(c); }

json elements_json(std::span<const TowerElement> xs) {
  json out = json::array();
  for (const TowerElement& x : xs) out.push_back(coeffs_json(x.coeffs));
  return out;
}

Coeffs read_coeffs(const json& j, Residue p, std::size_t len, const std::string& what) {
  require(j.is_array() && j.size() == len, ErrorCode::kCorruptState,
          what + ": expected " + std::to_string(len) + " coefficients");
  Coeffs c;
  for (const json& v : j) {
    require(v.is_number_unsigned() && v.get<std::uint64_t>() < p, ErrorCode::kCorruptState,
            what + ": coefficient out of range");
    c.push_back(v.get<Residue>());
  }
  return c;
}

std::vector<TowerElement> read_elements(const json& j, const Tower& t, std::size_t level,
                                        const std::string& what) {
  require(j.is_array(), ErrorCode::kCorruptState, what + ": expected a list");
  std::vector<TowerElement> out;
  for (const json& v : j) out.push_back({level, read_coeffs(v, t.p(), t.degree(level), what)});
  return out;
}

std::vector<Coeffs> coeffs_of(const std::vector<TowerElement>& xs) {
  std::vector<Coeffs> out;
  for (const TowerElement& x : xs) out.push_back(x.coeffs);
  return out;
}

const json& field(const json& j, const char* key, const std::string& where) {
  require(j.is_object() && j.contains(key), ErrorCode::kCorruptState,
          where + ": missing field '" + key + "'");
  return j.at(key);
}

std::size_t read_size(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  require(v.is_number_unsigned(), ErrorCode::kCorruptState,
          where + ": field '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

std::string state_to_json(const ConstructionState& state) {
  const Tower& t = state.tower;
  json levels = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    levels.push_back({{"n", t.degree(i)}, {"poly", coeffs_json(t.field(i).modulus())}});
  }
  json embeddings = json::array();
  for (const Coeffs& e : t.embeddings()) embeddings.push_back(coeffs_json(e));

  json stages = json::array();
  for (const Stage& st : state.stages) {
    json basis = json::array();
    for (const Coeffs& r : st.group.basis()) basis.push_back(coeffs_json(r));
    json log = json::array();
    for (const RealizationRecord& r : st.log) {
      json sols = json::array();
      for (const Witness& w : r.solutions) sols.push_back(elements_json(w));
      const std::size_t pl = r.params.empty() ? 0 : r.params[0].level;
      log.push_back({{"formula_id", r.formula_id},
                     {"param_level", pl},
                     {"params", elements_json(r.params)},
                     {"solutions", sols},
                     {"rows_added", elements_json(r.rows_added)}});
    }
    json skipped = json::array();
    for (const SkipRecord& r : st.skipped) {
      const std::size_t pl = r.params.empty() ? 0 : r.params[0].level;
      skipped.push_back({{"formula_id", r.formula_id},
                         {"param_level", pl},
                         {"params", elements_json(r.params)},
                         {"reason", r.reason}});
    }
    stages.push_back({{"level_index", st.level},
                      {"group_basis", basis},
                      {"log", log},
                      {"skipped", skipped}});
  }
  const TowerConfig& c = t.config();
  json meta = {{"seed", state.seed},
               {"rounds", state.rounds},
               {"n0", c.n0},
               {"budgets",
                {{"search_budget", c.search_budget},
                 {"sample_budget", c.sample_budget},
                 {"max_degree", c.max_degree}}},
               {"schedule_digest", state.schedule_digest},
               {"schedule", state.schedule_canonical.empty()
                                ? json(nullptr)
                                : json::parse(state.schedule_canonical)}};
  json root = {{"p", t.p()},
               {"tower", {{"levels", levels}, {"embeddings", embeddings}}},
               {"stages", stages},
               {"meta", meta}};
  return root.dump(2) + "\n";
}

ConstructionState state_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kCorruptState, std::string("state is not valid JSON: ") + e.what());
  }
  try {
    TowerConfig config;
    config.p = static_cast<Residue>(read_size(root, "p", "state"));
    const json& meta = field(root, "meta", "state");
    const json& budgets = field(meta, "budgets", "meta");
    config.search_budget = read_size(budgets, "search_budget", "budgets");
    config.sample_budget = read_size(budgets, "sample_budget", "budgets");
    config.max_degree = read_size(budgets, "max_degree", "budgets");
    const json& tower = field(root, "tower", "state");
    const json& levels = field(tower, "levels", "tower");
    require(levels.is_array() && !levels.empty(), ErrorCode::kCorruptState, "tower has no levels");
    std::vector<Coeffs> moduli;
    for (const json& l : levels) {
      const std::size_t n = read_size(l, "n", "level");
      moduli.push_back(read_coeffs(field(l, "poly", "level"), config.p, n + 1, "level modulus"));
    }
    config.n0 = moduli[0].size() - 1;
    std::vector<Coeffs> embeddings;
    const json& emb = field(tower, "embeddings", "tower");
    require(emb.is_array() && emb.size() + 1 == moduli.size(), ErrorCode::kCorruptState,
            "tower needs one embedding per level above the first");
    for (std::size_t i = 0; i < emb.size(); ++i) {
      embeddings.push_back(read_coeffs(emb[i], config.p, moduli[i + 1].size() - 1, "embedding"));
    }
    Tower t = Tower::restore(config, moduli, embeddings);

    std::vector<Stage> stages;
    const json& sj = field(root, "stages", "state");
    require(sj.is_array() && !sj.empty(), ErrorCode::kCorruptState, "state has no stages");
    for (std::size_t s = 0; s < sj.size(); ++s) {
      const std::string where = "stage " + std::to_string(s);
      Stage st;
      st.level = read_size(sj[s], "level_index", where);
      require(st.level < t.size(), ErrorCode::kCorruptState, where + ": level not in tower");
      const std::vector<TowerElement> basis =
          read_elements(field(sj[s], "group_basis", where), t, st.level, where + " basis");
      st.group = span_elements(t, st.level, basis);
      require(st.group.dim() == basis.size() && st.group.basis() == coeffs_of(basis),
              ErrorCode::kCorruptState, where + ": group basis is not in canonical form");
      for (const json& r : field(sj[s], "log", where)) {
        RealizationRecord rec;
        rec.formula_id = field(r, "formula_id", where).get<std::string>();
        const std::size_t pl = read_size(r, "param_level", where);
        require(pl < t.size(), ErrorCode::kCorruptState, where + ": parameter level not in tower");
        rec.params = read_elements(field(r, "params", where), t, pl, where + " params");
        for (const json& w : field(r, "solutions", where)) {
          rec.solutions.push_back(read_elements(w, t, st.level, where + " solutions"));
        }
        rec.rows_added = read_elements(field(r, "rows_added", where), t, st.level, where);
        st.log.push_back(std::move(rec));
      }
      if (sj[s].contains("skipped")) {
        for (const json& r : sj[s].at("skipped")) {
          SkipRecord rec;
          rec.formula_id = field(r, "formula_id", where).get<std::string>();
          const std::size_t pl = read_size(r, "param_level", where);
          require(pl < t.size(), ErrorCode::kCorruptState, where + ": parameter level not in tower");
          rec.params = read_elements(field(r, "params", where), t, pl, where + " params");
          rec.reason = field(r, "reason", where).get<std::string>();
          st.skipped.push_back(std::move(rec));
        }
      }
      stages.push_back(std::move(st));
    }
    ConstructionState state{std::move(t), std::move(stages), 0, 0, "", ""};
    state.seed = field(meta, "seed", "meta").get<std::uint64_t>();
    state.rounds = read_size(meta, "rounds", "meta");
    state.schedule_digest = field(meta, "schedule_digest", "meta").get<std::string>();
    if (meta.contains("schedule") && !meta.at("schedule").is_null()) {
      state.schedule_canonical = meta.at("schedule").dump();
    }
    return state;
  } catch (const json::exception& e) {
    fail(ErrorCode::kCorruptState, std::string("malformed state: ") + e.what());
  }
}

namespace {

std::vector<TowerElement> all_tuple(const Tower& t, std::size_t level, std::size_t ny,
                                    std::uint64_t index) {
  const Field& F = t.field(level);
  const std::uint64_t size = *F.size();
  std::vector<TowerElement> out(ny);
  for (std::size_t j = ny; j-- > 0;) {
    out[j] = {level, F.from_index(index % size)};
    index /= size;
  }
  return out;
}

}  // namespace

Schedule parse_schedule(std::string_view text, const Tower& tower) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("schedule is not valid JSON: ") + e.what());
  }
  Schedule sch;
  try {
    require(root.is_object() && root.contains("entries") && root.at("entries").is_array(),
            ErrorCode::kParse, "schedule needs an 'entries' list");
    std::size_t idx = 0;
    for (const json& e : root.at("entries")) {
      const std::string where = "schedule entry " + std::to_string(idx++);
      require(e.is_object(), ErrorCode::kParse, where + ": expected an object");
      ScheduleEntry entry;
      require(e.contains("id") && e.at("id").is_string(), ErrorCode::kParse,
              where + ": missing string 'id'");
      entry.id = e.at("id").get<std::string>();
      for (const ScheduleEntry& other : sch.entries) {
        require(other.id != entry.id, ErrorCode::kParse, where + ": duplicate id " + entry.id);
      }
      require(e.contains("formula") && e.at("formula").is_string(), ErrorCode::kParse,
              where + ": missing string 'formula'");
      try {
        entry.formula = parse_formula(e.at("formula").get<std::string>(), tower.p());
      } catch (const Error& err) {
        fail(ErrorCode::kParse, where + " formula: " + err.what());
      }
      entry.param_level = e.value("param_level", std::size_t{0});
      require(entry.param_level < tower.size(), ErrorCode::kParse,
              where + ": param_level not in tower");
      entry.copies = e.value("copies", entry.formula.nx + 1);
      require(entry.copies >= 1, ErrorCode::kParse, where + ": copies must be >= 1");
      const std::size_t ny = entry.formula.ny;
      if (!e.contains("params")) {
        require(ny == 0, ErrorCode::kParse, where + ": formula has parameters but no 'params'");
        entry.params.push_back({});
      } else if (e.at("params").is_string()) {
        require(e.at("params").get<std::string>() == "all", ErrorCode::kParse,
                where + ": params must be a list or \"all\"");
        const std::uint64_t count =
            saturating_pow(tower.p(), tower.degree(entry.param_level) * ny);
        require(count <= 4096, ErrorCode::kParse, where + ": too many parameter tuples");
        for (std::uint64_t i = 0; i < count; ++i) {
          entry.params.push_back(all_tuple(tower, entry.param_level, ny, i));
        }
      } else {
        require(e.at("params").is_array(), ErrorCode::kParse, where + ": params must be a list");
        const Field& F = tower.field(entry.param_level);
        for (const json& tuple : e.at("params")) {
          require(tuple.is_array() && tuple.size() == ny, ErrorCode::kParse,
                  where + ": each parameter tuple needs " + std::to_string(ny) + " elements");
          std::vector<TowerElement> b;
          for (const json& x : tuple) {
            require(x.is_string(), ErrorCode::kParse, where + ": elements are strings like \"w+1\"");
            try {
              b.push_back({entry.param_level, parse_element(x.get<std::string>(), F)});
            } catch (const Error& err) {
              fail(ErrorCode::kParse, where + " parameter: " + err.what());
            }
          }
          entry.params.push_back(std::move(b));
        }
      }
      sch.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed schedule: ") + e.what());
  }
  sch.canonical = root.dump();
  sch.digest = fnv1a_hex(sch.canonical);
  return sch;
}

std::vector<TowerElement> parse_elements(std::string_view text, const Tower& tower,
                                         std::size_t level) {
  std::vector<TowerElement> out;
  const Field& F = tower.field(level);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string_view part = text.substr(pos, end - pos);
    if (part.find_first_not_of(" \t") != std::string_view::npos) {
      out.push_back({level, parse_element(part, F)});
    }
    pos = end + 1;
  }
  return out;
}

Subspace parse_group(std::string_view text, const Tower& tower, std::size_t level) {
  const std::size_t n = tower.degree(level);
  if (text == "zero" || text.empty()) return Subspace(tower.p(), n, level);
  if (text == "full") return Subspace::full(tower.p(), n, level);
  return span_elements(tower, level, parse_elements(text, tower, level));
}

std::vector<AxiomInstance> parse_axiom_batch(std::string_view text, const Tower& tower) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("axiom batch is not valid JSON: ") + e.what());
  }
  require(root.is_array(), ErrorCode::kParse, "axiom batch must be a list");
  std::vector<AxiomInstance> out;
  try {
    for (const json& a : root) {
      AxiomInstance inst;
      inst.formula = parse_formula(a.at("formula").get<std::string>(), tower.p());
      for (const json& x : a.value("params", json::array())) {
        inst.params.push_back({0, parse_element(x.get<std::string>(), tower.field(0))});
      }
      inst.k = a.value("k", std::size_t{0});
      inst.kp = a.value("kp", std::size_t{0});
      require(inst.params.size() == inst.formula.ny && inst.k <= inst.formula.nx &&
                  inst.kp <= inst.formula.ny,
              ErrorCode::kParse, "axiom instance has an invalid arity or split");
      out.push_back(std::move(inst));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed axiom batch: ") + e.what());
  }
  return out;
}

namespace {

std::vector<Coeffs> read_rows(const json& j, Residue p, std::size_t d, const std::string& what) {
  require(j.is_array(), ErrorCode::kParse, what + ": expected a list of vectors");
  std::vector<Coeffs> out;
  for (const json& row : j) {
    require(row.is_array() && row.size() == d, ErrorCode::kParse,
            what + ": vectors need " + std::to_string(d) + " coordinates");
    Coeffs v;
    for (const json& x : row) {
      require(x.is_number_integer(), ErrorCode::kParse, what + ": coordinates are integers");
      const long long c = x.get<long long>();
      v.push_back(static_cast<Residue>(((c % static_cast<long long>(p)) + p) % p));
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Pregeometry parse_structure(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && text[first] != '{') {
    const std::size_t a = text.find(':');
    const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
    require(b != std::string_view::npos, ErrorCode::kParse,
            "structure must look like linear:p:d or affine:p:d");
    const std::string kind(text.substr(0, a));
    Residue p = 0;
    std::size_t d = 0;
    try {
      p = static_cast<Residue>(std::stoul(std::string(text.substr(a + 1, b - a - 1))));
      d = std::stoul(std::string(text.substr(b + 1)));
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, "structure p and d must be integers");
    }
    if (kind == "linear") return Pregeometry::linear(p, d);
    if (kind == "affine") return Pregeometry::affine(p, d);
    fail(ErrorCode::kParse, "unknown structure kind '" + kind + "'");
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("structure is not valid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "table") {
      const std::size_t n = j.at("n").get<std::size_t>();
      return Pregeometry::table(n, j.at("closure_table").get<std::vector<Mask>>());
    }
    const Residue p = j.at("p").get<Residue>();
    const std::size_t d = j.at("d").get<std::size_t>();
    if (kind == "linear") return Pregeometry::linear(p, d);
    if (kind == "affine") return Pregeometry::affine(p, d);
    fail(ErrorCode::kParse, "unknown structure kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed structure: ") + e.what());
  }
}

SkeletonConfig parse_skeleton(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("skeleton is not valid JSON: ") + e.what());
  }
  SkeletonConfig cfg;
  try {
    cfg.p = j.at("p").get<Residue>();
    cfg.d = j.at("d").get<std::size_t>();
    require(is_prime(cfg.p) && cfg.d >= 1, ErrorCode::kParse, "skeleton needs prime p and d >= 1");
    auto space = [&](const json& rows, const std::string& what) {
      return Subspace::span(cfg.p, cfg.d, read_rows(rows, cfg.p, cfg.d, what));
    };
    for (const auto& [k, v] : j.at("labels").items()) cfg.labels[label_key(k)] = space(v, "label " + k);
    cfg.gamma = j.contains("gamma") ? space(j.at("gamma"), "gamma") : Subspace(cfg.p, cfg.d);
    if (j.contains("families")) {
      for (const auto& [name, list] : j.at("families").items()) {
        std::vector<FamilyMember> members;
        for (const json& m : list) {
          if (m.is_object()) {
            FamilyMember fm{space(m.at("base"), "family " + name), std::nullopt};
            if (m.contains("left")) fm.left = space(m.at("left"), "family " + name);
            members.push_back(std::move(fm));
          } else {
            members.push_back({space(m, "family " + name), std::nullopt});
          }
        }
        cfg.families[name] = std::move(members);
      }
    }
    if (j.contains("tuples")) {
      const json& t = j.at("tuples");
      if (t.contains("r_a")) cfg.r_a = read_rows(t.at("r_a"), cfg.p, cfg.d, "r_a");
      if (t.contains("r_b")) cfg.r_b = read_rows(t.at("r_b"), cfg.p, cfg.d, "r_b");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed skeleton: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace acfg
