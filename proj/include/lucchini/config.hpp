#pragma once

// Tower specifications: G_1 plus a list of levels (A_i, t_i), either given
// explicitly or expanded from the Lucchini preset, and the JSON config
// schema that describes them.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lucchini/catalog.hpp"
#include "lucchini/errors.hpp"
#include "lucchini/order_expr.hpp"
#include "lucchini/perm.hpp"

namespace lucchini {

/// One wreath level: A_i acting on `degree` points, taken `copies` = t_i times.
struct LevelSpec {
  /// For the symbolic alternating groups of the preset, `group.degree` is 0
  /// and only `degree` carries the number of points.
  GroupDescriptor group;
  OrderExpr degree;
  /// Set when the degree fits in a machine word.
  std::optional<std::size_t> numeric_degree;
  std::size_t copies = 1;

  bool symbolic() const { return !numeric_degree.has_value(); }

  std::string name() const {
    if (symbolic()) return "alt(" + degree.text() + ")";
    return group.name();
  }
};

struct TowerSpec {
  GroupDescriptor g1;
  std::vector<LevelSpec> levels;
  bool paper_compliant = false;
  bool lucchini_preset = false;

  /// Number of finite quotients G_1 .. G_depth.
  std::size_t depth() const { return levels.size() + 1; }

  /// Compact one-token description used in reports.
  std::string summary() const {
    std::string out;
    if (lucchini_preset) {
      out = "lucchini(depth=" + std::to_string(depth()) + ",t=";
      for (std::size_t i = 0; i < levels.size(); ++i) out += (i ? "," : "") + std::to_string(levels[i].copies);
      return out + ")";
    }
    out = "g1=" + g1.name() + ";A=";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      out += (i ? "," : "") + levels[i].name() + "x" + std::to_string(levels[i].copies);
    }
    return out;
  }
};

/// |A| for a level.
inline OrderExpr level_group_order(const LevelSpec& level) {
  if (level.symbolic()) return OrderExpr::half(OrderExpr::factorial(level.degree));
  const auto& g = level.group;
  switch (g.family) {
    case Family::trivial: return OrderExpr::literal(1);
    case Family::cyclic: return OrderExpr::literal(g.degree);
    case Family::symmetric: return OrderExpr::factorial(OrderExpr::literal(g.degree));
    case Family::alternating:
      if (g.degree < 3) return OrderExpr::literal(1);
      return OrderExpr::half(OrderExpr::factorial(OrderExpr::literal(g.degree)));
    case Family::generators:
    case Family::table: return OrderExpr::literal(enumerate_group(g).order());
  }
  return OrderExpr::literal(1);
}

/// |G_level| from |G_1| and the recurrence |G_{i+1}| = |A_i|^(t_i |G_i|) |G_i|.
inline OrderExpr tower_order(const TowerSpec& spec, std::size_t level) {
  if (level < 1 || level > spec.depth()) {
    throw Error("level " + std::to_string(level) + " out of range 1.." + std::to_string(spec.depth()));
  }
  OrderExpr g = OrderExpr::literal(enumerate_group(spec.g1).order());
  for (std::size_t i = 1; i < level; ++i) {
    const auto& lv = spec.levels[i - 1];
    OrderExpr exponent = OrderExpr::product({OrderExpr::literal(lv.copies), g});
    g = OrderExpr::product({OrderExpr::power(level_group_order(lv), exponent), g});
  }
  return g;
}

/// Whether a level group is known to be nonabelian simple.
inline bool level_is_compliant(const LevelSpec& level) {
  if (level.symbolic()) return true;
  const auto& g = level.group;
  switch (g.family) {
    case Family::alternating: return g.degree >= 5;
    case Family::generators:
    case Family::table:
      try {
        return enumerate_group(g).is_nonabelian_simple();
      } catch (const BoundExceeded&) {
        return false;
      }
    default: return false;
  }
}

namespace detail {

using nlohmann::json;

inline std::size_t json_size(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

inline GroupDescriptor group_from_json(const json& j, const char* where) {
  if (j.is_string()) return parse_group_name(j.get<std::string>());
  if (!j.is_object()) throw ParseError(std::string(where) + ": expected a group name or object");
  if (j.contains("table")) {
    std::vector<std::vector<std::size_t>> rows;
    for (const auto& r : j.at("table")) {
      std::vector<std::size_t> row;
      for (const auto& v : r) row.push_back(json_size(v, "table entry"));
      rows.push_back(std::move(row));
    }
    return GroupDescriptor::from_table(MulTable(std::move(rows)));
  }
  if (j.contains("gens")) {
    if (!j.contains("degree")) throw ParseError(std::string(where) + ": 'gens' needs 'degree'");
    std::size_t degree = json_size(j.at("degree"), "degree");
    std::vector<DensePerm> gens;
    for (const auto& g : j.at("gens")) gens.push_back(parse_dense_perm(g.get<std::string>(), degree));
    return GroupDescriptor::from_generators(std::move(gens));
  }
  if (j.contains("name")) return parse_group_name(j.at("name").get<std::string>());
  if (!j.contains("family")) throw ParseError(std::string(where) + ": missing 'family'");
  Family f = parse_family(j.at("family").get<std::string>());
  std::size_t degree = j.contains("degree") ? json_size(j.at("degree"), "degree") : 1;
  switch (f) {
    case Family::trivial: return GroupDescriptor::trivial();
    case Family::cyclic: return GroupDescriptor::cyclic(degree);
    case Family::symmetric: return GroupDescriptor::symmetric(degree);
    case Family::alternating: return GroupDescriptor::alternating(degree);
    default: throw ParseError(std::string(where) + ": family '" + std::string(to_string(f)) + "' needs data");
  }
}

inline LevelSpec numeric_level(GroupDescriptor g, std::size_t copies) {
  if (copies < 1) throw Error("copies t_i must be at least 1");
  std::size_t degree = permutation_degree(g);
  if (g.family == Family::cyclic || g.family == Family::symmetric || g.family == Family::alternating) {
    if (g.degree == 0) throw Error("group degree must be positive");
  }
  return {std::move(g), OrderExpr::literal(degree), degree, copies};
}

}  // namespace detail

/// Lucchini preset: G_1 = Alt(5), A_i = Alt(|G_i|), `depth` quotients.
inline TowerSpec lucchini_preset(std::size_t depth, std::vector<std::size_t> t = {},
                                 std::size_t cost_bound = kDefaultCostBound) {
  if (depth < 1) throw Error("depth must be at least 1");
  if (t.empty()) t.assign(depth - 1, 1);
  if (t.size() == 1 && depth > 2) t.assign(depth - 1, t.front());
  if (t.size() != depth - 1) throw Error("t must list one value per level (" + std::to_string(depth - 1) + ")");
  TowerSpec spec;
  spec.g1 = GroupDescriptor::alternating(5);
  spec.lucchini_preset = true;
  spec.paper_compliant = true;
  for (std::size_t i = 1; i < depth; ++i) {
    if (t[i - 1] < 1) throw Error("copies t_i must be at least 1");
    OrderExpr x = tower_order(spec, i);
    LevelSpec level{GroupDescriptor::alternating(0), x, std::nullopt, t[i - 1]};
    if (auto v = x.evaluate(cost_bound); v && *v <= BigInt(1u << 20)) {
      level.numeric_degree = static_cast<std::size_t>(*v);
      level.group = GroupDescriptor::alternating(*level.numeric_degree);
    }
    spec.levels.push_back(std::move(level));
  }
  return spec;
}

/// Validates and expands a JSON config.
inline TowerSpec build_spec_json(const nlohmann::json& j, std::size_t cost_bound = kDefaultCostBound) {
  using detail::json_size;
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  detail::check_keys(j, {"g1", "levels", "preset", "depth", "t", "paper_compliant"}, "config");
  std::vector<std::size_t> t;
  if (j.contains("t")) {
    for (const auto& v : j.at("t")) {
      std::size_t x = json_size(v, "t entry");
      if (x < 1) throw Error("copies t_i must be at least 1");
      t.push_back(x);
    }
  }
  std::optional<std::size_t> depth;
  if (j.contains("depth")) depth = json_size(j.at("depth"), "depth");

  TowerSpec spec;
  if (j.contains("preset")) {
    if (j.at("preset") != "lucchini") throw ParseError("unknown preset " + j.at("preset").dump());
    if (j.contains("levels") || j.contains("g1")) throw ParseError("the lucchini preset fixes g1 and levels");
    spec = lucchini_preset(depth.value_or(3), t, cost_bound);
  } else {
    if (!j.contains("g1")) throw ParseError("config needs 'g1' or 'preset'");
    spec.g1 = detail::group_from_json(j.at("g1"), "g1");
    std::vector<LevelSpec> levels;
    if (j.contains("levels")) {
      for (const auto& lv : j.at("levels")) {
        if (!lv.is_object() && !lv.is_string()) throw ParseError("level entries must be objects or names");
        std::size_t copies = 1;
        nlohmann::json group = lv;
        if (lv.is_object()) {
          detail::check_keys(lv, {"family", "degree", "copies", "name", "gens", "table"}, "level");
          if (lv.contains("copies")) copies = json_size(lv.at("copies"), "copies");
          group.erase("copies");
        }
        levels.push_back(detail::numeric_level(detail::group_from_json(group, "level"), copies));
      }
    }
    std::size_t d = depth.value_or(levels.size() + 1);
    if (d < 1) throw Error("depth must be at least 1");
    if (levels.size() == 1 && d > 2) levels.resize(d - 1, levels.front());
    if (levels.size() != d - 1) {
      throw Error("depth " + std::to_string(d) + " needs " + std::to_string(d - 1) + " levels, got " +
                  std::to_string(levels.size()));
    }
    if (!t.empty()) {
      if (t.size() == 1) t.assign(levels.size(), t.front());
      if (t.size() != levels.size()) throw Error("t must list one value per level");
      for (std::size_t i = 0; i < levels.size(); ++i) levels[i].copies = t[i];
    }
    spec.levels = std::move(levels);
    bool compliant = true;
    for (const auto& lv : spec.levels) compliant = compliant && level_is_compliant(lv);
    spec.paper_compliant = compliant;
  }
  if (j.contains("paper_compliant")) {
    bool requested = j.at("paper_compliant").get<bool>();
    if (requested && !spec.paper_compliant) {
      for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        if (!level_is_compliant(spec.levels[i])) {
          throw Error("paper_compliant requested but A_" + std::to_string(i + 1) + " = " + spec.levels[i].name() +
                      " is not nonabelian simple");
        }
      }
    }
    spec.paper_compliant = requested;
  }
  return spec;
}

inline TowerSpec build_spec(std::string_view text, std::size_t cost_bound = kDefaultCostBound) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return build_spec_json(j, cost_bound);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
}

/// Reads a config file; text starting with '{' is taken as inline JSON.
inline TowerSpec load_spec(const std::string& path_or_json, std::size_t cost_bound = kDefaultCostBound) {
  std::string_view s = detail::trim(path_or_json);
  if (s.starts_with("{")) return build_spec(s, cost_bound);
  std::ifstream in(path_or_json);
  if (!in) throw Error("cannot open spec file '" + path_or_json + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return build_spec(buf.str(), cost_bound);
}

}  // namespace lucchini
