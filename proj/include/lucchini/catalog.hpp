#pragma once

// Named small permutation groups: trivial, cyclic, symmetric, alternating,
// explicit generators, and groups given by a multiplication table.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lucchini/errors.hpp"
#include "lucchini/group.hpp"
#include "lucchini/perm.hpp"

namespace lucchini {

enum class Family { trivial, cyclic, symmetric, alternating, generators, table };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::trivial: return "trivial";
    case Family::cyclic: return "cyclic";
    case Family::symmetric: return "symmetric";
    case Family::alternating: return "alternating";
    case Family::generators: return "generators";
    case Family::table: return "table";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "trivial") return Family::trivial;
  if (s == "cyclic") return Family::cyclic;
  if (s == "symmetric") return Family::symmetric;
  if (s == "alternating") return Family::alternating;
  if (s == "generators") return Family::generators;
  if (s == "table") return Family::table;
  throw ParseError("unknown group family '" + std::string(s) + "'");
}

struct GroupDescriptor {
  Family family = Family::trivial;
  /// Number of points for the permutation families; table order for tables.
  std::size_t degree = 1;
  /// Only for Family::generators.
  std::vector<DensePerm> gens;
  /// Only for Family::table.
  std::optional<MulTable> table;

  static GroupDescriptor trivial() { return {}; }
  static GroupDescriptor cyclic(std::size_t n) { return {Family::cyclic, n, {}, {}}; }
  static GroupDescriptor symmetric(std::size_t n) { return {Family::symmetric, n, {}, {}}; }
  static GroupDescriptor alternating(std::size_t n) { return {Family::alternating, n, {}, {}}; }
  static GroupDescriptor from_generators(std::vector<DensePerm> gens) {
    if (gens.empty()) throw Error("generator list is empty");
    std::size_t degree = gens.front().degree();
    for (const auto& g : gens) {
      if (g.degree() != degree) throw Error("generators have different degrees");
    }
    return {Family::generators, degree, std::move(gens), {}};
  }
  static GroupDescriptor from_table(MulTable table) {
    std::size_t m = table.order();
    return {Family::table, m, {}, std::move(table)};
  }

  /// Short name: trivial, c<n>, sym<n>, alt<n>, gens<...>, table<m>.
  std::string name() const {
    switch (family) {
      case Family::trivial: return "trivial";
      case Family::cyclic: return "c" + std::to_string(degree);
      case Family::symmetric: return "sym" + std::to_string(degree);
      case Family::alternating: return "alt" + std::to_string(degree);
      case Family::generators: {
        std::string out = "gens<";
        for (std::size_t k = 0; k < gens.size(); ++k) out += (k ? "," : "") + to_text(gens[k]);
        return out + ">deg" + std::to_string(degree);
      }
      case Family::table: return "table" + std::to_string(degree);
    }
    return "?";
  }
};

/// Parses `trivial`, `c<n>`, `sym<n>`, `alt<n>`.
inline GroupDescriptor parse_group_name(std::string_view s) {
  auto number = [&](std::size_t prefix) {
    std::string_view rest = s.substr(prefix);
    if (!is_decimal_key(rest)) throw ParseError("bad group name '" + std::string(s) + "'");
    return static_cast<std::size_t>(parse_point(rest));
  };
  if (s == "trivial") return GroupDescriptor::trivial();
  if (s.starts_with("sym")) return GroupDescriptor::symmetric(number(3));
  if (s.starts_with("alt")) return GroupDescriptor::alternating(number(3));
  if (s.starts_with("c")) return GroupDescriptor::cyclic(number(1));
  throw ParseError("unknown group name '" + std::string(s) + "'");
}

/// Generators as permutations of `permutation_degree(d)` points.
inline std::vector<DensePerm> permutation_generators(const GroupDescriptor& d) {
  const std::size_t n = d.degree;
  switch (d.family) {
    case Family::trivial:
      return {DensePerm::identity(1)};
    case Family::cyclic: {
      if (n == 0) throw Error("cyclic group order must be positive");
      std::vector<Point> cycle;
      for (Point p = 0; p < n; ++p) cycle.push_back(p);
      return {DensePerm::from_cycles(n, {cycle})};
    }
    case Family::symmetric: {
      if (n == 0) throw Error("symmetric group degree must be positive");
      if (n == 1) return {DensePerm::identity(1)};
      std::vector<Point> cycle;
      for (Point p = 0; p < n; ++p) cycle.push_back(p);
      return {DensePerm::from_cycles(n, {{0, 1}}), DensePerm::from_cycles(n, {cycle})};
    }
    case Family::alternating:
      if (n == 0) throw Error("alternating group degree must be positive");
      if (n < 3) return {DensePerm::identity(n)};
      return alt_generators(n);
    case Family::generators:
      return d.gens;
    case Family::table: {
      const auto images = cayley_embed(*d.table);
      std::vector<DensePerm> out;
      for (std::size_t g : d.table->generators()) out.push_back(images[g]);
      if (out.empty()) out.push_back(images[d.table->identity()]);
      return out;
    }
  }
  throw Error("unknown family");
}

inline std::size_t permutation_degree(const GroupDescriptor& d) {
  return d.family == Family::trivial ? 1 : d.degree;
}

inline GeneratedGroup<DenseSym> enumerate_group(const GroupDescriptor& d,
                                                std::size_t cap = kDefaultEnumerationCap) {
  return enumerate_elements(DenseSym{permutation_degree(d)}, permutation_generators(d), cap);
}

/// Multiplication table over the canonical element order of `g`.
template <GroupContext Ctx>
MulTable multiplication_table(const GeneratedGroup<Ctx>& g) {
  std::vector<std::vector<std::size_t>> rows(g.order(), std::vector<std::size_t>(g.order()));
  for (Index a = 0; a < g.order(); ++a) {
    for (Index b = 0; b < g.order(); ++b) rows[a][b] = g.mul(a, b);
  }
  return MulTable(std::move(rows));
}

}  // namespace lucchini
