#pragma once

// Permutations over small dense domains {0..n-1} and finitely supported
// permutations over abstract keyed domains, with the alternating-group
// helpers used to embed finite groups into alternating groups.
//
// Convention: permutations act on the right. compose(g, h) is "g then h",
// so p^(compose(g, h)) == (p^g)^h.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "lucchini/detail/hash.hpp"
#include "lucchini/errors.hpp"

namespace lucchini {

enum class Parity { even, odd };

constexpr Parity operator*(Parity a, Parity b) noexcept {
  return a == b ? Parity::even : Parity::odd;
}

inline std::string_view to_string(Parity p) noexcept {
  return p == Parity::even ? "even" : "odd";
}

using Point = std::uint32_t;

class DensePerm {
 public:
  /// Identity of degree 1.
  DensePerm() : images_{0} {}

  explicit DensePerm(std::vector<Point> images) : images_(std::move(images)) {
    if (images_.empty()) throw Error("permutation degree must be positive");
    std::vector<bool> seen(images_.size(), false);
    for (Point q : images_) {
      if (q >= images_.size() || seen[q]) {
        throw Error("image list is not a bijection of {0.." +
                    std::to_string(images_.size() - 1) + "}");
      }
      seen[q] = true;
    }
  }

  static DensePerm identity(std::size_t degree) {
    if (degree == 0) throw Error("permutation degree must be positive");
    std::vector<Point> images(degree);
    for (std::size_t p = 0; p < degree; ++p) images[p] = static_cast<Point>(p);
    return DensePerm(std::move(images));
  }

  /// Builds a permutation from disjoint cycles; each cycle maps its entries
  /// to the next one, the last to the first.
  static DensePerm from_cycles(std::size_t degree,
                               const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> images = identity(degree).images_;
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        Point p = cycle[k];
        if (p >= degree) {
          throw Error("point " + std::to_string(p) + " exceeds degree " +
                      std::to_string(degree));
        }
        if (used[p]) throw Error("cycles are not disjoint at point " + std::to_string(p));
        used[p] = true;
        images[p] = cycle[(k + 1) % cycle.size()];
      }
    }
    return DensePerm(std::move(images));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point p) const { return images_.at(p); }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t p = 0; p < images_.size(); ++p) {
      if (images_[p] != p) return false;
    }
    return true;
  }

  /// Nontrivial cycles, each led by its smallest point, sorted by leader.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (Point p = 0; p < images_.size(); ++p) {
      if (seen[p] || images_[p] == p) continue;
      std::vector<Point> cycle;
      for (Point q = p; !seen[q]; q = images_[q]) {
        seen[q] = true;
        cycle.push_back(q);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  /// Same permutation on a larger domain, fixing the new points.
  DensePerm extended(std::size_t degree) const {
    if (degree < images_.size()) throw Error("cannot shrink a permutation");
    std::vector<Point> images = images_;
    for (std::size_t p = images_.size(); p < degree; ++p) {
      images.push_back(static_cast<Point>(p));
    }
    return DensePerm(std::move(images));
  }

  friend bool operator==(const DensePerm&, const DensePerm&) = default;
  friend auto operator<=>(const DensePerm& a, const DensePerm& b) {
    if (auto c = a.images_.size() <=> b.images_.size(); c != 0) return c;
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

inline DensePerm compose(const DensePerm& g, const DensePerm& h) {
  if (g.degree() != h.degree()) {
    throw Error("degree mismatch: " + std::to_string(g.degree()) + " vs " +
                std::to_string(h.degree()));
  }
  std::vector<Point> images(g.degree());
  for (std::size_t p = 0; p < images.size(); ++p) images[p] = h(g(static_cast<Point>(p)));
  return DensePerm(std::move(images));
}

inline DensePerm inverse(const DensePerm& g) {
  std::vector<Point> images(g.degree());
  for (std::size_t p = 0; p < images.size(); ++p) images[g(static_cast<Point>(p))] = static_cast<Point>(p);
  return DensePerm(std::move(images));
}

inline DensePerm operator*(const DensePerm& g, const DensePerm& h) { return compose(g, h); }

inline Parity parity(const DensePerm& g) {
  std::size_t moved = 0;
  const auto cycles = g.cycles();
  for (const auto& c : cycles) moved += c.size();
  return (moved - cycles.size()) % 2 == 0 ? Parity::even : Parity::odd;
}

/// Shortlex order: shorter keys first, then lexicographic. On canonical
/// decimal keys this is numeric order.
struct ShortLex {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline std::strong_ordering shortlex_compare(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return a.size() <=> b.size();
  int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

/// True for "0" and for nonempty digit strings without a leading zero.
inline bool is_decimal_key(std::string_view key) noexcept {
  if (key.empty()) return false;
  if (key.size() > 1 && key.front() == '0') return false;
  return std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; });
}

class SparsePerm {
 public:
  using Map = std::map<std::string, std::string, ShortLex>;

  /// Identity.
  SparsePerm() = default;

  /// Fixed points in `moved` are dropped; the rest must be a bijection of
  /// its own key set.
  explicit SparsePerm(Map moved) {
    for (auto it = moved.begin(); it != moved.end();) {
      if (it->first == it->second) {
        it = moved.erase(it);
      } else {
        ++it;
      }
    }
    std::map<std::string, int, ShortLex> hits;
    for (const auto& [from, to] : moved) {
      if (!moved.contains(to)) throw Error("support is not closed: " + from + " -> " + to);
      if (++hits[to] > 1) throw Error("point " + to + " has two preimages");
    }
    moved_ = std::move(moved);
  }

  static SparsePerm from_cycles(const std::vector<std::vector<std::string>>& cycles) {
    Map moved;
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (!moved.emplace(cycle[k], cycle[(k + 1) % cycle.size()]).second) {
          throw Error("cycles are not disjoint at point " + cycle[k]);
        }
      }
    }
    return SparsePerm(std::move(moved));
  }

  const std::string& operator()(const std::string& p) const {
    auto it = moved_.find(p);
    return it == moved_.end() ? p : it->second;
  }

  const Map& moved() const noexcept { return moved_; }
  bool is_identity() const noexcept { return moved_.empty(); }
  std::size_t support_size() const noexcept { return moved_.size(); }

  std::vector<std::vector<std::string>> cycles() const {
    std::vector<std::vector<std::string>> out;
    std::map<std::string, bool, ShortLex> seen;
    for (const auto& [start, unused] : moved_) {
      if (seen.contains(start)) continue;
      std::vector<std::string> cycle;
      for (std::string q = start; !seen.contains(q); q = moved_.at(q)) {
        seen.emplace(q, true);
        cycle.push_back(q);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  friend bool operator==(const SparsePerm&, const SparsePerm&) = default;
  friend std::strong_ordering operator<=>(const SparsePerm& a, const SparsePerm& b) {
    auto i = a.moved_.begin();
    auto j = b.moved_.begin();
    for (; i != a.moved_.end() && j != b.moved_.end(); ++i, ++j) {
      if (auto c = shortlex_compare(i->first, j->first); c != 0) return c;
      if (auto c = shortlex_compare(i->second, j->second); c != 0) return c;
    }
    return a.moved_.size() <=> b.moved_.size();
  }

 private:
  Map moved_;
};

inline SparsePerm compose(const SparsePerm& g, const SparsePerm& h) {
  SparsePerm::Map out;
  for (const auto& [p, q] : g.moved()) out.emplace(p, h(q));
  for (const auto& [p, q] : h.moved()) {
    if (!g.moved().contains(p)) out.emplace(p, q);
  }
  return SparsePerm(std::move(out));
}

inline SparsePerm inverse(const SparsePerm& g) {
  SparsePerm::Map out;
  for (const auto& [p, q] : g.moved()) out.emplace(q, p);
  return SparsePerm(std::move(out));
}

inline SparsePerm operator*(const SparsePerm& g, const SparsePerm& h) { return compose(g, h); }

inline Parity parity(const SparsePerm& g) {
  return (g.support_size() - g.cycles().size()) % 2 == 0 ? Parity::even : Parity::odd;
}

inline SparsePerm to_sparse(const DensePerm& g) {
  SparsePerm::Map moved;
  for (Point p = 0; p < g.degree(); ++p) {
    if (g(p) != p) moved.emplace(std::to_string(p), std::to_string(g(p)));
  }
  return SparsePerm(std::move(moved));
}

inline Point parse_point(std::string_view token) {
  Point value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !is_decimal_key(token)) {
    throw ParseError("not a point: '" + std::string(token) + "'");
  }
  return value;
}

inline DensePerm to_dense(const SparsePerm& g, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  for (const auto& cycle : g.cycles()) {
    std::vector<Point>& out = cycles.emplace_back();
    for (const auto& key : cycle) out.push_back(parse_point(key));
  }
  return DensePerm::from_cycles(degree, cycles);
}

// ---------------------------------------------------------------------------
// Cycle notation: `id` | `(p1 p2 ... pk)(q1 ...)...`

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::vector<std::string>> parse_cycle_tokens(std::string_view text) {
  text = trim(text);
  std::vector<std::vector<std::string>> cycles;
  if (text == "id") return cycles;
  if (text.empty()) throw ParseError("empty permutation text");
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError("expected '(' in '" + std::string(text) + "'");
    ++i;
    std::vector<std::string>& cycle = cycles.emplace_back();
    std::string token;
    for (;; ++i) {
      if (i >= text.size()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
      char c = text[i];
      if (c == ' ' || c == ',' || c == ')') {
        if (!token.empty()) cycle.push_back(std::move(token));
        token.clear();
        if (c == ')') break;
      } else if (c == '(') {
        throw ParseError("nested '(' in '" + std::string(text) + "'");
      } else {
        token.push_back(c);
      }
    }
    ++i;
    if (cycle.empty()) throw ParseError("empty cycle in '" + std::string(text) + "'");
  }
  return cycles;
}

template <class Cycles>
std::string format_cycles(const Cycles& cycles) {
  if (cycles.empty()) return "id";
  std::string out;
  for (const auto& cycle : cycles) {
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ' ';
      if constexpr (std::is_same_v<std::decay_t<decltype(cycle[k])>, std::string>) {
        out += cycle[k];
      } else {
        out += std::to_string(cycle[k]);
      }
    }
    out += ')';
  }
  return out;
}

}  // namespace detail

inline std::string to_text(const DensePerm& g) { return detail::format_cycles(g.cycles()); }

/// Standalone form, e.g. `(0 1 2) deg=5`.
inline std::string to_text_with_degree(const DensePerm& g) {
  return to_text(g) + " deg=" + std::to_string(g.degree());
}

/// Parses cycle notation with an optional trailing `deg=<n>`. Without either
/// a `deg=` suffix or `degree`, the degree is one more than the largest point.
inline DensePerm parse_dense_perm(std::string_view text,
                                  std::optional<std::size_t> degree = std::nullopt) {
  text = detail::trim(text);
  if (auto pos = text.rfind("deg="); pos != std::string_view::npos) {
    std::size_t stated = parse_point(detail::trim(text.substr(pos + 4)));
    if (degree && *degree != stated) {
      throw ParseError("stated degree " + std::to_string(stated) + " differs from expected " +
                       std::to_string(*degree));
    }
    degree = stated;
    text = detail::trim(text.substr(0, pos));
  }
  std::vector<std::vector<Point>> cycles;
  std::size_t max_point = 0;
  for (const auto& tokens : detail::parse_cycle_tokens(text)) {
    std::vector<Point>& cycle = cycles.emplace_back();
    for (const auto& t : tokens) {
      cycle.push_back(parse_point(t));
      max_point = std::max<std::size_t>(max_point, cycle.back());
    }
  }
  std::size_t n = degree.value_or(max_point + 1);
  try {
    return DensePerm::from_cycles(n, cycles);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline std::string to_text(const SparsePerm& g) { return detail::format_cycles(g.cycles()); }

inline SparsePerm parse_sparse_perm(std::string_view text) {
  try {
    return SparsePerm::from_cycles(detail::parse_cycle_tokens(text));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Group contexts: supply identity, product and inverse for an element type.

struct DenseSym {
  using element_type = DensePerm;
  std::size_t degree = 1;

  DensePerm identity() const { return DensePerm::identity(degree); }
  DensePerm mul(const DensePerm& a, const DensePerm& b) const { return compose(a, b); }
  DensePerm inv(const DensePerm& a) const { return inverse(a); }
};

struct SparseSym {
  using element_type = SparsePerm;

  SparsePerm identity() const { return {}; }
  SparsePerm mul(const SparsePerm& a, const SparsePerm& b) const { return compose(a, b); }
  SparsePerm inv(const SparsePerm& a) const { return inverse(a); }
};

// ---------------------------------------------------------------------------
// Alternating groups and embeddings of abstract finite groups.

/// The 3-cycles (0 1 2), (0 1 3), ..., (0 1 n-1), which generate Alt(n).
inline std::vector<DensePerm> alt_generators(std::size_t n) {
  if (n < 3) throw Error("Alt(n) generators need n >= 3, got " + std::to_string(n));
  std::vector<DensePerm> gens;
  for (Point k = 2; k < n; ++k) gens.push_back(DensePerm::from_cycles(n, {{0, 1, k}}));
  return gens;
}

/// Multiplication table of a finite group: `mul(a, b)` is the index of a*b.
class MulTable {
 public:
  explicit MulTable(std::vector<std::vector<std::size_t>> rows) : rows_(std::move(rows)) {
    const std::size_t m = rows_.size();
    if (m == 0) throw Error("multiplication table is empty");
    for (const auto& row : rows_) {
      if (row.size() != m) throw Error("multiplication table is not square");
      std::vector<bool> seen(m, false);
      for (std::size_t v : row) {
        if (v >= m) throw Error("table entry out of range");
        if (seen[v]) throw Error("table row is not a permutation (not a group)");
        seen[v] = true;
      }
    }
    std::optional<std::size_t> e;
    for (std::size_t a = 0; a < m && !e; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < m && ok; ++b) ok = rows_[a][b] == b && rows_[b][a] == b;
      if (ok) e = a;
    }
    if (!e) throw Error("table has no identity element");
    identity_ = *e;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t c = 0; c < m; ++c) {
          if (rows_[rows_[a][b]][c] != rows_[a][rows_[b][c]]) {
            throw Error("table is not associative at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    inverses_.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
      auto it = std::find(rows_[a].begin(), rows_[a].end(), identity_);
      inverses_[a] = static_cast<std::size_t>(it - rows_[a].begin());
    }
  }

  std::size_t order() const noexcept { return rows_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return rows_.at(a).at(b); }
  std::size_t inv(std::size_t a) const { return inverses_.at(a); }
  const std::vector<std::vector<std::size_t>>& rows() const noexcept { return rows_; }

  /// Greedy generating set: scan elements in index order, keep each one not
  /// already generated by the earlier picks.
  std::vector<std::size_t> generators() const {
    std::vector<std::size_t> gens;
    std::vector<bool> in(order(), false);
    in[identity_] = true;
    std::size_t count = 1;
    for (std::size_t x = 0; x < order() && count < order(); ++x) {
      if (in[x]) continue;
      gens.push_back(x);
      std::vector<std::size_t> frontier;
      for (std::size_t y = 0; y < order(); ++y) {
        if (in[y]) frontier.push_back(y);
      }
      while (!frontier.empty()) {
        std::size_t y = frontier.back();
        frontier.pop_back();
        for (std::size_t g : gens) {
          std::size_t z = mul(y, g);
          if (!in[z]) {
            in[z] = true;
            ++count;
            frontier.push_back(z);
          }
        }
      }
    }
    return gens;
  }

 private:
  std::vector<std::vector<std::size_t>> rows_;
  std::vector<std::size_t> inverses_;
  std::size_t identity_ = 0;
};

/// Right regular representation: element h becomes the permutation x -> x*h
/// of element indices.
inline std::vector<DensePerm> cayley_embed(const MulTable& table) {
  std::vector<DensePerm> out;
  out.reserve(table.order());
  for (std::size_t h = 0; h < table.order(); ++h) {
    std::vector<Point> images(table.order());
    for (std::size_t x = 0; x < table.order(); ++x) images[x] = static_cast<Point>(table.mul(x, h));
    out.emplace_back(std::move(images));
  }
  return out;
}

struct AltEmbedding {
  std::vector<DensePerm> images;
  std::size_t degree = 0;
  bool padded = false;
};

/// Parity fix: if some generator is odd, every g becomes g * (n n+1)^parity(g)
/// on n + 2 points, an injective homomorphism into Alt(n + 2). Even generator
/// sets are returned unchanged.
inline AltEmbedding into_alt(std::span<const DensePerm> gens, std::size_t degree) {
  AltEmbedding out{{gens.begin(), gens.end()}, degree, false};
  for (const auto& g : gens) {
    if (g.degree() != degree) throw Error("generator degree differs from " + std::to_string(degree));
  }
  bool all_even = std::all_of(gens.begin(), gens.end(),
                              [](const DensePerm& g) { return parity(g) == Parity::even; });
  if (all_even) return out;
  const auto n = static_cast<Point>(degree);
  const DensePerm tau = DensePerm::from_cycles(degree + 2, {{n, n + 1}});
  out.degree = degree + 2;
  out.padded = true;
  for (auto& g : out.images) {
    DensePerm wide = g.extended(degree + 2);
    g = parity(wide) == Parity::odd ? compose(wide, tau) : wide;
  }
  return out;
}

}  // namespace lucchini

template <>
struct std::hash<lucchini::DensePerm> {
  std::size_t operator()(const lucchini::DensePerm& g) const noexcept {
    std::size_t seed = g.degree();
    for (auto p : g.images()) lucchini::detail::hash_combine(seed, p);
    return seed;
  }
};

template <>
struct std::hash<lucchini::SparsePerm> {
  std::size_t operator()(const lucchini::SparsePerm& g) const noexcept {
    std::size_t seed = g.support_size();
    std::hash<std::string> h;
    for (const auto& [p, q] : g.moved()) {
      lucchini::detail::hash_combine(seed, h(p));
      lucchini::detail::hash_combine(seed, h(q));
    }
    return seed;
  }
};
