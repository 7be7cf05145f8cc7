#pragma once

// One step A wr_Omega G of a tower. Omega is t labelled copies of G with G
// acting by right multiplication on labels, which is free. Base functions
// Omega -> A are stored almost-constant: a default value plus a finite map
// of exceptions.
//
// Product convention (right actions):
//   (f, x)(h, y) = (w -> f(w) h(w.x), xy)

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lucchini/detail/hash.hpp"
#include "lucchini/errors.hpp"
#include "lucchini/group.hpp"
#include "lucchini/perm.hpp"

namespace lucchini {

template <class G>
struct OmegaPoint {
  std::size_t copy = 0;
  G label;

  friend bool operator==(const OmegaPoint&, const OmegaPoint&) = default;
  friend std::strong_ordering operator<=>(const OmegaPoint& a, const OmegaPoint& b) {
    if (auto c = a.copy <=> b.copy; c != 0) return c;
    return a.label <=> b.label;
  }
};

template <class A, class G>
struct BaseFunction {
  A default_value;
  std::map<OmegaPoint<G>, A> exceptions;

  const A& at(const OmegaPoint<G>& p) const {
    auto it = exceptions.find(p);
    return it == exceptions.end() ? default_value : it->second;
  }

  friend bool operator==(const BaseFunction&, const BaseFunction&) = default;
  friend std::strong_ordering operator<=>(const BaseFunction& a, const BaseFunction& b) {
    if (auto c = a.default_value <=> b.default_value; c != 0) return c;
    auto i = a.exceptions.begin();
    auto j = b.exceptions.begin();
    for (; i != a.exceptions.end() && j != b.exceptions.end(); ++i, ++j) {
      if (auto c = i->first <=> j->first; c != 0) return c;
      if (auto c = i->second <=> j->second; c != 0) return c;
    }
    return a.exceptions.size() <=> b.exceptions.size();
  }
};

template <class A, class G>
struct WreathElement {
  BaseFunction<A, G> base;
  G top;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
  friend std::strong_ordering operator<=>(const WreathElement& a, const WreathElement& b) {
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.top <=> b.top;
  }
};

/// Arithmetic context for A wr_Omega G with Omega = {0..copies-1} x G.
///
/// Omega is finite, so an almost-constant representation is only unique
/// once the default is pinned: the canonical default is the value taken on
/// the most points, ties going to the smaller value. Whenever the exceptions
/// cover fewer than half of Omega this is automatic; otherwise rewriting
/// needs the element list of G.
template <GroupContext ACtx, GroupContext GCtx>
class WreathStep {
 public:
  using a_type = typename ACtx::element_type;
  using g_type = typename GCtx::element_type;
  using element_type = WreathElement<a_type, g_type>;
  using point_type = OmegaPoint<g_type>;
  using base_type = BaseFunction<a_type, g_type>;

  /// `group_order` is |G| when it fits in 64 bits (nullopt: astronomically
  /// large). `group_elements`, when given, lists all of G.
  WreathStep(ACtx a, GCtx g, std::size_t copies, std::optional<std::uint64_t> group_order = std::nullopt,
             std::shared_ptr<const std::vector<g_type>> group_elements = nullptr)
      : a_(std::move(a)), g_(std::move(g)), copies_(copies), group_elements_(std::move(group_elements)) {
    if (copies_ == 0) throw Error("a wreath step needs at least one copy of G");
    if (group_elements_ && !group_order) group_order = group_elements_->size();
    if (group_order) omega_size_ = *group_order * copies_;
  }

  /// Step over an enumerated top group.
  static WreathStep over(ACtx a, const GeneratedGroup<GCtx>& g, std::size_t copies) {
    return WreathStep(std::move(a), g.context(), copies, g.order(),
                      std::make_shared<const std::vector<g_type>>(g.elements()));
  }

  const ACtx& a_context() const noexcept { return a_; }
  const GCtx& g_context() const noexcept { return g_; }
  std::size_t copies() const noexcept { return copies_; }
  std::optional<std::uint64_t> omega_size() const noexcept { return omega_size_; }
  const std::shared_ptr<const std::vector<g_type>>& group_elements() const noexcept { return group_elements_; }

  /// (copy, label) . g = (copy, label g).
  point_type act(const point_type& p, const g_type& g) const { return {p.copy, g_.mul(p.label, g)}; }

  /// All of Omega; needs the element list of G.
  std::vector<point_type> points() const {
    if (!group_elements_) throw BoundExceeded("Omega is not enumerated", 0);
    std::vector<point_type> out;
    for (std::size_t k = 0; k < copies_; ++k) {
      for (const auto& g : *group_elements_) out.push_back({k, g});
    }
    return out;
  }

  element_type identity() const { return {{a_.identity(), {}}, g_.identity()}; }

  /// Builds an element from arbitrary almost-constant data, in canonical form.
  element_type make(a_type default_value, std::map<point_type, a_type> exceptions, g_type top) const {
    return {canonical(std::move(default_value), std::move(exceptions)), std::move(top)};
  }

  element_type mul(const element_type& x, const element_type& y) const {
    const g_type top_inv = g_.inv(x.top);
    std::set<point_type> candidates;
    for (const auto& [p, v] : x.base.exceptions) candidates.insert(p);
    for (const auto& [p, v] : y.base.exceptions) candidates.insert(act(p, top_inv));
    a_type dflt = a_.mul(x.base.default_value, y.base.default_value);
    std::map<point_type, a_type> exc;
    for (const auto& p : candidates) {
      a_type v = a_.mul(x.base.at(p), y.base.at(act(p, x.top)));
      if (!(v == dflt)) exc.emplace(p, std::move(v));
    }
    return {canonical(std::move(dflt), std::move(exc)), g_.mul(x.top, y.top)};
  }

  element_type inv(const element_type& x) const {
    std::map<point_type, a_type> exc;
    for (const auto& [p, v] : x.base.exceptions) exc.emplace(act(p, x.top), a_.inv(v));
    return {canonical(a_.inv(x.base.default_value), std::move(exc)), g_.inv(x.top)};
  }

  /// The base-group element supported at the single point (copy, label).
  element_type base_gen(std::size_t copy, const g_type& label, const a_type& a) const {
    if (copy >= copies_) {
      throw Error("copy index " + std::to_string(copy) + " out of range (t = " + std::to_string(copies_) + ")");
    }
    if (a == a_.identity()) throw Error("base generator value must be nontrivial");
    std::map<point_type, a_type> exc{{point_type{copy, label}, a}};
    return {canonical(a_.identity(), std::move(exc)), g_.identity()};
  }

  /// (1, g): the complement copy of G.
  element_type pure_top(const g_type& g) const { return {{a_.identity(), {}}, g}; }

  /// Constant base function a with trivial top: the diagonal copy of A.
  element_type constant(const a_type& a) const { return {canonical(a, {}), g_.identity()}; }

  g_type top_project(const element_type& x) const { return x.top; }

  bool is_identity(const element_type& x) const {
    return x.base.exceptions.empty() && x.base.default_value == a_.identity() && x.top == g_.identity();
  }

  bool in_base_group(const element_type& x) const { return x.top == g_.identity(); }

  bool is_canonical(const element_type& x) const {
    for (const auto& [p, v] : x.base.exceptions) {
      if (v == x.base.default_value || p.copy >= copies_) return false;
    }
    return canonical(x.base.default_value, x.base.exceptions) == x.base;
  }

  base_type canonical(a_type dflt, std::map<point_type, a_type> exc) const {
    for (auto it = exc.begin(); it != exc.end();) {
      if (it->first.copy >= copies_) {
        throw Error("copy index " + std::to_string(it->first.copy) + " out of range (t = " +
                    std::to_string(copies_) + ")");
      }
      if (it->second == dflt) {
        it = exc.erase(it);
      } else {
        ++it;
      }
    }
    if (!omega_size_ || *omega_size_ > 2 * exc.size()) return {std::move(dflt), std::move(exc)};

    std::map<a_type, std::uint64_t> counts;
    for (const auto& [p, v] : exc) ++counts[v];
    const a_type* best = &dflt;
    std::uint64_t best_count = *omega_size_ - exc.size();
    for (const auto& [v, c] : counts) {
      if (c > best_count || (c == best_count && v < *best)) {
        best = &v;
        best_count = c;
      }
    }
    if (best == &dflt) return {std::move(dflt), std::move(exc)};
    if (!group_elements_) {
      throw BoundExceeded("canonical form needs the element list of the top group", exc.size());
    }
    base_type old{std::move(dflt), std::move(exc)};
    a_type winner = *best;
    std::map<point_type, a_type> rewritten;
    for (std::size_t k = 0; k < copies_; ++k) {
      for (const auto& g : *group_elements_) {
        point_type p{k, g};
        const a_type& v = old.at(p);
        if (!(v == winner)) rewritten.emplace(std::move(p), v);
      }
    }
    return {std::move(winner), std::move(rewritten)};
  }

 private:
  ACtx a_;
  GCtx g_;
  std::size_t copies_;
  std::optional<std::uint64_t> omega_size_;
  std::shared_ptr<const std::vector<g_type>> group_elements_;
};

// ---------------------------------------------------------------------------
// Subdirect powers: tuples (g_1, ..., g_t) of elements of the regular wreath
// product A wr G whose top components agree.

template <class A, class G>
struct SubdirectTuple {
  std::vector<WreathElement<A, G>> entries;

  friend bool operator==(const SubdirectTuple&, const SubdirectTuple&) = default;
  friend std::strong_ordering operator<=>(const SubdirectTuple& a, const SubdirectTuple& b) {
    if (auto c = a.entries.size() <=> b.entries.size(); c != 0) return c;
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
      if (auto c = a.entries[k] <=> b.entries[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }
};

template <GroupContext ACtx, GroupContext GCtx>
class SubdirectPower {
 public:
  using step_type = WreathStep<ACtx, GCtx>;
  using a_type = typename step_type::a_type;
  using g_type = typename step_type::g_type;
  using wreath_type = typename step_type::element_type;
  using element_type = SubdirectTuple<a_type, g_type>;
  using point_type = typename step_type::point_type;

  /// `regular` must have one copy; `wreath` has `width` copies.
  SubdirectPower(step_type regular, step_type wreath) : regular_(std::move(regular)), wreath_(std::move(wreath)) {
    if (regular_.copies() != 1) throw Error("the regular step must have exactly one copy");
  }

  static SubdirectPower over(ACtx a, const GeneratedGroup<GCtx>& g, std::size_t width) {
    return SubdirectPower(step_type::over(a, g, 1), step_type::over(a, g, width));
  }

  std::size_t width() const noexcept { return wreath_.copies(); }
  const step_type& regular() const noexcept { return regular_; }
  const step_type& wreath() const noexcept { return wreath_; }

  void validate(const element_type& u) const {
    if (u.entries.size() != width()) {
      throw Error("tuple has " + std::to_string(u.entries.size()) + " entries, expected " + std::to_string(width()));
    }
    for (const auto& g : u.entries) {
      if (!(g.top == u.entries.front().top)) throw Error("tuple entries lie in different S-cosets (tops differ)");
    }
  }

  element_type identity() const { return {std::vector<wreath_type>(width(), regular_.identity())}; }

  element_type mul(const element_type& u, const element_type& v) const {
    validate(u);
    validate(v);
    element_type out;
    for (std::size_t k = 0; k < width(); ++k) out.entries.push_back(regular_.mul(u.entries[k], v.entries[k]));
    return out;
  }

  element_type inv(const element_type& u) const {
    validate(u);
    element_type out;
    for (const auto& g : u.entries) out.entries.push_back(regular_.inv(g));
    return out;
  }

  /// (g_1, ..., g_t) with g_k = (f_k, x)  ->  (w, x) with w(k, label) = f_k(label).
  wreath_type to_wreath(const element_type& u) const {
    validate(u);
    const auto& first = u.entries.front().base.default_value;
    bool same_default = true;
    for (const auto& g : u.entries) same_default = same_default && g.base.default_value == first;
    std::map<point_type, a_type> exc;
    if (same_default) {
      for (std::size_t k = 0; k < width(); ++k) {
        for (const auto& [p, v] : u.entries[k].base.exceptions) exc.emplace(point_type{k, p.label}, v);
      }
    } else {
      for (const auto& p : wreath_.points()) {
        exc.emplace(p, u.entries[p.copy].base.at(point_type{0, p.label}));
      }
    }
    return wreath_.make(first, std::move(exc), u.entries.front().top);
  }

  element_type from_wreath(const wreath_type& w) const {
    std::vector<std::map<point_type, a_type>> parts(width());
    for (const auto& [p, v] : w.base.exceptions) parts.at(p.copy).emplace(point_type{0, p.label}, v);
    element_type out;
    for (auto& part : parts) out.entries.push_back(regular_.make(w.base.default_value, std::move(part), w.top));
    return out;
  }

 private:
  step_type regular_;
  step_type wreath_;
};

// ---------------------------------------------------------------------------
// Text form: W{default=<A>; <copy>:<G> -> <A>, ...; top=<G>}

template <class A, class G>
std::string to_text(const WreathElement<A, G>& x) {
  std::string out = "W{default=" + to_text(x.base.default_value) + "; ";
  bool first = true;
  for (const auto& [p, v] : x.base.exceptions) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(p.copy) + ":" + to_text(p.label) + " -> " + to_text(v);
  }
  out += "; top=" + to_text(x.top) + "}";
  return out;
}

template <class A, class G>
std::string to_text(const SubdirectTuple<A, G>& u) {
  std::string out = "[";
  for (std::size_t k = 0; k < u.entries.size(); ++k) out += (k ? ", " : "") + to_text(u.entries[k]);
  return out + "]";
}

namespace detail {

/// Returns the prefix of `s` up to the first occurrence of `delim` outside
/// any (), {} or [] nesting, and advances `s` past the delimiter.
inline std::string_view take_until(std::string_view& s, std::string_view delim) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (depth == 0 && s.substr(i).starts_with(delim)) {
      std::string_view out = s.substr(0, i);
      s.remove_prefix(i + delim.size());
      return trim(out);
    }
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (depth < 0) break;
  }
  throw ParseError("expected '" + std::string(delim) + "' in '" + std::string(s) + "'");
}

inline void expect(std::string_view& s, std::string_view token) {
  s = trim(s);
  if (!s.starts_with(token)) throw ParseError("expected '" + std::string(token) + "' at '" + std::string(s) + "'");
  s.remove_prefix(token.size());
}

}  // namespace detail

/// Raw parse of the wreath text form; the result still needs `step.make` to
/// be canonical. `parse_a` and `parse_g` receive trimmed substrings.
template <class A, class G, class ParseA, class ParseG>
std::tuple<A, std::map<OmegaPoint<G>, A>, G> parse_wreath_parts(std::string_view text, ParseA&& parse_a,
                                                                ParseG&& parse_g) {
  std::string_view s = detail::trim(text);
  detail::expect(s, "W{");
  if (!s.ends_with("}")) throw ParseError("wreath element must end with '}'");
  s.remove_suffix(1);
  detail::expect(s, "default=");
  A dflt = parse_a(detail::take_until(s, ";"));
  std::map<OmegaPoint<G>, A> exc;
  s = detail::trim(s);
  if (!s.starts_with(";")) {
    std::string_view list = detail::take_until(s, ";");
    while (!list.empty()) {
      std::string_view copy_text = detail::take_until(list, ":");
      std::size_t copy = parse_point(copy_text);
      G label = parse_g(detail::take_until(list, "->"));
      std::string_view value;
      try {
        value = detail::take_until(list, ",");
      } catch (const ParseError&) {
        value = detail::trim(list);
        list = {};
      }
      if (!exc.emplace(OmegaPoint<G>{copy, std::move(label)}, parse_a(value)).second) {
        throw ParseError("repeated exception point in '" + std::string(text) + "'");
      }
      list = detail::trim(list);
    }
  } else {
    s.remove_prefix(1);
  }
  detail::expect(s, "top=");
  G top = parse_g(detail::trim(s));
  return {std::move(dflt), std::move(exc), std::move(top)};
}

}  // namespace lucchini

template <class G>
struct std::hash<lucchini::OmegaPoint<G>> {
  std::size_t operator()(const lucchini::OmegaPoint<G>& p) const {
    std::size_t seed = p.copy;
    lucchini::detail::hash_append(seed, p.label);
    return seed;
  }
};

template <class A, class G>
struct std::hash<lucchini::WreathElement<A, G>> {
  std::size_t operator()(const lucchini::WreathElement<A, G>& x) const {
    std::size_t seed = x.base.exceptions.size();
    lucchini::detail::hash_append(seed, x.base.default_value);
    for (const auto& [p, v] : x.base.exceptions) {
      lucchini::detail::hash_append(seed, p);
      lucchini::detail::hash_append(seed, v);
    }
    lucchini::detail::hash_append(seed, x.top);
    return seed;
  }
};

template <class A, class G>
struct std::hash<lucchini::SubdirectTuple<A, G>> {
  std::size_t operator()(const lucchini::SubdirectTuple<A, G>& u) const {
    std::size_t seed = u.entries.size();
    for (const auto& g : u.entries) lucchini::detail::hash_append(seed, g);
    return seed;
  }
};
