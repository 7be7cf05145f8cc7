#pragma once

// Exhaustive finite-group machinery: element enumeration, conjugacy classes,
// normal closures, the complete list of normal subgroups, and commutator
// subgroups. Elements are addressed by their index in the canonically sorted
// element list, so every sort order below is the element order.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lucchini/detail/hash.hpp"
#include "lucchini/errors.hpp"

namespace lucchini {

template <class C>
concept GroupContext = requires(const C& c, const typename C::element_type& x) {
  { c.identity() } -> std::convertible_to<typename C::element_type>;
  { c.mul(x, x) } -> std::convertible_to<typename C::element_type>;
  { c.inv(x) } -> std::convertible_to<typename C::element_type>;
  { std::hash<typename C::element_type>{}(x) } -> std::convertible_to<std::size_t>;
} && std::totally_ordered<typename C::element_type>;

using Index = std::uint32_t;

inline constexpr std::size_t kDefaultEnumerationCap = 20000;

/// A subgroup of an enumerated parent, held as sorted member indices plus
/// the generators it was built from.
class Subgroup {
 public:
  Subgroup(std::vector<Index> members, std::vector<Index> gens, std::size_t parent_order)
      : members_(std::move(members)), gens_(std::move(gens)), mask_(parent_order, false) {
    std::sort(members_.begin(), members_.end());
    for (Index i : members_) mask_.at(i) = true;
  }

  std::size_t order() const noexcept { return members_.size(); }
  bool contains(Index i) const { return i < mask_.size() && mask_[i]; }
  const std::vector<Index>& members() const noexcept { return members_; }
  const std::vector<Index>& generators() const noexcept { return gens_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  std::vector<Index> members_;
  std::vector<Index> gens_;
  std::vector<bool> mask_;
};

template <GroupContext Ctx>
class GeneratedGroup {
 public:
  using element_type = typename Ctx::element_type;

  /// Breadth-first closure of `gens` under right multiplication. Throws
  /// BoundExceeded with the partial count when more than `cap` elements turn up.
  static GeneratedGroup enumerate(Ctx ctx, std::vector<element_type> gens,
                                  std::size_t cap = kDefaultEnumerationCap) {
    if (gens.empty()) throw Error("enumeration needs at least one generator");
    GeneratedGroup g(std::move(ctx), std::move(gens));
    std::vector<element_type> found{g.ctx_.identity()};
    std::unordered_map<element_type, Index> seen{{found.front(), 0}};
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& s : g.gens_) {
        element_type y = g.ctx_.mul(found[head], s);
        if (seen.contains(y)) continue;
        if (found.size() >= cap) throw BoundExceeded("group order exceeds enumeration cap " + std::to_string(cap), found.size() + 1);
        seen.emplace(y, static_cast<Index>(found.size()));
        found.push_back(std::move(y));
      }
    }
    std::sort(found.begin(), found.end());
    g.elements_ = std::move(found);
    for (Index i = 0; i < g.elements_.size(); ++i) g.index_.emplace(g.elements_[i], i);
    g.identity_ = g.index_of(g.ctx_.identity());
    for (const auto& s : g.gens_) g.gen_index_.push_back(g.index_of(s));
    g.inverses_.resize(g.elements_.size());
    for (Index i = 0; i < g.elements_.size(); ++i) {
      g.inverses_[i] = g.index_of(g.ctx_.inv(g.elements_[i]));
    }
    return g;
  }

  const Ctx& context() const noexcept { return ctx_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<element_type>& elements() const noexcept { return elements_; }
  const element_type& element(Index i) const { return elements_.at(i); }
  const std::vector<element_type>& generators() const noexcept { return gens_; }
  const std::vector<Index>& generator_indices() const noexcept { return gen_index_; }
  Index identity_index() const noexcept { return identity_; }

  std::optional<Index> find(const element_type& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Index index_of(const element_type& x) const {
    auto i = find(x);
    if (!i) throw Error("element does not belong to the enumerated group");
    return *i;
  }

  std::vector<Index> indices_of(std::span<const element_type> xs) const {
    std::vector<Index> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(index_of(x));
    return out;
  }

  Index mul(Index a, Index b) const { return index_of(ctx_.mul(elements_.at(a), elements_.at(b))); }
  Index inv(Index a) const { return inverses_.at(a); }
  /// g^-1 x g.
  Index conj(Index x, Index g) const { return mul(mul(inverses_.at(g), x), g); }
  /// a^-1 b^-1 a b.
  Index commutator(Index a, Index b) const { return mul(mul(inverses_.at(a), inverses_.at(b)), mul(a, b)); }

  Subgroup trivial() const { return Subgroup({identity_}, {}, order()); }

  Subgroup whole() const {
    std::vector<Index> all(order());
    for (Index i = 0; i < order(); ++i) all[i] = i;
    return Subgroup(std::move(all), gen_index_, order());
  }

  Subgroup generate(std::span<const Index> gens) const { return extend(trivial(), gens); }

  /// The subgroup generated by `h` together with `extra`.
  Subgroup extend(const Subgroup& h, std::span<const Index> extra) const {
    std::vector<Index> gens = h.generators();
    bool grew = false;
    for (Index x : extra) {
      if (!h.contains(x) && std::find(gens.begin(), gens.end(), x) == gens.end()) {
        gens.push_back(x);
        grew = true;
      }
    }
    if (!grew) return h;
    std::vector<bool> in(order(), false);
    std::vector<Index> members = h.members();
    for (Index i : members) in[i] = true;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (Index s : gens) {
        Index y = mul(members[head], s);
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
    }
    return Subgroup(std::move(members), std::move(gens), order());
  }

  /// Greedy generating set for the subgroup generated by `members`.
  std::vector<Index> small_generating_set(std::span<const Index> members) const {
    Subgroup k = trivial();
    for (Index x : members) {
      if (!k.contains(x)) {
        Index one[] = {x};
        k = extend(k, one);
      }
    }
    return k.generators();
  }

  /// Orbits under conjugation, each sorted, listed by smallest member.
  std::vector<std::vector<Index>> conjugacy_classes() const {
    std::vector<std::vector<Index>> classes;
    std::vector<bool> done(order(), false);
    for (Index x = 0; x < order(); ++x) {
      if (done[x]) continue;
      std::vector<Index> orbit{x};
      done[x] = true;
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (Index g : gen_index_) {
          Index y = conj(orbit[head], g);
          if (!done[y]) {
            done[y] = true;
            orbit.push_back(y);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      classes.push_back(std::move(orbit));
    }
    return classes;
  }

  /// Smallest subgroup containing `s` and normalised by every element of
  /// `ambient_gens`.
  Subgroup normal_closure_in(std::span<const Index> s, std::span<const Index> ambient_gens) const {
    Subgroup k = generate(s);
    for (bool changed = true; changed;) {
      changed = false;
      const std::vector<Index> gens = k.generators();
      for (Index x : gens) {
        for (Index g : ambient_gens) {
          Index c = conj(x, g);
          if (!k.contains(c)) {
            Index one[] = {c};
            k = extend(k, one);
            changed = true;
          }
        }
      }
    }
    return k;
  }

  Subgroup normal_closure(std::span<const Index> s) const { return normal_closure_in(s, gen_index_); }

  Subgroup normal_closure(std::span<const element_type> s) const {
    return normal_closure(std::span<const Index>(indices_of(s)));
  }

  /// Every normal subgroup, as the join-closure of the normal closures of
  /// single conjugacy classes. Sorted by order, then by member indices.
  std::vector<Subgroup> normal_subgroups(std::size_t bound = kDefaultEnumerationCap) const {
    if (order() > bound) throw BoundExceeded("normal subgroup enumeration bound " + std::to_string(bound), order());
    std::vector<Subgroup> found;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_digest;
    auto insert = [&](Subgroup n) {
      std::size_t digest = 0;
      for (Index i : n.members()) detail::hash_combine(digest, i);
      auto& bucket = by_digest[{n.order(), digest}];
      for (std::size_t k : bucket) {
        if (found[k] == n) return false;
      }
      bucket.push_back(found.size());
      found.push_back(std::move(n));
      return true;
    };
    insert(trivial());
    std::vector<Subgroup> atoms;
    for (const auto& cls : conjugacy_classes()) {
      Index rep[] = {cls.front()};
      Subgroup n = normal_closure_in(rep, gen_index_);
      if (std::find(atoms.begin(), atoms.end(), n) == atoms.end()) atoms.push_back(n);
      insert(std::move(n));
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (const auto& atom : atoms) {
        Subgroup base = found[i];
        insert(extend(base, atom.generators()));
      }
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
      if (a.order() != b.order()) return a.order() < b.order();
      return a.members() < b.members();
    });
    return found;
  }

  /// [<M>, <T>]: the normal closure, inside <M, T>, of the commutators of
  /// generator pairs.
  Subgroup commutator_subgroup(std::span<const Index> m, std::span<const Index> t) const {
    const std::vector<Index> gm = small_generating_set(m);
    const std::vector<Index> gt = small_generating_set(t);
    std::vector<Index> comms;
    for (Index a : gm) {
      for (Index b : gt) comms.push_back(commutator(a, b));
    }
    std::vector<Index> ambient = gm;
    ambient.insert(ambient.end(), gt.begin(), gt.end());
    return normal_closure_in(comms, ambient);
  }

  Subgroup commutator_of_sets(std::span<const element_type> m, std::span<const element_type> t) const {
    const auto mi = indices_of(m);
    const auto ti = indices_of(t);
    return commutator_subgroup(mi, ti);
  }

  bool is_abelian() const {
    for (Index a : gen_index_) {
      for (Index b : gen_index_) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  bool is_nonabelian_simple(std::size_t bound = kDefaultEnumerationCap) const {
    return !is_abelian() && normal_subgroups(bound).size() == 2;
  }

  /// Checks that `members` contains the identity, is closed under right
  /// multiplication by its own generating set, and equals what it generates.
  bool is_subgroup(std::span<const Index> members) const {
    std::vector<bool> in(order(), false);
    for (Index i : members) in.at(i) = true;
    if (!in[identity_]) return false;
    const auto gens = small_generating_set(members);
    for (Index x : members) {
      for (Index s : gens) {
        if (!in[mul(x, s)]) return false;
      }
    }
    return generate(gens).order() == static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  }

  /// Every member conjugated by every group generator stays inside.
  bool is_normal(const Subgroup& h) const {
    for (Index x : h.members()) {
      for (Index g : gen_index_) {
        if (!h.contains(conj(x, g))) return false;
      }
    }
    return true;
  }

 private:
  GeneratedGroup(Ctx ctx, std::vector<element_type> gens) : ctx_(std::move(ctx)), gens_(std::move(gens)) {}

  Ctx ctx_;
  std::vector<element_type> gens_;
  std::vector<element_type> elements_;
  std::unordered_map<element_type, Index> index_;
  std::vector<Index> gen_index_;
  std::vector<Index> inverses_;
  Index identity_ = 0;
};

template <GroupContext Ctx>
GeneratedGroup<Ctx> enumerate_elements(Ctx ctx, std::vector<typename Ctx::element_type> gens,
                                       std::size_t cap = kDefaultEnumerationCap) {
  return GeneratedGroup<Ctx>::enumerate(std::move(ctx), std::move(gens), cap);
}

/// One line of the subgroup report: `order=<n> normal=<bool> gens=[...]`.
/// Generators are a greedy generating set, printed with `to_text`.
template <GroupContext Ctx, class Printer>
std::string subgroup_report_line(const GeneratedGroup<Ctx>& g, const Subgroup& h, Printer&& print) {
  std::string out = "order=" + std::to_string(h.order()) + " normal=" + (g.is_normal(h) ? "true" : "false") + " gens=[";
  const auto gens = g.small_generating_set(h.members());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) out += ',';
    out += print(g.element(gens[k]));
  }
  return out + "]";
}

}  // namespace lucchini
