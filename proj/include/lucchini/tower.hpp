#pragma once

// Towers G_1 < G_2 = A_1 wr G_1 < ... with recursive elements, canonical
// lifts and projections, arithmetic in the dense subgroup of the inverse
// limit, diagonal embeddings of the A_i and the product-embedding pipeline.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lucchini/catalog.hpp"
#include "lucchini/config.hpp"
#include "lucchini/detail/hash.hpp"
#include "lucchini/errors.hpp"
#include "lucchini/group.hpp"
#include "lucchini/order_expr.hpp"
#include "lucchini/perm.hpp"
#include "lucchini/wreath.hpp"

namespace lucchini {

class TowerElement;
}  // namespace lucchini

template <>
struct std::hash<lucchini::TowerElement> {
  std::size_t operator()(const lucchini::TowerElement& x) const;
};

namespace lucchini {

/// An element of G_n: a G_1 permutation at level 1, otherwise a wreath
/// element whose top lies in G_{n-1} and whose base values lie in A_{n-1}.
class TowerElement {
 public:
  using Wreath = WreathElement<SparsePerm, TowerElement>;

  TowerElement() : level_(1), g1_(DensePerm::identity(1)), hash_(std::hash<DensePerm>{}(g1_)) {}
  explicit TowerElement(DensePerm g) : level_(1), g1_(std::move(g)), hash_(std::hash<DensePerm>{}(g1_)) {}
  explicit TowerElement(Wreath w) : level_(w.top.level() + 1) {
    hash_ = std::hash<Wreath>{}(w);
    detail::hash_combine(hash_, level_);
    w_ = std::make_shared<const Wreath>(std::move(w));
  }

  std::size_t level() const noexcept { return level_; }
  /// Level-1 payload.
  const DensePerm& g1() const {
    if (level_ != 1) throw Error("not a level-1 element");
    return g1_;
  }
  /// Wreath payload for level >= 2.
  const Wreath& wreath() const {
    if (level_ == 1) throw Error("level-1 elements have no wreath part");
    return *w_;
  }
  std::size_t hash() const noexcept { return hash_; }

  friend bool operator==(const TowerElement& a, const TowerElement& b) {
    if (a.level_ != b.level_ || a.hash_ != b.hash_) return false;
    if (a.level_ == 1) return a.g1_ == b.g1_;
    return a.w_ == b.w_ || *a.w_ == *b.w_;
  }

  friend std::strong_ordering operator<=>(const TowerElement& a, const TowerElement& b) {
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    if (a.level_ == 1) return a.g1_ <=> b.g1_;
    if (a.w_ == b.w_) return std::strong_ordering::equal;
    return *a.w_ <=> *b.w_;
  }

 private:
  std::size_t level_;
  DensePerm g1_;
  std::shared_ptr<const Wreath> w_;
  std::size_t hash_ = 0;
};

}  // namespace lucchini

inline std::size_t std::hash<lucchini::TowerElement>::operator()(const lucchini::TowerElement& x) const {
  return x.hash();
}

namespace lucchini {

/// `L1{<perm>}` at level 1, the wreath grammar above.
inline std::string to_text(const TowerElement& x) {
  if (x.level() == 1) return "L1{" + to_text(x.g1()) + "}";
  return to_text(x.wreath());
}

/// Canonical representative of an element of the dense subgroup of the
/// inverse limit: the lowest level at which it is defined.
struct ProfiniteElement {
  TowerElement rep;

  std::size_t level() const noexcept { return rep.level(); }
  friend bool operator==(const ProfiniteElement&, const ProfiniteElement&) = default;
  friend std::strong_ordering operator<=>(const ProfiniteElement& a, const ProfiniteElement& b) {
    return a.rep <=> b.rep;
  }
};

inline std::string to_text(const ProfiniteElement& x) { return to_text(x.rep); }

inline void PrintTo(const TowerElement& x, std::ostream* os) { *os << to_text(x); }
inline void PrintTo(const ProfiniteElement& x, std::ostream* os) { *os << to_text(x); }

class Tower;

/// Group context for G_level inside a tower.
struct TowerLevelCtx {
  using element_type = TowerElement;
  const Tower* tower = nullptr;
  std::size_t level = 1;

  TowerElement identity() const;
  TowerElement mul(const TowerElement& x, const TowerElement& y) const;
  TowerElement inv(const TowerElement& x) const;
};

using TowerStep = WreathStep<SparseSym, TowerLevelCtx>;

/// One factor of a product embedding.
struct EmbeddingFactor {
  MulTable table;
  std::size_t level = 1;
  /// Table indices of the generators used.
  std::vector<std::size_t> generators;
  /// Their images in Alt(degree) after Cayley embedding and parity padding.
  std::vector<SparsePerm> perms;
  std::size_t degree = 1;
  std::vector<ProfiniteElement> images;
};

struct EmbeddingMap {
  std::vector<EmbeddingFactor> factors;
};

class Tower {
 public:
  /// Element lists of G_i are kept when t_i |G_i| is at most this.
  static constexpr std::size_t kElementListCap = 4096;

  explicit Tower(TowerSpec spec, std::size_t cost_bound = kDefaultCostBound)
      : spec_(std::move(spec)),
        cost_bound_(cost_bound),
        g1_(enumerate_group(spec_.g1)) {
    for (std::size_t level = 1; level <= depth(); ++level) orders_.push_back(tower_order(spec_, level));
    identities_.push_back(TowerElement(g1_.context().identity()));
    for (std::size_t i = 1; i < depth(); ++i) {
      const LevelSpec& lv = spec_.levels[i - 1];
      std::optional<std::uint64_t> order;
      if (auto v = orders_[i - 1].evaluate(cost_bound_); v && *v <= BigInt(UINT64_MAX)) {
        order = static_cast<std::uint64_t>(*v);
      }
      std::shared_ptr<const std::vector<TowerElement>> elements;
      if (order && *order * lv.copies <= kElementListCap) {
        elements = std::make_shared<const std::vector<TowerElement>>(enumerate_level(i).elements());
      }
      steps_.push_back(std::make_unique<TowerStep>(SparseSym{}, TowerLevelCtx{this, i}, lv.copies, order, elements));
      identities_.push_back(TowerElement(steps_.back()->identity()));
      a_groups_.push_back(enumerate_a(lv));
    }
  }

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const TowerSpec& spec() const noexcept { return spec_; }
  std::size_t depth() const noexcept { return spec_.depth(); }
  std::size_t cost_bound() const noexcept { return cost_bound_; }
  const GeneratedGroup<DenseSym>& g1() const noexcept { return g1_; }
  std::size_t copies(std::size_t i) const { return level_spec(i).copies; }

  const LevelSpec& level_spec(std::size_t i) const {
    check_a_index(i);
    return spec_.levels[i - 1];
  }

  /// The step A_i wr G_i producing G_{i+1}.
  const TowerStep& step(std::size_t i) const {
    check_a_index(i);
    return *steps_[i - 1];
  }

  /// |G_level| as an exact expression.
  const OrderExpr& order(std::size_t level) const {
    check_level(level);
    return orders_[level - 1];
  }

  TowerElement identity(std::size_t level) const {
    check_level(level);
    return identities_[level - 1];
  }

  TowerElement mul(const TowerElement& x, const TowerElement& y) const {
    if (x.level() != y.level()) {
      throw Error("level mismatch: " + std::to_string(x.level()) + " vs " + std::to_string(y.level()));
    }
    if (x.level() == 1) return TowerElement(compose(x.g1(), y.g1()));
    return TowerElement(step(x.level() - 1).mul(x.wreath(), y.wreath()));
  }

  TowerElement inv(const TowerElement& x) const {
    if (x.level() == 1) return TowerElement(inverse(x.g1()));
    return TowerElement(step(x.level() - 1).inv(x.wreath()));
  }

  bool is_identity(const TowerElement& x) const { return x == identity(x.level()); }

  /// Iterated top projection down to level j.
  TowerElement project(TowerElement x, std::size_t j) const {
    if (j < 1 || j > x.level()) {
      throw Error("cannot project a level-" + std::to_string(x.level()) + " element to level " + std::to_string(j));
    }
    while (x.level() > j) {
      TowerElement top = x.wreath().top;
      x = std::move(top);
    }
    return x;
  }

  /// Canonical lift (identity base, x) iterated up to level m.
  TowerElement lift(TowerElement x, std::size_t m) const {
    check_level(m);
    if (m < x.level()) throw Error("cannot lift to a lower level");
    while (x.level() < m) x = TowerElement(step(x.level()).pure_top(x));
    return x;
  }

  ProfiniteElement reduce(TowerElement x) const {
    while (x.level() > 1) {
      const auto& w = x.wreath();
      if (!w.base.exceptions.empty() || !w.base.default_value.is_identity()) break;
      TowerElement top = w.top;
      x = std::move(top);
    }
    return {std::move(x)};
  }

  ProfiniteElement p_identity() const { return {identity(1)}; }

  ProfiniteElement p_mul(const ProfiniteElement& x, const ProfiniteElement& y) const {
    std::size_t m = std::max(x.level(), y.level());
    return reduce(mul(lift(x.rep, m), lift(y.rep, m)));
  }

  ProfiniteElement p_inv(const ProfiniteElement& x) const { return reduce(inv(x.rep)); }

  bool p_eq(const ProfiniteElement& x, const ProfiniteElement& y) const { return reduce(x.rep) == reduce(y.rep); }

  ProfiniteElement p_commutator(const ProfiniteElement& x, const ProfiniteElement& y) const {
    return p_mul(p_mul(p_inv(x), p_inv(y)), p_mul(x, y));
  }

  /// x lies in N_j = ker(pi_j).
  bool kernel_member(const ProfiniteElement& x, std::size_t j) const {
    check_level(j);
    if (j > x.level()) return x.level() == 1 && is_identity(x.rep);
    return is_identity(project(x.rep, j));
  }

  /// Base generator of T_i at (copy, label) with value a; an element of G_{i+1}.
  TowerElement base_gen(std::size_t i, std::size_t copy, const TowerElement& label, const SparsePerm& a) const {
    require_a_member(i, a);
    if (label.level() != i) throw Error("label must lie in G_" + std::to_string(i));
    return TowerElement(step(i).base_gen(copy, label, a));
  }

  /// The diagonal copy of A_i: constant base function a, trivial top.
  ProfiniteElement diag_embed(const SparsePerm& a, std::size_t i) const {
    require_a_member(i, a);
    return reduce(TowerElement(step(i).constant(a)));
  }

  /// Whether a lies in A_i (keys inside the domain, parity for Alt).
  bool in_a(std::size_t i, const SparsePerm& a) const { return !a_membership_error(i, a); }

  /// Generators of A_i; for very large degrees only the first `limit` of
  /// the standard 3-cycles.
  std::vector<SparsePerm> a_generators(std::size_t i, std::size_t limit = 64) const {
    const LevelSpec& lv = level_spec(i);
    std::vector<SparsePerm> out;
    if (lv.symbolic() || lv.group.family == Family::alternating) {
      std::size_t n = lv.numeric_degree.value_or(limit + 2);
      for (std::size_t k = 2; k < n && out.size() < limit; ++k) {
        out.push_back(SparsePerm::from_cycles({{"0", "1", std::to_string(k)}}));
      }
      return out;
    }
    for (const auto& g : permutation_generators(lv.group)) {
      if (!g.is_identity()) out.push_back(to_sparse(g));
    }
    return out;
  }

  /// Generators of G_level.
  std::vector<TowerElement> generators(std::size_t level) const {
    check_level(level);
    std::vector<TowerElement> out;
    if (level == 1) {
      for (const auto& g : g1_.generators()) out.emplace_back(g);
      return out;
    }
    const std::size_t i = level - 1;
    for (const auto& g : generators(i)) out.push_back(lift(g, level));
    for (std::size_t k = 0; k < copies(i); ++k) {
      for (const auto& a : a_generators(i)) out.push_back(base_gen(i, k, identity(i), a));
    }
    return out;
  }

  GeneratedGroup<TowerLevelCtx> enumerate_level(std::size_t level, std::size_t cap = kDefaultEnumerationCap) const {
    return enumerate_elements(TowerLevelCtx{this, level}, generators(level), cap);
  }

  /// Uniform element of A_i when enumerable, otherwise a random even
  /// permutation of a few small points.
  SparsePerm random_a(std::size_t i, std::mt19937_64& rng) const {
    const auto& group = a_groups_.at(i - 1);
    if (group) return to_sparse(group->element(static_cast<Index>(rng() % group->order())));
    const LevelSpec& lv = level_spec(i);
    std::size_t n = std::min<std::size_t>(lv.numeric_degree.value_or(8), 8);
    std::vector<Point> images(n);
    for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<Point>(k);
    std::shuffle(images.begin(), images.end(), rng);
    DensePerm p(images);
    bool need_even = lv.symbolic() || lv.group.family == Family::alternating;
    if (need_even && parity(p) == Parity::odd) p = compose(p, DensePerm::from_cycles(n, {{0, 1}}));
    return to_sparse(p);
  }

  /// Almost-constant random element of G_level with a few exceptions per layer.
  TowerElement random_element(std::size_t level, std::mt19937_64& rng) const {
    check_level(level);
    if (level == 1) return TowerElement(g1_.element(static_cast<Index>(rng() % g1_.order())));
    const std::size_t i = level - 1;
    TowerElement top = random_element(i, rng);
    SparsePerm dflt = rng() % 2 ? random_a(i, rng) : SparsePerm{};
    std::map<TowerStep::point_type, SparsePerm> exc;
    std::size_t count = rng() % 3;
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t copy = rng() % copies(i);
      exc[{copy, random_element(i, rng)}] = random_a(i, rng);
    }
    return TowerElement(step(i).make(std::move(dflt), std::move(exc), std::move(top)));
  }

  ProfiniteElement random_profinite(std::mt19937_64& rng) const {
    std::size_t level = 1 + rng() % depth();
    return reduce(random_element(level, rng));
  }

  /// Smallest power k >= 1 with x^k = 1, or nullopt when it exceeds `cap`.
  std::optional<std::uint64_t> element_order(const TowerElement& x, std::uint64_t cap = 100000) const {
    TowerElement y = x;
    for (std::uint64_t k = 1; k <= cap; ++k) {
      if (is_identity(y)) return k;
      y = mul(y, x);
    }
    return std::nullopt;
  }

  /// Parses the text form, validating membership at every layer.
  TowerElement parse(std::string_view text) const {
    std::string_view s = detail::trim(text);
    if (s.starts_with("L1{")) {
      if (!s.ends_with("}")) throw ParseError("level-1 element must end with '}'");
      DensePerm p = parse_dense_perm(s.substr(3, s.size() - 4), g1_.context().degree);
      if (!g1_.find(p)) throw ParseError("'" + to_text(p) + "' is not an element of G_1");
      return TowerElement(std::move(p));
    }
    if (!s.starts_with("W{")) throw ParseError("expected 'L1{' or 'W{' at '" + std::string(s) + "'");
    auto parse_g = [this](std::string_view t) { return parse(t); };
    auto parse_a = [](std::string_view t) { return parse_sparse_perm(t); };
    auto [dflt, exc, top] = parse_wreath_parts<SparsePerm, TowerElement>(s, parse_a, parse_g);
    const std::size_t i = top.level();
    if (i + 1 > depth()) throw ParseError("element level " + std::to_string(i + 1) + " exceeds tower depth");
    auto check_a = [&](const SparsePerm& a) {
      if (auto err = a_membership_error(i, a)) throw ParseError(*err);
    };
    check_a(dflt);
    for (const auto& [p, v] : exc) {
      if (p.label.level() != i) throw ParseError("exception label is not in G_" + std::to_string(i));
      if (p.copy >= copies(i)) throw ParseError("copy index " + std::to_string(p.copy) + " out of range");
      check_a(v);
    }
    return TowerElement(step(i).make(std::move(dflt), std::move(exc), std::move(top)));
  }

  ProfiniteElement parse_profinite(std::string_view text) const { return reduce(parse(text)); }

  /// Smallest level i whose A_i certifiably has degree >= m + 2.
  std::size_t min_embedding_level(const BigInt& m) const {
    const BigInt need = m + 2;
    const Real ln_need = log(Real(need));
    std::optional<Real> prev_lo;
    bool prev_huge = false;
    for (std::size_t i = 1; i < depth(); ++i) {
      const LevelSpec& lv = level_spec(i);
      std::optional<Real> lo;
      bool huge = false;
      if (auto ok = lv.degree.at_least(need, cost_bound_); ok && *ok) return i;
      if (auto b = lv.degree.log_bounds()) {
        lo = b->lo;
      } else if (spec_.lucchini_preset && (prev_huge || prev_lo)) {
        // d_i >= |A_{i-1}| = d_{i-1}!/2 >= 2^{d_{i-1}}.
        if (prev_huge || *prev_lo > detail::exp_limit()) {
          huge = true;
        } else {
          lo = exp(*prev_lo) * log(Real(2));
        }
      }
      if (huge || (lo && *lo >= ln_need * (1 + detail::log_slack()))) {
        if (lv.symbolic() || lv.group.family == Family::alternating || lv.group.family == Family::symmetric) return i;
      }
      prev_lo = lo;
      prev_huge = huge;
    }
    throw Error("no level up to depth " + std::to_string(depth()) + " certifiably has degree >= " + need.str());
  }

  /// Cayley embedding plus parity padding of each H_k into A_{i_k},
  /// followed by the diagonal embedding.
  EmbeddingMap embed_product(const std::vector<MulTable>& groups, const std::vector<std::size_t>& levels) const {
    if (groups.size() != levels.size()) throw Error("need one level per group");
    EmbeddingMap out;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (k > 0 && levels[k] <= levels[k - 1]) throw Error("levels must be strictly increasing");
      const std::size_t i = levels[k];
      check_a_index(i);
      EmbeddingFactor f{groups[k], i, groups[k].generators(), {}, 1, {}};
      const auto regular = cayley_embed(f.table);
      std::vector<DensePerm> gens;
      for (std::size_t g : f.generators) gens.push_back(regular[g]);
      const std::size_t m = f.table.order();
      AltEmbedding alt = into_alt(gens, m);
      f.degree = alt.degree;
      const LevelSpec& lv = level_spec(i);
      auto fits = lv.degree.at_least(BigInt(f.degree), cost_bound_);
      if (!fits || !*fits) {
        throw Error("group of order " + std::to_string(m) + " needs degree >= " + std::to_string(f.degree) +
                    " but A_" + std::to_string(i) + " = " + lv.name());
      }
      for (const auto& p : alt.images) {
        SparsePerm a = to_sparse(p);
        if (auto err = a_membership_error(i, a)) throw Error("embedding image not in A_" + std::to_string(i) + ": " + *err);
        f.perms.push_back(a);
        f.images.push_back(diag_embed(a, i));
      }
      out.factors.push_back(std::move(f));
    }
    return out;
  }

  /// Image of every element of one factor, extended from the generators by
  /// breadth-first search over the table.
  std::vector<ProfiniteElement> extend_factor(const EmbeddingFactor& f) const {
    const std::size_t m = f.table.order();
    std::vector<std::optional<ProfiniteElement>> img(m);
    img[f.table.identity()] = p_identity();
    std::vector<std::size_t> queue{f.table.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t x = queue[q];
      for (std::size_t g = 0; g < f.generators.size(); ++g) {
        std::size_t y = f.table.mul(x, f.generators[g]);
        if (img[y]) continue;
        img[y] = p_mul(*img[x], f.images[g]);
        queue.push_back(y);
      }
    }
    std::vector<ProfiniteElement> out;
    for (auto& v : img) {
      if (!v) throw Error("generators do not generate the table group");
      out.push_back(std::move(*v));
    }
    return out;
  }

 private:
  void check_level(std::size_t level) const {
    if (level < 1 || level > depth()) {
      throw Error("level " + std::to_string(level) + " out of range 1.." + std::to_string(depth()));
    }
  }

  void check_a_index(std::size_t i) const {
    if (i < 1 || i >= depth()) {
      throw Error("level index " + std::to_string(i) + " out of range 1.." + std::to_string(depth() - 1));
    }
  }

  void require_a_member(std::size_t i, const SparsePerm& a) const {
    if (auto err = a_membership_error(i, a)) throw Error(*err);
  }

  std::optional<std::string> a_membership_error(std::size_t i, const SparsePerm& a) const {
    const LevelSpec& lv = level_spec(i);
    std::optional<DigitBounds> digits;
    for (const auto& [key, image] : a.moved()) {
      if (!is_decimal_key(key)) return "point '" + key + "' is not a decimal index";
      if (lv.numeric_degree) {
        if (key.size() > 19 || parse_point(key) >= *lv.numeric_degree) {
          return "point " + key + " outside the domain of A_" + std::to_string(i) + " = " + lv.name();
        }
      } else {
        if (!digits) digits = lv.degree.digit_bounds();
        if (!digits || BigInt(key.size()) >= digits->lo) {
          return "point " + key + " not certifiably inside the domain of A_" + std::to_string(i);
        }
      }
    }
    if (lv.symbolic() || lv.group.family == Family::alternating) {
      if (parity(a) == Parity::odd) return to_text(a) + " is odd, not in A_" + std::to_string(i) + " = " + lv.name();
      return std::nullopt;
    }
    if (lv.group.family == Family::symmetric) return std::nullopt;
    const auto& group = a_groups_.at(i - 1);
    if (!group) return "membership in A_" + std::to_string(i) + " cannot be decided";
    if (!group->find(to_dense(a, group->context().degree))) {
      return to_text(a) + " is not in A_" + std::to_string(i) + " = " + lv.name();
    }
    return std::nullopt;
  }

  static std::optional<GeneratedGroup<DenseSym>> enumerate_a(const LevelSpec& lv) {
    if (lv.symbolic()) return std::nullopt;
    auto order = level_group_order(lv).evaluate(64);
    if (!order || *order > kDefaultEnumerationCap) return std::nullopt;
    return enumerate_group(lv.group);
  }

  TowerSpec spec_;
  std::size_t cost_bound_;
  GeneratedGroup<DenseSym> g1_;
  std::vector<OrderExpr> orders_;
  std::vector<TowerElement> identities_;
  std::vector<std::unique_ptr<TowerStep>> steps_;
  std::vector<std::optional<GeneratedGroup<DenseSym>>> a_groups_;
};

inline TowerElement TowerLevelCtx::identity() const { return tower->identity(level); }
inline TowerElement TowerLevelCtx::mul(const TowerElement& x, const TowerElement& y) const {
  return tower->mul(x, y);
}
inline TowerElement TowerLevelCtx::inv(const TowerElement& x) const { return tower->inv(x); }

}  // namespace lucchini
