#pragma once

// Brute-force and sampled checks of the structural facts behind the tower
// construction. Every check returns a report; a FAIL always carries a
// concrete witness that can be re-checked independently. Each check also
// accepts an injected component (action, generator source, isomorphism,
// diagonal map, embedding images) so that corrupted fixtures can be run.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lucchini/catalog.hpp"
#include "lucchini/errors.hpp"
#include "lucchini/group.hpp"
#include "lucchini/order_expr.hpp"
#include "lucchini/perm.hpp"
#include "lucchini/tower.hpp"
#include "lucchini/wreath.hpp"

namespace lucchini {

struct VerifyOptions {
  /// Largest group that is enumerated.
  std::size_t bound = kDefaultEnumerationCap;
  /// Default number of sampled pairs.
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

enum class ModeRequest { automatic, exhaustive, sampled };

struct CheckMode {
  bool exhaustive = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  std::string text() const {
    if (exhaustive) return "exhaustive";
    return "sampled(" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
  }
};

struct VerificationReport {
  std::string name;
  std::string instance;
  CheckMode mode;
  bool pass = true;
  /// "-" for a plain pass.
  std::string witness = "-";
  double ms = 0;

  std::string text_line(bool timing = false) const {
    return "CHECK " + name + " instance=" + instance + " mode=" + mode.text() + " verdict=" + (pass ? "PASS" : "FAIL") +
           " witness=" + witness + " time=" + (timing ? format_ms() : "-");
  }

  nlohmann::json to_json(bool timing = false) const {
    nlohmann::json j;
    j["check"] = name;
    j["instance"] = instance;
    j["mode"] = mode.text();
    j["verdict"] = pass ? "PASS" : "FAIL";
    j["witness"] = witness;
    j["time"] = timing ? nlohmann::json(format_ms()) : nlohmann::json("-");
    return j;
  }

 private:
  std::string format_ms() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    return buf;
  }
};

namespace detail {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Per-check seed so that checks do not share random streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

inline BigInt wreath_order(std::size_t a, std::size_t g, std::size_t t) {
  return boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(t * g)) * g;
}

inline std::string point_text(const OmegaPoint<TowerElement>& p) {
  return "(" + std::to_string(p.copy) + "," + to_text(p.label) + ")";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Free action of G_i on Omega_i.

using ActionFn = std::function<OmegaPoint<TowerElement>(const OmegaPoint<TowerElement>&, const TowerElement&)>;

inline VerificationReport check_free_action(const Tower& tower, std::size_t i, ModeRequest request = ModeRequest::automatic,
                                            const VerifyOptions& opt = {}, ActionFn action = {}) {
  detail::Stopwatch sw;
  const TowerStep& step = tower.step(i);
  if (!action) action = [&step](const auto& p, const auto& g) { return step.act(p, g); };
  VerificationReport r{"free", tower.spec().summary() + ";level=" + std::to_string(i), {}, true, "-", 0};
  auto fail = [&](const OmegaPoint<TowerElement>& p, const TowerElement& g) {
    r.pass = false;
    r.witness = "point=" + detail::point_text(p) + " g=" + to_text(g);
  };

  std::optional<std::uint64_t> order;
  if (auto v = tower.order(i).evaluate(64); v && *v <= opt.bound) order = static_cast<std::uint64_t>(*v);
  // Exhaustive costs |G_i|^2 t_i actions.
  bool exhaustive = request == ModeRequest::exhaustive ||
                    (request == ModeRequest::automatic && order && *order * *order * tower.copies(i) <= 4000000);
  if (exhaustive) {
    if (!order) throw BoundExceeded("level " + std::to_string(i) + " is not enumerable", opt.bound);
    auto g = tower.enumerate_level(i, opt.bound);
    for (std::size_t k = 0; k < tower.copies(i) && r.pass; ++k) {
      for (const auto& label : g.elements()) {
        OmegaPoint<TowerElement> p{k, label};
        for (const auto& x : g.elements()) {
          if (!tower.is_identity(x) && action(p, x) == p) {
            fail(p, x);
            break;
          }
        }
        if (!r.pass) break;
      }
    }
    r.mode = {true, 0, 0};
  } else {
    std::uint64_t seed = detail::derive_seed(opt.seed, "free");
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      TowerElement x = tower.random_element(i, rng);
      if (tower.is_identity(x)) continue;
      OmegaPoint<TowerElement> p{rng() % tower.copies(i), tower.random_element(i, rng)};
      if (action(p, x) == p) {
        fail(p, x);
        break;
      }
    }
    r.mode = {false, opt.samples, opt.seed};
  }
  r.ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Normal subgroups of A wr G1 with nontrivial top image contain the base T
// and satisfy [N, T] = T.

using DenseWreathStep = WreathStep<DenseSym, DenseSym>;

inline VerificationReport check_hji_step(const GroupDescriptor& a, const GroupDescriptor& g1, std::size_t t,
                                         const VerifyOptions& opt = {}, bool enforce_hypothesis = true) {
  detail::Stopwatch sw;
  if (t < 1) throw Error("t must be at least 1");
  auto ag = enumerate_group(a, opt.bound);
  auto gg = enumerate_group(g1, opt.bound);
  if (enforce_hypothesis && !ag.is_nonabelian_simple(opt.bound)) {
    throw HypothesisError("check refused: A = " + a.name() + " is not nonabelian simple");
  }
  BigInt order = detail::wreath_order(ag.order(), gg.order(), t);
  if (order > opt.bound) {
    throw BoundExceeded("|A wr G1| = " + order.str() + " exceeds the enumeration bound " + std::to_string(opt.bound),
                        opt.bound);
  }
  auto step = DenseWreathStep::over(ag.context(), gg, t);
  std::vector<DenseWreathStep::element_type> gens;
  for (const auto& x : gg.generators()) gens.push_back(step.pure_top(x));
  for (std::size_t k = 0; k < t; ++k) {
    for (const auto& s : ag.generators()) {
      if (!s.is_identity()) gens.push_back(step.base_gen(k, gg.context().identity(), s));
    }
  }
  auto w = enumerate_elements(step, gens, opt.bound);
  std::vector<Index> base;
  for (Index x = 0; x < w.order(); ++x) {
    if (step.in_base_group(w.element(x))) base.push_back(x);
  }
  Subgroup tsub(base, {}, w.order());

  VerificationReport r{"hji", "A=" + a.name() + ";G1=" + g1.name() + ";t=" + std::to_string(t), {true, 0, 0},
                       true, "-", 0};
  auto print = [](const DenseWreathStep::element_type& x) { return to_text(x); };
  for (const auto& n : w.normal_subgroups(opt.bound)) {
    bool top_nontrivial = false;
    for (Index x : n.members()) top_nontrivial = top_nontrivial || !tsub.contains(x);
    if (!top_nontrivial) continue;
    std::string failed;
    if (!(w.commutator_subgroup(n.members(), base) == tsub)) {
      failed = "commutator";
    } else {
      for (Index x : base) {
        if (!n.contains(x)) {
          failed = "containment";
          break;
        }
      }
    }
    if (!failed.empty()) {
      r.pass = false;
      r.witness = "failed=" + failed + " N=" + subgroup_report_line(w, n, print);
      break;
    }
  }
  r.ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Kernel generators: canonical base generators of T_i lie in N_j for
// j <= i and survive in G_{i+1}; the kernels form a chain with trivial
// intersection at finite scope.

using GeneratorSource = std::function<std::vector<TowerElement>(std::size_t i)>;

inline std::vector<TowerElement> canonical_base_generators(const Tower& tower, std::size_t i) {
  std::vector<TowerElement> out;
  for (std::size_t k = 0; k < tower.copies(i); ++k) {
    for (const auto& a : tower.a_generators(i)) out.push_back(tower.base_gen(i, k, tower.identity(i), a));
  }
  return out;
}

inline VerificationReport check_hered_generators(const Tower& tower, std::size_t j, std::size_t L,
                                                 const VerifyOptions& opt = {}, GeneratorSource source = {}) {
  detail::Stopwatch sw;
  if (j < 1 || j >= L || L > tower.depth()) {
    throw Error("need 1 <= j < L <= depth (j=" + std::to_string(j) + ", L=" + std::to_string(L) +
                ", depth=" + std::to_string(tower.depth()) + ")");
  }
  if (!source) source = [&tower](std::size_t i) { return canonical_base_generators(tower, i); };
  const std::size_t samples = std::min<std::size_t>(opt.samples, 1000);
  VerificationReport r{"hered",
                       tower.spec().summary() + ";j=" + std::to_string(j) + ";L=" + std::to_string(L),
                       {false, samples, opt.seed},
                       true,
                       "-",
                       0};
  auto fail = [&](std::string what, const TowerElement& x) {
    r.pass = false;
    r.witness = what + " element=" + to_text(x);
  };

  for (std::size_t i = j; i < L && r.pass; ++i) {
    for (const auto& b : source(i)) {
      if (b.level() != i + 1) {
        fail("level@" + std::to_string(i), b);
        break;
      }
      TowerElement x = tower.lift(b, L);
      ProfiniteElement p = tower.reduce(x);
      for (std::size_t l = 1; l <= i && r.pass; ++l) {
        if (!tower.kernel_member(p, l)) fail("kernel@" + std::to_string(l), b);
      }
      if (r.pass && tower.project(x, i + 1) != b) fail("projection@" + std::to_string(i + 1), b);
      if (!r.pass) break;
    }
  }

  std::mt19937_64 rng(detail::derive_seed(opt.seed, "hered"));
  for (std::size_t s = 0; s < samples && r.pass; ++s) {
    // y pi_l(y)^-1 lifted lies in N_l.
    std::size_t level = 1 + rng() % L;
    TowerElement y = tower.random_element(level, rng);
    std::size_t l = 1 + rng() % level;
    TowerElement x = s % 2 ? tower.mul(y, tower.lift(tower.inv(tower.project(y, l)), level)) : y;
    ProfiniteElement p = tower.reduce(x);
    bool in_all = true;
    for (std::size_t k = L; k >= 1; --k) {
      bool in_k = tower.kernel_member(p, k);
      if (in_k && k > 1 && !tower.kernel_member(p, k - 1)) {
        fail("chain@" + std::to_string(k), x);
        break;
      }
      in_all = in_all && in_k;
    }
    if (r.pass && in_all && !tower.is_identity(p.rep)) fail("intersection", x);
  }
  r.ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Subdirect power versus intransitive wreath product.

using DenseSubdirect = SubdirectPower<DenseSym, DenseSym>;
using SubdirectIso = std::function<DenseWreathStep::element_type(const DenseSubdirect::element_type&)>;

inline VerificationReport check_subdirect_equivalence(const GroupDescriptor& a, const GroupDescriptor& x1,
                                                      std::size_t t, ModeRequest request = ModeRequest::automatic,
                                                      const VerifyOptions& opt = {}, SubdirectIso iso = {}) {
  detail::Stopwatch sw;
  if (t < 1) throw Error("t must be at least 1");
  auto ag = enumerate_group(a, opt.bound);
  auto xg = enumerate_group(x1, opt.bound);
  auto power = DenseSubdirect::over(ag.context(), xg, t);
  const auto& wstep = power.wreath();
  if (!iso) iso = [&power](const auto& u) { return power.to_wreath(u); };
  BigInt order = detail::wreath_order(ag.order(), xg.order(), t);
  bool exhaustive = request == ModeRequest::exhaustive || (request == ModeRequest::automatic && order <= opt.bound);
  if (exhaustive && order > opt.bound) {
    throw BoundExceeded("subdirect power of order " + order.str() + " exceeds the bound", opt.bound);
  }
  VerificationReport r{"subdirect", "A=" + a.name() + ";X1=" + x1.name() + ";t=" + std::to_string(t), {}, true, "-", 0};
  auto fail = [&](const std::string& what, const DenseSubdirect::element_type& u,
                  const std::optional<DenseSubdirect::element_type>& v) {
    r.pass = false;
    r.witness = "failed=" + what + " u=" + to_text(u) + (v ? " v=" + to_text(*v) : "");
  };
  auto check_one = [&](const DenseSubdirect::element_type& u) {
    auto w = iso(u);
    if (!wstep.is_canonical(w) || power.from_wreath(w) != u) fail("inverse", u, std::nullopt);
  };
  auto check_pair = [&](const DenseSubdirect::element_type& u, const DenseSubdirect::element_type& v) {
    if (iso(power.mul(u, v)) != wstep.mul(iso(u), iso(v))) fail("multiplicative", u, v);
  };

  if (exhaustive) {
    // The tuples with equal tops, generated by diagonal tops and single-entry base generators.
    std::vector<DenseSubdirect::element_type> gens;
    const auto& reg = power.regular();
    for (const auto& x : xg.generators()) gens.push_back({std::vector(t, reg.pure_top(x))});
    for (std::size_t k = 0; k < t; ++k) {
      for (const auto& s : ag.generators()) {
        if (s.is_identity()) continue;
        auto u = power.identity();
        u.entries[k] = reg.base_gen(0, xg.context().identity(), s);
        gens.push_back(u);
      }
    }
    auto sub = enumerate_elements(power, gens, opt.bound);
    std::map<DenseWreathStep::element_type, Index> images;
    for (Index k = 0; k < sub.order() && r.pass; ++k) {
      const auto& u = sub.element(k);
      check_one(u);
      auto [it, fresh] = images.emplace(iso(u), k);
      if (r.pass && !fresh) fail("injective", u, sub.element(it->second));
    }
    if (r.pass && BigInt(images.size()) != order) {
      r.pass = false;
      r.witness = "failed=surjective images=" + std::to_string(images.size()) + " expected=" + order.str();
    }
    for (Index p = 0; p < sub.order() && r.pass; ++p) {
      for (Index q = 0; q < sub.order() && r.pass; ++q) check_pair(sub.element(p), sub.element(q));
    }
    r.mode = {true, 0, 0};
  } else {
    std::mt19937_64 rng(detail::derive_seed(opt.seed, "subdirect"));
    const auto& reg = power.regular();
    auto pick_a = [&] { return ag.element(static_cast<Index>(rng() % ag.order())); };
    auto random_tuple = [&] {
      auto top = xg.element(static_cast<Index>(rng() % xg.order()));
      DenseSubdirect::element_type u;
      for (std::size_t k = 0; k < t; ++k) {
        std::map<DenseWreathStep::point_type, DensePerm> exc;
        for (const auto& label : xg.elements()) {
          if (rng() % 2) exc.emplace(DenseWreathStep::point_type{0, label}, pick_a());
        }
        u.entries.push_back(reg.make(pick_a(), std::move(exc), top));
      }
      return u;
    };
    std::map<DenseWreathStep::element_type, DenseSubdirect::element_type> seen;
    for (std::size_t s = 0; s < opt.samples && r.pass; ++s) {
      auto u = random_tuple(), v = random_tuple();
      check_one(u);
      if (r.pass) check_pair(u, v);
      if (r.pass) {
        auto [it, fresh] = seen.emplace(iso(u), u);
        if (!fresh && it->second != u) fail("injective", u, it->second);
      }
    }
    r.mode = {false, opt.samples, opt.seed};
  }
  r.ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Diagonal copies of A_i and A_j commute for i != j.

using DiagFn = std::function<ProfiniteElement(const SparsePerm&, std::size_t)>;

inline VerificationReport check_diag_commute(const Tower& tower, std::size_t i, std::size_t j, DiagFn diag = {}) {
  detail::Stopwatch sw;
  if (i == j) throw Error("diagonal copies at the same level need not commute (i = j = " + std::to_string(i) + ")");
  if (!diag) diag = [&tower](const SparsePerm& a, std::size_t k) { return tower.diag_embed(a, k); };
  VerificationReport r{"diag",
                       tower.spec().summary() + ";i=" + std::to_string(i) + ";j=" + std::to_string(j),
                       {true, 0, 0},
                       true,
                       "-",
                       0};
  auto gi = tower.a_generators(i, 8), gj = tower.a_generators(j, 8);
  gi.insert(gi.begin(), SparsePerm{});
  gj.insert(gj.begin(), SparsePerm{});
  for (const auto& a : gi) {
    for (const auto& b : gj) {
      auto c = tower.p_commutator(diag(a, i), diag(b, j));
      if (!tower.is_identity(c.rep)) {
        r.pass = false;
        r.witness = "a=" + to_text(a) + " b=" + to_text(b) + " commutator=" + to_text(c);
        r.ms = sw.ms();
        return r;
      }
    }
  }
  r.ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// The product embedding is an injective homomorphism.

inline std::string embedding_certificate(const EmbeddingMap& map) {
  std::string out = "cert{";
  bool first = true;
  for (std::size_t k = 0; k < map.factors.size(); ++k) {
    const auto& f = map.factors[k];
    for (std::size_t g = 0; g < f.generators.size(); ++g) {
      out += (first ? "" : "; ") + std::string("H") + std::to_string(k + 1) + "[" + std::to_string(f.generators[g]) +
             "]@" + std::to_string(f.level) + "->" + to_text(f.images[g]);
      first = false;
    }
  }
  return out + "}";
}

inline VerificationReport check_embedding(const Tower& tower, const EmbeddingMap& map, const VerifyOptions& opt = {}) {
  detail::Stopwatch sw;
  std::string groups, levels;
  std::size_t total = 1;
  std::vector<std::vector<ProfiniteElement>> factor_images;
  for (std::size_t k = 0; k < map.factors.size(); ++k) {
    groups += (k ? "," : "") + std::string("table") + std::to_string(map.factors[k].table.order());
    levels += (k ? "," : "") + std::to_string(map.factors[k].level);
    total *= map.factors[k].table.order();
    factor_images.push_back(tower.extend_factor(map.factors[k]));
  }
  VerificationReport r{"embedding", tower.spec().summary() + ";groups=" + groups + ";levels=" + levels, {}, true, "-", 0};

  // Tuples of table indices, in mixed radix.
  auto decode = [&](std::size_t code) {
    std::vector<std::size_t> h(map.factors.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
      h[k] = code % map.factors[k].table.order();
      code /= map.factors[k].table.order();
    }
    return h;
  };
  auto tuple_text = [](const std::vector<std::size_t>& h) {
    std::string s = "(";
    for (std::size_t k = 0; k < h.size(); ++k) s += (k ? "," : "") + std::to_string(h[k]);
    return s + ")";
  };
  auto image = [&](const std::vector<std::size_t>& h) {
    ProfiniteElement out = tower.p_identity();
    for (std::size_t k = 0; k < h.size(); ++k) out = tower.p_mul(out, factor_images[k][h[k]]);
    return out;
  };
  auto product = [&](const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
    std::vector<std::size_t> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) w[k] = map.factors[k].table.mul(u[k], v[k]);
    return w;
  };
  auto is_identity_tuple = [&](const std::vector<std::size_t>& h) {
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k] != map.factors[k].table.identity()) return false;
    }
    return true;
  };
  auto check_pair = [&](const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
    if (image(product(u, v)) != tower.p_mul(image(u), image(v))) {
      r.pass = false;
      r.witness = "failed=multiplicative u=" + tuple_text(u) + " v=" + tuple_text(v);
    }
  };

  if (total <= 500) {
    for (std::size_t c = 0; c < total && r.pass; ++c) {
      auto h = decode(c);
      if (!is_identity_tuple(h) && tower.is_identity(image(h).rep)) {
        r.pass = false;
        r.witness = "failed=injective h=" + tuple_text(h) + " image=" + to_text(image(h));
      }
    }
    for (std::size_t p = 0; p < total && r.pass; ++p) {
      for (std::size_t q = 0; q < total && r.pass; ++q) check_pair(decode(p), decode(q));
    }
    r.mode = {true, 0, 0};
  } else {
    std::mt19937_64 rng(detail::derive_seed(opt.seed, "embedding"));
    for (std::size_t s = 0; s < opt.samples && r.pass; ++s) {
      auto u = decode(rng() % total), v = decode(rng() % total);
      if (!is_identity_tuple(u) && tower.is_identity(image(u).rep)) {
        r.pass = false;
        r.witness = "failed=injective h=" + tuple_text(u) + " image=" + to_text(image(u));
      }
      if (r.pass) check_pair(u, v);
    }
    r.mode = {false, opt.samples, opt.seed};
  }
  if (r.pass) r.witness = embedding_certificate(map);
  r.ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// The default suite for a spec.

inline MulTable cyclic_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  }
  return MulTable(std::move(rows));
}

/// Group-name argument of the embedding subcommand: a name such as `c2`,
/// `sym3`, `alt5`, or `trivial`.
inline MulTable table_from_name(std::string_view name) {
  auto d = parse_group_name(name);
  if (d.family == Family::cyclic) return cyclic_table(d.degree);
  return multiplication_table(enumerate_group(d));
}

/// The three standard instances: two exhaustive, one sampled.
inline std::vector<VerificationReport> default_subdirect_reports(const VerifyOptions& opt = {}) {
  return {check_subdirect_equivalence(GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2), 2,
                                      ModeRequest::automatic, opt),
          check_subdirect_equivalence(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1,
                                      ModeRequest::automatic, opt),
          check_subdirect_equivalence(GroupDescriptor::alternating(5), GroupDescriptor::cyclic(2), 2,
                                      ModeRequest::automatic, opt)};
}

struct SuiteSelection {
  bool free = true, hji = true, hered = true, subdirect = true, diag = true, embedding = true;
};

inline std::vector<VerificationReport> run_suite(const Tower& tower, const VerifyOptions& opt = {},
                                                 SuiteSelection which = {}) {
  std::vector<VerificationReport> out;
  const std::size_t depth = tower.depth();
  if (which.free) {
    for (std::size_t i = 1; i < depth; ++i) out.push_back(check_free_action(tower, i, ModeRequest::automatic, opt));
  }
  if (which.hji) {
    GroupDescriptor a = GroupDescriptor::alternating(5), g1 = GroupDescriptor::cyclic(2);
    std::size_t t = 1;
    if (depth >= 2) {
      const LevelSpec& lv = tower.level_spec(1);
      if (!lv.symbolic() && level_is_compliant(lv)) {
        auto v = level_group_order(lv).evaluate(64);
        if (v && *v <= opt.bound &&
            detail::wreath_order(static_cast<std::size_t>(*v), tower.g1().order(), lv.copies) <= opt.bound) {
          a = lv.group;
          g1 = tower.spec().g1;
          t = lv.copies;
        }
      }
    }
    out.push_back(check_hji_step(a, g1, t, opt));
  }
  if (which.hered) {
    std::size_t L = std::min<std::size_t>(depth, 4);
    for (std::size_t j = 1; j <= 2 && j < L; ++j) out.push_back(check_hered_generators(tower, j, L, opt));
  }
  if (which.subdirect) {
    for (auto& r : default_subdirect_reports(opt)) out.push_back(std::move(r));
  }
  if (which.diag) {
    std::size_t top = std::min<std::size_t>(depth - 1, 3);
    for (std::size_t i = 1; i <= top; ++i) {
      for (std::size_t j = 1; j <= top; ++j) {
        if (i != j) out.push_back(check_diag_commute(tower, i, j));
      }
    }
  }
  // Left out when A_1 or A_2 is too small to hold the C2 x C3 instance.
  if (which.embedding && depth >= 3) {
    std::optional<EmbeddingMap> map;
    try {
      map = tower.embed_product({cyclic_table(2), cyclic_table(3)}, {1, 2});
    } catch (const BoundExceeded&) {
      throw;
    } catch (const Error&) {
    }
    if (map) out.push_back(check_embedding(tower, *map, opt));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace lucchini
