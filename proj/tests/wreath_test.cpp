#include "lucchini/wreath.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "lucchini/catalog.hpp"

namespace lucchini {
namespace {

using DenseWreath = WreathStep<DenseSym, DenseSym>;
using Elt = DenseWreath::element_type;
using Pt = DenseWreath::point_type;

DensePerm P(std::string_view text, std::size_t degree) { return parse_dense_perm(text, degree); }

// Oracle representation: an explicit table of base values over Omega plus
// the top, multiplied straight from (f, x)(h, y) = (w -> f(w) h(w x), xy).
struct Table {
  std::map<Pt, DensePerm> values;
  DensePerm top;
  bool operator==(const Table&) const = default;
};

struct Fixture {
  GroupDescriptor a_desc, g_desc;
  std::size_t copies;
  GeneratedGroup<DenseSym> a = enumerate_group(a_desc);
  GeneratedGroup<DenseSym> g = enumerate_group(g_desc);
  DenseWreath step = DenseWreath::over(a.context(), g, copies);

  Fixture(GroupDescriptor ad, GroupDescriptor gd, std::size_t t) : a_desc(ad), g_desc(gd), copies(t) {}

  std::vector<Elt> gens() const {
    std::vector<Elt> out;
    for (const auto& x : g.generators()) out.push_back(step.pure_top(x));
    for (std::size_t k = 0; k < copies; ++k)
      for (const auto& s : a.generators())
        if (!s.is_identity()) out.push_back(step.base_gen(k, g.context().identity(), s));
    return out;
  }

  Table table(const Elt& x) const {
    Table t{{}, x.top};
    for (const auto& p : step.points()) t.values.emplace(p, x.base.at(p));
    return t;
  }

  Table mul(const Table& x, const Table& y) const {
    Table out{{}, compose(x.top, y.top)};
    for (const auto& [p, v] : x.values) out.values.emplace(p, compose(v, y.values.at(step.act(p, x.top))));
    return out;
  }

  Elt random(std::mt19937_64& rng) const {
    std::map<Pt, DensePerm> exc;
    auto pick = [&](const auto& grp) { return grp.element(static_cast<Index>(rng() % grp.order())); };
    for (const auto& p : step.points()) exc.emplace(p, pick(a));
    return step.make(pick(a), exc, pick(g));
  }
};

TEST(OmegaAct, Examples) {
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 2);
  const auto e = DensePerm::identity(2), s = P("(0 1)", 2);
  EXPECT_EQ(f.step.act({0, e}, e), (Pt{0, e}));
  EXPECT_EQ(f.step.act({0, e}, s), (Pt{0, s}));
  for (const auto& p : f.step.points()) {
    for (const auto& x : f.g.elements()) {
      if (!x.is_identity()) {
        EXPECT_NE(f.step.act(p, x), p);
      }
    }
  }
}

TEST(WreathMul, IdentityLeft) {
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto y = f.random(rng);
    EXPECT_EQ(f.step.mul(f.step.identity(), y), y);
  }
}

TEST(WreathMul, PointwiseFormulaExample) {
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1);
  const auto e = DensePerm::identity(2), s = P("(0 1)", 2);
  Elt x = f.step.make(DensePerm::identity(3), {{Pt{0, e}, P("(0 1)", 3)}}, s);
  Elt y = f.step.make(DensePerm::identity(3), {{Pt{0, e}, P("(0 2)", 3)}}, s);
  Elt xy = f.step.mul(x, y);
  EXPECT_EQ(xy.base.at({0, e}), P("(0 1)", 3));
  EXPECT_EQ(xy.base.at({0, s}), P("(0 2)", 3));
  EXPECT_TRUE(xy.top.is_identity());
  EXPECT_TRUE(f.step.is_canonical(xy));
  // Omega has two points, so the tie is broken towards the smaller value.
  EXPECT_EQ(to_text(xy), "W{default=(0 1); 0:(0 1) -> (0 2); top=id}");
}

TEST(WreathMul, InverseLawsSampled) {
  Fixture f(GroupDescriptor::alternating(5), GroupDescriptor::cyclic(3), 2);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    auto x = f.random(rng);
    ASSERT_TRUE(f.step.is_identity(f.step.mul(x, f.step.inv(x))));
    ASSERT_EQ(f.step.inv(f.step.inv(x)), x);
    ASSERT_TRUE(f.step.is_canonical(f.step.inv(x)));
  }
}

TEST(WreathMul, MatchesTableOracleAndGroupLawsExhaustively) {
  // Sym(3) wr C_2, one orbit: 72 elements, all 72^3 triples.
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1);
  auto w = enumerate_elements(f.step, f.gens());
  ASSERT_EQ(w.order(), 72u);
  std::vector<Table> tables;
  for (const auto& x : w.elements()) tables.push_back(f.table(x));
  std::set<std::map<Pt, DensePerm>> distinct;
  for (const auto& t : tables) distinct.insert(t.values);
  for (const auto& x : w.elements()) {
    ASSERT_TRUE(f.step.is_canonical(x));
    for (const auto& y : w.elements()) {
      auto xy = f.step.mul(x, y);
      ASSERT_TRUE(f.step.is_canonical(xy));
      ASSERT_EQ(f.table(xy), f.mul(f.table(x), f.table(y)));
    }
  }
  for (Index a = 0; a < 72; ++a)
    for (Index b = 0; b < 72; ++b)
      for (Index c = 0; c < 72; ++c) ASSERT_EQ(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
}

TEST(WreathMul, SampledAssociativityLargerStep) {
  Fixture f(GroupDescriptor::alternating(5), GroupDescriptor::symmetric(3), 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto x = f.random(rng), y = f.random(rng), z = f.random(rng);
    ASSERT_EQ(f.step.mul(f.step.mul(x, y), z), f.step.mul(x, f.step.mul(y, z)));
  }
}

TEST(WreathMul, CanonicalRepresentationIsUnique) {
  // The diagonal (a, a) built pointwise equals the constant function.
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1);
  const auto e = DensePerm::identity(2), s = P("(0 1)", 2);
  auto a = P("(0 1 2)", 3);
  auto left = f.step.mul(f.step.base_gen(0, e, a), f.step.base_gen(0, s, a));
  EXPECT_EQ(left, f.step.constant(a));
  EXPECT_TRUE(left.base.exceptions.empty());
}

TEST(BaseGen, Examples) {
  Fixture f(GroupDescriptor::alternating(5), GroupDescriptor::cyclic(3), 2);
  const auto e = DensePerm::identity(3), h = P("(0 1 2)", 3);
  auto a = P("(0 1 2)", 5), b = P("(2 3 4)", 5);
  auto x = f.step.base_gen(1, h, a);
  EXPECT_TRUE(x.top.is_identity());
  auto y = f.step.base_gen(0, e, b);
  EXPECT_EQ(f.step.mul(x, y), f.step.mul(y, x));
  // (1, h)^-1 base_gen(k, g, a) (1, h) = base_gen(k, g h, a).
  for (const auto& g : f.g.elements()) {
    auto conj = f.step.mul(f.step.mul(f.step.pure_top(inverse(h)), f.step.base_gen(0, g, a)), f.step.pure_top(h));
    EXPECT_EQ(conj, f.step.base_gen(0, compose(g, h), a));
  }
  EXPECT_THROW(f.step.base_gen(2, e, a), Error);
  EXPECT_THROW(f.step.base_gen(0, e, DensePerm::identity(5)), Error);
}

TEST(WreathInv, PureTop) {
  Fixture f(GroupDescriptor::alternating(5), GroupDescriptor::cyclic(3), 1);
  auto g = P("(0 1 2)", 3);
  EXPECT_EQ(f.step.inv(f.step.pure_top(g)), f.step.pure_top(inverse(g)));
  EXPECT_TRUE(f.step.is_identity(f.step.inv(f.step.identity())));
}

TEST(TopProject, HomomorphismWithBaseKernel) {
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1);
  auto w = enumerate_elements(f.step, f.gens());
  std::size_t kernel = 0;
  std::set<DensePerm> image;
  for (const auto& x : w.elements()) {
    image.insert(f.step.top_project(x));
    if (f.step.top_project(x).is_identity()) ++kernel;
    for (const auto& y : w.elements())
      ASSERT_EQ(f.step.top_project(f.step.mul(x, y)), compose(x.top, y.top));
  }
  EXPECT_EQ(kernel, 36u);
  EXPECT_EQ(image.size(), 2u);
}

TEST(WreathOrder, EnumerationMatchesFormula) {
  struct Case {
    GroupDescriptor a, g;
    std::size_t t;
  };
  for (const auto& c : {Case{GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2), 2},
                        Case{GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1},
                        Case{GroupDescriptor::cyclic(3), GroupDescriptor::symmetric(3), 1},
                        Case{GroupDescriptor::alternating(5), GroupDescriptor::trivial(), 2},
                        Case{GroupDescriptor::alternating(5), GroupDescriptor::cyclic(2), 1}}) {
    Fixture f(c.a, c.g, c.t);
    auto w = enumerate_elements(f.step, f.gens());
    auto expected = std::pow(double(f.a.order()), double(c.t * f.g.order())) * double(f.g.order());
    EXPECT_EQ(double(w.order()), expected) << c.a.name() << " wr " << c.g.name() << " t=" << c.t;
  }
}

// The subdirect power built directly: tuples from (A wr X)^t with equal tops.
template <class F>
std::set<SubdirectTuple<DensePerm, DensePerm>> subdirect_oracle(const F& f, std::size_t t) {
  auto regular = DenseWreath::over(f.a.context(), f.g, 1);
  Fixture single(f.a_desc, f.g_desc, 1);
  auto r = enumerate_elements(regular, single.gens());
  std::map<DensePerm, std::vector<Elt>> by_top;
  for (const auto& x : r.elements()) by_top[x.top].push_back(x);
  std::set<SubdirectTuple<DensePerm, DensePerm>> out;
  for (const auto& [top, coset] : by_top) {
    std::vector<std::size_t> digits(t, 0);
    for (;;) {
      SubdirectTuple<DensePerm, DensePerm> u;
      for (std::size_t k = 0; k < t; ++k) u.entries.push_back(coset[digits[k]]);
      out.insert(u);
      std::size_t k = 0;
      while (k < t && ++digits[k] == coset.size()) digits[k++] = 0;
      if (k == t) break;
    }
  }
  return out;
}

TEST(SubdirectIso, IdentityAndUnequalTops) {
  Fixture f(GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2), 2);
  auto power = SubdirectPower<DenseSym, DenseSym>::over(f.a.context(), f.g, 2);
  EXPECT_TRUE(f.step.is_identity(power.to_wreath(power.identity())));
  auto bad = power.identity();
  bad.entries[1] = power.regular().pure_top(P("(0 1)", 2));
  EXPECT_THROW(power.to_wreath(bad), Error);
}

TEST(SubdirectIso, C2C2TwoCopiesExhaustive) {
  Fixture f(GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2), 2);
  auto power = SubdirectPower<DenseSym, DenseSym>::over(f.a.context(), f.g, 2);
  auto tuples = subdirect_oracle(f, 2);
  ASSERT_EQ(tuples.size(), 32u);
  auto w = enumerate_elements(f.step, f.gens());
  ASSERT_EQ(w.order(), 32u);
  std::set<Elt> images;
  for (const auto& u : tuples) {
    auto x = power.to_wreath(u);
    ASSERT_TRUE(w.find(x).has_value());
    ASSERT_EQ(power.from_wreath(x), u);
    images.insert(x);
  }
  EXPECT_EQ(images.size(), 32u);
  std::size_t pairs = 0;
  for (const auto& u : tuples)
    for (const auto& v : tuples) {
      ASSERT_EQ(power.to_wreath(power.mul(u, v)), f.step.mul(power.to_wreath(u), power.to_wreath(v)));
      ++pairs;
    }
  EXPECT_EQ(pairs, 1024u);
}

TEST(SubdirectIso, Sym3C2OneCopyExhaustive) {
  Fixture f(GroupDescriptor::symmetric(3), GroupDescriptor::cyclic(2), 1);
  auto power = SubdirectPower<DenseSym, DenseSym>::over(f.a.context(), f.g, 1);
  auto tuples = subdirect_oracle(f, 1);
  ASSERT_EQ(tuples.size(), 72u);
  for (const auto& u : tuples)
    for (const auto& v : tuples)
      ASSERT_EQ(power.to_wreath(power.mul(u, v)), f.step.mul(power.to_wreath(u), power.to_wreath(v)));
}

TEST(SubdirectIso, DifferentDefaultsPerEntry) {
  Fixture f(GroupDescriptor::alternating(5), GroupDescriptor::cyclic(2), 3);
  auto power = SubdirectPower<DenseSym, DenseSym>::over(f.a.context(), f.g, 3);
  auto a = P("(0 1 2)", 5), b = P("(1 2 3)", 5);
  SubdirectTuple<DensePerm, DensePerm> u{{power.regular().constant(a), power.regular().constant(b),
                                          power.regular().identity()}};
  auto x = power.to_wreath(u);
  EXPECT_TRUE(f.step.is_canonical(x));
  EXPECT_EQ(power.from_wreath(x), u);
  EXPECT_EQ(x.base.at({0, DensePerm::identity(2)}), a);
  EXPECT_EQ(x.base.at({1, P("(0 1)", 2)}), b);
}

TEST(WreathText, RoundTrip) {
  Fixture f(GroupDescriptor::alternating(5), GroupDescriptor::cyclic(3), 2);
  std::mt19937_64 rng(5);
  auto parse_a = [](std::string_view s) { return parse_dense_perm(s, 5); };
  auto parse_g = [](std::string_view s) { return parse_dense_perm(s, 3); };
  for (int i = 0; i < 100; ++i) {
    auto x = f.random(rng);
    auto [d, exc, top] = parse_wreath_parts<DensePerm, DensePerm>(to_text(x), parse_a, parse_g);
    EXPECT_EQ(f.step.make(d, exc, top), x);
  }
  auto [d, exc, top] = parse_wreath_parts<DensePerm, DensePerm>("W{default=id; ; top=(0 1 2)}", parse_a, parse_g);
  EXPECT_TRUE(exc.empty());
  EXPECT_EQ(top, P("(0 1 2)", 3));
  EXPECT_THROW((parse_wreath_parts<DensePerm, DensePerm>("W{default=id; top=id}", parse_a, parse_g)), ParseError);
}

}  // namespace
}  // namespace lucchini
