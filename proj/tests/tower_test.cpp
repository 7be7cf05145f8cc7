#include "lucchini/tower.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

namespace lucchini {
namespace {

std::string spec_path(const std::string& name) { return std::string(LUCCHINI_SPEC_DIR) + "/" + name; }

SparsePerm S(std::string_view text) { return parse_sparse_perm(text); }

TEST(BuildSpec, GenericExamples) {
  auto spec = build_spec(R"({"g1": "c2", "levels": [{"family": "alternating", "degree": 5, "copies": 1}]})");
  EXPECT_EQ(spec.depth(), 2u);
  EXPECT_TRUE(spec.paper_compliant);
  EXPECT_EQ(spec.summary(), "g1=c2;A=alt5x1");
  auto file = load_spec(spec_path("generic_c2_alt5.json"));
  EXPECT_EQ(file.depth(), 4u);
  auto repeated = build_spec(R"({"g1": "c2", "levels": ["alt5"], "depth": 4, "t": [2]})");
  ASSERT_EQ(repeated.levels.size(), 3u);
  EXPECT_EQ(repeated.levels[2].copies, 2u);
}

TEST(BuildSpec, PresetDepthTwo) {
  auto spec = build_spec(R"({"preset": "lucchini", "depth": 2, "t": [1]})");
  ASSERT_EQ(spec.levels.size(), 1u);
  EXPECT_EQ(spec.levels[0].name(), "alt60");
  EXPECT_EQ(spec.levels[0].numeric_degree, 60u);
  auto deep = build_spec(R"({"preset": "lucchini", "depth": 3})");
  EXPECT_TRUE(deep.levels[1].symbolic());
  EXPECT_EQ(deep.levels[1].name(), "alt((fact(60)/2)^60 * 60)");
}

TEST(BuildSpec, Errors) {
  EXPECT_THROW(build_spec(R"({"g1": "c2", "levels": [{"family": "cyclic", "degree": 4}], "paper_compliant": true})"),
               Error);
  EXPECT_THROW(build_spec(R"({"g1": "c2", "levels": [{"family": "alternating", "degree": 5, "copies": 0}]})"), Error);
  EXPECT_THROW(build_spec(R"({"g1": "c2", "levels": [{"family": "dihedral", "degree": 5}]})"), ParseError);
  EXPECT_THROW(build_spec(R"({"g1": "c2", "colour": 3})"), ParseError);
  EXPECT_THROW(build_spec(R"({"g1": "c2", "levels": ["alt5"], "t": [0]})"), Error);
  EXPECT_THROW(build_spec("{not json"), ParseError);
  EXPECT_THROW(build_spec(R"({"preset": "lucchini", "g1": "c2"})"), ParseError);
  EXPECT_THROW(load_spec(spec_path("missing.json")), Error);
}

TEST(BuildSpec, ComplianceAgreesWithEnumeration) {
  std::vector<GroupDescriptor> groups;
  for (std::size_t n = 3; n <= 7; ++n) groups.push_back(GroupDescriptor::alternating(n));
  for (std::size_t n = 2; n <= 5; ++n) groups.push_back(GroupDescriptor::symmetric(n));
  for (std::size_t n = 2; n <= 7; ++n) groups.push_back(GroupDescriptor::cyclic(n));
  groups.push_back(GroupDescriptor::trivial());
  for (const auto& g : groups) {
    LevelSpec lv{g, OrderExpr::literal(permutation_degree(g)), permutation_degree(g), 1};
    EXPECT_EQ(level_is_compliant(lv), enumerate_group(g).is_nonabelian_simple()) << g.name();
  }
}

TEST(TowerOrder, GenericLevelTwoMatchesEnumeration) {
  Tower tower(load_spec(spec_path("generic_c2_alt5.json")));
  EXPECT_EQ(tower.order(1).text(), "2");
  EXPECT_EQ(tower.order(2).text(), "(fact(5)/2)^2 * 2");
  EXPECT_EQ(tower.order(2).evaluate(), BigInt(7200));
  EXPECT_EQ(tower.enumerate_level(2).order(), 7200u);
}

TEST(TowerOrder, SmallTowersMatchEnumeration) {
  Tower sym3(load_spec(spec_path("small_sym3.json")));
  EXPECT_EQ(sym3.order(2).evaluate(), BigInt(72));
  EXPECT_EQ(sym3.enumerate_level(2).order(), 72u);
  Tower trivial(build_spec(R"({"g1": "trivial", "levels": [{"family": "cyclic", "degree": 3, "copies": 2}]})"));
  EXPECT_EQ(trivial.order(2).evaluate(), BigInt(9));
  EXPECT_EQ(trivial.enumerate_level(2).order(), 9u);
  Tower table(load_spec(spec_path("table_g1.json")));
  EXPECT_EQ(table.order(2).text(), "(fact(5)/2)^6 * 3");
  Tower c2(build_spec(R"({"g1": "trivial", "levels": [{"family": "cyclic", "degree": 2, "copies": 1}], "depth": 4})"));
  EXPECT_EQ(c2.order(4).text(), "2048");
  EXPECT_EQ(c2.order(4).evaluate(), c2.enumerate_level(4).order());
}

TEST(TowerOrder, PresetLevels) {
  Tower tower(load_spec(spec_path("lucchini.json")));
  EXPECT_EQ(tower.order(1).evaluate(), BigInt(60));
  EXPECT_EQ(tower.order(2).text(), "(fact(60)/2)^60 * 60");
  EXPECT_EQ(tower.order(2).evaluate()->str().size(), 4899u);
  EXPECT_FALSE(tower.order(3).evaluate().has_value());
  ASSERT_TRUE(tower.order(3).digit_bounds().has_value());
  Tower deep(lucchini_preset(5));
  EXPECT_FALSE(deep.order(5).digit_bounds().has_value());
}

class GenericTower : public ::testing::Test {
 protected:
  Tower tower{load_spec(spec_path("generic_c2_alt5.json"))};
  std::mt19937_64 rng{7};
};

TEST_F(GenericTower, ProjectLiftExamples) {
  for (std::size_t j = 1; j <= 4; ++j) {
    EXPECT_TRUE(tower.is_identity(tower.project(tower.identity(4), j)));
    EXPECT_TRUE(tower.is_identity(tower.lift(tower.identity(1), j)));
  }
  auto x = tower.random_element(3, rng);
  EXPECT_EQ(tower.project(x, 3), x);
  EXPECT_EQ(tower.lift(x, 3), x);
  EXPECT_THROW(tower.project(x, 4), Error);
  EXPECT_THROW(tower.lift(x, 5), Error);
  EXPECT_THROW(tower.lift(x, 2), Error);
}

TEST_F(GenericTower, ProjectionIsHomomorphismAndCoherent) {
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t level = 2 + rng() % 3;
    auto x = tower.random_element(level, rng), y = tower.random_element(level, rng);
    std::size_t j = 1 + rng() % level;
    ASSERT_EQ(tower.project(tower.mul(x, y), j), tower.mul(tower.project(x, j), tower.project(y, j)));
    for (std::size_t k = j; k <= level; ++k) ASSERT_EQ(tower.project(tower.project(x, k), j), tower.project(x, j));
  }
}

TEST_F(GenericTower, LiftIsSectionAndMultiplicative) {
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t level = 1 + rng() % 3;
    auto x = tower.random_element(level, rng), y = tower.random_element(level, rng);
    std::size_t m = level + rng() % (5 - level);
    ASSERT_EQ(tower.project(tower.lift(x, m), level), x);
    ASSERT_EQ(tower.lift(tower.mul(x, y), m), tower.mul(tower.lift(x, m), tower.lift(y, m)));
  }
}

TEST(TowerLift, ExhaustiveOverAlt5G1) {
  Tower tower(build_spec(R"({"g1": "alt5", "levels": ["alt5"], "depth": 3})"));
  const auto& g = tower.g1();
  for (Index a = 0; a < g.order(); ++a) {
    for (Index b = 0; b < g.order(); ++b) {
      TowerElement x(g.element(a)), y(g.element(b));
      ASSERT_EQ(tower.lift(tower.mul(x, y), 3), tower.mul(tower.lift(x, 3), tower.lift(y, 3)));
    }
  }
}

TEST_F(GenericTower, ProfiniteArithmetic) {
  auto x = tower.random_profinite(rng);
  auto id = tower.p_mul(x, tower.p_inv(x));
  EXPECT_EQ(id.level(), 1u);
  EXPECT_TRUE(tower.is_identity(id.rep));
  TowerElement g(DensePerm::from_cycles(2, {{0, 1}}));
  auto b = tower.reduce(tower.base_gen(2, 0, tower.identity(2), S("(0 1 2)")));
  EXPECT_EQ(b.level(), 3u);
  EXPECT_EQ(tower.p_mul(tower.reduce(g), b).level(), 3u);
  for (int trial = 0; trial < 1000; ++trial) {
    auto p = tower.random_profinite(rng), q = tower.random_profinite(rng), r = tower.random_profinite(rng);
    ASSERT_EQ(tower.p_mul(tower.p_mul(p, q), r), tower.p_mul(p, tower.p_mul(q, r)));
    ASSERT_EQ(tower.p_mul(tower.p_identity(), p), p);
    ASSERT_EQ(tower.p_mul(p, tower.p_inv(p)), tower.p_identity());
    ASSERT_TRUE(tower.p_eq(p, tower.reduce(tower.lift(p.rep, tower.depth()))));
  }
}

TEST_F(GenericTower, CanonicalLevelIsMinimal) {
  for (int trial = 0; trial < 300; ++trial) {
    auto p = tower.random_profinite(rng);
    if (p.level() > 1) {
      const auto& base = p.rep.wreath().base;
      ASSERT_FALSE(base.exceptions.empty() && base.default_value.is_identity());
    }
  }
}

TEST_F(GenericTower, KernelMembership) {
  for (std::size_t j = 1; j <= 4; ++j) EXPECT_TRUE(tower.kernel_member(tower.p_identity(), j));
  for (std::size_t i = 1; i <= 3; ++i) {
    for (const auto& a : tower.a_generators(i)) {
      auto b = tower.reduce(tower.base_gen(i, 0, tower.identity(i), a));
      for (std::size_t j = 1; j <= i; ++j) EXPECT_TRUE(tower.kernel_member(b, j));
      EXPECT_FALSE(tower.kernel_member(b, i + 1));
    }
  }
  TowerElement g(DensePerm::from_cycles(2, {{0, 1}}));
  EXPECT_FALSE(tower.kernel_member(tower.reduce(tower.lift(g, 3)), 1));
}

TEST_F(GenericTower, DiagEmbedding) {
  EXPECT_EQ(tower.diag_embed(SparsePerm{}, 1), tower.p_identity());
  EXPECT_THROW(tower.diag_embed(S("(0 1)"), 1), Error);
  EXPECT_THROW(tower.diag_embed(S("(0 1 2)"), 4), Error);
  EXPECT_THROW(tower.diag_embed(S("(0 1 5)"), 1), Error);
  auto a5 = enumerate_group(GroupDescriptor::alternating(5));
  std::size_t pairs = 0;
  for (const auto& a : a5.elements()) {
    for (const auto& b : a5.elements()) {
      auto ab = tower.diag_embed(to_sparse(compose(a, b)), 2);
      ASSERT_EQ(ab, tower.p_mul(tower.diag_embed(to_sparse(a), 2), tower.diag_embed(to_sparse(b), 2)));
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 3600u);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) {
      if (i == j) continue;
      for (const auto& a : tower.a_generators(i))
        for (const auto& b : tower.a_generators(j))
          ASSERT_EQ(tower.p_commutator(tower.diag_embed(a, i), tower.diag_embed(b, j)), tower.p_identity());
    }
  // Same level: the diagonal copy is nonabelian.
  auto x = tower.diag_embed(S("(0 1 2)"), 1), y = tower.diag_embed(S("(1 2 3)"), 1);
  EXPECT_NE(tower.p_commutator(x, y), tower.p_identity());
}

TEST_F(GenericTower, TextRoundTrip) {
  for (int trial = 0; trial < 300; ++trial) {
    auto x = tower.random_element(1 + rng() % 4, rng);
    ASSERT_EQ(tower.parse(to_text(x)), x) << to_text(x);
  }
  EXPECT_EQ(to_text(tower.identity(1)), "L1{id}");
  EXPECT_EQ(to_text(tower.identity(2)), "W{default=id; ; top=L1{id}}");
  EXPECT_EQ(to_text(tower.diag_embed(S("(0 1 2)"), 1)), "W{default=(0 1 2); ; top=L1{id}}");
}

TEST_F(GenericTower, ParseRejectsInvalidElements) {
  EXPECT_THROW(tower.parse("L1{(0 1 2)}"), ParseError);
  EXPECT_THROW(tower.parse("W{default=(0 1); ; top=L1{id}}"), ParseError);
  EXPECT_THROW(tower.parse("W{default=(0 1 7); ; top=L1{id}}"), ParseError);
  EXPECT_THROW(tower.parse("W{default=id; 1:L1{id} -> (0 1 2); top=L1{id}}"), ParseError);
  EXPECT_THROW(tower.parse("W{default=id; 0:W{default=id; ; top=L1{id}} -> (0 1 2); top=L1{id}}"), ParseError);
  EXPECT_THROW(tower.parse("X{}"), ParseError);
  EXPECT_THROW(tower.parse("W{default=id; ; top=W{default=id; ; top=W{default=id; ; top=W{default=id; ; top=L1{id}}}}}"),
               ParseError);
}

TEST(TowerGroupLaws, ExhaustiveOnSym3Level) {
  Tower tower(load_spec(spec_path("small_sym3.json")));
  auto g = tower.enumerate_level(2);
  ASSERT_EQ(g.order(), 72u);
  const auto& e = g.elements();
  for (const auto& x : e) {
    ASSERT_EQ(tower.mul(tower.identity(2), x), x);
    ASSERT_TRUE(tower.is_identity(tower.mul(x, tower.inv(x))));
    for (const auto& y : e)
      for (const auto& z : e) ASSERT_EQ(tower.mul(tower.mul(x, y), z), tower.mul(x, tower.mul(y, z)));
  }
}

TEST(TowerElementOrder, PowerIteration) {
  Tower tower(load_spec(spec_path("generic_c2_alt5.json")));
  EXPECT_EQ(tower.element_order(tower.diag_embed(parse_sparse_perm("(0 1 2)"), 1).rep), 3u);
  EXPECT_EQ(tower.element_order(tower.identity(3)), 1u);
  TowerElement g(DensePerm::from_cycles(2, {{0, 1}}));
  EXPECT_EQ(tower.element_order(tower.lift(g, 4)), 2u);
  EXPECT_EQ(tower.element_order(tower.lift(g, 4), 1), std::nullopt);
}

TEST(EmbedProduct, C2TimesC3IntoAlt5Levels) {
  Tower tower(load_spec(spec_path("generic_c2_alt5.json")));
  MulTable c2({{0, 1}, {1, 0}}), c3({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  auto map = tower.embed_product({c2, c3}, {1, 2});
  ASSERT_EQ(map.factors.size(), 2u);
  ASSERT_EQ(map.factors[0].images.size(), 1u);
  EXPECT_EQ(map.factors[0].images[0], tower.diag_embed(S("(0 1)(2 3)"), 1));
  EXPECT_EQ(map.factors[1].images[0], tower.diag_embed(S("(0 1 2)"), 2));
  auto i2 = tower.extend_factor(map.factors[0]);
  auto i3 = tower.extend_factor(map.factors[1]);
  std::set<ProfiniteElement> images;
  for (const auto& a : i2)
    for (const auto& b : i3) images.insert(tower.p_mul(a, b));
  EXPECT_EQ(images.size(), 6u);
}

TEST(EmbedProduct, DegreePreconditions) {
  std::vector<std::vector<std::size_t>> rows(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) rows[a][b] = (a + b) % 6;
  MulTable cyclic6(rows);
  Tower alt5(load_spec(spec_path("generic_c2_alt5.json")));
  EXPECT_THROW(alt5.embed_product({cyclic6}, {1}), Error);
  Tower alt8(load_spec(spec_path("alt8_levels.json")));
  auto map = alt8.embed_product({cyclic6}, {2});
  EXPECT_EQ(map.factors[0].degree, 8u);
  auto images = alt8.extend_factor(map.factors[0]);
  EXPECT_EQ(std::set<ProfiniteElement>(images.begin(), images.end()).size(), 6u);
  MulTable c2({{0, 1}, {1, 0}});
  EXPECT_THROW(alt5.embed_product({c2, c2}, {2, 1}), Error);
  EXPECT_THROW(alt5.embed_product({c2, c2}, {1, 1}), Error);
}

TEST(EmbedProduct, TrivialGroup) {
  Tower tower(load_spec(spec_path("generic_c2_alt5.json")));
  auto map = tower.embed_product({MulTable(std::vector<std::vector<std::size_t>>{{0}})}, {1});
  EXPECT_TRUE(map.factors[0].images.empty());
  auto images = tower.extend_factor(map.factors[0]);
  ASSERT_EQ(images.size(), 1u);
  EXPECT_EQ(images[0], tower.p_identity());
}

TEST(MinEmbeddingLevel, Preset) {
  Tower tower(load_spec(spec_path("lucchini.json")));
  EXPECT_EQ(tower.min_embedding_level(3), 1u);
  EXPECT_EQ(tower.min_embedding_level(58), 1u);
  EXPECT_EQ(tower.min_embedding_level(59), 2u);
  EXPECT_EQ(tower.min_embedding_level(100), 2u);
  Tower shallow(lucchini_preset(2));
  EXPECT_THROW(shallow.min_embedding_level(100), Error);
  Tower deep(lucchini_preset(5));
  BigInt huge = boost::multiprecision::pow(BigInt(10), 6000);
  EXPECT_EQ(deep.min_embedding_level(huge), 3u);
}

TEST(MinEmbeddingLevel, LadderBeyondNumericRange) {
  // Level 4 of the preset has no log bounds; the ladder d_4 >= 2^{d_3}
  // certifies it against targets level 3 cannot certify.
  Tower deep(lucchini_preset(5));
  EXPECT_FALSE(deep.level_spec(4).degree.log_bounds().has_value());
  auto d3 = deep.level_spec(3).degree.log_bounds();
  ASSERT_TRUE(d3.has_value());
}

TEST(PresetTower, ArithmeticAtLevelThree) {
  Tower tower(load_spec(spec_path("lucchini.json")));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = tower.random_element(3, rng), y = tower.random_element(3, rng);
    ASSERT_EQ(tower.parse(to_text(x)), x);
    ASSERT_TRUE(tower.is_identity(tower.mul(tower.mul(x, y), tower.inv(tower.mul(x, y)))));
  }
  auto big = tower.diag_embed(S("(100 200 300)"), 2);
  EXPECT_EQ(big.level(), 3u);
  EXPECT_THROW(tower.diag_embed(S("(0 1 60)"), 1), Error);
}

}  // namespace
}  // namespace lucchini
