#include "lucchini/perm.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "lucchini/catalog.hpp"

namespace lucchini {
namespace {

DensePerm P(std::string_view text, std::size_t degree) { return parse_dense_perm(text, degree); }

DensePerm random_dense(std::mt19937_64& rng, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return DensePerm(images);
}

// Random sparse permutation moving a handful of keys drawn from a wide range.
SparsePerm random_sparse(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<std::uint64_t> key(0, 1'000'000'000'000ULL);
  std::set<std::string> keys;
  int n = count(rng);
  while (static_cast<int>(keys.size()) < n) keys.insert(std::to_string(key(rng)));
  std::vector<std::string> from(keys.begin(), keys.end());
  std::vector<std::string> to = from;
  std::shuffle(to.begin(), to.end(), rng);
  SparsePerm::Map m;
  for (std::size_t i = 0; i < from.size(); ++i) m.emplace(from[i], to[i]);
  return SparsePerm(m);
}

// Independent closure oracle: plain BFS over image vectors.
std::size_t closure_size(const std::vector<DensePerm>& gens) {
  const std::size_t n = gens.front().degree();
  std::vector<Point> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<Point>> seen{id};
  std::vector<std::vector<Point>> queue{id};
  while (!queue.empty()) {
    auto x = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      std::vector<Point> y(n);
      for (std::size_t p = 0; p < n; ++p) y[p] = g(x[p]);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen.size();
}

TEST(PermCompose, IdentityLaw) {
  EXPECT_EQ(compose(DensePerm::identity(3), P("(0 1 2)", 3)), P("(0 1 2)", 3));
}

TEST(PermCompose, RightActionConvention) {
  // 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
  EXPECT_EQ(to_text(compose(P("(0 1 2)", 3), P("(0 1)", 3))), "(1 2)");
}

TEST(PermCompose, Involution) { EXPECT_TRUE(compose(P("(0 1)", 2), P("(0 1)", 2)).is_identity()); }

TEST(PermCompose, DegreeMismatchThrows) {
  EXPECT_THROW(compose(DensePerm::identity(3), DensePerm::identity(4)), Error);
}

TEST(PermInverse, Examples) {
  EXPECT_TRUE(inverse(DensePerm::identity(4)).is_identity());
  EXPECT_EQ(to_text(inverse(P("(0 1 2)", 3))), "(0 2 1)");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    SparsePerm g = random_sparse(rng);
    EXPECT_TRUE(compose(g, inverse(g)).is_identity());
  }
}

TEST(PermParity, Examples) {
  EXPECT_EQ(parity(P("(0 1 2)", 3)), Parity::even);
  EXPECT_EQ(parity(P("(0 1)", 2)), Parity::odd);
  EXPECT_EQ(parity(P("(0 1)(2 3)", 4)), Parity::even);
  EXPECT_EQ(parity(parse_sparse_perm("(10 20)(30 40 50)")), Parity::odd);
}

TEST(PermLaws, SampledDenseTriples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 12;
    auto a = random_dense(rng, n), b = random_dense(rng, n), c = random_dense(rng, n);
    ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    ASSERT_EQ(compose(a, DensePerm::identity(n)), a);
    ASSERT_TRUE(compose(a, inverse(a)).is_identity());
    ASSERT_EQ(parity(compose(a, b)), parity(a) * parity(b));
  }
}

TEST(PermLaws, SampledSparseTriples) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_sparse(rng), b = random_sparse(rng), c = random_sparse(rng);
    ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    ASSERT_EQ(compose(a, SparsePerm{}), a);
    ASSERT_TRUE(compose(inverse(a), a).is_identity());
    ASSERT_EQ(parity(compose(a, b)), parity(a) * parity(b));
  }
}

TEST(PermLaws, DenseSparseRoundTrip) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 50;
    auto g = random_dense(rng, n);
    EXPECT_EQ(to_dense(to_sparse(g), n), g);
    EXPECT_EQ(parity(to_sparse(g)), parity(g));
  }
}

TEST(SparsePerm, RejectsNonBijections) {
  EXPECT_THROW(SparsePerm(SparsePerm::Map{{"1", "2"}}), Error);
  EXPECT_THROW(SparsePerm(SparsePerm::Map{{"1", "3"}, {"2", "3"}, {"3", "1"}}), Error);
  EXPECT_TRUE(SparsePerm(SparsePerm::Map{{"5", "5"}}).is_identity());
}

TEST(SparsePerm, ShortlexOrderIsNumericOnDecimalKeys) {
  auto g = parse_sparse_perm("(10 9 100)");
  EXPECT_EQ(to_text(g), "(9 100 10)");
}

TEST(AltGenerators, SmallCases) {
  EXPECT_THROW(alt_generators(2), Error);
  auto g3 = alt_generators(3);
  ASSERT_EQ(g3.size(), 1u);
  EXPECT_EQ(to_text(g3[0]), "(0 1 2)");
  EXPECT_EQ(closure_size(g3), 3u);
  EXPECT_EQ(closure_size(alt_generators(4)), 12u);
  EXPECT_EQ(closure_size(alt_generators(5)), 60u);
}

TEST(AltGenerators, OrderIsHalfFactorialAndAllEven) {
  std::size_t factorial = 2;
  for (std::size_t n = 3; n <= 8; ++n) {
    factorial *= n;
    auto gens = alt_generators(n);
    for (const auto& g : gens) EXPECT_EQ(parity(g), Parity::even);
    EXPECT_EQ(closure_size(gens), factorial / 2) << "n = " << n;
    auto group = enumerate_elements(DenseSym{n}, gens, 30000);
    EXPECT_EQ(group.order(), factorial / 2);
    for (const auto& x : group.elements()) ASSERT_EQ(parity(x), Parity::even);
  }
}

MulTable cyclic_table(std::size_t m) {
  std::vector<std::vector<std::size_t>> rows(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) rows[a][b] = (a + b) % m;
  return MulTable(rows);
}

TEST(CayleyEmbed, CyclicExamples) {
  EXPECT_EQ(to_text(cayley_embed(cyclic_table(3))[1]), "(0 1 2)");
  EXPECT_EQ(to_text(cayley_embed(cyclic_table(2))[1]), "(0 1)");
  auto trivial = cayley_embed(cyclic_table(1));
  ASSERT_EQ(trivial.size(), 1u);
  EXPECT_EQ(trivial[0], DensePerm::identity(1));
}

TEST(CayleyEmbed, RejectsNonGroups) {
  EXPECT_THROW(MulTable({{0, 1}, {1, 1}}), Error);
  // Latin square without associativity: a loop of order 5.
  EXPECT_THROW(MulTable({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
               Error);
}

TEST(CayleyEmbed, InjectiveHomomorphismUpTo24) {
  std::vector<GroupDescriptor> groups = {GroupDescriptor::cyclic(1), GroupDescriptor::cyclic(5),
                                         GroupDescriptor::cyclic(12), GroupDescriptor::symmetric(3),
                                         GroupDescriptor::alternating(4), GroupDescriptor::symmetric(4)};
  for (const auto& d : groups) {
    auto table = multiplication_table(enumerate_group(d));
    auto perms = cayley_embed(table);
    std::set<DensePerm> distinct(perms.begin(), perms.end());
    EXPECT_EQ(distinct.size(), table.order()) << d.name();
    for (std::size_t a = 0; a < table.order(); ++a)
      for (std::size_t b = 0; b < table.order(); ++b)
        ASSERT_EQ(compose(perms[a], perms[b]), perms[table.mul(a, b)]) << d.name();
  }
}

TEST(IntoAlt, EvenGeneratorsUnchanged) {
  std::vector<DensePerm> gens = {P("(0 1 2)", 3)};
  auto out = into_alt(gens, 3);
  EXPECT_FALSE(out.padded);
  EXPECT_EQ(out.degree, 3u);
  EXPECT_EQ(out.images, gens);
}

TEST(IntoAlt, CyclicTwoViaCayley) {
  auto perms = cayley_embed(cyclic_table(2));
  std::vector<DensePerm> gens = {perms[1]};
  auto out = into_alt(gens, 2);
  EXPECT_EQ(out.degree, 4u);
  EXPECT_EQ(to_text(out.images[0]), "(0 1)(2 3)");
}

TEST(IntoAlt, SymThreeHomomorphismOnAllPairs) {
  std::vector<DensePerm> gens = {P("(0 1 2)", 3), P("(0 1)", 3)};
  auto out = into_alt(gens, 3);
  ASSERT_EQ(out.degree, 5u);
  EXPECT_EQ(to_text(out.images[0]), "(0 1 2)");
  EXPECT_EQ(to_text(out.images[1]), "(0 1)(3 4)");
  // The parity-fix map applied element-wise.
  auto fix = [](const DensePerm& g) {
    auto wide = g.extended(5);
    return parity(g) == Parity::odd ? compose(wide, P("(3 4)", 5)) : wide;
  };
  auto sym3 = enumerate_group(GroupDescriptor::symmetric(3));
  int pairs = 0;
  std::set<DensePerm> images;
  for (const auto& a : sym3.elements()) {
    images.insert(fix(a));
    EXPECT_EQ(parity(fix(a)), Parity::even);
    for (const auto& b : sym3.elements()) {
      ASSERT_EQ(fix(compose(a, b)), compose(fix(a), fix(b)));
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 36);
  EXPECT_EQ(images.size(), 6u);
}

TEST(IntoAlt, EmbedsEveryCayleyImage) {
  for (std::size_t m : {2u, 3u, 4u, 6u}) {
    auto perms = cayley_embed(cyclic_table(m));
    auto out = into_alt(perms, m);
    EXPECT_LE(out.degree, m + 2);
    for (const auto& g : out.images) EXPECT_EQ(parity(g), Parity::even);
  }
}

TEST(CycleText, PrintAndParse) {
  EXPECT_EQ(to_text(DensePerm::identity(4)), "id");
  EXPECT_EQ(to_text_with_degree(P("(2 0 1)", 5)), "(0 1 2) deg=5");
  EXPECT_EQ(parse_dense_perm("(0 1 2) deg=5"), P("(1 2 0)", 5));
  EXPECT_EQ(parse_dense_perm("(3 4)").degree(), 5u);
  EXPECT_EQ(to_text(parse_dense_perm("(3 1)(0 2)", 4)), "(0 2)(1 3)");
  EXPECT_THROW(parse_dense_perm("(0 1)(1 2)", 3), ParseError);
  EXPECT_THROW(parse_dense_perm("(0 5)", 3), ParseError);
  EXPECT_THROW(parse_dense_perm("(0 1", 3), ParseError);
  EXPECT_THROW(parse_dense_perm("(0 -1)", 3), ParseError);
  EXPECT_THROW(parse_dense_perm("0 1", 3), ParseError);
  EXPECT_THROW(parse_dense_perm("(0 1) deg=4", 3), ParseError);
}

TEST(CycleText, RoundTripRandom) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 20;
    auto g = random_dense(rng, n);
    EXPECT_EQ(parse_dense_perm(to_text_with_degree(g)), g);
    auto s = random_sparse(rng);
    EXPECT_EQ(parse_sparse_perm(to_text(s)), s);
  }
}

}  // namespace
}  // namespace lucchini
