#include <gtest/gtest.h>

#include <bit>

#include "oracles.hpp"
#include "seppath/constructions.hpp"
#include "seppath/exact.hpp"
#include "seppath/generators.hpp"

using namespace seppath;

namespace {

std::vector<std::vector<Vertex>> as_lists(const PathSystem& ps) { return oracle::lists(ps); }

std::size_t ceil_log2(std::size_t x) { return x <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(x - 1)); }

}  // namespace

TEST(Generators, Sizes) {
  EXPECT_EQ(make_hair_comb(2).n(), 6u);
  EXPECT_EQ(make_hair_comb(2).m(), 5u);
  EXPECT_EQ(make_ladder(3).n(), 6u);
  EXPECT_EQ(make_ladder(3).m(), 7u);
  const Graph s = make_star(4);
  EXPECT_EQ(s.m(), 3u);
  EXPECT_EQ(s.degree(0), 3u);
  EXPECT_THROW(make_path_graph(0), std::invalid_argument);
  EXPECT_THROW(make_ladder(0), std::invalid_argument);
}

TEST(Generators, CombCoordinates) {
  const Graph hc = make_hair_comb(3);
  EXPECT_TRUE(hc.has_edge(comb_vertex(1, 0), comb_vertex(2, 0)));
  EXPECT_TRUE(hc.has_edge(comb_vertex(2, 0), comb_vertex(2, 1)));
  EXPECT_TRUE(hc.has_edge(comb_vertex(2, 1), comb_vertex(2, 2)));
  EXPECT_FALSE(hc.has_edge(comb_vertex(1, 1), comb_vertex(2, 1)));
  EXPECT_TRUE(is_tree(hc));
}

TEST(Generators, GnpDeterministicAndLexicographic) {
  const Graph a = make_gnp(20, 0.5, 1);
  EXPECT_EQ(a, make_gnp(20, 0.5, 1));
  EXPECT_NE(a, make_gnp(20, 0.5, 2));
  for (std::size_t i = 1; i < a.m(); ++i) {
    EXPECT_TRUE(std::pair(a.edge(i - 1).u, a.edge(i - 1).v) < std::pair(a.edge(i).u, a.edge(i).v));
  }
  EXPECT_EQ(make_gnp(10, 0.0, 3).m(), 0u);
  EXPECT_EQ(make_gnp(10, 1.0, 3).m(), 45u);
}

TEST(Generators, RandomTreesAreTrees) {
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_TRUE(is_tree(make_random_tree(1 + s % 30, s)));
}

TEST(SeparatePathGraph, AppendixFamilies) {
  EXPECT_EQ(as_lists(separate_path_graph(3)), (std::vector<std::vector<Vertex>>{{1, 2}}));
  // n = 11, 1-based p_{2,4}, p_{9,11}, p_{3,6}, p_{5,8}, p_{7,10}.
  EXPECT_EQ(as_lists(separate_path_graph(11)),
            (std::vector<std::vector<Vertex>>{
                {1, 2, 3}, {8, 9, 10}, {2, 3, 4, 5}, {4, 5, 6, 7}, {6, 7, 8, 9}}));
  // Even n adds p_{n-1,n} to the family of n - 1.
  auto f12 = as_lists(separate_path_graph(11));
  f12.push_back({10, 11});
  EXPECT_EQ(as_lists(separate_path_graph(12)), f12);
  EXPECT_EQ(separate_path_graph(4).size(), 2u);
  EXPECT_THROW(separate_path_graph(2), std::invalid_argument);
}

TEST(SeparatePathGraph, SizeAndSeparation) {
  for (std::size_t n = 3; n <= 60; ++n) {
    const Graph g = make_path_graph(n);
    const auto ps = separate_path_graph(n);
    EXPECT_EQ(ps.size(), n / 2);
    EXPECT_TRUE(oracle::separates(g, ps)) << n;
    const auto r = verify(g, ps);
    EXPECT_EQ(r.uncovered, (std::vector<EdgeId>{0}));
  }
}

TEST(SeparateStar, SizesAndSeparation) {
  EXPECT_EQ(as_lists(separate_star(4)), (std::vector<std::vector<Vertex>>{{1, 0, 2}, {2, 0, 3}}));
  EXPECT_EQ(separate_star(7).size(), 4u);
  EXPECT_EQ(separate_star(5).size(), 2u);
  for (std::size_t n = 4; n <= 40; ++n) {
    const auto ps = separate_star(n);
    EXPECT_EQ(ps.size(), 2 * (n - 1) / 3) << n;
    EXPECT_TRUE(oracle::separates(make_star(n), ps)) << n;
  }
  EXPECT_THROW(separate_star(3), std::invalid_argument);
}

TEST(SeparateStar, MatchesExactValueForSmallStars) {
  for (std::size_t n = 4; n <= 8; ++n) {
    const Graph g = make_star(n);
    EXPECT_EQ(oracle::brute_force_f(g), separate_star(n).size()) << n;
  }
}

TEST(SeparateHairComb, DisplayedFamily) {
  const auto ps = separate_hair_comb(3);
  const std::vector<std::vector<Vertex>> expected{
      {comb_vertex(1, 2), comb_vertex(1, 1), comb_vertex(1, 0), comb_vertex(2, 0), comb_vertex(2, 1)},
      {comb_vertex(2, 2), comb_vertex(2, 1), comb_vertex(2, 0), comb_vertex(3, 0), comb_vertex(3, 1)},
      {comb_vertex(1, 1), comb_vertex(1, 0), comb_vertex(2, 0), comb_vertex(3, 0), comb_vertex(3, 1)},
      {comb_vertex(1, 0), comb_vertex(2, 0), comb_vertex(3, 0)},
  };
  EXPECT_EQ(as_lists(ps), expected);
}

TEST(SeparateHairComb, SizeUncoveredEdgeAndTightness) {
  for (std::size_t k = 2; k <= 12; ++k) {
    const Graph g = make_hair_comb(k);
    const auto ps = separate_hair_comb(k);
    EXPECT_EQ(ps.size(), k + 1);
    EXPECT_EQ(ps.size(), tree_lower_bound(g));
    const auto r = verify(g, ps);
    EXPECT_TRUE(r.separating);
    ASSERT_EQ(r.uncovered.size(), 1u);
    EXPECT_EQ(r.uncovered[0], *g.edge_id(comb_vertex(k, 1), comb_vertex(k, 2)));
  }
  EXPECT_EQ(oracle::brute_force_f(make_hair_comb(2)), 3u);
  EXPECT_THROW(separate_hair_comb(1), std::invalid_argument);
}

TEST(LadderSubsetPath, FigureExample) {
  const auto sp = ladder_subset_path(11, {9, 4, 5});
  EXPECT_EQ(sp.subset, (std::vector<std::size_t>{4, 5, 9}));
  auto b = [](std::size_t j) { return ladder_vertex(11, j, 0); };
  auto t = [](std::size_t j) { return ladder_vertex(11, j, 1); };
  // Bottom 1..4, rung, top 4..6, rung, bottom 6..9, rung, top 9..10, rung, bottom 10..11.
  const std::vector<Vertex> expected{b(1), b(2), b(3), b(4), t(4), t(5), t(6), b(6), b(7), b(8),
                                     b(9), t(9), t(10), b(10), b(11)};
  EXPECT_EQ(sp.path.vertices(), expected);
}

TEST(LadderSubsetPath, RailUseMatchesMembership) {
  const std::size_t k = 9;
  const Graph g = make_ladder(k);
  for (unsigned mask = 0; mask < (1u << (k - 1)); mask += 7) {
    std::vector<std::size_t> a;
    for (std::size_t j = 1; j < k; ++j) {
      if ((mask >> (j - 1)) & 1U) a.push_back(j);
    }
    const auto sp = ladder_subset_path(k, a);
    const auto es = oracle::edges_of(sp.path.vertices());
    for (std::size_t j = 1; j < k; ++j) {
      const bool top = (mask >> (j - 1)) & 1U;
      EXPECT_EQ(es.count(oracle::ue(ladder_vertex(k, j, 1), ladder_vertex(k, j + 1, 1))), top ? 1u : 0u);
      EXPECT_EQ(es.count(oracle::ue(ladder_vertex(k, j, 0), ladder_vertex(k, j + 1, 0))), top ? 0u : 1u);
    }
    EXPECT_NO_THROW(path_from_vertices(g, sp.path.vertices()));
  }
  EXPECT_THROW(ladder_subset_path(5, {5}), std::invalid_argument);
}

TEST(SeparateLadder, BoundAndSeparation) {
  for (std::size_t k = 2; k <= 80; ++k) {
    const Graph g = make_ladder(k);
    const auto ps = separate_ladder(k);
    EXPECT_LE(ps.size(), 2 * ceil_log2(k) + 4) << k;
    EXPECT_TRUE(oracle::separates(g, ps)) << k;
  }
  EXPECT_THROW(separate_ladder(1), std::invalid_argument);
}

TEST(SeparateLadder, SmallCasesAgainstBruteForce) {
  EXPECT_EQ(oracle::brute_force_f(make_ladder(2)), 2u);
  EXPECT_GE(separate_ladder(2).size(), 2u);
  EXPECT_LE(separate_ladder(2).size(), 6u);
}

TEST(SeparateTree, Examples) {
  EXPECT_EQ(separate_tree(make_path_graph(5)).size(), 2u);
  EXPECT_EQ(separate_tree(make_star(4)).size(), 2u);
  EXPECT_EQ(separate_tree(Graph(1, {})).size(), 0u);
  EXPECT_EQ(separate_tree(make_path_graph(2)).size(), 0u);
  EXPECT_EQ(separate_tree(make_path_graph(3)).size(), 1u);
  EXPECT_THROW(separate_tree(make_complete(3)), NotATree);
}

TEST(SeparateTree, RelabelledPathDelegates) {
  // Path 3-0-4-1-2 in scrambled labels.
  const Graph t(5, {{0, 3}, {0, 4}, {1, 4}, {1, 2}});
  const auto ps = separate_tree(t);
  EXPECT_EQ(ps.size(), 2u);
  EXPECT_TRUE(oracle::separates(t, ps));
}

TEST(SeparateTree, PropertyBoundSeparationAndLemma) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t n = 4 + (seed * 13) % 120;
    const Graph t = oracle::random_tree(n, seed);
    const auto ps = separate_tree(t);
    EXPECT_LE(ps.size(), 2 * (n - 1) / 3) << "seed " << seed;
    EXPECT_TRUE(oracle::separates(t, ps)) << "seed " << seed;
    EXPECT_TRUE(lemma61_check(t, ps).empty()) << "seed " << seed;
  }
}

TEST(SeparateTree, StarsAreTight) {
  for (std::size_t n = 4; n <= 8; ++n) {
    const auto ps = separate_tree(make_star(n));
    EXPECT_EQ(ps.size(), 2 * (n - 1) / 3);
    EXPECT_EQ(exact_min(make_star(n)).value, ps.size());
  }
}
