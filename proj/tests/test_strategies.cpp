#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "seppath/generators.hpp"
#include "seppath/strategies.hpp"

using namespace seppath;

namespace {

Graph min_degree_gnp(std::size_t n, double p, double frac, std::uint64_t seed) {
  return make_gnp_conditioned(n, p, seed, [&](const Graph& g) {
    return static_cast<double>(g.min_degree()) >= frac * static_cast<double>(n);
  });
}

void expect_double_entry(const Graph& g, const StrategyOutcome& o) {
  EXPECT_TRUE(o.verified);
  EXPECT_EQ(o.size, o.system.size());
  EXPECT_TRUE(verify(g, o.system).separating);
  EXPECT_TRUE(oracle::separates(g, o.system));
}

bool is_alternating_cover(std::span<const Edge> matching, const CommonNeighborGraph& aux,
                          const std::vector<AlternatingPath>& cover) {
  std::vector<int> hits(matching.size(), 0);
  for (const auto& q : cover) {
    if (q.vertices.size() != 2 * q.blue.size() || q.blue.empty()) return false;
    std::set<Vertex> distinct(q.vertices.begin(), q.vertices.end());
    if (distinct.size() != q.vertices.size()) return false;
    for (std::size_t i = 0; i < q.blue.size(); ++i) {
      const Edge& e = matching[q.blue[i]];
      if (make_edge(q.vertices[2 * i], q.vertices[2 * i + 1]) != e) return false;
      ++hits[q.blue[i]];
      if (i + 1 < q.blue.size() && !aux.adjacent(q.vertices[2 * i + 1], q.vertices[2 * i + 2])) {
        return false;
      }
    }
  }
  for (int h : hits) {
    if (h != 1) return false;
  }
  return true;
}

}  // namespace

TEST(RandomSplit, K6Target1) {
  const Graph k6 = make_complete(6);
  const auto sp = random_split(k6, 1, 100, 0);
  EXPECT_GE(sp.g1.min_degree(), 1u);
  EXPECT_GE(sp.g2.min_degree(), 1u);
  EXPECT_EQ(sp.g1.m() + sp.g2.m(), k6.m());
  std::set<EdgeId> all(sp.ids1.begin(), sp.ids1.end());
  all.insert(sp.ids2.begin(), sp.ids2.end());
  EXPECT_EQ(all.size(), k6.m());
  for (std::size_t i = 0; i < sp.ids1.size(); ++i) EXPECT_EQ(sp.g1.edge(i), k6.edge(sp.ids1[i]));
}

TEST(RandomSplit, ImpossibleTargetExhaustsRetries) {
  EXPECT_THROW(random_split(make_path_graph(3), 2, 100, 0), StrategyFailed);
  EXPECT_THROW(random_split(make_path_graph(3), 0, 0, 0), std::invalid_argument);
}

TEST(RandomSplit, TargetZeroSucceedsFirstTry) {
  EXPECT_EQ(random_split(make_gnp(30, 0.2, 4), 0, 5, 9).attempts, 1u);
}

TEST(RandomSplit, Deterministic) {
  const Graph g = make_gnp(30, 0.5, 2);
  EXPECT_EQ(random_split(g, 3, 50, 11).ids1, random_split(g, 3, 50, 11).ids1);
}

TEST(CommonNeighbors, ThresholdMatchesDirectCount) {
  const Graph host = make_gnp(25, 0.4, 6);
  for (std::size_t thr : {1u, 3u, 5u}) {
    const CommonNeighborGraph aux(host, thr);
    for (Vertex x = 0; x < host.n(); ++x) {
      for (Vertex y = x + 1; y < host.n(); ++y) {
        std::size_t c = 0;
        for (Vertex z = 0; z < host.n(); ++z) c += host.has_edge(x, z) && host.has_edge(y, z);
        EXPECT_EQ(aux.adjacent(x, y), c >= thr);
      }
    }
  }
}

TEST(AlternatingCover, SingletonWithEmptyAux) {
  const std::vector<Edge> m{{0, 1}};
  const CommonNeighborGraph aux(2, {});
  const auto cover = alternating_cover(m, aux);
  ASSERT_EQ(cover.size(), 1u);
  EXPECT_EQ(cover[0].vertices, (std::vector<Vertex>{0, 1}));
}

TEST(AlternatingCover, JoinsThroughRedEdge) {
  const std::vector<Edge> m{{0, 1}, {2, 3}};
  const CommonNeighborGraph aux(4, {{1, 2}});
  const auto cover = alternating_cover(m, aux);
  ASSERT_EQ(cover.size(), 1u);
  EXPECT_EQ(cover[0].vertices, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(cover[0].blue, (std::vector<std::size_t>{0, 1}));
}

TEST(AlternatingCover, NoConnectorGivesTwoPaths) {
  const std::vector<Edge> m{{0, 1}, {2, 3}};
  EXPECT_EQ(alternating_cover(m, CommonNeighborGraph(4, {})).size(), 2u);
}

TEST(AlternatingCover, RejectsNonMatching) {
  const std::vector<Edge> m{{0, 1}, {1, 2}};
  EXPECT_THROW(alternating_cover(m, CommonNeighborGraph(3, {})), std::invalid_argument);
}

TEST(AlternatingCover, PropertyValidAndMaximal) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 10 + seed % 30;
    const Graph g = oracle::random_graph(n, 1, 4, seed);
    std::vector<Edge> m;
    std::vector<char> used(n, 0);
    for (const Edge& e : g.edges()) {
      if (!used[e.u] && !used[e.v]) {
        m.push_back(e);
        used[e.u] = used[e.v] = 1;
      }
    }
    const CommonNeighborGraph aux(oracle::random_graph(n, 1, 3, seed + 7), 1);
    const auto cover = alternating_cover(m, aux);
    EXPECT_TRUE(is_alternating_cover(m, aux, cover)) << "seed " << seed;
    // Maximal when extracted: no end has a red neighbour matched by an edge
    // that a later path took.
    std::vector<char> later(m.size(), 0);
    for (auto it = cover.rbegin(); it != cover.rend(); ++it) {
      for (Vertex end : {it->vertices.front(), it->vertices.back()}) {
        for (Vertex z : aux.neighbors(end)) {
          for (std::size_t b = 0; b < m.size(); ++b) {
            EXPECT_FALSE(later[b] && (m[b].u == z || m[b].v == z)) << "seed " << seed;
          }
        }
      }
      for (std::size_t b : it->blue) later[b] = 1;
    }
  }
}

TEST(Trivial, EveryEdgeAlone) {
  const Graph g = make_gnp(12, 0.5, 3);
  const auto o = trivial_strategy(g);
  EXPECT_EQ(o.size, g.m());
  expect_double_entry(g, o);
}

TEST(MinDegree, K8) {
  const Graph k8 = make_complete(8);
  const auto o = min_degree_strategy(k8, 0.5, 1);
  expect_double_entry(k8, o);
  EXPECT_LE(o.size, static_cast<std::size_t>(std::ceil(122.0 * 8 / 0.25)));
  EXPECT_EQ(o.strategy_name, "min-degree");
}

TEST(MinDegree, ConditionedGnp) {
  const Graph g = min_degree_gnp(60, 0.8, 0.5, 7);
  const auto o = min_degree_strategy(g, 0.5, 7);
  expect_double_entry(g, o);
  EXPECT_EQ(o.diagnostics.at("dir0.blue_multiplicity_violations"), 0);
  EXPECT_EQ(o.diagnostics.at("dir1.blue_multiplicity_violations"), 0);
}

TEST(MinDegree, DegreePreconditionFails) {
  try {
    min_degree_strategy(make_path_graph(10), 0.5, 1);
    FAIL();
  } catch (const StrategyFailed& e) {
    EXPECT_EQ(e.stage(), "precondition");
  }
  EXPECT_THROW(min_degree_strategy(make_complete(5), 1.5, 1), StrategyFailed);
}

TEST(MinDegree, Deterministic) {
  const Graph g = min_degree_gnp(40, 0.7, 0.5, 3);
  const auto a = min_degree_strategy(g, 0.5, 3);
  const auto b = min_degree_strategy(g, 0.5, 3);
  EXPECT_EQ(a.system, b.system);
  EXPECT_EQ(a.diagnostics, b.diagnostics);
}

TEST(KCore, MatchesDefinition) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_graph(30, 1, 5, seed);
    std::vector<Vertex> all(g.n());
    for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
    for (std::size_t k : {1u, 2u, 3u, 5u}) {
      const auto core = k_core(g, all, k);
      std::set<Vertex> in(core.begin(), core.end());
      for (Vertex v : core) {
        std::size_t d = 0;
        for (const auto& inc : g.neighbors(v)) d += in.count(inc.to);
        EXPECT_GE(d, k);
      }
      // The k-core is unique, so naive fixed-point deletion must agree.
      std::set<Vertex> naive(all.begin(), all.end());
      bool changed = true;
      while (changed) {
        changed = false;
        for (Vertex v : std::set<Vertex>(naive)) {
          std::size_t d = 0;
          for (const auto& inc : g.neighbors(v)) d += naive.count(inc.to);
          if (d < k) {
            naive.erase(v);
            changed = true;
          }
        }
      }
      EXPECT_EQ(in, naive);
    }
  }
}

TEST(Dense, K12) {
  const Graph k12 = make_complete(12);
  const auto o = dense_strategy(k12, 0.25, 3);
  expect_double_entry(k12, o);
  EXPECT_EQ(o.diagnostics.at("levels"), 1);
  EXPECT_EQ(o.diagnostics.at("h1"), 12);
}

TEST(Dense, GnpDiagnostics) {
  const Graph g = make_gnp(100, 0.6, 3);
  const double c = 0.1;
  const auto o = dense_strategy(g, c, 3);
  expect_double_entry(g, o);
  const auto& d = o.diagnostics;
  EXPECT_GE(static_cast<double>(d.at("h1")), std::sqrt(c) * static_cast<double>(d.at("g0")));
  EXPECT_EQ(d.at("core_size_bound_violations"), 0);
  EXPECT_EQ(d.at("color_class_violations"), 0);
  EXPECT_EQ(d.at("multigraph_degree_violations"), 0);
  EXPECT_EQ(d.at("rainbow_violations"), 0);
  EXPECT_LE(o.size, static_cast<std::size_t>(std::ceil(638.0 * 100 / (c * c * c))));
}

TEST(Dense, MultiLevelPeelPartitionsVertices) {
  // K30 and K10 joined by one edge: the K10 misses the first 10-core and forms the second level.
  std::vector<Edge> es;
  for (Vertex i = 0; i < 30; ++i) {
    for (Vertex j = i + 1; j < 30; ++j) es.push_back({i, j});
  }
  for (Vertex i = 30; i < 40; ++i) {
    for (Vertex j = i + 1; j < 40; ++j) es.push_back({i, j});
  }
  es.push_back({0, 30});
  const Graph g(40, es);
  const auto o = dense_strategy(g, 0.5, 2);
  expect_double_entry(g, o);
  std::int64_t total = 0;
  for (int i = 1; i <= o.diagnostics.at("levels"); ++i) {
    const auto it = o.diagnostics.find("h" + std::to_string(i));
    if (it != o.diagnostics.end()) total += it->second;
  }
  EXPECT_GE(o.diagnostics.at("levels"), 2);
  EXPECT_LE(total, 40);
  EXPECT_EQ(o.diagnostics.at("rainbow_violations"), 0);
}

TEST(Dense, SparseInputStillVerifiesOrFailsCleanly) {
  const Graph g = make_random_tree(30, 4);
  try {
    const auto o = dense_strategy(g, 0.3, 1);
    expect_double_entry(g, o);
    EXPECT_FALSE(o.warnings.empty());
  } catch (const StrategyFailed& e) {
    EXPECT_FALSE(e.stage().empty());
  }
}

TEST(Random, SparseCaseIsTrivial) {
  const Graph g = make_gnp(50, 0.1, 1);
  ASSERT_LE(g.m(), 1000u);
  const auto o = random_graph_strategy(g, 0.1, 1);
  EXPECT_EQ(o.size, g.m());
  EXPECT_EQ(o.diagnostics.at("case"), 2);
  expect_double_entry(g, o);
}

TEST(Random, DenseCaseVerifiesOrFails) {
  const Graph g = make_gnp(80, 0.7, 5);
  try {
    const auto o = random_graph_strategy(g, 0.7, 5);
    EXPECT_EQ(o.diagnostics.at("case"), 1);
    expect_double_entry(g, o);
  } catch (const StrategyFailed& e) {
    EXPECT_EQ(e.stage(), "greedy completion");
  }
}

TEST(Random, EmptyGraph) {
  const Graph g(10, {});
  const auto o = random_graph_strategy(g, 0.5, 1);
  EXPECT_EQ(o.size, 0u);
  EXPECT_TRUE(o.verified);
}

TEST(ClosedForms, Recognition) {
  EXPECT_EQ(run_strategy("path", make_path_graph(9)).size, 4u);
  EXPECT_EQ(run_strategy("comb", make_hair_comb(4)).size, 5u);
  EXPECT_EQ(run_strategy("star", make_star(7)).size, 4u);
  EXPECT_TRUE(run_strategy("ladder", make_ladder(10)).verified);
  EXPECT_THROW(run_strategy("comb", make_path_graph(9)), StrategyFailed);
  EXPECT_THROW(run_strategy("tree", make_complete(4)), StrategyFailed);
  EXPECT_THROW(run_strategy("bogus", make_complete(4)), std::invalid_argument);
}

TEST(Portfolio, Examples) {
  EXPECT_EQ(portfolio(make_path_graph(7)).size, 3u);
  const auto comb = portfolio(make_hair_comb(4));
  EXPECT_EQ(comb.size, 5u);
  EXPECT_EQ(comb.strategy_name, "portfolio/comb");
}

TEST(Portfolio, AlwaysVerifies) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = oracle::random_graph(5 + seed % 35, 1 + seed % 4, 5, seed);
    const auto o = portfolio(g, {.seed = seed});
    expect_double_entry(g, o);
    EXPECT_LE(o.size, g.m());
  }
}

TEST(Portfolio, TieGoesToEarlierStrategy) {
  // On P7 the tree and path constructions coincide; tree comes first.
  EXPECT_EQ(portfolio(make_path_graph(7)).strategy_name, "portfolio/tree");
}
