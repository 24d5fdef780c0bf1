#ifndef SEPPATH_GENERATORS_HPP
#define SEPPATH_GENERATORS_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "seppath/graph.hpp"

namespace seppath {

/// The only generator engine used by the library. Draws are consumed
/// through the helpers below, never through std distributions, so results
/// are identical across standard libraries.
using Rng = std::mt19937_64;

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
  return rng() < threshold;
}

/// Uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

inline void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

/// Path on vertices 0..n-1.
inline Graph make_path_graph(std::size_t n) {
  require_positive(n, "make_path_graph");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph::canonical(n, std::move(edges));
}

/// Star of order n: centre 0, leaves 1..n-1.
inline Graph make_star(std::size_t n) {
  require_positive(n, "make_star");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, static_cast<Vertex>(i)});
  return Graph::canonical(n, std::move(edges));
}

/// Hair comb coordinates (i, r), i in 1..k, r in {0,1,2}; r = 0 is the spine.
inline Vertex comb_vertex(std::size_t i, std::size_t r) {
  return static_cast<Vertex>(3 * (i - 1) + r);
}

/// Hair comb of order 3k: a spine path on k vertices with a pendant path of
/// length two at each spine vertex.
inline Graph make_hair_comb(std::size_t k) {
  require_positive(k, "make_hair_comb");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= k; ++i) {
    if (i < k) edges.push_back({comb_vertex(i, 0), comb_vertex(i + 1, 0)});
    edges.push_back({comb_vertex(i, 0), comb_vertex(i, 1)});
    edges.push_back({comb_vertex(i, 1), comb_vertex(i, 2)});
  }
  return Graph::canonical(3 * k, std::move(edges));
}

/// Ladder coordinates: column j in 1..k, side 0 (bottom rail) or 1 (top).
inline Vertex ladder_vertex(std::size_t k, std::size_t column, std::size_t side) {
  return static_cast<Vertex>(side * k + (column - 1));
}

/// Ladder of order 2k: two rails of k vertices joined by k rungs.
inline Graph make_ladder(std::size_t k) {
  require_positive(k, "make_ladder");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= k; ++j) {
    edges.push_back({ladder_vertex(k, j, 0), ladder_vertex(k, j, 1)});
    if (j < k) {
      edges.push_back({ladder_vertex(k, j, 0), ladder_vertex(k, j + 1, 0)});
      edges.push_back({ladder_vertex(k, j, 1), ladder_vertex(k, j + 1, 1)});
    }
  }
  return Graph::canonical(2 * k, std::move(edges));
}

inline Graph make_complete(std::size_t n) {
  require_positive(n, "make_complete");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph::canonical(n, std::move(edges));
}

/// G(n, p): each pair i < j, in lexicographic order, is an edge with
/// probability p.
inline Graph make_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_gnp: p outside [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (bernoulli(rng, p)) edges.push_back({i, j});
    }
  }
  return Graph::canonical(n, std::move(edges));
}

/// G(n, p) resampled (seed, seed+1, ...) until `accept` holds.
inline Graph make_gnp_conditioned(std::size_t n, double p, std::uint64_t seed,
                                  const std::function<bool(const Graph&)>& accept,
                                  std::size_t max_tries = 1000) {
  for (std::size_t t = 0; t < max_tries; ++t) {
    Graph g = make_gnp(n, p, seed + t);
    if (accept(g)) return g;
  }
  throw std::runtime_error("make_gnp_conditioned: no sample accepted");
}

/// Labelled tree decoded from a random Prufer sequence.
inline Graph make_random_tree(std::size_t n, std::uint64_t seed) {
  require_positive(n, "make_random_tree");
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph::canonical(2, {{0, 1}});
  Rng rng(seed);
  std::vector<Vertex> code(n - 2);
  for (auto& x : code) x = static_cast<Vertex>(uniform_below(rng, n));
  std::vector<std::size_t> degree(n, 1);
  for (Vertex x : code) ++degree[x];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  for (Vertex x : code) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.push_back(make_edge(leaf, x));
    if (--degree[x] == 1) leaves.push(x);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  edges.push_back(make_edge(a, leaves.top()));
  return Graph::canonical(n, std::move(edges));
}

}  // namespace seppath

#endif  // SEPPATH_GENERATORS_HPP
