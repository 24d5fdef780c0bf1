#ifndef SEPPATH_CONSTRUCTIONS_HPP
#define SEPPATH_CONSTRUCTIONS_HPP

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "seppath/generators.hpp"
#include "seppath/graph.hpp"
#include "seppath/verification.hpp"

namespace seppath {

namespace detail {

/// Path p_{a,b} of the path graph in 1-based positions a < b.
inline std::vector<Vertex> segment(std::size_t a, std::size_t b) {
  std::vector<Vertex> vs;
  for (std::size_t i = a; i <= b; ++i) vs.push_back(static_cast<Vertex>(i - 1));
  return vs;
}

inline std::vector<std::vector<Vertex>> path_graph_family(std::size_t n) {
  if (n == 3) return {segment(2, 3)};
  if (n % 2 == 0) {
    auto fam = path_graph_family(n - 1);
    fam.push_back(segment(n - 1, n));
    return fam;
  }
  std::vector<std::vector<Vertex>> fam{segment(2, 4), segment(n - 2, n)};
  for (std::size_t i = 1; 2 * i + 5 <= n; ++i) fam.push_back(segment(2 * i + 1, 2 * i + 4));
  return fam;
}

}  // namespace detail

/// Separating system of size floor(n/2) for the path on n >= 3 vertices
/// (as labelled by make_path_graph). Only the first edge is left uncovered.
inline PathSystem separate_path_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("separate_path_graph needs n >= 3");
  return PathSystem::from_vertex_lists(make_path_graph(n), detail::path_graph_family(n));
}

/// Star of order n >= 4 with k = n-1 leaves: every full group of three
/// leaves a, b, c contributes the wedges a-0-b and b-0-c; two leftover
/// leaves contribute one single edge. Size floor(2k/3).
inline PathSystem separate_star(std::size_t n) {
  if (n < 4) throw std::invalid_argument("separate_star needs n >= 4");
  const Graph g = make_star(n);
  const std::size_t k = n - 1;
  PathSystem ps;
  std::size_t leaf = 1;
  for (; leaf + 2 <= k; leaf += 3) {
    const auto a = static_cast<Vertex>(leaf);
    ps.add(g, {a, 0, a + 1});
    ps.add(g, {a + 1, 0, a + 2});
  }
  if (k - (leaf - 1) == 2) ps.add(g, {0, static_cast<Vertex>(leaf)});
  return ps;
}

/// Separating system of size k+1 for the hair comb of order 3k, k >= 2:
/// the paths (i,2)~(i+1,1) for i < k, then (1,1)~(k,1) and (1,0)~(k,0).
/// The edge {(k,1),(k,2)} is the one left uncovered.
inline PathSystem separate_hair_comb(std::size_t k) {
  if (k < 2) throw std::invalid_argument("separate_hair_comb needs k >= 2");
  const Graph g = make_hair_comb(k);
  PathSystem ps;
  if (k == 2) {
    // The general family gives both spine-to-middle edges the same signature here.
    ps.add(tree_path(g, comb_vertex(1, 2), comb_vertex(1, 0)));
    ps.add(tree_path(g, comb_vertex(1, 1), comb_vertex(2, 1)));
    ps.add(tree_path(g, comb_vertex(1, 0), comb_vertex(2, 0)));
    return ps;
  }
  for (std::size_t i = 1; i < k; ++i) {
    ps.add(tree_path(g, comb_vertex(i, 2), comb_vertex(i + 1, 1)));
  }
  ps.add(tree_path(g, comb_vertex(1, 1), comb_vertex(k, 1)));
  ps.add(tree_path(g, comb_vertex(1, 0), comb_vertex(k, 0)));
  return ps;
}

/// The zig-zag path of the ladder L_k selected by a subset A of the rail
/// transitions 1..k-1: between columns j and j+1 it runs on the top rail iff
/// j is in A, crossing a rung wherever membership changes. It starts on the
/// bottom rail at column 1 and ends at column k without a final rung.
struct LadderSubsetPath {
  std::size_t k = 0;
  std::vector<std::size_t> subset;
  Path path;
};

inline LadderSubsetPath ladder_subset_path(std::size_t k, std::vector<std::size_t> subset) {
  if (k < 2) throw std::invalid_argument("ladder_subset_path needs k >= 2");
  std::vector<char> in(k, 0);
  for (std::size_t j : subset) {
    if (j < 1 || j >= k) throw std::invalid_argument("ladder subset element out of range");
    in[j] = 1;
  }
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<Vertex> vs{ladder_vertex(k, 1, 0)};
  std::size_t side = 0;
  for (std::size_t j = 1; j < k; ++j) {
    const std::size_t next = in[j] ? 1 : 0;
    if (next != side) vs.push_back(ladder_vertex(k, j, next));
    side = next;
    vs.push_back(ladder_vertex(k, j + 1, side));
  }
  return {k, std::move(subset), path_from_vertices(make_ladder(k), std::move(vs))};
}

/// O(log k) separating system of the ladder L_k, k >= 2.
///
/// Transition j gets the codeword (1^2^...^j, j^(j>>1)). Each codeword bit
/// b yields the subset path for {j : bit b set}; both rails are added. The
/// gray-code half makes rail edges pairwise distinct, the prefix-xor half
/// makes rung signatures equal j in binary, and the rails tell top from
/// bottom. Redundant members are then dropped greedily. At most
/// 2*ceil(log2 k) + 2 paths remain.
inline PathSystem separate_ladder(std::size_t k) {
  if (k < 2) throw std::invalid_argument("separate_ladder needs k >= 2");
  const Graph g = make_ladder(k);
  const auto bits = static_cast<std::size_t>(std::bit_width(k - 1));
  std::vector<std::size_t> prefix_xor(k, 0);
  for (std::size_t j = 1; j < k; ++j) prefix_xor[j] = prefix_xor[j - 1] ^ j;

  PathSystem candidates;
  auto add_class = [&](auto code) {
    for (std::size_t b = 0; b < bits; ++b) {
      std::vector<std::size_t> subset;
      for (std::size_t j = 1; j < k; ++j) {
        if ((code(j) >> b) & 1U) subset.push_back(j);
      }
      candidates.add(ladder_subset_path(k, subset).path);
    }
  };
  add_class([&](std::size_t j) { return prefix_xor[j]; });
  add_class([](std::size_t j) { return j ^ (j >> 1); });
  std::vector<Vertex> bottom;
  std::vector<Vertex> top;
  for (std::size_t j = 1; j <= k; ++j) {
    bottom.push_back(ladder_vertex(k, j, 0));
    top.push_back(ladder_vertex(k, j, 1));
  }
  candidates.add(g, bottom);
  candidates.add(g, top);

  if (!verify(g, candidates).separating) {
    throw std::logic_error("ladder candidate family does not separate");
  }
  for (std::size_t i = 0; i < candidates.size();) {
    PathSystem trial = candidates;
    trial.erase(i);
    if (verify(g, trial).separating) {
      candidates = std::move(trial);
    } else {
      ++i;
    }
  }
  return candidates;
}

namespace detail {

inline std::vector<std::vector<Vertex>> separate_tree_lists(const Graph& t) {
  const std::size_t n = t.n();
  if (n <= 2) return {};
  if (is_path_graph(t)) {
    Vertex start = 0;
    while (t.degree(start) != 1) ++start;
    std::vector<Vertex> order{start};
    Vertex prev = start;
    Vertex cur = t.neighbors(start).front().to;
    while (true) {
      order.push_back(cur);
      if (t.degree(cur) == 1) break;
      const auto& nb = t.neighbors(cur);
      const Vertex nxt = nb[0].to == prev ? nb[1].to : nb[0].to;
      prev = cur;
      cur = nxt;
    }
    auto fam = path_graph_family(n);
    for (auto& vs : fam) {
      for (Vertex& v : vs) v = order[v];
    }
    return fam;
  }

  Vertex u = 0;
  while (t.degree(u) < 3) ++u;
  const Vertex v1 = t.neighbors(u)[0].to;
  const Vertex v2 = t.neighbors(u)[1].to;
  const Vertex v3 = t.neighbors(u)[2].to;

  // Contract uv1, uv2, uv3 into u and relabel densely.
  constexpr Vertex kNone = UINT32_MAX;
  std::vector<Vertex> local(n, kNone);
  std::vector<Vertex> original;
  for (Vertex v = 0; v < n; ++v) {
    if (v == v1 || v == v2 || v == v3) continue;
    local[v] = static_cast<Vertex>(original.size());
    original.push_back(v);
  }
  auto image = [&](Vertex v) { return (v == v1 || v == v2 || v == v3) ? local[u] : local[v]; };
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) {
    const Vertex a = image(e.u);
    const Vertex b = image(e.v);
    if (a != b) edges.push_back(make_edge(a, b));
  }
  const Graph contracted(original.size(), std::move(edges));

  std::vector<std::vector<Vertex>> out;
  for (const auto& vs : separate_tree_lists(contracted)) {
    out.push_back(tree_path(t, original[vs.front()], original[vs.back()]).vertices());
  }
  out.push_back({v1, u, v2});
  out.push_back({v2, u, v3});
  return out;
}

}  // namespace detail

/// Separating system of a tree of size at most floor(2(n-1)/3) for n >= 4.
///
/// Paths are handled directly; otherwise the least vertex u of degree >= 3
/// and its three least neighbours are contracted into u, the smaller tree is
/// solved recursively, each of its paths is lifted to the unique path of the
/// original tree between the same endpoints, and the wedges v1-u-v2 and
/// v2-u-v3 are appended.
inline PathSystem separate_tree(const Graph& t) {
  if (!is_tree(t)) throw NotATree();
  return PathSystem::from_vertex_lists(t, detail::separate_tree_lists(t));
}

}  // namespace seppath

#endif  // SEPPATH_CONSTRUCTIONS_HPP
