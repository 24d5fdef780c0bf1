#ifndef SEPPATH_DECOMPOSITION_HPP
#define SEPPATH_DECOMPOSITION_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "seppath/graph.hpp"

namespace seppath {

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using VertexLists = std::vector<std::vector<Vertex>>;

/// Repeatedly peels a maximal path off the remaining graph. Each path
/// starts at a vertex of least positive remaining degree and grows at both
/// ends, always stepping to the free neighbour of least remaining degree.
inline VertexLists greedy_maximal_paths(const Graph& g) {
  std::vector<std::set<Vertex>> adj(g.n());
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> on_path(g.n(), 0);
  VertexLists out;

  auto step = [&](Vertex from) -> std::optional<Vertex> {
    std::optional<Vertex> best;
    for (Vertex w : adj[from]) {
      if (on_path[w]) continue;
      if (!best || adj[w].size() < adj[*best].size()) best = w;
    }
    if (best) {
      adj[from].erase(*best);
      adj[*best].erase(from);
      on_path[*best] = 1;
    }
    return best;
  };

  for (;;) {
    std::optional<Vertex> start;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!adj[v].empty() && (!start || adj[v].size() < adj[*start].size())) start = v;
    }
    if (!start) break;
    std::deque<Vertex> path{*start};
    on_path[*start] = 1;
    while (auto w = step(path.back())) path.push_back(*w);
    while (auto w = step(path.front())) path.push_front(*w);
    for (Vertex v : path) on_path[v] = 0;
    out.emplace_back(path.begin(), path.end());
  }
  return out;
}

/// Euler-tour cover: pair odd vertices through a virtual vertex, walk an
/// Euler circuit per component, cut at the virtual vertex and wherever a
/// trail revisits a vertex of the current piece.
inline VertexLists euler_split_paths(const Graph& g) {
  const Vertex virt = static_cast<Vertex>(g.n());
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(g.n() + 1);
  std::size_t next_id = 0;
  auto link = [&](Vertex a, Vertex b) {
    adj[a].push_back({b, next_id});
    adj[b].push_back({a, next_id});
    ++next_id;
  };
  for (const Edge& e : g.edges()) link(e.u, e.v);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.degree(v) % 2 == 1) link(v, virt);
  }
  std::vector<char> used(next_id, 0);
  std::vector<std::size_t> cursor(adj.size(), 0);

  VertexLists out;
  auto flush_trail = [&](const std::vector<Vertex>& trail) {
    std::vector<Vertex> cur;
    std::vector<char> on(g.n(), 0);
    auto close = [&]() {
      if (cur.size() >= 2) out.push_back(cur);
      for (Vertex v : cur) on[v] = 0;
      cur.clear();
    };
    for (Vertex v : trail) {
      if (v == virt) {
        close();
        continue;
      }
      if (on[v]) {
        const Vertex last = cur.back();
        close();
        cur.push_back(last);
        on[last] = 1;
      }
      cur.push_back(v);
      on[v] = 1;
    }
    close();
  };

  for (Vertex s = 0; s <= virt; ++s) {
    if (cursor[s] == adj[s].size()) continue;
    // Hierholzer.
    std::vector<Vertex> stack{s};
    std::vector<Vertex> circuit;
    while (!stack.empty()) {
      Vertex v = stack.back();
      while (cursor[v] < adj[v].size() && used[adj[v][cursor[v]].second]) ++cursor[v];
      if (cursor[v] == adj[v].size()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        auto [w, id] = adj[v][cursor[v]];
        used[id] = 1;
        stack.push_back(w);
      }
    }
    if (circuit.size() > 1) flush_trail(circuit);
  }
  return out;
}

/// Joins pairs of paths that share an endpoint when the result stays simple.
inline void merge_paths(VertexLists& paths, std::size_t n) {
  bool changed = true;
  std::vector<char> mark(n, 0);
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < paths.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < paths.size() && !changed; ++j) {
        auto a = paths[i];
        auto b = paths[j];
        for (int flip_a = 0; flip_a < 2 && !changed; ++flip_a) {
          for (int flip_b = 0; flip_b < 2 && !changed; ++flip_b) {
            auto x = a;
            auto y = b;
            if (flip_a) std::reverse(x.begin(), x.end());
            if (flip_b) std::reverse(y.begin(), y.end());
            if (x.back() != y.front()) continue;
            for (Vertex v : x) mark[v] = 1;
            bool clash = false;
            for (std::size_t k = 1; k < y.size(); ++k) clash = clash || mark[y[k]];
            for (Vertex v : x) mark[v] = 0;
            if (clash) continue;
            x.insert(x.end(), y.begin() + 1, y.end());
            paths[i] = std::move(x);
            paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          }
        }
      }
    }
  }
}

}  // namespace detail

/// Edge-disjoint cover of `g` by at most n paths.
///
/// Greedy maximal-path peeling is tried first; if it ever needs more than n
/// paths the Euler-tour cover (with endpoint merging) is used instead. Both
/// exceeding n is reported as DecompositionError rather than returned.
inline PathSystem path_decompose(const Graph& g) {
  auto lists = detail::greedy_maximal_paths(g);
  if (lists.size() > g.n()) {
    lists = detail::euler_split_paths(g);
    detail::merge_paths(lists, g.n());
    if (lists.size() > g.n()) {
      throw DecompositionError("path decomposition used " + std::to_string(lists.size()) +
                               " paths on " + std::to_string(g.n()) + " vertices");
    }
  }
  return PathSystem::from_vertex_lists(g, lists);
}

/// Matchings M_1..M_k decomposing a graph, each meeting every path of a
/// fixed path decomposition in at most one edge.
struct MatchingFamily {
  std::vector<std::vector<EdgeId>> matchings;
  /// origin[e] = index of the decomposition path containing edge e.
  std::vector<std::size_t> origin;
};

/// First-fit matching decomposition respecting the origin-path constraint.
/// Edges are placed in edge-index order into the lowest-numbered slot that
/// holds no edge touching either endpoint and no edge of the same origin
/// path. At most 3n slots are ever needed.
inline MatchingFamily matching_decompose(const Graph& g1, const PathSystem& paths) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  MatchingFamily fam;
  fam.origin.assign(g1.m(), kNone);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const Path p = path_from_vertices(g1, paths[j].vertices());
    for (EdgeId e : p.edges()) {
      if (fam.origin[e] != kNone) {
        throw DecompositionError("decomposition paths overlap on edge " + std::to_string(e));
      }
      fam.origin[e] = j;
    }
  }
  for (EdgeId e = 0; e < g1.m(); ++e) {
    if (fam.origin[e] == kNone) {
      throw DecompositionError("edge " + std::to_string(e) + " not covered by the decomposition");
    }
  }

  const std::size_t cap = 3 * g1.n();
  std::vector<std::vector<char>> vertex_used;
  std::vector<std::vector<char>> path_used;
  for (EdgeId e = 0; e < g1.m(); ++e) {
    const Edge& ed = g1.edge(e);
    const std::size_t j = fam.origin[e];
    std::size_t slot = 0;
    for (; slot < fam.matchings.size(); ++slot) {
      if (!vertex_used[slot][ed.u] && !vertex_used[slot][ed.v] && !path_used[slot][j]) break;
    }
    if (slot == fam.matchings.size()) {
      if (slot >= cap) throw std::logic_error("matching decomposition exceeded 3n slots");
      fam.matchings.emplace_back();
      vertex_used.emplace_back(g1.n(), 0);
      path_used.emplace_back(paths.size(), 0);
    }
    fam.matchings[slot].push_back(e);
    vertex_used[slot][ed.u] = vertex_used[slot][ed.v] = 1;
    path_used[slot][j] = 1;
  }
  return fam;
}

/// Greedy first-fit colouring of a conflict graph: item i gets the least
/// class not used by any earlier item it conflicts with. `conflicts` must be
/// symmetric.
inline std::vector<std::size_t> first_fit_classes(
    const std::vector<std::vector<std::size_t>>& conflicts) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> cls(conflicts.size(), kNone);
  std::vector<std::size_t> blocked;
  for (std::size_t i = 0; i < conflicts.size(); ++i) {
    blocked.clear();
    for (std::size_t j : conflicts[i]) {
      if (cls[j] != kNone) blocked.push_back(cls[j]);
    }
    std::sort(blocked.begin(), blocked.end());
    std::size_t c = 0;
    for (std::size_t b : blocked) {
      if (b == c) ++c;
      else if (b > c) break;
    }
    cls[i] = c;
  }
  return cls;
}

}  // namespace seppath

#endif  // SEPPATH_DECOMPOSITION_HPP
