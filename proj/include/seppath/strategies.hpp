#ifndef SEPPATH_STRATEGIES_HPP
#define SEPPATH_STRATEGIES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seppath/constructions.hpp"
#include "seppath/decomposition.hpp"
#include "seppath/generators.hpp"
#include "seppath/graph.hpp"
#include "seppath/verification.hpp"

namespace seppath {

/// A strategy could not produce a system. `stage()` names the step that
/// gave up (precondition, split, expansion, ...).
class StrategyFailed : public std::runtime_error {
 public:
  StrategyFailed(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

using Diagnostics = std::map<std::string, std::int64_t>;

struct StrategyOutcome {
  PathSystem system;
  std::string strategy_name;
  bool verified = false;
  std::size_t size = 0;
  Diagnostics diagnostics;
  std::vector<std::string> warnings;
};

namespace detail {

inline constexpr double kEps = 1e-9;

inline std::size_t ceil_at_least_one(double x) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x - kEps)));
}

inline StrategyOutcome finish(const Graph& g, PathSystem ps, std::string name, Diagnostics diag,
                              std::vector<std::string> warnings = {}) {
  StrategyOutcome out;
  out.verified = verify(g, ps).separating;
  if (!out.verified) {
    throw StrategyFailed("verification", name + " produced a non-separating system");
  }
  out.size = ps.size();
  out.system = std::move(ps);
  out.strategy_name = std::move(name);
  out.diagnostics = std::move(diag);
  out.warnings = std::move(warnings);
  return out;
}

}  // namespace detail

/// Every edge as its own probe path. Always separating.
inline StrategyOutcome trivial_strategy(const Graph& g) {
  PathSystem ps;
  for (const Edge& e : g.edges()) ps.add(g, {e.u, e.v});
  return detail::finish(g, std::move(ps), "trivial", {});
}

// ---------------------------------------------------------------------------
// Random split

/// Edge partition of a host graph into two spanning subgraphs. ids1[i] is the
/// host edge index of g1's edge i (likewise for g2).
struct SplitPair {
  Graph g1;
  Graph g2;
  std::vector<EdgeId> ids1;
  std::vector<EdgeId> ids2;
  std::size_t attempts = 0;
};

/// Assigns each edge to g1 with probability 1/2, retrying until both sides
/// have minimum degree >= `min_deg_target`.
inline SplitPair random_split(const Graph& g, std::size_t min_deg_target,
                              std::size_t max_retries, std::uint64_t seed) {
  if (max_retries == 0) throw std::invalid_argument("max_retries must be >= 1");
  Rng rng(seed);
  for (std::size_t attempt = 1; attempt <= max_retries; ++attempt) {
    SplitPair sp;
    std::vector<std::size_t> deg1(g.n(), 0);
    std::vector<std::size_t> deg2(g.n(), 0);
    for (EdgeId e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edge(e);
      if (rng() >> 63) {
        sp.ids1.push_back(e);
        ++deg1[ed.u];
        ++deg1[ed.v];
      } else {
        sp.ids2.push_back(e);
        ++deg2[ed.u];
        ++deg2[ed.v];
      }
    }
    const bool ok = std::all_of(deg1.begin(), deg1.end(),
                                [&](std::size_t d) { return d >= min_deg_target; }) &&
                    std::all_of(deg2.begin(), deg2.end(),
                                [&](std::size_t d) { return d >= min_deg_target; });
    if (ok) {
      sp.g1 = edge_subgraph(g, sp.ids1);
      sp.g2 = edge_subgraph(g, sp.ids2);
      sp.attempts = attempt;
      return sp;
    }
  }
  throw StrategyFailed("split", "no split with both minimum degrees >= " +
                                    std::to_string(min_deg_target) + " after " +
                                    std::to_string(max_retries) + " attempts");
}

// ---------------------------------------------------------------------------
// Common-neighbour graph and alternating paths

/// Auxiliary graph joining x != y when they have at least `threshold`
/// common neighbours in the designated host.
class CommonNeighborGraph {
 public:
  CommonNeighborGraph(const Graph& host, std::size_t threshold)
      : n_(host.n()), threshold_(threshold), adj_(host.n()) {
    const std::size_t words = (n_ + 63) / 64;
    std::vector<std::uint64_t> bits(n_ * words, 0);
    for (const Edge& e : host.edges()) {
      bits[e.u * words + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
      bits[e.v * words + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
    }
    for (Vertex x = 0; x < n_; ++x) {
      for (Vertex y = x + 1; y < n_; ++y) {
        std::size_t common = 0;
        for (std::size_t w = 0; w < words; ++w) {
          common += static_cast<std::size_t>(std::popcount(bits[x * words + w] & bits[y * words + w]));
        }
        if (common >= threshold_) link(x, y);
      }
    }
  }

  /// Explicit auxiliary graph, mainly for tests.
  CommonNeighborGraph(std::size_t n, const std::vector<Edge>& edges)
      : n_(n), threshold_(0), adj_(n) {
    for (const Edge& e : edges) link(e.u, e.v);
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t threshold() const noexcept { return threshold_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  bool adjacent(Vertex a, Vertex b) const {
    const auto& l = adj_.at(a);
    return std::binary_search(l.begin(), l.end(), b);
  }

 private:
  void link(Vertex a, Vertex b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    ++edge_count_;
  }

  std::size_t n_;
  std::size_t threshold_;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Vertex>> adj_;
};

/// Path alternating blue (matching) and red (auxiliary) edges, starting and
/// ending blue: (vertices[2i], vertices[2i+1]) is blue edge blue[i].
struct AlternatingPath {
  std::vector<Vertex> vertices;
  std::vector<std::size_t> blue;
};

/// Covers the matching by vertex-simple alternating paths. Each path starts
/// from the first unused blue edge and is extended at the tail, then at the
/// head, through the least red neighbour whose matching partner is still
/// unused, until neither end can grow. Red edges may be reused across
/// paths, blue edges never.
inline std::vector<AlternatingPath> alternating_cover(std::span<const Edge> matching,
                                                      const CommonNeighborGraph& aux) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = aux.n();
  std::vector<std::size_t> slot(n, kNone);
  for (std::size_t i = 0; i < matching.size(); ++i) {
    for (Vertex v : {matching[i].u, matching[i].v}) {
      if (v >= n) throw std::invalid_argument("matching vertex out of range");
      if (slot[v] != kNone) throw std::invalid_argument("edge set is not a matching");
      slot[v] = i;
    }
  }
  auto partner = [&](Vertex v) {
    const Edge& e = matching[slot[v]];
    return e.u == v ? e.v : e.u;
  };

  std::vector<char> used(matching.size(), 0);
  std::vector<char> on(n, 0);
  std::vector<AlternatingPath> out;
  for (std::size_t start = 0; start < matching.size(); ++start) {
    if (used[start]) continue;
    std::deque<Vertex> vs{matching[start].u, matching[start].v};
    std::deque<std::size_t> blue{start};
    used[start] = 1;
    on[matching[start].u] = on[matching[start].v] = 1;

    auto grab = [&](Vertex from) -> std::optional<Vertex> {
      for (Vertex z : aux.neighbors(from)) {
        if (slot[z] == kNone || used[slot[z]] || on[z] || on[partner(z)]) continue;
        return z;
      }
      return std::nullopt;
    };
    while (auto z = grab(vs.back())) {
      const Vertex w = partner(*z);
      vs.push_back(*z);
      vs.push_back(w);
      blue.push_back(slot[*z]);
      used[slot[*z]] = 1;
      on[*z] = on[w] = 1;
    }
    while (auto z = grab(vs.front())) {
      const Vertex w = partner(*z);
      vs.push_front(*z);
      vs.push_front(w);
      blue.push_front(slot[*z]);
      used[slot[*z]] = 1;
      on[*z] = on[w] = 1;
    }
    for (Vertex v : vs) on[v] = 0;
    out.push_back({{vs.begin(), vs.end()}, {blue.begin(), blue.end()}});
  }
  return out;
}

namespace detail {

/// Consecutive runs of at most `per_piece` blue edges of an alternating
/// path, each as its own alternating path (red edges between runs dropped).
inline std::vector<AlternatingPath> split_alternating(const AlternatingPath& q,
                                                      std::size_t per_piece) {
  std::vector<AlternatingPath> pieces;
  for (std::size_t b = 0; b < q.blue.size(); b += per_piece) {
    const std::size_t e = std::min(q.blue.size(), b + per_piece);
    AlternatingPath piece;
    piece.vertices.assign(q.vertices.begin() + static_cast<std::ptrdiff_t>(2 * b),
                          q.vertices.begin() + static_cast<std::ptrdiff_t>(2 * e));
    piece.blue.assign(q.blue.begin() + static_cast<std::ptrdiff_t>(b),
                      q.blue.begin() + static_cast<std::ptrdiff_t>(e));
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

/// Blue edges per piece so a piece has at most `length` edges.
inline std::size_t blue_per_piece(std::size_t length) { return std::max<std::size_t>(1, (length + 1) / 2); }

/// Realises an alternating piece as a vertex sequence of the host graph.
/// `blue_via(i)` optionally names an interior vertex for blue edge i; each
/// red pair is bridged by the least common neighbour in `red_host` not yet on
/// the sequence. Returns nullopt if some red pair cannot be bridged.
template <typename BlueVia>
std::optional<std::vector<Vertex>> realize_piece(const AlternatingPath& piece, BlueVia blue_via,
                                                 const Graph& red_host, std::vector<char>& on) {
  std::vector<Vertex> seq;
  std::vector<Vertex> touched;
  auto put = [&](Vertex v) {
    seq.push_back(v);
    on[v] = 1;
    touched.push_back(v);
  };
  for (Vertex v : piece.vertices) on[v] = 1;
  for (Vertex v : piece.vertices) touched.push_back(v);
  bool ok = true;
  for (std::size_t i = 0; i < piece.blue.size() && ok; ++i) {
    const Vertex a = piece.vertices[2 * i];
    const Vertex b = piece.vertices[2 * i + 1];
    seq.push_back(a);
    if (std::optional<Vertex> via = blue_via(piece.blue[i])) put(*via);
    seq.push_back(b);
    if (i + 1 < piece.blue.size()) {
      const Vertex c = piece.vertices[2 * i + 2];
      std::optional<Vertex> mid;
      for (const auto& inc : red_host.neighbors(b)) {
        if (!on[inc.to] && red_host.has_edge(inc.to, c)) {
          mid = inc.to;
          break;
        }
      }
      if (mid) put(*mid);
      else ok = false;
    }
  }
  for (Vertex v : touched) on[v] = 0;
  if (!ok) return std::nullopt;
  return seq;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Minimum-degree strategy

/// Separating system for a graph of minimum degree >= cn.
///
/// The edges are split at random into G1, G2 of minimum degree >= cn/3.
/// G1 is decomposed into paths P_j and then into matchings meeting each P_j
/// at most once. Each matching is covered by alternating paths whose red
/// edges join vertices with >= c^2 n/24 common neighbours in G2; the paths
/// are cut into pieces of length <= c^2 n/48 and each red edge is replaced
/// by a path of length two through an unused common neighbour. The pieces and
/// the P_j separate the edges of G1; the same is then done with G1 and G2
/// swapped.
inline StrategyOutcome min_degree_strategy(const Graph& g, double c, std::uint64_t seed,
                                           std::size_t max_retries = 100) {
  const std::size_t n = g.n();
  if (!(c > 0.0 && c <= 1.0)) throw StrategyFailed("precondition", "c must lie in (0,1]");
  if (static_cast<double>(g.min_degree()) < c * static_cast<double>(n) - detail::kEps) {
    throw StrategyFailed("precondition", "minimum degree " + std::to_string(g.min_degree()) +
                                             " is below cn = " + std::to_string(c * n));
  }
  Diagnostics diag;
  if (g.m() == 0) return detail::finish(g, {}, "min-degree", diag);

  const double nd = static_cast<double>(n);
  const std::size_t split_target = detail::ceil_at_least_one(c * nd / 3.0);
  const std::size_t threshold = detail::ceil_at_least_one(c * c * nd / 24.0);
  const std::size_t chunk = detail::ceil_at_least_one(c * c * nd / 48.0);
  const SplitPair split = random_split(g, split_target, max_retries, seed);
  diag["split_attempts"] = static_cast<std::int64_t>(split.attempts);
  diag["split_min_degree_target"] = static_cast<std::int64_t>(split_target);
  diag["common_neighbor_threshold"] = static_cast<std::int64_t>(threshold);
  diag["chunk_length"] = static_cast<std::int64_t>(chunk);

  PathSystem ps;
  std::vector<char> on(n, 0);
  for (int dir = 0; dir < 2; ++dir) {
    const Graph& blue_g = dir == 0 ? split.g1 : split.g2;
    const Graph& red_g = dir == 0 ? split.g2 : split.g1;
    const std::string tag = "dir" + std::to_string(dir) + ".";

    const PathSystem paths = path_decompose(blue_g);
    const MatchingFamily fam = matching_decompose(blue_g, paths);
    const CommonNeighborGraph aux(red_g, threshold);
    diag[tag + "decomposition_paths"] = static_cast<std::int64_t>(paths.size());
    diag[tag + "matchings"] = static_cast<std::int64_t>(fam.matchings.size());
    diag[tag + "aux_edges"] = static_cast<std::int64_t>(aux.edge_count());

    std::vector<std::size_t> blue_hits(blue_g.m(), 0);
    std::size_t alternating = 0;
    std::size_t max_per_matching = 0;
    std::size_t pieces = 0;
    for (const auto& matching : fam.matchings) {
      std::vector<Edge> edges;
      for (EdgeId e : matching) edges.push_back(blue_g.edge(e));
      const auto cover = alternating_cover(edges, aux);
      alternating += cover.size();
      max_per_matching = std::max(max_per_matching, cover.size());
      for (const auto& q : cover) {
        for (std::size_t b : q.blue) ++blue_hits[matching[b]];
        for (const auto& piece : detail::split_alternating(q, detail::blue_per_piece(chunk))) {
          auto seq = detail::realize_piece(
              piece, [](std::size_t) { return std::optional<Vertex>{}; }, red_g, on);
          if (!seq) throw StrategyFailed("red-edge expansion", "no unused common neighbour left");
          ps.add(g, std::move(*seq));
          ++pieces;
        }
      }
    }
    for (const Path& p : paths) ps.add(g, p.vertices());

    std::int64_t bad = 0;
    for (std::size_t h : blue_hits) bad += h != 1;
    diag[tag + "alternating_paths"] = static_cast<std::int64_t>(alternating);
    diag[tag + "max_alternating_per_matching"] = static_cast<std::int64_t>(max_per_matching);
    diag[tag + "pieces"] = static_cast<std::int64_t>(pieces);
    diag[tag + "blue_multiplicity_violations"] = bad;
  }
  return detail::finish(g, std::move(ps), "min-degree", std::move(diag));
}

// ---------------------------------------------------------------------------
// Dense strategy

/// Vertices of the k-core of g[vertices]: vertices of degree < k are removed,
/// least index first, until none remain. Returned sorted.
inline std::vector<Vertex> k_core(const Graph& g, const std::vector<Vertex>& vertices, std::size_t k) {
  std::vector<char> alive(g.n(), 0);
  for (Vertex v : vertices) alive[v] = 1;
  std::vector<std::size_t> deg(g.n(), 0);
  for (Vertex v : vertices) {
    for (const auto& inc : g.neighbors(v)) deg[v] += alive[inc.to];
  }
  std::set<Vertex> low;
  for (Vertex v : vertices) {
    if (deg[v] < k) low.insert(v);
  }
  while (!low.empty()) {
    const Vertex v = *low.begin();
    low.erase(low.begin());
    alive[v] = 0;
    for (const auto& inc : g.neighbors(v)) {
      if (alive[inc.to] && --deg[inc.to] < k) low.insert(inc.to);
    }
  }
  std::vector<Vertex> core;
  for (Vertex v : vertices) {
    if (alive[v]) core.push_back(v);
  }
  std::sort(core.begin(), core.end());
  return core;
}

/// Separating system for graphs in which every vertex set U with
/// |U| >= sqrt(n) spans >= c|U|^2 edges.
///
/// Cores H_i (the c g_{i-1}/2 core of what is left) are peeled until at most
/// sqrt(n) vertices remain. Edges inside a core go to the minimum-degree
/// strategy at c/2, or one path per edge when the core is small. For a
/// vertex v outside H_i with >= 3 neighbours x_1..x_k in H_i, a v-coloured
/// cycle x_1 x_2 ... x_k x_1 is added to a multigraph F_i; F_i is split twice
/// into rainbow matchings (the second split also keeps e_k apart from e_t
/// and its two cycle neighbours for every t != k of the same first-split
/// matching), the matchings are stitched by alternating paths through
/// vertices with many common neighbours in H_i, and a coloured edge xy of
/// colour v becomes x v y. Remaining crossing edges become single-edge paths.
inline StrategyOutcome dense_strategy(const Graph& g, double c, std::uint64_t seed,
                                      std::size_t max_retries = 100) {
  if (!(c > 0.0 && c <= 1.0)) throw StrategyFailed("precondition", "c must lie in (0,1]");
  const std::size_t n = g.n();
  const double nd = static_cast<double>(n);
  const double sqrt_n = std::sqrt(nd);
  Diagnostics diag;
  std::vector<std::string> warnings;

  // Sampled check of the density hypothesis.
  {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto lo = static_cast<std::size_t>(std::ceil(sqrt_n));
    std::int64_t failures = 0;
    constexpr int kSamples = 32;
    std::vector<Vertex> perm(n);
    std::vector<char> in(n, 0);
    for (int s = 0; s < kSamples && lo <= n && n > 0; ++s) {
      const std::size_t size = lo + uniform_below(rng, n - lo + 1);
      for (Vertex v = 0; v < n; ++v) perm[v] = v;
      for (std::size_t i = 0; i < size; ++i) {
        std::swap(perm[i], perm[i + uniform_below(rng, n - i)]);
        in[perm[i]] = 1;
      }
      std::size_t spanned = 0;
      for (const Edge& e : g.edges()) spanned += in[e.u] && in[e.v];
      if (static_cast<double>(spanned) < c * static_cast<double>(size * size)) ++failures;
      for (std::size_t i = 0; i < size; ++i) in[perm[i]] = 0;
    }
    diag["density_spot_check_failures"] = failures;
    if (failures > 0) {
      warnings.push_back(std::to_string(failures) +
                         " sampled vertex sets violate the density hypothesis");
    }
  }

  // Core peeling.
  std::vector<std::vector<Vertex>> levels;
  bool last_is_remainder = false;
  std::vector<Vertex> rest(n);
  for (Vertex v = 0; v < n; ++v) rest[v] = v;
  std::int64_t core_bound_violations = 0;
  while (!rest.empty()) {
    const std::size_t gsize = rest.size();
    diag["g" + std::to_string(levels.size())] = static_cast<std::int64_t>(gsize);
    if (static_cast<double>(gsize) <= sqrt_n) {
      levels.push_back(rest);
      last_is_remainder = true;
      break;
    }
    const std::size_t k = static_cast<std::size_t>(std::ceil(c * static_cast<double>(gsize) / 2.0 - detail::kEps));
    std::vector<Vertex> core = k_core(g, rest, k);
    if (core.empty()) {
      throw StrategyFailed("core peeling", "empty " + std::to_string(k) + "-core on " +
                                               std::to_string(gsize) + " vertices");
    }
    if (static_cast<double>(core.size()) < std::sqrt(c) * static_cast<double>(gsize) - detail::kEps) {
      ++core_bound_violations;
    }
    std::vector<char> in_core(n, 0);
    for (Vertex v : core) in_core[v] = 1;
    std::vector<Vertex> next;
    for (Vertex v : rest) {
      if (!in_core[v]) next.push_back(v);
    }
    diag["h" + std::to_string(levels.size() + 1)] = static_cast<std::int64_t>(core.size());
    levels.push_back(std::move(core));
    rest = std::move(next);
  }
  const std::size_t l = levels.size();
  diag["levels"] = static_cast<std::int64_t>(l);
  std::size_t level_total = 0;
  for (const auto& level : levels) level_total += level.size();
  diag["level_vertex_total"] = static_cast<std::int64_t>(level_total);
  diag["core_size_bound_violations"] = core_bound_violations;

  constexpr std::size_t kNoLevel = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level_of(n, kNoLevel);
  std::int64_t overlaps = 0;
  for (std::size_t i = 0; i < l; ++i) {
    for (Vertex v : levels[i]) {
      overlaps += level_of[v] != kNoLevel;
      level_of[v] = i;
    }
  }
  diag["level_overlaps"] = overlaps;

  PathSystem ps;
  // Internal edges.
  for (std::size_t i = 0; i < l; ++i) {
    const auto sub = induced_subgraph(g, levels[i]);
    const std::string tag = "level" + std::to_string(i + 1) + ".";
    const bool trivial = (last_is_remainder && i + 1 == l) ||
                         static_cast<double>(levels[i].size()) <= sqrt_n;
    if (trivial) {
      for (const Edge& e : sub.graph.edges()) ps.add(g, {sub.original[e.u], sub.original[e.v]});
      diag[tag + "internal_paths"] = static_cast<std::int64_t>(sub.graph.m());
      continue;
    }
    try {
      const auto inner = min_degree_strategy(sub.graph, c / 2.0, seed + i + 1, max_retries);
      for (const Path& p : inner.system) {
        std::vector<Vertex> vs;
        for (Vertex v : p.vertices()) vs.push_back(sub.original[v]);
        ps.add(g, std::move(vs));
      }
      diag[tag + "internal_paths"] = static_cast<std::int64_t>(inner.size);
    } catch (const StrategyFailed& err) {
      throw StrategyFailed("core " + std::to_string(i + 1) + " internal " + err.stage(), err.what());
    }
  }

  // Crossing edges.
  std::vector<char> on(n, 0);
  std::int64_t class_violations = 0;
  std::int64_t degree_violations = 0;
  std::int64_t rainbow_violations = 0;
  for (std::size_t i = 0; i + 1 < l; ++i) {
    const std::string tag = "level" + std::to_string(i + 1) + ".";
    const std::size_t h = levels[i].size();
    std::size_t g_rest = 0;
    for (Vertex v = 0; v < n; ++v) g_rest += level_of[v] > i;

    std::vector<ColoredMultigraph::ColoredEdge> colored;
    std::size_t singles = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (level_of[v] <= i) continue;
      std::vector<Vertex> nb;
      for (const auto& inc : g.neighbors(v)) {
        if (level_of[inc.to] == i) nb.push_back(inc.to);
      }
      if (nb.size() >= 3) {
        for (std::size_t t = 0; t < nb.size(); ++t) {
          colored.push_back({nb[t], nb[(t + 1) % nb.size()], v});
        }
      } else {
        for (Vertex x : nb) {
          ps.add(g, {x, v});
          ++singles;
        }
      }
    }
    const ColoredMultigraph F(n, colored);
    for (const auto& [color, ids] : F.color_classes()) class_violations += ids.size() > h;
    for (Vertex v : levels[i]) degree_violations += F.degree(v) > 2 * g_rest;
    diag[tag + "crossing_singletons"] = static_cast<std::int64_t>(singles);
    diag[tag + "colored_edges"] = static_cast<std::int64_t>(colored.size());
    if (colored.empty()) continue;

    // Position of each coloured edge in its colour cycle.
    const std::size_t fm = colored.size();
    std::vector<std::size_t> prev_in_cycle(fm);
    std::vector<std::size_t> next_in_cycle(fm);
    for (const auto& [color, ids] : F.color_classes()) {
      for (std::size_t t = 0; t < ids.size(); ++t) {
        prev_in_cycle[ids[t]] = ids[(t + ids.size() - 1) % ids.size()];
        next_in_cycle[ids[t]] = ids[(t + 1) % ids.size()];
      }
    }

    std::vector<std::set<std::size_t>> base(fm);
    {
      std::map<Vertex, std::vector<std::size_t>> at;
      for (std::size_t a = 0; a < fm; ++a) {
        at[colored[a].u].push_back(a);
        at[colored[a].v].push_back(a);
        at[static_cast<Vertex>(n) + colored[a].color].push_back(a);  // colour bucket
      }
      for (const auto& [key, ids] : at) {
        for (std::size_t a : ids) {
          for (std::size_t b : ids) {
            if (a != b) base[a].insert(b);
          }
        }
      }
    }
    auto to_lists = [](const std::vector<std::set<std::size_t>>& sets) {
      std::vector<std::vector<std::size_t>> lists;
      for (const auto& s : sets) lists.emplace_back(s.begin(), s.end());
      return lists;
    };
    auto group = [](const std::vector<std::size_t>& cls) {
      std::vector<std::vector<std::size_t>> out;
      for (std::size_t a = 0; a < cls.size(); ++a) {
        if (cls[a] >= out.size()) out.resize(cls[a] + 1);
        out[cls[a]].push_back(a);
      }
      return out;
    };
    const auto first = group(first_fit_classes(to_lists(base)));

    std::vector<std::set<std::size_t>> second_conf = base;
    for (const auto& mt : first) {
      for (std::size_t a : mt) {
        for (std::size_t t : mt) {
          if (t == a) continue;
          for (std::size_t b : {t, prev_in_cycle[t], next_in_cycle[t]}) {
            if (b == a) continue;
            second_conf[a].insert(b);
            second_conf[b].insert(a);
          }
        }
      }
    }
    const auto second = group(first_fit_classes(to_lists(second_conf)));
    diag[tag + "rainbow_matchings_first"] = static_cast<std::int64_t>(first.size());
    diag[tag + "rainbow_matchings_second"] = static_cast<std::int64_t>(second.size());

    Graph core_host;
    {
      std::vector<Edge> inner;
      for (const Edge& e : g.edges()) {
        if (level_of[e.u] == i && level_of[e.v] == i) inner.push_back(e);
      }
      core_host = Graph(n, std::move(inner));
    }
    const double hd = static_cast<double>(h);
    const auto threshold = static_cast<std::size_t>(std::floor(c * c * hd / 24.0)) + 1;
    const std::size_t chunk = detail::ceil_at_least_one(c * c * hd / 48.0);
    const CommonNeighborGraph aux(core_host, threshold);

    std::size_t pieces = 0;
    for (const auto* family : {&first, &second}) {
      for (const auto& mt : *family) {
        std::set<Vertex> seen_colors;
        std::set<Vertex> seen_vertices;
        std::vector<Edge> edges;
        for (std::size_t a : mt) {
          rainbow_violations += !seen_colors.insert(colored[a].color).second;
          rainbow_violations += !seen_vertices.insert(colored[a].u).second;
          rainbow_violations += !seen_vertices.insert(colored[a].v).second;
          edges.push_back({colored[a].u, colored[a].v});
        }
        for (const auto& q : alternating_cover(edges, aux)) {
          for (const auto& piece : detail::split_alternating(q, detail::blue_per_piece(chunk))) {
            auto seq = detail::realize_piece(
                piece, [&](std::size_t b) { return std::optional<Vertex>{colored[mt[b]].color}; },
                core_host, on);
            if (!seq) throw StrategyFailed("crossing expansion", "no unused common neighbour left");
            ps.add(g, std::move(*seq));
            ++pieces;
          }
        }
      }
    }
    diag[tag + "crossing_pieces"] = static_cast<std::int64_t>(pieces);
  }
  diag["color_class_violations"] = class_violations;
  diag["multigraph_degree_violations"] = degree_violations;
  diag["rainbow_violations"] = rainbow_violations;
  return detail::finish(g, std::move(ps), "dense", std::move(diag), std::move(warnings));
}

// ---------------------------------------------------------------------------
// Random-graph strategy

namespace detail {

/// Threads the chunk's edges into one path of `host` plus the chunk edges:
/// from the current end, a BFS through `bridge` (avoiding used vertices and
/// the endpoints of pending chunk edges) reaches the nearest pending edge,
/// which is then traversed.
inline std::optional<std::vector<Vertex>> complete_chunk(const std::vector<Edge>& chunk,
                                                         const Graph& bridge) {
  const std::size_t n = bridge.n();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pending_at(n, kNone);
  for (std::size_t i = 1; i < chunk.size(); ++i) {
    pending_at[chunk[i].u] = i;
    pending_at[chunk[i].v] = i;
  }
  std::vector<char> used(n, 0);
  std::vector<Vertex> seq{chunk[0].u, chunk[0].v};
  used[chunk[0].u] = used[chunk[0].v] = 1;
  std::size_t remaining = chunk.size() - 1;
  std::vector<Vertex> parent(n);
  std::vector<char> seen(n);
  while (remaining > 0) {
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<Vertex> queue{seq.back()};
    seen[seq.back()] = 1;
    std::optional<Vertex> hit;
    while (!queue.empty() && !hit) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (const auto& inc : bridge.neighbors(x)) {
        const Vertex y = inc.to;
        if (seen[y] || used[y]) continue;
        seen[y] = 1;
        parent[y] = x;
        if (pending_at[y] != kNone) {
          hit = y;
          break;
        }
        queue.push_back(y);
      }
    }
    if (!hit) return std::nullopt;
    std::vector<Vertex> hop;
    for (Vertex v = *hit; v != seq.back(); v = parent[v]) hop.push_back(v);
    std::reverse(hop.begin(), hop.end());
    for (Vertex v : hop) {
      seq.push_back(v);
      used[v] = 1;
    }
    const Edge& e = chunk[pending_at[*hit]];
    const Vertex other = e.u == *hit ? e.v : e.u;
    seq.push_back(other);
    used[other] = 1;
    pending_at[e.u] = pending_at[e.v] = kNone;
    --remaining;
  }
  return seq;
}

}  // namespace detail

/// Separating system for G(n, p)-like graphs. With at most 20n edges every
/// edge is its own path. Otherwise the edges are split in half, each half is
/// decomposed into paths and matchings, matchings are cut into submatchings
/// of at most np/20 edges, and each submatching is threaded into a single
/// path through the other half (greedy shortest connectors).
inline StrategyOutcome random_graph_strategy(const Graph& g, double p, std::uint64_t seed) {
  const std::size_t n = g.n();
  Diagnostics diag;
  if (g.m() <= 20 * n) {
    diag["case"] = 2;
    PathSystem ps;
    for (const Edge& e : g.edges()) ps.add(g, {e.u, e.v});
    return detail::finish(g, std::move(ps), "random", std::move(diag));
  }
  if (!(p > 0.0 && p <= 1.0)) throw StrategyFailed("precondition", "p must lie in (0,1]");
  diag["case"] = 1;
  const std::size_t per_chunk =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * p / 20.0 + detail::kEps)));
  diag["chunk_size"] = static_cast<std::int64_t>(per_chunk);
  const SplitPair split = random_split(g, 0, 1, seed);

  PathSystem ps;
  for (int dir = 0; dir < 2; ++dir) {
    const Graph& blue_g = dir == 0 ? split.g1 : split.g2;
    const Graph& bridge = dir == 0 ? split.g2 : split.g1;
    const std::string tag = "dir" + std::to_string(dir) + ".";
    const PathSystem paths = path_decompose(blue_g);
    const MatchingFamily fam = matching_decompose(blue_g, paths);
    std::size_t chunks = 0;
    for (const auto& matching : fam.matchings) {
      for (std::size_t b = 0; b < matching.size(); b += per_chunk) {
        std::vector<Edge> chunk;
        for (std::size_t t = b; t < std::min(matching.size(), b + per_chunk); ++t) {
          chunk.push_back(blue_g.edge(matching[t]));
        }
        auto seq = detail::complete_chunk(chunk, bridge);
        if (!seq) throw StrategyFailed("greedy completion", "no vertex-disjoint connector found");
        ps.add(g, std::move(*seq));
        ++chunks;
      }
    }
    for (const Path& pth : paths) ps.add(g, pth.vertices());
    diag[tag + "decomposition_paths"] = static_cast<std::int64_t>(paths.size());
    diag[tag + "matchings"] = static_cast<std::int64_t>(fam.matchings.size());
    diag[tag + "chunks"] = static_cast<std::int64_t>(chunks);
  }
  return detail::finish(g, std::move(ps), "random", std::move(diag));
}

// ---------------------------------------------------------------------------
// Closed forms, dispatch and portfolio

/// Size parameter k if `g` is, label for label, the generator output
/// `make(k)` for some k with `min_k <= k`; nullopt otherwise.
template <typename Make>
std::optional<std::size_t> recognize(const Graph& g, std::size_t order_per_k, std::size_t min_k,
                                     Make make) {
  if (g.n() == 0 || g.n() % order_per_k != 0) return std::nullopt;
  const std::size_t k = g.n() / order_per_k;
  if (k < min_k) return std::nullopt;
  if (!same_edge_set(g, make(k))) return std::nullopt;
  return k;
}

inline StrategyOutcome closed_form_strategy(std::string_view name, const Graph& g) {
  PathSystem ps;
  std::optional<std::size_t> k;
  if (name == "path" && (k = recognize(g, 1, 3, make_path_graph))) {
    ps = separate_path_graph(*k);
  } else if (name == "star" && (k = recognize(g, 1, 4, make_star))) {
    ps = separate_star(*k);
  } else if (name == "comb" && (k = recognize(g, 3, 2, make_hair_comb))) {
    ps = separate_hair_comb(*k);
  } else if (name == "ladder" && (k = recognize(g, 2, 2, make_ladder))) {
    ps = separate_ladder(*k);
  } else {
    throw StrategyFailed("precondition", "graph is not a canonically labelled " + std::string(name));
  }
  return detail::finish(g, rebind(g, ps), std::string(name), {});
}

struct StrategyParams {
  double c = 0.5;
  /// Edge probability for the random-graph strategy; <= 0 means "use the
  /// measured density m / C(n,2)".
  double p = 0.0;
  std::uint64_t seed = 1;
  std::size_t max_retries = 100;
  /// c used for the dense strategy inside the portfolio.
  double dense_c = 0.1;
};

inline double measured_density(const Graph& g) {
  if (g.n() < 2) return 0.0;
  return static_cast<double>(g.m()) / (static_cast<double>(g.n()) * static_cast<double>(g.n() - 1) / 2.0);
}

inline StrategyOutcome portfolio(const Graph& g, const StrategyParams& params = {});

/// Runs one named strategy: tree, path, star, comb, ladder, min-degree,
/// dense, random, portfolio or trivial.
inline StrategyOutcome run_strategy(std::string_view name, const Graph& g,
                                    const StrategyParams& params = {}) {
  if (name == "trivial") return trivial_strategy(g);
  if (name == "tree") {
    if (!is_tree(g)) throw StrategyFailed("precondition", "graph is not a tree");
    return detail::finish(g, separate_tree(g), "tree", {});
  }
  if (name == "path" || name == "star" || name == "comb" || name == "ladder") {
    return closed_form_strategy(name, g);
  }
  if (name == "min-degree") return min_degree_strategy(g, params.c, params.seed, params.max_retries);
  if (name == "dense") return dense_strategy(g, params.c, params.seed, params.max_retries);
  if (name == "random") {
    return random_graph_strategy(g, params.p > 0.0 ? params.p : measured_density(g), params.seed);
  }
  if (name == "portfolio") return portfolio(g, params);
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

/// Runs every applicable strategy and keeps the smallest verified system;
/// ties go to the earlier strategy in the fixed order tree, path, star,
/// comb, ladder, min-degree, dense, random, trivial.
inline StrategyOutcome portfolio(const Graph& g, const StrategyParams& params) {
  std::vector<std::pair<std::string, std::function<StrategyOutcome()>>> runs;
  if (is_tree(g)) runs.push_back({"tree", [&] { return run_strategy("tree", g, params); }});
  for (const char* name : {"path", "star", "comb", "ladder"}) {
    runs.push_back({name, [&g, name] { return closed_form_strategy(name, g); }});
  }
  if (g.n() > 0 && g.min_degree() > 0) {
    runs.push_back({"min-degree", [&] {
                      const double c = static_cast<double>(g.min_degree()) / static_cast<double>(g.n());
                      return min_degree_strategy(g, c, params.seed, params.max_retries);
                    }});
  }
  runs.push_back({"dense", [&] { return dense_strategy(g, params.dense_c, params.seed, params.max_retries); }});
  runs.push_back({"random", [&] { return random_graph_strategy(g, measured_density(g), params.seed); }});
  runs.push_back({"trivial", [&] { return trivial_strategy(g); }});

  std::optional<StrategyOutcome> best;
  Diagnostics summary;
  for (auto& [name, run] : runs) {
    try {
      StrategyOutcome o = run();
      summary["portfolio." + name + ".size"] = static_cast<std::int64_t>(o.size);
      if (o.verified && (!best || o.size < best->size)) best = std::move(o);
    } catch (const StrategyFailed&) {
      summary["portfolio." + name + ".failed"] = 1;
    } catch (const DecompositionError&) {
      summary["portfolio." + name + ".failed"] = 1;
    }
  }
  // The trivial strategy always verifies.
  StrategyOutcome out = std::move(*best);
  for (auto& [k, v] : summary) out.diagnostics[k] = v;
  out.diagnostics["portfolio.chosen_size"] = static_cast<std::int64_t>(out.size);
  out.strategy_name = "portfolio/" + out.strategy_name;
  return out;
}

}  // namespace seppath

#endif  // SEPPATH_STRATEGIES_HPP
