#ifndef SEPPATH_GRAPH_HPP
#define SEPPATH_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seppath {

using Vertex = std::uint32_t;
using EdgeId = std::size_t;

/// Unordered edge stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list or path-system text. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Vertex sequence rejected as a path of some host graph. `position()` is
/// the index into the sequence of the offending vertex.
class InvalidPath : public std::runtime_error {
 public:
  InvalidPath(std::size_t position, const std::string& what)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NotATree : public std::runtime_error {
 public:
  NotATree() : std::runtime_error("graph is not a tree") {}
};

/// Simple undirected graph on vertices 0..n-1. Edge indices follow the
/// order in which edges were supplied.
class Graph {
 public:
  struct Incidence {
    Vertex to;
    EdgeId edge;
  };

  Graph() = default;

  /// Throws GraphError on a self-loop, duplicate edge or out-of-range
  /// endpoint.
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n) {
    edges_.reserve(edges.size());
    lookup_.reserve(edges.size() * 2);
    for (const Edge& raw : edges) {
      if (raw.u >= n || raw.v >= n) {
        throw GraphError("edge endpoint out of range: " + std::to_string(raw.u) +
                         " " + std::to_string(raw.v));
      }
      if (raw.u == raw.v) {
        throw GraphError("self-loop at vertex " + std::to_string(raw.u));
      }
      const Edge e = make_edge(raw.u, raw.v);
      const EdgeId id = edges_.size();
      if (!lookup_.emplace(key(e.u, e.v), id).second) {
        throw GraphError("duplicate edge " + std::to_string(e.u) + " " +
                         std::to_string(e.v));
      }
      edges_.push_back(e);
      adjacency_[e.u].push_back({e.v, id});
      adjacency_[e.v].push_back({e.u, id});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(),
                [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
    }
  }

  /// Graph whose edge indices are assigned in lexicographic order; used by
  /// every generator.
  static Graph canonical(std::size_t n, std::vector<Edge> edges) {
    for (Edge& e : edges) e = make_edge(e.u, e.v);
    std::sort(edges.begin(), edges.end());
    return Graph(n, std::move(edges));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  const std::vector<Incidence>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  std::optional<EdgeId> edge_id(Vertex a, Vertex b) const {
    if (a == b || a >= n_ || b >= n_) return std::nullopt;
    const Edge e = make_edge(a, b);
    auto it = lookup_.find(key(e.u, e.v));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }

  std::size_t min_degree() const {
    std::size_t best = n_ == 0 ? 0 : adjacency_[0].size();
    for (const auto& list : adjacency_) best = std::min(best, list.size());
    return best;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(Vertex a, Vertex b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> lookup_;
};

/// Simple path in a host graph, stored as its vertex sequence together with
/// the host's edge indices along it.
class Path {
 public:
  Path() = default;

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }
  std::size_t length() const noexcept { return edges_.size(); }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }

  Path reversed() const {
    Path p;
    p.vertices_.assign(vertices_.rbegin(), vertices_.rend());
    p.edges_.assign(edges_.rbegin(), edges_.rend());
    return p;
  }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  friend Path path_from_vertices(const Graph& g, std::vector<Vertex> vs);
  std::vector<Vertex> vertices_;
  std::vector<EdgeId> edges_;
};

/// Throws InvalidPath on an empty sequence, a vertex outside the graph, a
/// repeated vertex or a missing edge. A single vertex yields a zero-length
/// path.
inline Path path_from_vertices(const Graph& g, std::vector<Vertex> vs) {
  if (vs.empty()) throw InvalidPath(0, "empty vertex sequence");
  std::vector<char> seen(g.n(), 0);
  Path p;
  p.edges_.reserve(vs.size() - 1);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vertex v = vs[i];
    if (v >= g.n()) {
      throw InvalidPath(i, "vertex " + std::to_string(v) + " out of range");
    }
    if (seen[v]) throw InvalidPath(i, "repeated vertex " + std::to_string(v));
    seen[v] = 1;
    if (i > 0) {
      auto id = g.edge_id(vs[i - 1], v);
      if (!id) {
        throw InvalidPath(i, "missing edge (" + std::to_string(vs[i - 1]) + "," +
                                 std::to_string(v) + ")");
      }
      p.edges_.push_back(*id);
    }
  }
  p.vertices_ = std::move(vs);
  return p;
}

/// Ordered family of paths of length >= 1 over one host graph.
class PathSystem {
 public:
  PathSystem() = default;

  void add(Path p) {
    if (p.length() == 0) {
      throw InvalidPath(0, "zero-length path in a path system");
    }
    paths_.push_back(std::move(p));
  }
  void add(const Graph& g, std::vector<Vertex> vs) {
    add(path_from_vertices(g, std::move(vs)));
  }
  void append(const PathSystem& other) {
    paths_.insert(paths_.end(), other.paths_.begin(), other.paths_.end());
  }

  static PathSystem from_vertex_lists(const Graph& g,
                                      const std::vector<std::vector<Vertex>>& lists) {
    PathSystem ps;
    for (const auto& vs : lists) ps.add(g, vs);
    return ps;
  }

  std::size_t size() const noexcept { return paths_.size(); }
  bool empty() const noexcept { return paths_.empty(); }
  const Path& operator[](std::size_t i) const { return paths_.at(i); }
  const std::vector<Path>& paths() const noexcept { return paths_; }
  auto begin() const { return paths_.begin(); }
  auto end() const { return paths_.end(); }

  void erase(std::size_t i) { paths_.erase(paths_.begin() + static_cast<std::ptrdiff_t>(i)); }

  friend bool operator==(const PathSystem&, const PathSystem&) = default;

 private:
  std::vector<Path> paths_;
};

/// Edge-coloured multigraph in which every colour class is a single cycle
/// through the vertices it touches. Colours are vertex identifiers of some
/// external graph.
class ColoredMultigraph {
 public:
  struct ColoredEdge {
    Vertex u;
    Vertex v;
    Vertex color;
  };

  ColoredMultigraph() = default;

  /// Throws GraphError if an edge is a loop or a colour class is not a
  /// single cycle.
  ColoredMultigraph(std::size_t n, std::vector<ColoredEdge> edges)
      : n_(n), edges_(std::move(edges)) {
    std::map<Vertex, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.u >= n_ || e.v >= n_) throw GraphError("coloured edge out of range");
      if (e.u == e.v) throw GraphError("coloured loop at " + std::to_string(e.u));
      classes[e.color].push_back(i);
    }
    for (const auto& [color, ids] : classes) check_cycle(color, ids);
    for (const auto& [color, ids] : classes) class_of_.emplace(color, ids);
  }

  std::size_t n() const noexcept { return n_; }
  const std::vector<ColoredEdge>& edges() const noexcept { return edges_; }
  const std::map<Vertex, std::vector<std::size_t>>& color_classes() const noexcept {
    return class_of_;
  }

  std::size_t degree(Vertex v) const {
    std::size_t d = 0;
    for (const auto& e : edges_) d += (e.u == v) + (e.v == v);
    return d;
  }

 private:
  void check_cycle(Vertex color, const std::vector<std::size_t>& ids) const {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (std::size_t i : ids) {
      adj[edges_[i].u].push_back(edges_[i].v);
      adj[edges_[i].v].push_back(edges_[i].u);
    }
    for (const auto& [v, nbrs] : adj) {
      if (nbrs.size() != 2) {
        throw GraphError("colour class " + std::to_string(color) + " is not a cycle");
      }
    }
    // Connected and 2-regular, so a single cycle.
    std::map<Vertex, bool> seen;
    std::vector<Vertex> stack{adj.begin()->first};
    seen[stack.back()] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != adj.size()) {
      throw GraphError("colour class " + std::to_string(color) + " is not a single cycle");
    }
  }

  std::size_t n_ = 0;
  std::vector<ColoredEdge> edges_;
  std::map<Vertex, std::vector<std::size_t>> class_of_;
};

/// Rebuilds every member of `ps` from its vertex sequence on `g`, so edge
/// indices refer to `g` even if `ps` was built on an isomorphic labelling
/// with a different edge order.
inline PathSystem rebind(const Graph& g, const PathSystem& ps) {
  PathSystem out;
  for (const Path& p : ps) out.add(g, p.vertices());
  return out;
}

/// True if both graphs have the same vertex count and edge set, ignoring
/// edge order.
inline bool same_edge_set(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  for (const Edge& e : a.edges()) {
    if (!b.has_edge(e.u, e.v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

inline bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

/// Parses whitespace-separated unsigned integers; nullopt on any junk.
inline std::optional<std::vector<std::uint64_t>> parse_uints(std::string_view line) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    if (line[i] < '0' || line[i] > '9') return std::nullopt;
    std::uint64_t value = 0;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
      if (value > (UINT64_MAX - 9) / 10) return std::nullopt;
      value = value * 10 + static_cast<std::uint64_t>(line[i] - '0');
      ++i;
    }
    if (i < line.size() && line[i] != ' ' && line[i] != '\t') return std::nullopt;
    out.push_back(value);
  }
  return out;
}

}  // namespace detail

/// Parses the edge-list format: a header line "n m" followed by m lines
/// "u v". Blank lines are ignored. Edge order in the text defines the edge
/// indices.
inline Graph parse_graph(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t lineno = 0;
  auto next = [&]() -> std::optional<std::pair<std::size_t, std::string_view>> {
    while (lineno < lines.size()) {
      std::string_view l = lines[lineno++];
      if (!detail::blank(l)) return std::make_pair(lineno, l);
    }
    return std::nullopt;
  };

  auto header = next();
  if (!header) throw ParseError(1, "missing header line \"n m\"");
  auto hv = detail::parse_uints(header->second);
  if (!hv || hv->size() != 2) throw ParseError(header->first, "malformed header, expected \"n m\"");
  const std::uint64_t n = (*hv)[0];
  const std::uint64_t m = (*hv)[1];
  if (n > UINT32_MAX) throw ParseError(header->first, "vertex count too large");

  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (std::uint64_t i = 0; i < m; ++i) {
    auto line = next();
    if (!line) {
      throw ParseError(lines.size(), "expected " + std::to_string(m) + " edges, found " +
                                         std::to_string(i));
    }
    auto vals = detail::parse_uints(line->second);
    if (!vals || vals->size() != 2) throw ParseError(line->first, "malformed edge line");
    const auto a = (*vals)[0];
    const auto b = (*vals)[1];
    if (a >= n || b >= n) throw ParseError(line->first, "vertex out of range");
    if (a == b) throw ParseError(line->first, "self-loop");
    const Edge e = make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    const std::uint64_t k = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    if (auto it = seen.find(k); it != seen.end()) {
      throw ParseError(line->first, "duplicate edge " + std::to_string(e.u) + " " +
                                        std::to_string(e.v) + " (first at line " +
                                        std::to_string(it->second) + ")");
    }
    seen.emplace(k, line->first);
    edges.push_back(e);
  }
  if (auto extra = next()) throw ParseError(extra->first, "more edge lines than declared");
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

inline std::string serialize(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

/// Parses the path-system format into raw vertex sequences: a line "k" then
/// k lines of vertices.
inline std::vector<std::vector<Vertex>> parse_vertex_lists(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t lineno = 0;
  auto next = [&]() -> std::optional<std::pair<std::size_t, std::string_view>> {
    while (lineno < lines.size()) {
      std::string_view l = lines[lineno++];
      if (!detail::blank(l)) return std::make_pair(lineno, l);
    }
    return std::nullopt;
  };
  auto header = next();
  if (!header) throw ParseError(1, "missing path count line");
  auto hv = detail::parse_uints(header->second);
  if (!hv || hv->size() != 1) throw ParseError(header->first, "malformed path count");
  std::vector<std::vector<Vertex>> lists;
  for (std::uint64_t i = 0; i < (*hv)[0]; ++i) {
    auto line = next();
    if (!line) throw ParseError(lines.size(), "fewer paths than declared");
    auto vals = detail::parse_uints(line->second);
    if (!vals || vals->empty()) throw ParseError(line->first, "malformed path line");
    std::vector<Vertex> vs;
    for (auto v : *vals) {
      if (v > UINT32_MAX) throw ParseError(line->first, "vertex out of range");
      vs.push_back(static_cast<Vertex>(v));
    }
    lists.push_back(std::move(vs));
  }
  if (auto extra = next()) throw ParseError(extra->first, "more path lines than declared");
  return lists;
}

/// Parses a path system and binds it to `g`. Invalid paths are reported as
/// ParseError with the offending line.
inline PathSystem parse_path_system(const Graph& g, std::string_view text) {
  const auto lists = parse_vertex_lists(text);
  // Recover line numbers of non-blank path lines for error reporting.
  const auto lines = detail::split_lines(text);
  std::vector<std::size_t> path_lines;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    path_lines.push_back(i + 1);
  }
  PathSystem ps;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    try {
      ps.add(g, lists[i]);
    } catch (const InvalidPath& err) {
      throw ParseError(path_lines[i], err.what());
    }
  }
  return ps;
}

inline std::string serialize(const PathSystem& ps) {
  std::string out = std::to_string(ps.size()) + "\n";
  for (const Path& p : ps) {
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(p.vertices()[i]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree utilities

inline bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.neighbors(v)) {
      if (!seen[inc.to]) {
        seen[inc.to] = 1;
        ++reached;
        stack.push_back(inc.to);
      }
    }
  }
  return reached == g.n();
}

inline bool is_tree(const Graph& g) {
  return g.n() >= 1 && g.m() + 1 == g.n() && is_connected(g);
}

/// True if `g` is a path graph (connected, max degree 2, acyclic).
inline bool is_path_graph(const Graph& g) {
  if (!is_tree(g)) return false;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.degree(v) > 2) return false;
  }
  return true;
}

/// The unique u-v path in tree `t`.
inline Path tree_path(const Graph& t, Vertex u, Vertex v) {
  if (!is_tree(t)) throw NotATree();
  if (u >= t.n() || v >= t.n()) throw GraphError("tree_path endpoint out of range");
  if (u == v) throw GraphError("tree_path needs distinct endpoints");
  constexpr Vertex kNone = UINT32_MAX;
  std::vector<Vertex> parent(t.n(), kNone);
  std::deque<Vertex> queue{u};
  parent[u] = u;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    if (x == v) break;
    for (const auto& inc : t.neighbors(x)) {
      if (parent[inc.to] == kNone) {
        parent[inc.to] = x;
        queue.push_back(inc.to);
      }
    }
  }
  std::vector<Vertex> seq;
  for (Vertex x = v; x != u; x = parent[x]) seq.push_back(x);
  seq.push_back(u);
  std::reverse(seq.begin(), seq.end());
  return path_from_vertices(t, std::move(seq));
}

/// Subgraph of `g` induced by `keep`, relabelled densely in the order of
/// `keep`. `original[i]` is the host label of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
  constexpr Vertex kNone = UINT32_MAX;
  std::vector<Vertex> local(g.n(), kNone);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != kNone && local[e.v] != kNone) {
      edges.push_back(make_edge(local[e.u], local[e.v]));
    }
  }
  return {Graph(keep.size(), std::move(edges)), keep};
}

/// Spanning subgraph of `g` keeping only the listed edges, in list order.
inline Graph edge_subgraph(const Graph& g, const std::vector<EdgeId>& ids) {
  std::vector<Edge> edges;
  edges.reserve(ids.size());
  for (EdgeId id : ids) edges.push_back(g.edge(id));
  return Graph(g.n(), std::move(edges));
}

}  // namespace seppath

#endif  // SEPPATH_GRAPH_HPP
