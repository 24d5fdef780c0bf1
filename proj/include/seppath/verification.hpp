#ifndef SEPPATH_VERIFICATION_HPP
#define SEPPATH_VERIFICATION_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seppath/graph.hpp"

namespace seppath {

/// Set of path indices containing one edge, sorted ascending.
using Signature = std::vector<std::size_t>;

struct SeparationReport {
  bool separating = false;
  /// Lexicographically first pair (i, j), i < j, of edges with equal
  /// signatures; present iff not separating.
  std::optional<std::pair<EdgeId, EdgeId>> witness;
  std::vector<EdgeId> uncovered;
  std::vector<Signature> signatures;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Re-validates every member against `g`; a path built for another graph
/// with a coincidentally valid vertex sequence gets its edge ids rebound.
inline std::vector<std::vector<EdgeId>> bind_edges(const Graph& g, const PathSystem& ps) {
  std::vector<std::vector<EdgeId>> out;
  out.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    try {
      Path p = path_from_vertices(g, ps[i].vertices());
      if (p.length() == 0) throw InvalidPath(0, "zero-length path");
      out.push_back(p.edges());
    } catch (const InvalidPath& err) {
      throw InvalidPath(err.position(),
                        "path " + std::to_string(i) + " is not a path of the graph: " + err.what());
    }
  }
  return out;
}

inline std::vector<Signature> signatures_of(std::size_t m,
                                            const std::vector<std::vector<EdgeId>>& path_edges) {
  std::vector<Signature> sig(m);
  for (std::size_t i = 0; i < path_edges.size(); ++i) {
    for (EdgeId e : path_edges[i]) sig[e].push_back(i);
  }
  return sig;
}

}  // namespace detail

/// Checks whether `ps` separates the edges of `g`. Throws InvalidPath when a
/// member is not a path of `g`.
inline SeparationReport verify(const Graph& g, const PathSystem& ps) {
  SeparationReport report;
  report.signatures = detail::signatures_of(g.m(), detail::bind_edges(g, ps));

  // Smallest edge with a later duplicate, paired with the next such edge.
  std::map<Signature, std::vector<EdgeId>> groups;
  for (EdgeId e = 0; e < g.m(); ++e) {
    groups[report.signatures[e]].push_back(e);
    if (report.signatures[e].empty()) report.uncovered.push_back(e);
  }
  std::optional<std::pair<EdgeId, EdgeId>> best;
  for (const auto& [sig, members] : groups) {
    if (members.size() < 2) continue;
    std::pair<EdgeId, EdgeId> cand{members[0], members[1]};
    if (!best || cand < *best) best = cand;
  }
  report.separating = !best.has_value();
  report.witness = best;
  return report;
}

inline Signature signature(const Graph& g, const PathSystem& ps, EdgeId e) {
  if (e >= g.m()) throw std::out_of_range("edge index out of range");
  Signature sig;
  const auto bound = detail::bind_edges(g, ps);
  for (std::size_t i = 0; i < bound.size(); ++i) {
    for (EdgeId f : bound[i]) {
      if (f == e) {
        sig.push_back(i);
        break;
      }
    }
  }
  return sig;
}

/// Locates the single defective edge from the set of failed probes.
inline EdgeId decode(const Graph& g, const PathSystem& ps, std::vector<std::size_t> outcome) {
  const SeparationReport report = verify(g, ps);
  if (!report.separating) throw DecodeError("path system does not separate the graph");
  std::sort(outcome.begin(), outcome.end());
  outcome.erase(std::unique(outcome.begin(), outcome.end()), outcome.end());
  for (std::size_t i : outcome) {
    if (i >= ps.size()) throw DecodeError("probe index " + std::to_string(i) + " out of range");
  }
  if (outcome.empty()) {
    if (report.uncovered.empty()) {
      throw DecodeError("all probes passed but every edge is covered");
    }
    return report.uncovered.front();
  }
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (report.signatures[e] == outcome) return e;
  }
  throw DecodeError("no edge matches the observed probe outcome");
}

/// Verifies once, then answers many probe outcomes by lookup.
class Decoder {
 public:
  Decoder(const Graph& g, const PathSystem& ps) : report_(verify(g, ps)), probes_(ps.size()) {
    if (!report_.separating) throw DecodeError("path system does not separate the graph");
    for (EdgeId e = 0; e < report_.signatures.size(); ++e) index_.emplace(report_.signatures[e], e);
  }

  EdgeId operator()(std::vector<std::size_t> outcome) const {
    std::sort(outcome.begin(), outcome.end());
    outcome.erase(std::unique(outcome.begin(), outcome.end()), outcome.end());
    if (!outcome.empty() && outcome.back() >= probes_) {
      throw DecodeError("probe index " + std::to_string(outcome.back()) + " out of range");
    }
    const auto it = index_.find(outcome);
    if (it != index_.end()) return it->second;
    if (outcome.empty()) throw DecodeError("all probes passed but every edge is covered");
    throw DecodeError("no edge matches the observed probe outcome");
  }

  const SeparationReport& report() const { return report_; }

 private:
  SeparationReport report_;
  std::size_t probes_;
  std::map<Signature, EdgeId> index_;
};

/// ceil(log2 m): the size of any separating system of an m-element set.
inline std::size_t info_lower_bound(std::size_t m) {
  if (m == 0) throw std::invalid_argument("info_lower_bound needs m >= 1");
  return m == 1 ? 0 : static_cast<std::size_t>(std::bit_width(m - 1));
}

/// Smallest k with k(n-1) >= 1 + k + 2(C(n,2) - k - 1): a separating path
/// system of K_n has at most one uncovered edge, at most k edges in exactly
/// one path, and every path has at most n-1 edges.
inline std::size_t complete_lower_bound(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete_lower_bound needs n >= 2");
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t pairs = nn * (nn - 1) / 2;
  for (std::int64_t k = 0;; ++k) {
    if (k * (nn - 1) >= 1 + k + 2 * (pairs - k - 1)) return static_cast<std::size_t>(k);
  }
}

/// max(ceil((n+1)/3), ceil(log2(n-1))) for a tree on n >= 4 vertices.
inline std::size_t tree_lower_bound(const Graph& t) {
  if (!is_tree(t)) throw NotATree();
  const std::size_t n = t.n();
  if (n < 4) throw std::invalid_argument("tree_lower_bound needs n >= 4");
  return std::max((n + 1 + 2) / 3, info_lower_bound(n - 1));
}

/// Necessary condition a separating path system of a tree must satisfy.
struct TreeViolation {
  enum class Kind {
    /// More than one leaf is an endpoint of no path. `vertices` lists them.
    UncoveredLeaves,
    /// A degree-2 vertex is an endpoint of no path.
    DegreeTwoNotEndpoint,
    /// Path `path` joins leaves u, v and no path has exactly one of them as
    /// an endpoint.
    LeafPairUnseparated,
  };
  Kind kind;
  std::vector<Vertex> vertices;
  std::optional<std::size_t> path;

  friend bool operator==(const TreeViolation&, const TreeViolation&) = default;
};

inline std::vector<TreeViolation> lemma61_check(const Graph& t, const PathSystem& ps) {
  if (!is_tree(t)) throw NotATree();
  if (t.n() < 3) throw std::invalid_argument("tree check needs n >= 3");
  detail::bind_edges(t, ps);

  std::vector<std::size_t> endpoint_count(t.n(), 0);
  for (const Path& p : ps) {
    ++endpoint_count[p.front()];
    ++endpoint_count[p.back()];
  }

  std::vector<TreeViolation> out;
  std::vector<Vertex> bare_leaves;
  for (Vertex v = 0; v < t.n(); ++v) {
    if (t.degree(v) == 1 && endpoint_count[v] == 0) bare_leaves.push_back(v);
  }
  if (bare_leaves.size() > 1) {
    out.push_back({TreeViolation::Kind::UncoveredLeaves, bare_leaves, std::nullopt});
  }
  for (Vertex v = 0; v < t.n(); ++v) {
    if (t.degree(v) == 2 && endpoint_count[v] == 0) {
      out.push_back({TreeViolation::Kind::DegreeTwoNotEndpoint, {v}, std::nullopt});
    }
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Vertex a = ps[i].front();
    const Vertex b = ps[i].back();
    if (t.degree(a) != 1 || t.degree(b) != 1) continue;
    bool witnessed = false;
    for (const Path& q : ps) {
      const bool has_a = q.front() == a || q.back() == a;
      const bool has_b = q.front() == b || q.back() == b;
      if (has_a != has_b) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) {
      out.push_back({TreeViolation::Kind::LeafPairUnseparated, {std::min(a, b), std::max(a, b)}, i});
    }
  }
  return out;
}

}  // namespace seppath

#endif  // SEPPATH_VERIFICATION_HPP
