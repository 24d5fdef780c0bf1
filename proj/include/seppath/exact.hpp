#ifndef SEPPATH_EXACT_HPP
#define SEPPATH_EXACT_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "seppath/graph.hpp"
#include "seppath/verification.hpp"

namespace seppath {

/// Raised when an instance is too large for exhaustive solving.
class SolverLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every simple path of length >= 1, once per reversal class, oriented with
/// the smaller endpoint first. masks[i] has bit e set iff paths[i] uses edge e.
struct PathCatalog {
  std::vector<Path> paths;
  std::vector<std::uint64_t> masks;
};

inline constexpr std::size_t kMaxExactEdges = 64;

inline PathCatalog enumerate_paths(const Graph& g, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("catalog cap must be >= 1");
  if (g.m() > kMaxExactEdges) {
    throw SolverLimit("exact solver handles at most " + std::to_string(kMaxExactEdges) +
                      " edges, graph has " + std::to_string(g.m()));
  }
  PathCatalog cat;
  std::vector<char> on(g.n(), 0);
  std::vector<Vertex> stack;
  std::uint64_t mask = 0;

  auto dfs = [&](auto&& self, Vertex v) -> void {
    for (const auto& inc : g.neighbors(v)) {
      if (on[inc.to]) continue;
      on[inc.to] = 1;
      stack.push_back(inc.to);
      mask |= std::uint64_t{1} << inc.edge;
      if (stack.front() < inc.to) {
        if (cat.paths.size() == cap) {
          throw SolverLimit("path catalog exceeds cap of " + std::to_string(cap));
        }
        cat.paths.push_back(path_from_vertices(g, stack));
        cat.masks.push_back(mask);
      }
      self(self, inc.to);
      mask &= ~(std::uint64_t{1} << inc.edge);
      stack.pop_back();
      on[inc.to] = 0;
    }
  };
  for (Vertex s = 0; s < g.n(); ++s) {
    on[s] = 1;
    stack.assign(1, s);
    dfs(dfs, s);
    on[s] = 0;
  }
  return cat;
}

struct ExactCaps {
  std::size_t catalog_cap = 50'000;
  std::uint64_t node_cap = 10'000'000;
};

struct ExactResult {
  std::size_t value = 0;
  PathSystem witness;
  std::uint64_t nodes_explored = 0;
  bool proved_optimal = false;
};

namespace detail {

class ExactSearch {
 public:
  ExactSearch(const PathCatalog& cat, std::size_t m, std::uint64_t node_cap)
      : cat_(cat), m_(m), node_cap_(node_cap), sig_(m, 0), excluded_(cat.masks.size(), 0) {}

  /// Greedy: repeatedly add the path separating the most pairs.
  std::vector<std::size_t> greedy() {
    std::vector<std::uint64_t> sig(m_, 0);
    std::vector<std::size_t> chosen;
    for (;;) {
      auto classes = classes_of(sig);
      if (unseparated(classes) == 0) return chosen;
      std::size_t best = 0;
      std::uint64_t best_gain = 0;
      for (std::size_t i = 0; i < cat_.masks.size(); ++i) {
        const auto g = gain(classes, cat_.masks[i]);
        if (g > best_gain) {
          best_gain = g;
          best = i;
        }
      }
      const std::size_t bit = chosen.size();
      for (std::size_t e = 0; e < m_; ++e) {
        if ((cat_.masks[best] >> e) & 1U) sig[e] |= std::uint64_t{1} << bit;
      }
      chosen.push_back(best);
    }
  }

  /// Searches for a separating choice of exactly `k` catalog paths.
  bool solve(std::size_t k) {
    std::fill(sig_.begin(), sig_.end(), 0);
    std::fill(excluded_.begin(), excluded_.end(), 0);
    chosen_.clear();
    return dfs(k);
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::size_t>& chosen() const { return chosen_; }

 private:
  std::vector<std::uint64_t> classes_of(const std::vector<std::uint64_t>& sig) const {
    std::vector<std::size_t> order(m_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
    std::vector<std::uint64_t> classes;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == 0 || sig[order[i]] != sig[order[i - 1]]) classes.push_back(0);
      classes.back() |= std::uint64_t{1} << order[i];
    }
    return classes;
  }

  static std::uint64_t unseparated(const std::vector<std::uint64_t>& classes) {
    std::uint64_t u = 0;
    for (auto c : classes) {
      const auto s = static_cast<std::uint64_t>(std::popcount(c));
      u += s * (s - 1) / 2;
    }
    return u;
  }

  static std::uint64_t gain(const std::vector<std::uint64_t>& classes, std::uint64_t path) {
    std::uint64_t g = 0;
    for (auto c : classes) {
      const auto in = static_cast<std::uint64_t>(std::popcount(c & path));
      const auto s = static_cast<std::uint64_t>(std::popcount(c));
      g += in * (s - in);
    }
    return g;
  }

  bool dfs(std::size_t k) {
    if (++nodes_ > node_cap_) {
      exhausted_ = true;
      return false;
    }
    const auto classes = classes_of(sig_);
    const std::uint64_t pairs = unseparated(classes);
    if (pairs == 0) return true;
    const std::size_t remaining = k - chosen_.size();
    if (remaining == 0) return false;

    std::uint64_t pivot = 0;
    for (auto c : classes) {
      const auto s = static_cast<std::size_t>(std::popcount(c));
      if (s >= 2) {
        if (static_cast<std::size_t>(std::bit_width(s - 1)) > remaining) return false;
        if (pivot == 0 || std::countr_zero(c) < std::countr_zero(pivot)) pivot = c;
      }
    }
    const auto e = static_cast<std::size_t>(std::countr_zero(pivot));
    const auto f = static_cast<std::size_t>(std::countr_zero(pivot & (pivot - 1)));

    std::uint64_t best_gain = 0;
    std::vector<std::pair<std::uint64_t, std::size_t>> cands;
    for (std::size_t i = 0; i < cat_.masks.size(); ++i) {
      if (excluded_[i]) continue;
      const auto g = gain(classes, cat_.masks[i]);
      best_gain = std::max(best_gain, g);
      if (((cat_.masks[i] >> e) & 1U) != ((cat_.masks[i] >> f) & 1U)) cands.push_back({g, i});
    }
    if (best_gain * remaining < pairs) return false;
    std::stable_sort(cands.begin(), cands.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<std::size_t> newly_excluded;
    bool found = false;
    const std::uint64_t bit = std::uint64_t{1} << chosen_.size();
    for (const auto& [g, i] : cands) {
      for (std::size_t x = 0; x < m_; ++x) {
        if ((cat_.masks[i] >> x) & 1U) sig_[x] |= bit;
      }
      chosen_.push_back(i);
      found = dfs(k);
      if (found || exhausted_) break;
      chosen_.pop_back();
      for (std::size_t x = 0; x < m_; ++x) sig_[x] &= ~bit;
      // Every extension containing path i has now been explored.
      excluded_[i] = 1;
      newly_excluded.push_back(i);
    }
    for (std::size_t i : newly_excluded) excluded_[i] = 0;
    return found;
  }

  const PathCatalog& cat_;
  std::size_t m_;
  std::uint64_t node_cap_;
  std::vector<std::uint64_t> sig_;
  std::vector<char> excluded_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/// f(G) by iterative deepening from ceil(log2 m). At each depth the search
/// branches on the first unseparated edge pair, trying only paths that
/// contain exactly one of the two edges. If the node budget runs out the
/// greedy system is returned with proved_optimal = false.
inline ExactResult exact_min(const Graph& g, const ExactCaps& caps = {}) {
  ExactResult result;
  if (g.m() <= 1) {
    result.proved_optimal = true;
    return result;
  }
  const PathCatalog cat = enumerate_paths(g, caps.catalog_cap);
  detail::ExactSearch search(cat, g.m(), caps.node_cap);

  auto to_system = [&](const std::vector<std::size_t>& ids) {
    PathSystem ps;
    for (std::size_t i : ids) ps.add(cat.paths[i]);
    return ps;
  };

  const auto greedy = search.greedy();
  for (std::size_t k = info_lower_bound(g.m()); k < greedy.size(); ++k) {
    if (search.solve(k)) {
      result.value = k;
      result.witness = to_system(search.chosen());
      result.proved_optimal = true;
      result.nodes_explored = search.nodes();
      return result;
    }
    if (search.exhausted()) break;
  }
  result.value = greedy.size();
  result.witness = to_system(greedy);
  result.proved_optimal = !search.exhausted();
  result.nodes_explored = search.nodes();
  return result;
}

}  // namespace seppath

#endif  // SEPPATH_EXACT_HPP
