#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vertex_set.hpp"

namespace inducilab {

/// Dense undirected simple graph on vertices [0, n) with per-vertex bitset rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), rows_(n, VertexSet(n)) {}

  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_; }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw DomainError("self-loops are not allowed");
    rows_.at(u).insert(v);
    rows_.at(v).insert(u);
  }
  void remove_edge(std::size_t u, std::size_t v) {
    rows_.at(u).erase(v);
    rows_.at(v).erase(u);
  }
  void set_edge(std::size_t u, std::size_t v, bool present) {
    if (present)
      add_edge(u, v);
    else
      remove_edge(u, v);
  }

  bool has_edge(std::size_t u, std::size_t v) const noexcept { return u < n_ && rows_[u].contains(v); }

  /// a(x,y): the adjacency indicator, defined for distinct vertices only.
  int adjacency(std::size_t x, std::size_t y) const {
    if (x == y) throw DomainError("adjacency a(x,y) needs distinct vertices");
    if (x >= n_ || y >= n_) throw DomainError("vertex out of range");
    return has_edge(x, y) ? 1 : 0;
  }

  const VertexSet& neighbors(std::size_t v) const { return rows_.at(v); }
  std::size_t degree(std::size_t v) const { return rows_.at(v).count(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      rows_[u].for_each([&](std::size_t v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  Graph complement() const {
    Graph c(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      c.rows_[u] = rows_[u].complement();
      c.rows_[u].erase(u);
    }
    return c;
  }

  VertexSet all_vertices() const { return VertexSet::full(n_); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<VertexSet> rows_;
};

namespace graphs {

inline Graph empty(std::size_t n) { return Graph(n); }

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw DomainError("cycles need at least three vertices");
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

inline Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

/// Parses names like "C5", "P4", "K3", "E2" (edgeless).
inline std::optional<Graph> named(const std::string& name) {
  if (name.size() < 2) return std::nullopt;
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(name.substr(1), &used);
    if (used + 1 != name.size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  switch (name[0]) {
    case 'C': return cycle(n);
    case 'P': return path(n);
    case 'K': return complete(n);
    case 'E': return empty(n);
    default: return std::nullopt;
  }
}

}  // namespace graphs

/// a_H(X,Y): 1 iff at least |X||Y|/2 edges run between the disjoint non-empty sets X and Y.
inline int block_adjacency(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.universe() != g.order() || y.universe() != g.order()) throw DomainError("vertex sets do not match graph order");
  if (x.empty() || y.empty()) throw DomainError("block adjacency needs non-empty sets");
  if (x.intersects(y)) throw DomainError("block adjacency needs disjoint sets");
  std::size_t edges = 0;
  x.for_each([&](std::size_t v) { edges += g.neighbors(v).intersection_count(y); });
  return 2 * edges >= x.count() * y.count() ? 1 : 0;
}

inline bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  VertexSet seen(g.order());
  std::vector<std::size_t> stack{0};
  seen.insert(0);
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    (g.neighbors(v) - seen).for_each([&](std::size_t w) {
      seen.insert(w);
      stack.push_back(w);
    });
  }
  return seen.count() == g.order();
}

/// Induced subgraph with the original id of every retained vertex.
struct InducedSubgraph {
  Graph graph;
  std::vector<std::size_t> back_map;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  if (keep.universe() != g.order()) throw DomainError("vertex set does not match graph order");
  if (keep.empty()) throw DomainError("induced subgraph on the empty set");
  InducedSubgraph out{Graph(keep.count()), keep.members()};
  for (std::size_t i = 0; i < out.back_map.size(); ++i)
    for (std::size_t j = i + 1; j < out.back_map.size(); ++j)
      if (g.has_edge(out.back_map[i], out.back_map[j])) out.graph.add_edge(i, j);
  return out;
}

inline Graph remove_vertex(const Graph& g, std::size_t v) {
  VertexSet keep = g.all_vertices();
  keep.erase(v);
  if (keep.empty()) return Graph(0);
  return induced_subgraph(g, keep).graph;
}

/// Disjoint union; the second graph's vertices are shifted by a.order().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(a.order() + u, a.order() + v);
  return g;
}

/// Copy of g with one extra vertex that has the same neighbourhood as v and is not adjacent to v.
inline Graph clone_vertex(const Graph& g, std::size_t v) {
  Graph h(g.order() + 1);
  for (auto [a, b] : g.edges()) h.add_edge(a, b);
  g.neighbors(v).for_each([&](std::size_t w) { h.add_edge(g.order(), w); });
  return h;
}

/// U is a module when every vertex outside U is complete or anticomplete to U.
inline bool is_module(const Graph& g, const VertexSet& u) {
  std::size_t size = u.count();
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (u.contains(v)) continue;
    std::size_t hits = g.neighbors(v).intersection_count(u);
    if (hits != 0 && hits != size) return false;
  }
  return true;
}

namespace detail {

/// First module 2 <= |U| < n in increasing subset-mask order (n <= 20).
inline std::optional<VertexSet> find_module_bruteforce(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 24) throw CapacityError("brute-force module search is limited to 24 vertices");
  std::vector<std::uint32_t> rows(n, 0);
  for (std::size_t v = 0; v < n; ++v) g.neighbors(v).for_each([&](std::size_t w) { rows[v] |= std::uint32_t{1} << w; });
  const std::uint32_t all = n == 32 ? ~0U : ((std::uint32_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < all; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (mask >> v & 1U) continue;
      std::uint32_t hit = rows[v] & mask;
      ok = hit == 0 || hit == mask;
    }
    if (ok) {
      VertexSet u(n);
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1U) u.insert(v);
      return u;
    }
  }
  return std::nullopt;
}

/// Smallest module containing a given seed set: repeatedly absorb splitters.
inline VertexSet module_closure(const Graph& g, VertexSet m) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t size = m.count();
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (m.contains(v)) continue;
      std::size_t hits = g.neighbors(v).intersection_count(m);
      if (hits != 0 && hits != size) {
        m.insert(v);
        ++size;
        grew = true;
      }
    }
  }
  return m;
}

/// Polynomial search: a nontrivial module exists iff some pair closes to a proper subset.
inline std::optional<VertexSet> find_module_closure(const Graph& g) {
  const std::size_t n = g.order();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      VertexSet m = module_closure(g, VertexSet(n, {u, v}));
      if (m.count() < n) return m;
    }
  return std::nullopt;
}

}  // namespace detail

struct PrimeResult {
  bool prime = true;
  std::optional<VertexSet> witness;  // module with 2 <= |U| < n when not prime
};

inline constexpr std::size_t kBruteForcePrimeLimit = 20;

inline PrimeResult is_prime(const Graph& g) {
  if (g.order() == 0) throw DomainError("primality needs at least one vertex");
  auto module = g.order() <= kBruteForcePrimeLimit ? detail::find_module_bruteforce(g) : detail::find_module_closure(g);
  return PrimeResult{!module.has_value(), std::move(module)};
}

}  // namespace inducilab
