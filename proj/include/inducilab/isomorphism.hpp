#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace inducilab {

inline constexpr std::size_t kLabeledEnumerationCap = 8;
inline constexpr std::size_t kIsomorphismClassCap = 9;

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Colour refinement with content-derived colours, so colours are comparable across graphs.
template <class Adj>
std::vector<std::uint64_t> refined_colors(std::size_t n, Adj adj, int rounds = 3) {
  std::vector<std::uint64_t> color(n, mix64(0)), next(n);
  std::vector<std::uint64_t> nb;
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t v = 0; v < n; ++v) {
      nb.clear();
      for (std::size_t w = 0; w < n; ++w)
        if (w != v && adj(v, w)) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      std::uint64_t h = mix64(color[v] ^ (nb.size() * 0x100000001b3ULL));
      for (auto c : nb) h = mix64(h ^ c);
      next[v] = h;
    }
    color.swap(next);
  }
  return color;
}

inline std::uint64_t color_multiset_hash(std::vector<std::uint64_t> colors) {
  std::sort(colors.begin(), colors.end());
  std::uint64_t h = mix64(colors.size());
  for (auto c : colors) h = mix64(h ^ c);
  return h;
}

/// Backtracking isomorphism test restricted to colour-preserving bijections.
template <class AdjA, class AdjB>
bool isomorphic(std::size_t n, AdjA a, const std::vector<std::uint64_t>& ca, AdjB b, const std::vector<std::uint64_t>& cb) {
  if (n == 0) return true;
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Order: rarest colour first, then maximum adjacency to already ordered vertices.
  std::unordered_map<std::uint64_t, std::size_t> freq;
  for (auto c : ca) ++freq[c];
  std::vector<std::size_t> order;
  std::vector<char> placed(n, 0);
  std::vector<std::size_t> links(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best == n || links[v] > links[best] || (links[v] == links[best] && freq[ca[v]] < freq[ca[best]])) best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (std::size_t w = 0; w < n; ++w)
      if (!placed[w] && static_cast<bool>(a(best, w))) ++links[w];
  }
  std::vector<std::size_t> image(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    std::size_t v = order[depth];
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t] || cb[t] != ca[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        std::size_t u = order[d];
        ok = static_cast<bool>(a(v, u)) == static_cast<bool>(b(t, image[u]));
      }
      if (!ok) continue;
      used[t] = 1;
      image[v] = t;
      if (rec(depth + 1)) return true;
      used[t] = 0;
    }
    return false;
  };
  return rec(0);
}

/// Upper triangle packed column-major: pair (i<j) sits at bit j(j-1)/2 + i.
inline std::size_t pair_bit(std::size_t i, std::size_t j) { return j * (j - 1) / 2 + i; }

struct SmallAdj {
  std::array<std::uint32_t, 32> rows{};
  bool operator()(std::size_t u, std::size_t v) const { return (rows[u] >> v) & 1U; }
};

inline SmallAdj small_from_code(std::size_t n, std::uint64_t code) {
  SmallAdj s;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((code >> pair_bit(i, j)) & 1U) {
        s.rows[i] |= std::uint32_t{1} << j;
        s.rows[j] |= std::uint32_t{1} << i;
      }
  return s;
}

inline Graph graph_from_code(std::size_t n, std::uint64_t code) {
  Graph g(n);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((code >> pair_bit(i, j)) & 1U) g.add_edge(i, j);
  return g;
}

inline std::uint64_t code_from_graph(const Graph& g) {
  if (g.order() > 11) throw CapacityError("packed graph codes hold at most 11 vertices");
  std::uint64_t code = 0;
  for (auto [u, v] : g.edges()) code |= std::uint64_t{1} << pair_bit(std::min(u, v), std::max(u, v));
  return code;
}

inline std::vector<std::uint64_t> compute_class_codes(std::size_t n, const std::vector<std::uint64_t>& previous) {
  std::vector<std::uint64_t> classes;
  std::vector<std::uint64_t> colors;  // flat, n per class
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  const std::size_t base = (n - 1) * (n - 2) / 2;
  for (auto prev : previous)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      std::uint64_t code = prev | (mask << base);
      SmallAdj adj = small_from_code(n, code);
      auto col = refined_colors(n, adj);
      auto& bucket = buckets[color_multiset_hash(col)];
      bool seen = false;
      for (auto idx : bucket) {
        std::vector<std::uint64_t> other(colors.begin() + static_cast<std::ptrdiff_t>(idx * n),
                                         colors.begin() + static_cast<std::ptrdiff_t>((idx + 1) * n));
        if (isomorphic(n, adj, col, small_from_code(n, classes[idx]), other)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      bucket.push_back(classes.size());
      classes.push_back(code);
      colors.insert(colors.end(), col.begin(), col.end());
    }
  return classes;
}

}  // namespace detail

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  auto adj_a = [&](std::size_t u, std::size_t v) { return a.has_edge(u, v); };
  auto adj_b = [&](std::size_t u, std::size_t v) { return b.has_edge(u, v); };
  return detail::isomorphic(a.order(), adj_a, detail::refined_colors(a.order(), adj_a), adj_b,
                            detail::refined_colors(b.order(), adj_b));
}

/// Isomorphism-invariant 64-bit hash (equal for isomorphic graphs; collisions possible).
inline std::uint64_t invariant_hash(const Graph& g) {
  return detail::color_multiset_hash(
      detail::refined_colors(g.order(), [&](std::size_t u, std::size_t v) { return g.has_edge(u, v); }));
}

inline std::uint64_t labeled_graph_count(std::size_t n) {
  if (n > kLabeledEnumerationCap) throw CapacityError("labeled enumeration is capped at n = 8");
  return std::uint64_t{1} << (n * (n ? n - 1 : 0) / 2);
}

/// Visits every labeled graph on n vertices whose packed code lies in [first, last).
template <class Fn>
void for_each_labeled_graph(std::size_t n, Fn&& fn, std::uint64_t first = 0, std::uint64_t last = ~std::uint64_t{0}) {
  const std::uint64_t total = labeled_graph_count(n);
  last = std::min(last, total);
  for (std::uint64_t code = first; code < last; ++code) fn(detail::graph_from_code(n, code));
}

/// One packed representative per isomorphism class on n vertices (cached, thread-safe).
inline const std::vector<std::uint64_t>& isomorphism_class_codes(std::size_t n) {
  if (n > kIsomorphismClassCap) throw CapacityError("isomorphism-class enumeration is capped at n = 9");
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<std::uint64_t>> cache;
  std::lock_guard lock(mutex);
  if (n <= 1) {
    auto& slot = cache[n];
    if (slot.empty()) slot.push_back(0);
    return slot;
  }
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::size_t have = 1;
  if (cache.find(1) == cache.end()) cache[1] = {0};
  while (cache.count(have + 1)) ++have;
  for (std::size_t m = have + 1; m <= n; ++m) cache[m] = detail::compute_class_codes(m, cache[m - 1]);
  return cache[n];
}

inline std::vector<Graph> isomorphism_classes(std::size_t n) {
  std::vector<Graph> out;
  for (auto code : isomorphism_class_codes(n)) out.push_back(detail::graph_from_code(n, code));
  return out;
}

enum class EnumerationMode { Labeled, UpToIsomorphism };

/// Streams every graph on n vertices: all labeled graphs, or one per isomorphism class.
template <class Fn>
void enumerate_graphs(std::size_t n, EnumerationMode mode, Fn&& fn) {
  if (mode == EnumerationMode::Labeled) {
    for_each_labeled_graph(n, fn);
    return;
  }
  for (auto code : isomorphism_class_codes(n)) fn(detail::graph_from_code(n, code));
}

}  // namespace inducilab
