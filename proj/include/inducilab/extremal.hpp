#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bigcount.hpp"
#include "embed.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "graph6.hpp"
#include "isomorphism.hpp"

namespace inducilab {

enum class ExtremalMode { Exhaustive, LocalSearch };

struct ExtremalResult {
  BigCount value = 0;
  std::vector<Graph> witnesses;  // graph6-sorted, one per isomorphism class
  bool exact = true;             // false: value is only a lower bound from local search
};

struct LocalSearchOptions {
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  std::size_t max_steps = 200;
};

/// One clone/delete move: drop the least-covered vertex, duplicate the most-covered one
/// (the copy is not adjacent to its original), keep the result only if emb does not drop.
inline Graph local_search_step(const Graph& g, const Graph& h) {
  if (g.order() < 2) throw DomainError("local search needs at least two vertices");
  auto cover = per_vertex_embedding_counts(h, g);
  std::size_t lo = 0;
  for (std::size_t v = 1; v < g.order(); ++v)
    if (cover[v] < cover[lo]) lo = v;
  std::size_t hi = lo == 0 ? 1 : 0;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (v != lo && cover[v] > cover[hi]) hi = v;
  Graph next = remove_vertex(clone_vertex(g, hi), lo);
  return count_embeddings(h, next) >= count_embeddings(h, g) ? next : g;
}

namespace detail {

inline void sort_by_graph6(std::vector<Graph>& gs) {
  std::sort(gs.begin(), gs.end(), [](const Graph& a, const Graph& b) { return graph6_encode(a) < graph6_encode(b); });
}

inline ExtremalResult emb_max_exhaustive(const Graph& h, std::size_t n, unsigned workers) {
  const auto& codes = isomorphism_class_codes(n);
  workers = std::max(1U, workers);
  std::vector<BigCount> values(codes.size());
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < codes.size(); i += workers) values[i] = count_embeddings(h, graph_from_code(n, codes[i]));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  ExtremalResult r;
  r.value = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < codes.size(); ++i)
    if (values[i] == r.value) r.witnesses.push_back(graph_from_code(n, codes[i]));
  sort_by_graph6(r.witnesses);
  return r;
}

inline ExtremalResult emb_max_local(const Graph& h, std::size_t n, const LocalSearchOptions& opt) {
  ExtremalResult best;
  best.exact = false;
  if (n < 2) {
    best.value = count_embeddings(h, Graph(n));
    best.witnesses.push_back(Graph(n));
    return best;
  }
  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution coin(0.5);
  bool first = true;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (coin(rng)) g.add_edge(u, v);
    for (std::size_t step = 0; step <= opt.max_steps; ++step) {
      BigCount value = count_embeddings(h, g);
      if (first || value > best.value) {
        best.value = value;
        best.witnesses = {g};
        first = false;
      }
      if (step == opt.max_steps) break;
      Graph next = local_search_step(g, h);
      if (next == g) break;
      g = std::move(next);
    }
  }
  return best;
}

}  // namespace detail

/// emb(H, n) = max over n-vertex graphs of emb(H, Γ). Exhaustive results are cached per (H, n).
inline ExtremalResult emb_max(const Graph& h, std::size_t n, ExtremalMode mode = ExtremalMode::Exhaustive, unsigned workers = 1,
                              const LocalSearchOptions& opt = {}) {
  if (mode == ExtremalMode::LocalSearch) return detail::emb_max_local(h, n, opt);
  if (n > kIsomorphismClassCap) throw CapacityError("exhaustive emb(H,n) is capped at n = 9");
  static std::mutex mutex;
  static std::map<std::pair<std::string, std::size_t>, ExtremalResult> cache;
  auto key = std::make_pair(graph6_encode(h), n);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto r = detail::emb_max_exhaustive(h, n, workers);
  std::lock_guard lock(mutex);
  cache.emplace(key, r);
  return r;
}

inline std::vector<BigCount> emb_sequence(const Graph& h, std::size_t m_lo, std::size_t m_hi, unsigned workers = 1) {
  if (m_hi > kIsomorphismClassCap) throw CapacityError("emb_sequence is capped at m = 9");
  std::vector<BigCount> out;
  for (std::size_t m = m_lo; m <= m_hi; ++m) out.push_back(emb_max(h, m, ExtremalMode::Exhaustive, workers).value);
  return out;
}

}  // namespace inducilab
