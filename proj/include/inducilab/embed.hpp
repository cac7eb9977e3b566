#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "bigcount.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace inducilab {

/// theta[x] is the image of H-vertex x.
using Embedding = std::vector<std::size_t>;

/// Restrictions on the embeddings being counted. Unsatisfiable constraints give a count of 0.
struct EmbedConstraints {
  std::vector<std::pair<std::size_t, std::size_t>> fixed;  // (vertex of H, required image)
  std::optional<VertexSet> range;                          // images of the non-fixed vertices
  std::vector<std::optional<VertexSet>> allowed;           // per-vertex image sets; empty or |V(H)| long
};

inline bool is_embedding(const Graph& h, const Graph& g, const Embedding& theta) {
  if (theta.size() != h.order()) return false;
  for (std::size_t x = 0; x < theta.size(); ++x) {
    if (theta[x] >= g.order()) return false;
    for (std::size_t y = 0; y < x; ++y)
      if (theta[x] == theta[y] || h.has_edge(x, y) != g.has_edge(theta[x], theta[y])) return false;
  }
  return true;
}

/// Backtracking over H-vertices in a static order; candidates are word-level intersections of
/// neighbour and non-neighbour rows of the already-placed images.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const Graph& h, const Graph& g, const EmbedConstraints& c = {}) : h_(h), g_(g) {
    k_ = h.order();
    n_ = g.order();
    words_ = VertexSet::word_count(n_);
    if (k_ > n_) {
      feasible_ = false;
      return;
    }
    if (n_ > 1 && std::log2(static_cast<double>(n_)) * static_cast<double>(k_) > 126.0)
      throw CapacityError("embedding counts could overflow the 128-bit accumulator");
    if (!c.allowed.empty() && c.allowed.size() != k_) throw StructuralError("allowed-set list must have one entry per vertex of H");

    std::vector<std::optional<VertexSet>> allowed(k_);
    std::vector<char> is_fixed(k_, 0);
    for (auto [x, t] : c.fixed) {
      if (x >= k_) throw DomainError("constraint names a vertex outside H");
      if (t >= n_ || is_fixed[x]) {
        if (t >= n_ || allowed[x]->first() != t) feasible_ = false;
        if (!feasible_) return;
        continue;
      }
      is_fixed[x] = 1;
      allowed[x] = VertexSet(n_, {t});
    }
    for (std::size_t x = 0; x < k_; ++x) {
      VertexSet a = VertexSet::full(n_);
      if (allowed[x]) a = *allowed[x];
      if (!is_fixed[x] && c.range) {
        if (c.range->universe() != n_) throw StructuralError("range set does not match target graph");
        a &= *c.range;
      }
      if (!c.allowed.empty() && c.allowed[x]) {
        if (c.allowed[x]->universe() != n_) throw StructuralError("allowed set does not match target graph");
        a &= *c.allowed[x];
      }
      allowed[x] = std::move(a);
    }

    // Fixed vertices first, then the vertex with most neighbours already placed (degree breaks ties).
    std::vector<char> placed(k_, 0);
    std::vector<std::size_t> links(k_, 0);
    for (std::size_t step = 0; step < k_; ++step) {
      std::size_t best = k_;
      for (std::size_t x = 0; x < k_; ++x) {
        if (placed[x]) continue;
        auto key = [&](std::size_t v) {
          return std::make_tuple(is_fixed[v], links[v], allowed[v]->count() <= 1, h.degree(v));
        };
        if (best == k_ || key(x) > key(best)) best = x;
      }
      placed[best] = 1;
      order_.push_back(best);
      h.neighbors(best).for_each([&](std::size_t w) { ++links[w]; });
    }
    allowed_.resize(k_);
    prev_.resize(k_);
    for (std::size_t d = 0; d < k_; ++d) {
      allowed_[d] = std::move(*allowed[order_[d]]);
      for (std::size_t e = 0; e < d; ++e) prev_[d].emplace_back(e, h.has_edge(order_[d], order_[e]));
    }
  }

  std::size_t pattern_order() const noexcept { return k_; }

  BigCount count(unsigned workers = 1) const {
    if (!feasible_) return 0;
    if (k_ == 0) return 1;
    workers = std::max(1U, workers);
    if (workers == 1) {
      State s(*this);
      return from_u128(s.count_from(0));
    }
    // Split the first level round-robin; the sum does not depend on the split.
    State root(*this);
    root.candidates(0);
    std::vector<std::size_t> firsts;
    root.each_bit(0, [&](std::size_t v) { firsts.push_back(v); });
    std::vector<unsigned __int128> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        State s(*this);
        for (std::size_t i = w; i < firsts.size(); i += workers) partial[w] += s.count_with_first(firsts[i]);
      });
    for (auto& t : pool) t.join();
    BigCount total = 0;
    for (auto p : partial) total += from_u128(p);
    return total;
  }

  /// Calls fn(const Embedding&) per embedding; a bool-returning fn stops the search by returning false.
  template <class Fn>
  void for_each(Fn&& fn) const {
    if (!feasible_) return;
    if (k_ == 0) {
      Embedding empty;
      fn(empty);
      return;
    }
    State s(*this);
    Embedding theta(k_);
    s.visit(0, theta, fn);
  }

  std::optional<Embedding> find_one() const {
    std::optional<Embedding> out;
    for_each([&](const Embedding& e) {
      out = e;
      return false;
    });
    return out;
  }

 private:
  using Word = VertexSet::Word;

  struct State {
    const EmbeddingSearch& s;
    std::vector<Word> buf;   // candidate words per depth
    std::vector<Word> used;  // images taken so far
    std::vector<std::size_t> image;

    explicit State(const EmbeddingSearch& search)
        : s(search), buf(search.k_ * search.words_, 0), used(search.words_, 0), image(search.k_, 0) {}

    Word* at(std::size_t d) { return buf.data() + d * s.words_; }

    void candidates(std::size_t d) {
      Word* out = at(d);
      const Word* allow = s.allowed_[d].data();
      for (std::size_t i = 0; i < s.words_; ++i) out[i] = allow[i] & ~used[i];
      for (auto [e, adjacent] : s.prev_[d]) {
        const Word* row = s.g_.neighbors(image[e]).data();
        if (adjacent)
          for (std::size_t i = 0; i < s.words_; ++i) out[i] &= row[i];
        else
          for (std::size_t i = 0; i < s.words_; ++i) out[i] &= ~row[i];
      }
    }

    template <class F>
    void each_bit(std::size_t d, F&& f) {
      Word* c = at(d);
      for (std::size_t i = 0; i < s.words_; ++i) {
        Word w = c[i];
        while (w) {
          f(i * VertexSet::kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
          w &= w - 1;
        }
      }
    }

    void take(std::size_t d, std::size_t v) {
      image[d] = v;
      used[v / VertexSet::kWordBits] |= Word{1} << (v % VertexSet::kWordBits);
    }
    void release(std::size_t v) { used[v / VertexSet::kWordBits] &= ~(Word{1} << (v % VertexSet::kWordBits)); }

    unsigned __int128 count_from(std::size_t d) {
      candidates(d);
      if (d + 1 == s.k_) {
        unsigned __int128 c = 0;
        const Word* w = at(d);
        for (std::size_t i = 0; i < s.words_; ++i) c += static_cast<unsigned>(std::popcount(w[i]));
        return c;
      }
      unsigned __int128 total = 0;
      Word* c = at(d);
      for (std::size_t i = 0; i < s.words_; ++i) {
        Word w = c[i];
        while (w) {
          std::size_t v = i * VertexSet::kWordBits + static_cast<std::size_t>(std::countr_zero(w));
          w &= w - 1;
          take(d, v);
          total += count_from(d + 1);
          release(v);
        }
      }
      return total;
    }

    unsigned __int128 count_with_first(std::size_t v) {
      if (s.k_ == 1) return 1;
      take(0, v);
      auto r = count_from(1);
      release(v);
      return r;
    }

    template <class Fn>
    bool visit(std::size_t d, Embedding& theta, Fn& fn) {
      candidates(d);
      Word* c = at(d);
      for (std::size_t i = 0; i < s.words_; ++i) {
        Word w = c[i];
        while (w) {
          std::size_t v = i * VertexSet::kWordBits + static_cast<std::size_t>(std::countr_zero(w));
          w &= w - 1;
          theta[s.order_[d]] = v;
          if (d + 1 == s.k_) {
            if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Embedding&>, bool>) {
              if (!fn(static_cast<const Embedding&>(theta))) return false;
            } else {
              fn(static_cast<const Embedding&>(theta));
            }
            continue;
          }
          take(d, v);
          bool go_on = visit(d + 1, theta, fn);
          release(v);
          if (!go_on) return false;
        }
      }
      return true;
    }
  };

  const Graph& h_;
  const Graph& g_;
  std::size_t k_ = 0, n_ = 0, words_ = 0;
  bool feasible_ = true;
  std::vector<std::size_t> order_;
  std::vector<VertexSet> allowed_;                             // indexed by depth
  std::vector<std::vector<std::pair<std::size_t, bool>>> prev_;  // (earlier depth, adjacent?)
};

inline BigCount count_embeddings(const Graph& h, const Graph& g, const EmbedConstraints& c = {}, unsigned workers = 1) {
  return EmbeddingSearch(h, g, c).count(workers);
}

template <class Fn>
void for_each_embedding(const Graph& h, const Graph& g, Fn&& fn, const EmbedConstraints& c = {}) {
  EmbeddingSearch(h, g, c).for_each(std::forward<Fn>(fn));
}

inline BigCount count_automorphisms(const Graph& h) { return count_embeddings(h, h); }

inline BigCount count_induced_copies(const Graph& h, const Graph& g) {
  BigCount emb = count_embeddings(h, g);
  BigCount aut = count_automorphisms(h);
  if (emb % aut != 0) throw std::logic_error("embedding count is not divisible by aut(H)");
  return emb / aut;
}

/// For each vertex w of g, the number of embeddings whose image contains w.
inline std::vector<BigCount> per_vertex_embedding_counts(const Graph& h, const Graph& g) {
  BigCount total = count_embeddings(h, g);
  std::vector<BigCount> out;
  out.reserve(g.order());
  for (std::size_t w = 0; w < g.order(); ++w) {
    EmbedConstraints c;
    c.range = g.all_vertices();
    c.range->erase(w);
    out.push_back(total - count_embeddings(h, g, c));
  }
  return out;
}

}  // namespace inducilab
