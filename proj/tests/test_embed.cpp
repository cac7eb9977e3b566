#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "inducilab/embed.hpp"
#include "inducilab/extremal.hpp"
#include "inducilab/graph6.hpp"
#include "inducilab/isomorphism.hpp"
#include "inducilab/rng.hpp"

using namespace inducilab;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  CounterRng rng(seed, streams::kProperty);
  Graph g(n);
  std::uint64_t c = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform(c++) < p) g.add_edge(u, v);
  return g;
}

// Oracle: every injective map V(H) -> V(G), checked pair by pair.
std::uint64_t brute_count(const Graph& h, const Graph& g) {
  const std::size_t k = h.order(), n = g.order();
  if (k > n) return 0;
  std::vector<std::size_t> theta(k, 0);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      ++count;
      return;
    }
    for (std::size_t t = 0; t < n; ++t) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = theta[j] != t && h.has_edge(i, j) == g.has_edge(t, theta[j]);
      if (!ok) continue;
      theta[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

std::uint64_t brute_permutation_count(const Graph& h, const Graph& g) {
  std::vector<std::size_t> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t c = 0;
  do {
    bool ok = true;
    for (std::size_t u = 0; u < h.order() && ok; ++u)
      for (std::size_t v = u + 1; v < h.order() && ok; ++v) ok = h.has_edge(u, v) == g.has_edge(perm[u], perm[v]);
    c += ok ? 1 : 0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return c;
}

}  // namespace

TEST(Embed, CountExamples) {
  EXPECT_EQ(count_embeddings(graphs::complete(3), graphs::complete(4)), 24);
  EXPECT_EQ(count_embeddings(graphs::path(3), graphs::complete(3)), 0);
  EXPECT_EQ(brute_permutation_count(graphs::cycle(5), graphs::cycle(5)), 10u);
  EXPECT_EQ(count_embeddings(graphs::cycle(5), graphs::cycle(5)), 10);
  EXPECT_EQ(count_embeddings(graphs::complete(6), graphs::complete(5)), 0);
  EXPECT_EQ(count_embeddings(Graph(0), graphs::cycle(5)), 1);
}

TEST(Embed, OracleEquivalenceOnRandomPairs) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto h = random_graph(1 + s % 5, 0.5, 2 * s);
    auto g = random_graph(1 + (s / 5) % 7, 0.5, 2 * s + 1);
    EXPECT_EQ(count_embeddings(h, g), brute_count(h, g)) << graph6_encode(h) << " " << graph6_encode(g);
  }
}

TEST(Embed, WorkerCountDoesNotChangeResult) {
  auto h = graphs::path(4);
  auto g = random_graph(40, 0.4, 77);
  auto one = count_embeddings(h, g, {}, 1);
  EXPECT_EQ(count_embeddings(h, g, {}, 4), one);
  EXPECT_EQ(count_embeddings(h, g, {}, 3), one);
}

TEST(Embed, ForEachVisitsExactlyTheCountedEmbeddings) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto h = random_graph(4, 0.5, 300 + s);
    auto g = random_graph(8, 0.5, 400 + s);
    std::uint64_t seen = 0;
    for_each_embedding(h, g, [&](const Embedding& e) {
      EXPECT_TRUE(is_embedding(h, g, e));
      ++seen;
    });
    EXPECT_EQ(BigCount(seen), count_embeddings(h, g));
  }
}

TEST(Embed, Constraints) {
  auto c5 = graphs::cycle(5);
  EmbedConstraints fix;
  fix.fixed = {{0, 0}};
  EXPECT_EQ(count_embeddings(c5, c5, fix), 2);
  EmbedConstraints clash;
  clash.fixed = {{0, 0}, {1, 0}};
  EXPECT_EQ(count_embeddings(c5, c5, clash), 0);
  EmbedConstraints inconsistent;
  inconsistent.fixed = {{0, 0}, {1, 2}};  // 0~1 in C5 but 0,2 are not adjacent
  EXPECT_EQ(count_embeddings(c5, c5, inconsistent), 0);
  EmbedConstraints out_of_range;
  out_of_range.fixed = {{0, 9}};
  EXPECT_EQ(count_embeddings(c5, c5, out_of_range), 0);
  EmbedConstraints range;
  range.range = VertexSet(5, {0, 1, 2, 3});
  EXPECT_EQ(count_embeddings(graphs::path(4), c5, range), 2);
}

TEST(Embed, AutomorphismsAndCopies) {
  EXPECT_EQ(count_automorphisms(graphs::complete(4)), 24);
  EXPECT_EQ(count_automorphisms(graphs::path(4)), 2);
  EXPECT_EQ(count_automorphisms(graphs::cycle(5)), BigCount(brute_permutation_count(graphs::cycle(5), graphs::cycle(5))));
  EXPECT_EQ(count_induced_copies(graphs::complete(2), graphs::complete(4)), 6);
  EXPECT_EQ(count_induced_copies(graphs::cycle(5), graphs::cycle(5)), 1);
  // Oracle for P4 in C5: 4-subsets inducing a path.
  auto c5 = graphs::cycle(5);
  std::size_t paths = 0;
  for (std::size_t drop = 0; drop < 5; ++drop) {
    VertexSet keep = c5.all_vertices();
    keep.erase(drop);
    paths += are_isomorphic(induced_subgraph(c5, keep).graph, graphs::path(4)) ? 1 : 0;
  }
  EXPECT_EQ(count_induced_copies(graphs::path(4), c5), BigCount(paths));
  EXPECT_EQ(count_embeddings(graphs::path(4), c5), 10);
}

TEST(Embed, EmbeddingsFactorThroughAutomorphisms) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto h = random_graph(3 + s % 3, 0.5, 500 + s);
    auto g = random_graph(9, 0.5, 600 + s);
    EXPECT_EQ(count_embeddings(h, g), count_automorphisms(h) * count_induced_copies(h, g));
  }
}

TEST(Embed, PerVertexCounts) {
  auto pv = per_vertex_embedding_counts(graphs::complete(2), graphs::path(3));
  EXPECT_EQ(pv, (std::vector<BigCount>{2, 4, 2}));
  for (const auto& c : per_vertex_embedding_counts(graphs::cycle(5), graphs::cycle(5))) EXPECT_EQ(c, 10);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto h = random_graph(1 + s % 4, 0.5, 700 + s);
    auto g = random_graph(7, 0.5, 800 + s);
    auto counts = per_vertex_embedding_counts(h, g);
    BigCount sum = 0;
    for (const auto& c : counts) sum += c;
    EXPECT_EQ(sum, BigCount(h.order()) * count_embeddings(h, g));
  }
}

TEST(Extremal, EmbMaxExamples) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto r = emb_max(graphs::complete(2), n);
    EXPECT_EQ(r.value, BigCount(n * (n - 1)));
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0], graphs::complete(n));
  }
  // Oracle: best over all 64 labeled graphs.
  BigCount best = 0;
  std::vector<Graph> argmax;
  for_each_labeled_graph(4, [&](const Graph& g) {
    BigCount c = brute_count(graphs::path(4), g);
    if (c > best) {
      best = c;
      argmax.clear();
    }
    if (c == best) argmax.push_back(g);
  });
  auto r = emb_max(graphs::path(4), 4);
  EXPECT_EQ(r.value, best);
  EXPECT_EQ(r.value, 2);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_TRUE(are_isomorphic(r.witnesses[0], graphs::path(4)));
  for (const auto& g : argmax) EXPECT_TRUE(are_isomorphic(g, graphs::path(4)));
  EXPECT_EQ(emb_max(graphs::cycle(5), 3).value, 0);
}

TEST(Extremal, WorkerCountDoesNotChangeEmbMax) {
  auto h = graphs::path(4);
  auto a = detail::emb_max_exhaustive(h, 6, 1);
  auto b = detail::emb_max_exhaustive(h, 6, 3);
  EXPECT_EQ(a.value, b.value);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) EXPECT_EQ(graph6_encode(a.witnesses[i]), graph6_encode(b.witnesses[i]));
}

TEST(Extremal, Sequences) {
  EXPECT_EQ(emb_sequence(graphs::complete(2), 2, 6), (std::vector<BigCount>{2, 6, 12, 20, 30}));
  EXPECT_EQ(emb_sequence(graphs::complete(3), 3, 6), (std::vector<BigCount>{6, 24, 60, 120}));
  EXPECT_EQ(emb_sequence(graphs::path(4), 4, 4), (std::vector<BigCount>{2}));
}

TEST(Extremal, InducibilityRatioIsMonotone) {
  for (const auto& h : {graphs::path(4), graphs::complete(3), graphs::cycle(5)}) {
    const std::size_t k = h.order();
    Rational prev = -1;
    for (std::size_t n = k; n <= 7; ++n) {
      BigCount ind = emb_max(h, n).value / count_automorphisms(h);
      Rational ratio(ind, binomial(n, k));
      if (prev >= 0) EXPECT_LE(ratio, prev) << graph6_encode(h) << " n=" << n;
      prev = ratio;
    }
  }
}

TEST(Extremal, LocalSearchStep) {
  auto h = graphs::complete(2);
  auto p3 = graphs::path(3);
  auto next = local_search_step(p3, h);
  EXPECT_GE(count_embeddings(h, next), 4);
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto g = random_graph(6, 0.5, 900 + s);
    auto hh = random_graph(3, 0.6, 950 + s);
    EXPECT_GE(count_embeddings(hh, local_search_step(g, hh)), count_embeddings(hh, g));
  }
  // A maximizer stays a maximizer.
  auto best = emb_max(graphs::path(4), 4);
  auto after = local_search_step(best.witnesses[0], graphs::path(4));
  EXPECT_EQ(count_embeddings(graphs::path(4), after), best.value);
  EXPECT_THROW(local_search_step(Graph(1), h), DomainError);
}

TEST(Extremal, LocalSearchIsALowerBound) {
  auto r = emb_max(graphs::path(4), 6, ExtremalMode::LocalSearch);
  EXPECT_FALSE(r.exact);
  EXPECT_LE(r.value, emb_max(graphs::path(4), 6).value);
  EXPECT_EQ(count_embeddings(graphs::path(4), r.witnesses[0]), r.value);
}
