#include <gtest/gtest.h>

#include "inducilab/blowup.hpp"
#include "inducilab/graph6.hpp"
#include "inducilab/isomorphism.hpp"

using namespace inducilab;

namespace {

CayleyGraph c5_cayley() {
  auto z5 = AbelianGroup::cyclic(5);
  return build_cayley(z5, ConnectionSet(z5, {1, 4}));
}

CayleyGraph c4_cayley() {
  auto z4 = AbelianGroup::cyclic(4);
  return build_cayley(z4, ConnectionSet(z4, {1, 3}));
}

BlowupTree uniform_leaves(const Graph& base, const Graph& leaf) {
  std::vector<BlowupTree> parts(base.order(), BlowupTree::leaf(leaf));
  return BlowupTree::blowup(base, parts);
}

}  // namespace

TEST(Blowup, BalancedParts) {
  EXPECT_EQ(balanced_parts(7, 5), (std::vector<std::size_t>{2, 2, 1, 1, 1}));
  EXPECT_EQ(balanced_parts(10, 5), (std::vector<std::size_t>{2, 2, 2, 2, 2}));
  EXPECT_EQ(balanced_parts(3, 5), (std::vector<std::size_t>{1, 1, 1, 0, 0}));
  // Below k̃ the iterated builder produces a leaf rather than a blow-up with empty parts.
  EXPECT_TRUE(balanced_iterated_tree(graphs::cycle(5), 3, LeafPolicy::empty_graph()).is_leaf());
  std::vector<BlowupTree> with_empty{BlowupTree::leaf(Graph(1)), BlowupTree::leaf(Graph(0)), BlowupTree::leaf(Graph(1))};
  EXPECT_THROW(BlowupTree::blowup(graphs::path(3), with_empty), StructuralError);
  EXPECT_THROW(BlowupTree::blowup(graphs::path(3), {BlowupTree::leaf(Graph(1))}), StructuralError);
}

TEST(Blowup, BuildExamples) {
  auto c5 = graphs::cycle(5);
  EXPECT_EQ(build_blowup(uniform_leaves(c5, Graph(1))), c5);
  auto doubled = build_blowup(uniform_leaves(c5, Graph(2)));
  EXPECT_EQ(doubled.order(), 10u);
  EXPECT_EQ(doubled.edge_count(), 20u);
  auto fig = balanced_iterated_tree(graphs::cycle(6), 26, LeafPolicy::empty_graph());
  EXPECT_EQ(fig.part_sizes(), (std::vector<std::size_t>{5, 5, 4, 4, 4, 4}));
  EXPECT_TRUE(fig.is_balanced());
  EXPECT_EQ(build_blowup(fig).order(), 26u);
}

TEST(Blowup, MaterializedAdjacencyFollowsBase) {
  auto base = graphs::cycle(5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto t = random_blowup_tree(base, 8 + s, s);
    auto m = materialize(t);
    for (std::size_t u = 0; u < m.graph.order(); ++u)
      for (std::size_t v = 0; v < m.graph.order(); ++v) {
        std::size_t pu = m.top_part[u], pv = m.top_part[v];
        if (u != v && pu != pv) EXPECT_EQ(m.graph.has_edge(u, v), base.has_edge(pu, pv));
      }
  }
}

TEST(Blowup, ClosedForm) {
  EXPECT_EQ(closed_form_blowup_count(5, 5, 1), 10);
  EXPECT_EQ(closed_form_blowup_count(7, 3, 1), 14);
  EXPECT_EQ(closed_form_blowup_count(5, 5, 2), 31300);
  EXPECT_EQ(closed_form_blowup_count(5, 4, 2), 6300);
  EXPECT_THROW(closed_form_blowup_count(5, 6, 2), DomainError);
  EXPECT_THROW(closed_form_blowup_count(5, 5, 0), DomainError);
}

TEST(Blowup, ClosedFormMatchesDirectCounts) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  PatternInCayley p4(c5, VertexSet(5, {0, 1, 2, 3}));
  auto t25 = balanced_iterated_tree(c5.graph, 25, LeafPolicy::empty_graph());
  auto g25 = build_blowup(t25);
  EXPECT_EQ(count_embeddings(whole.graph(), g25), closed_form_blowup_count(5, 5, 2));
  EXPECT_EQ(count_embeddings(p4.graph(), g25), closed_form_blowup_count(5, 4, 2));
  EXPECT_EQ(count_embeddings(whole.graph(), c5.graph), closed_form_blowup_count(5, 5, 1));
  EXPECT_EQ(count_into_blowup(whole, t25).value, closed_form_blowup_count(5, 5, 2));
  EXPECT_EQ(count_into_blowup(p4, t25).value, closed_form_blowup_count(5, 4, 2));
  // Every P4 -> C5 embedding extends to one of the 10 maps, which is what makes the count exact.
  auto cert = certify_rigidity(p4);
  EXPECT_TRUE(cert.prime);
  EXPECT_TRUE(cert.rigid);
  EXPECT_EQ(cert.restrictions.size(), 10u);
}

TEST(Blowup, LimitRatio) {
  Rational prev = 0;
  for (unsigned m = 1; m <= 6; ++m) {
    Rational r(closed_form_blowup_count(5, 5, m), ipow(BigCount(5), 5 * m));
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_EQ(embedding_inducibility_limit(5, 5), Rational(1, 312));
  Rational gap = embedding_inducibility_limit(5, 5) - prev;
  if (gap < 0) gap = -gap;
  EXPECT_LT(gap, Rational(1, 1000000));
  Rational r4(closed_form_blowup_count(5, 4, 6), ipow(BigCount(5), 24));
  Rational gap4 = embedding_inducibility_limit(5, 4) - r4;
  if (gap4 < 0) gap4 = -gap4;
  EXPECT_LT(gap4, Rational(1, 1000000));
}

TEST(Blowup, CountIntoBlowupExamples) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  auto t = uniform_leaves(c5.graph, Graph(2));
  auto r = count_into_blowup(whole, t);
  EXPECT_TRUE(r.by_classification);
  EXPECT_EQ(r.value, 320);
  EXPECT_EQ(count_embeddings(whole.graph(), build_blowup(t)), 320);
  PatternInCayley p4(c5, VertexSet(5, {0, 1, 2, 3}));
  EXPECT_EQ(count_into_blowup(p4, uniform_leaves(c5.graph, Graph(1))).value, 10);
  EXPECT_EQ(count_embeddings(graphs::path(4), c5.graph), 10);
}

TEST(Blowup, ClassificationExamples) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  auto trivial = classify_embeddings(whole, uniform_leaves(c5.graph, Graph(1)));
  EXPECT_EQ(trivial.follows_map, 10);
  EXPECT_EQ(trivial.in_part, 0);
  EXPECT_TRUE(trivial.violations.empty());

  std::vector<BlowupTree> parts(5, BlowupTree::leaf(Graph(1)));
  parts[0] = BlowupTree::leaf(graphs::cycle(5));
  auto with_c5_leaf = BlowupTree::blowup(c5.graph, parts);
  auto s = classify_embeddings(whole, with_c5_leaf);
  EXPECT_EQ(s.in_part, 10);
  EXPECT_EQ(s.violation_count, 0);
  EXPECT_EQ(s.total(), count_embeddings(whole.graph(), build_blowup(with_c5_leaf)));

  auto c4 = c4_cayley();
  PatternInCayley c4_whole(c4);
  auto v = classify_embeddings(c4_whole, uniform_leaves(c4.graph, Graph(2)));
  EXPECT_GT(v.violation_count, 0);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_NE(v.violations[0].x, v.violations[0].y);
  EXPECT_FALSE(certify_rigidity(c4_whole).prime);
}

TEST(Blowup, ClassificationMatchesDirectCountsOnRandomSpecs) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  PatternInCayley p4(c5, VertexSet(5, {0, 1, 2, 3}));
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto t = random_blowup_tree(c5.graph, 5 + s % 16, s);
    for (const auto* p : {&whole, &p4}) {
      auto summary = classify_embeddings(*p, t);
      EXPECT_EQ(summary.violation_count, 0);
      auto direct = count_embeddings(p->graph(), build_blowup(t));
      EXPECT_EQ(summary.total(), direct);
      auto viaclass = count_into_blowup(*p, t);
      EXPECT_TRUE(viaclass.by_classification);
      EXPECT_EQ(viaclass.value, direct);
    }
  }
}

TEST(Blowup, NonPrimePatternFallsBackToDirectCounting) {
  auto c4 = c4_cayley();
  PatternInCayley whole(c4);
  auto t = uniform_leaves(c4.graph, Graph(2));
  auto r = count_into_blowup(whole, t);
  EXPECT_FALSE(r.by_classification);
  EXPECT_EQ(r.value, count_embeddings(graphs::cycle(4), build_blowup(t)));
}

TEST(Blowup, ObjectiveExamples) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  auto policy = LeafPolicy::emb_maximizer(whole.graph());
  EXPECT_EQ(objective_T(whole, {2, 2, 2, 2, 2}, policy).total.lower, 320);
  auto six = objective_T(whole, {6, 1, 1, 1, 1}, policy);
  ASSERT_TRUE(six.total.exact());
  EXPECT_EQ(six.total.lower, 10 * 6 + emb_max(graphs::cycle(5), 6).value);
  auto zero = objective_T(whole, {3, 0, 2, 0, 0}, policy);
  EXPECT_EQ(zero.placements, 0);
  EXPECT_EQ(zero.total.lower, emb_max(graphs::cycle(5), 3).value + emb_max(graphs::cycle(5), 2).value);
  EXPECT_THROW(objective_T(whole, {12, 0, 0, 0, 0}, policy), CapacityError);
  EXPECT_THROW(objective_T(whole, {1, 1}, policy), DomainError);
}

TEST(Blowup, ObjectiveEqualsCountInMaterializedBlowup) {
  auto c5 = c5_cayley();
  PatternInCayley p4(c5, VertexSet(5, {0, 1, 2, 3}));
  auto policy = LeafPolicy::emb_maximizer(p4.graph());
  for (auto sizes : std::vector<std::vector<std::size_t>>{{2, 1, 3, 1, 1}, {4, 4, 1, 1, 2}, {1, 1, 1, 1, 1}}) {
    std::vector<BlowupTree> parts;
    for (auto s : sizes) parts.push_back(BlowupTree::leaf(policy.leaf(s)));
    auto direct = count_embeddings(p4.graph(), build_blowup(BlowupTree::blowup(c5.graph, parts)));
    EXPECT_EQ(objective_T(p4, sizes, policy).total.lower, direct);
  }
}

TEST(Blowup, OptimizePartitionSmall) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  auto policy = LeafPolicy::emb_maximizer(whole.graph());
  auto r5 = optimize_partition(whole, 5, policy);
  EXPECT_EQ(r5.compositions, 126u);
  bool trivial_found = false;
  for (const auto& m : r5.maximizers) {
    EXPECT_EQ(m.value.lower, 10);
    trivial_found = trivial_found || m.sizes == std::vector<std::size_t>{1, 1, 1, 1, 1};
  }
  EXPECT_TRUE(trivial_found);
  EXPECT_TRUE(r5.certified);

  auto r4 = optimize_partition(whole, 4, policy);
  for (const auto& m : r4.maximizers) EXPECT_EQ(m.value.lower, 0);
}

TEST(Blowup, OptimizePartitionTen) {
  auto c5 = c5_cayley();
  PatternInCayley whole(c5);
  auto policy = LeafPolicy::emb_maximizer(whole.graph());
  auto r = optimize_partition(whole, 10, policy);
  EXPECT_EQ(r.compositions, 1001u);
  EXPECT_EQ(r.balanced_value.lower, 320);
  // The reduced search must find the same maximal values.
  PartitionOptions reduced;
  reduced.reduce = true;
  auto rr = optimize_partition(whole, 10, policy, reduced);
  EXPECT_LT(rr.evaluated, r.evaluated);
  EXPECT_EQ(rr.certified, r.certified);
  EXPECT_FALSE(rr.reduction.empty());
  // Positive parts only: the balanced vector is the unique maximizer class.
  PartitionOptions positive;
  positive.min_part = 1;
  auto rp = optimize_partition(whole, 10, policy, positive);
  EXPECT_TRUE(rp.certified);
  ASSERT_FALSE(rp.maximizers.empty());
  EXPECT_TRUE(rp.all_balanced);
  EXPECT_EQ(rp.maximizers[0].value.lower, 320);
}

TEST(Blowup, ReductionMatchesFullSearchForProperSubgraph) {
  auto c5 = c5_cayley();
  PatternInCayley p4(c5, VertexSet(5, {0, 1, 2, 3}));
  auto policy = LeafPolicy::emb_maximizer(p4.graph());
  auto full = optimize_partition(p4, 8, policy);
  PartitionOptions reduced;
  reduced.reduce = true;
  auto red = optimize_partition(p4, 8, policy, reduced);
  ASSERT_FALSE(full.maximizers.empty());
  ASSERT_FALSE(red.maximizers.empty());
  EXPECT_EQ(full.maximizers[0].value.lower, red.maximizers[0].value.lower);
  EXPECT_EQ(full.all_balanced, red.all_balanced);
}
