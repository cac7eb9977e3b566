#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "inducilab/certify.hpp"

using namespace inducilab;

namespace {

CayleyGraph cyclic(std::size_t n, std::initializer_list<std::size_t> lambda) {
  auto g = AbelianGroup::cyclic(n);
  return build_cayley(g, ConnectionSet(g, lambda));
}

CayleyGraph random_cyclic(std::size_t n, double p, std::uint64_t seed) {
  auto g = AbelianGroup::cyclic(n);
  return build_cayley(g, sample_connection_set(g, p, seed));
}

// Oracle for rigidity: every injection of every large X, checked by brute force.
bool rigid_bruteforce(const CayleyGraph& h, std::size_t min_size) {
  const std::size_t n = h.graph.order();
  const auto maps = rotations_reflections(h.group);
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) < min_size) continue;
    std::vector<std::size_t> xs;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1U) xs.push_back(v);
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    // Permutations of V, restricted to the first |X| slots, cover every injection X -> V.
    std::set<std::vector<std::size_t>> seen;
    do {
      std::vector<std::size_t> f(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(xs.size()));
      if (!seen.insert(f).second) continue;
      bool preserves = true;
      for (std::size_t i = 0; i < xs.size() && preserves; ++i)
        for (std::size_t j = i + 1; j < xs.size() && preserves; ++j) preserves = h.graph.has_edge(xs[i], xs[j]) == h.graph.has_edge(f[i], f[j]);
      if (!preserves) continue;
      bool explained = false;
      for (const auto& m : maps) {
        bool eq = true;
        for (std::size_t i = 0; i < xs.size() && eq; ++i) eq = m(xs[i]) == f[i];
        explained = explained || eq;
      }
      if (!explained) return false;
    } while (std::next_permutation(img.begin(), img.end()));
  }
  return true;
}

}  // namespace

TEST(Certify, DistinguisherCount) {
  auto c5 = graphs::cycle(5);
  EXPECT_EQ(distinguisher_count(c5, 0, 1, c5.all_vertices()), 2u);
  EXPECT_EQ(distinguisher_count(c5, 0, 2, c5.all_vertices()), 2u);
  auto k6 = graphs::complete(6);
  for (std::size_t w = 1; w < 6; ++w) EXPECT_EQ(distinguisher_count(k6, 0, w, k6.all_vertices()), 0u);
  auto twins = clone_vertex(graphs::path(4), 1);
  EXPECT_EQ(distinguisher_count(twins, 1, 4, twins.all_vertices()), 0u);
  EXPECT_THROW(distinguisher_count(c5, 2, 2, c5.all_vertices()), DomainError);
  EXPECT_EQ(distinguisher_count(c5, 0, 1, VertexSet(5, {2})), 1u);
}

TEST(Certify, TypicalityExamples) {
  auto k5 = cyclic(5, {1, 2, 3, 4});
  auto rep = check_typical(k5, Rational(3, 10), Rational(1, 10));
  EXPECT_EQ(rep.degree.kind, VerdictKind::Fail);
  EXPECT_EQ(rep.degree.witness.kind, Witness::Kind::Vertex);
  EXPECT_EQ(rep.exit_code(), 1);

  auto c5 = cyclic(5, {1, 4});
  TypicalityOptions opt;
  opt.include_iv_prime = true;
  rep = check_typical(c5, Rational(3, 10), Rational(1, 10), opt);
  EXPECT_EQ(rep.degree.kind, VerdictKind::Pass);
  EXPECT_EQ(rep.distinguishers.kind, VerdictKind::Pass);
  EXPECT_EQ(rep.homogeneous.kind, VerdictKind::Pass);
  EXPECT_EQ(rep.rigidity.kind, VerdictKind::Pass);
  ASSERT_TRUE(rep.rigidity_weak);
  EXPECT_EQ(rep.rigidity_weak->kind, VerdictKind::Pass);
  EXPECT_EQ(rep.exit_code(), 0);

  auto e5 = cyclic(5, {});
  rep = check_typical(e5, Rational(3, 10), Rational(1, 10));
  EXPECT_EQ(rep.distinguishers.kind, VerdictKind::Fail);
  EXPECT_EQ(rep.distinguishers.witness.vertices, (std::vector<std::size_t>{0, 1}));

  auto matching = cyclic(6, {3});
  EXPECT_EQ(count_automorphisms(matching.graph), BigCount(48));
  rep = check_typical(matching, Rational(1, 10), Rational(1, 10));
  EXPECT_EQ(rep.rigidity.kind, VerdictKind::Fail);
  EXPECT_TRUE(replay_witness(matching, "rigidity", rep.rigidity.witness, Rational(1, 10), Rational(1, 10)));

  EXPECT_THROW(check_typical(c5, Rational(1, 2), Rational(1, 10)), DomainError);
  EXPECT_THROW(check_typical(c5, Rational(1, 10), Rational(1)), DomainError);
}

TEST(Certify, RigidityMatchesBruteForce) {
  int fails = 0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const std::size_t n = seed % 2 ? 7 : 8;
    auto h = random_cyclic(n, 0.5, seed);
    const Rational delta = seed % 3 ? Rational(3, 10) : Rational(1, 100);
    const std::size_t t = seed % 3 ? (n * 7 + 9) / 10 : n;
    auto v = check_rigidity_condition(h, delta, Deadline());
    ASSERT_NE(v.kind, VerdictKind::Skipped);
    const bool oracle = rigid_bruteforce(h, t);
    EXPECT_EQ(v.kind == VerdictKind::Pass, oracle) << "seed " << seed;
    if (v.kind == VerdictKind::Fail) {
      ++fails;
      EXPECT_TRUE(replay_witness(h, "rigidity", v.witness, Rational(1, 10), delta));
    }
  }
  EXPECT_GT(fails, 0);
  EXPECT_LT(fails, 24);
}

TEST(Certify, RigidityCapsAndBudget) {
  auto h = random_cyclic(17, 0.5, 3);
  auto v = check_rigidity_condition(h, Rational(1, 10), Deadline());
  EXPECT_EQ(v.kind, VerdictKind::Skipped);
  EXPECT_FALSE(v.exact);
  // X = V is always searchable: this reduces to an automorphism check.
  v = check_rigidity_condition(h, Rational(1, 100), Deadline());
  EXPECT_NE(v.kind, VerdictKind::Skipped);
  const bool aut_small = count_automorphisms(h.graph) == BigCount(distinct_map_count(rotations_reflections(h.group)));
  EXPECT_EQ(v.kind == VerdictKind::Pass, aut_small);
  EXPECT_EQ(aut_is_rotations_reflections(h).value(), aut_small);
}

TEST(Certify, WeakRigidityImplication) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto h = random_cyclic(9, 0.5, seed);
    auto rep = check_iv_prime_variant(h, Rational(1, 20), Rational(1, 5));
    ASSERT_TRUE(rep.distinguishers);
    if (rep.implication_consistent) {
      ++checked;
      EXPECT_TRUE(*rep.implication_consistent) << "seed " << seed;
    }
    if (rep.full && rep.full->kind == VerdictKind::Pass) EXPECT_EQ(rep.weak.kind, VerdictKind::Pass);
  }
  EXPECT_GT(checked, 0);
  EXPECT_THROW(check_iv_prime_variant(random_cyclic(20, 0.5, 1), Rational(1, 5)), CapacityError);
}

TEST(Certify, HomogeneousPair) {
  EXPECT_EQ(detail::homogeneous_side(1024), 512u);
  EXPECT_EQ(detail::homogeneous_side(5), 8u);
  std::vector<std::size_t> all(1023);
  std::iota(all.begin(), all.end(), 1);
  auto z = AbelianGroup::cyclic(1024);
  for (const auto& lambda : {std::vector<std::size_t>{}, all}) {
    auto h = build_cayley(z, ConnectionSet(z, lambda));
    auto v = check_homogeneous_condition(h, Deadline());
    EXPECT_EQ(v.kind, VerdictKind::Fail);
    EXPECT_EQ(v.witness.set_x.size(), 512u);
    EXPECT_TRUE(replay_witness(h, "homogeneous_pair", v.witness, Rational(1, 10), Rational(1, 10)));
  }
  auto h = cyclic(1024, {});
  auto v = check_homogeneous_condition(h, Deadline());
  v.witness.set_y[0] = v.witness.set_x[0];
  EXPECT_FALSE(replay_witness(h, "homogeneous_pair", v.witness, Rational(1, 10), Rational(1, 10)));
  EXPECT_EQ(check_homogeneous_condition(random_cyclic(500, 0.5, 1), Deadline()).kind, VerdictKind::Pass);
}

TEST(Certify, ReasonableExamples) {
  auto c4 = cyclic(4, {1, 3});
  auto rep = check_reasonable(c4, VertexSet::full(4), Rational(1, 10), Rational(1, 10));
  EXPECT_EQ(rep.prime.kind, VerdictKind::Fail);
  EXPECT_EQ(rep.prime.witness.set_x, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(replay_witness(c4, "prime", rep.prime.witness, Rational(1, 10), Rational(1, 10), VertexSet::full(4)));

  auto c5 = cyclic(5, {1, 4});
  rep = check_reasonable(c5, VertexSet::full(5), Rational(3, 10), Rational(1, 10));
  EXPECT_EQ(rep.prime.kind, VerdictKind::Pass);
  EXPECT_EQ(rep.distinguishers.kind, VerdictKind::Pass);
  EXPECT_EQ(rep.rigidity.kind, VerdictKind::Pass);
  EXPECT_EQ(rep.exit_code(), 0);

  VertexSet p4(5, {1, 2, 3, 4});
  rep = check_reasonable(c5, p4, Rational(1, 5), Rational(1, 10));
  EXPECT_EQ(rep.prime.kind, VerdictKind::Pass);
  // Pair (0, 2): N(0) ^ N(2) inside {1,2,3,4} minus {0,2} is {3, 4}.
  EXPECT_EQ(distinguisher_count(c5.graph, 0, 2, p4), 2u);
  EXPECT_THROW(check_reasonable(c5, VertexSet(5), Rational(1, 5), Rational(1, 10)), DomainError);
  EXPECT_THROW(check_reasonable(c5, p4, Rational(0), Rational(1, 10)), DomainError);
}

TEST(Certify, TypicalImpliesReasonableOnSmallInstances) {
  // q = q0 - log(k)/(4k) and delta = delta0 - log(k)/(4k), rounded down to a multiple of 1/1000.
  auto shrink = [](const Rational& x, std::size_t n) {
    double v = x.convert_to<double>() - std::log(static_cast<double>(n)) / (4.0 * static_cast<double>(n));
    return Rational(static_cast<long>(std::floor(v * 1000)), 1000);
  };
  int typical = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 9 + seed % 4;
    auto h = random_cyclic(n, 0.5, seed);
    const Rational q0(3, 10), d0(1, 5);
    auto t = check_typical(h, q0, d0);
    if (t.exit_code() != 0) continue;
    ++typical;
    // The deletion budget floor(log(n)/4) is 0 here, so H = H̃.
    ASSERT_EQ(deletion_budget(n), 0u);
    auto r = check_reasonable(h, VertexSet::full(n), shrink(q0, n), shrink(d0, n));
    EXPECT_EQ(r.distinguishers.kind, VerdictKind::Pass) << "seed " << seed;
    EXPECT_EQ(r.rigidity.kind, VerdictKind::Pass) << "seed " << seed;
  }
  EXPECT_GT(typical, 0);
}

TEST(Certify, LargeSetsWithManyDistinguishersAreSignatures) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    CounterRng rng(seed, streams::kProperty);
    const std::size_t n = 3 + rng.below(0, 5);
    Graph h(n);
    std::size_t c = 1;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng.below(c++, 2)) h.add_edge(u, v);
    std::size_t least = n;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) least = std::min(least, distinguisher_count(h, u, v, h.all_vertices()));
    // |S| >= (1 - q) k with q k = least, i.e. |S| >= k - least.
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) + least < n) continue;
      VertexSet s(n);
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1U) s.insert(v);
      EXPECT_TRUE(is_signature(h, s).ok) << "seed " << seed << " mask " << mask;
    }
  }
}

TEST(Certify, WitnessReplayRejectsTampering) {
  auto e5 = cyclic(5, {});
  auto d = check_distinguisher_condition(e5, Rational(3, 10));
  ASSERT_EQ(d.kind, VerdictKind::Fail);
  EXPECT_TRUE(replay_witness(e5, "distinguishers", d.witness, Rational(3, 10), Rational(1, 10)));
  auto c5 = cyclic(5, {1, 4});
  EXPECT_FALSE(replay_witness(c5, "distinguishers", d.witness, Rational(3, 10), Rational(1, 10)));
  EXPECT_FALSE(replay_witness(c5, "degree", Witness::vertex(0), Rational(3, 10), Rational(1, 10)));
  EXPECT_TRUE(replay_witness(c5, "degree", Witness::vertex(0), Rational(9, 20), Rational(1, 10)));
  Witness rot;
  rot.kind = Witness::Kind::Map;
  for (std::size_t x = 0; x < 5; ++x) rot.map.emplace_back(x, (x + 2) % 5);
  EXPECT_FALSE(replay_witness(c5, "rigidity", rot, Rational(1, 10), Rational(1, 10)));
  EXPECT_THROW(replay_witness(c5, "nonsense", rot, Rational(1, 10), Rational(1, 10)), DomainError);
}

TEST(Certify, SignatureExamples) {
  auto c5 = graphs::cycle(5);
  EXPECT_TRUE(is_signature(c5, VertexSet(5, {0, 1})).ok);
  const VertexSet zero(5, {0});
  auto s = is_signature(c5, zero);
  EXPECT_FALSE(s.ok);
  ASSERT_TRUE(s.witness);
  auto [v, w] = *s.witness;
  EXPECT_FALSE(zero.contains(v) || zero.contains(w));
  EXPECT_EQ(c5.neighbors(v) & zero, c5.neighbors(w) & zero);
  // Vertices 2 and 3 both have empty traces as well.
  EXPECT_EQ(c5.neighbors(2) & zero, c5.neighbors(3) & zero);
  EXPECT_TRUE(is_signature(c5, VertexSet(5, {0, 1, 2, 3})).ok);
  EXPECT_TRUE(is_super_signature(c5, VertexSet::full(5), Rational(1, 4)).ok);
  EXPECT_THROW(is_super_signature(c5, VertexSet(5), Rational(1, 4)), DomainError);
}

TEST(Certify, SignatureProperties) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto h = random_cyclic(10 + seed % 5, 0.5, seed);
    const std::size_t n = h.graph.order();
    CounterRng rng(seed, streams::kProperty);
    VertexSet s(n), bigger(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (rng.below(v, 3) == 0) s.insert(v);
      if (s.contains(v) || rng.below(100 + v, 2) == 0) bigger.insert(v);
    }
    if (s.empty()) continue;
    if (is_super_signature(h.graph, s, Rational(1, 8)).ok) EXPECT_TRUE(is_signature(h.graph, s).ok);
    if (is_signature(h.graph, s).ok) EXPECT_TRUE(is_signature(h.graph, bigger).ok);
    // Oracle: a signature separates |V \ S| vertices with 2^{|S|} traces.
    if (is_signature(h.graph, s).ok) EXPECT_LE(n - s.count(), std::size_t{1} << s.count());
  }
}

TEST(Certify, SampleSizes) {
  EXPECT_EQ(signature_sample_size(Rational(1, 2), 100), static_cast<std::size_t>(std::floor(10 * std::log(100.0))));
  EXPECT_EQ(super_signature_sample_size(Rational(1, 4), 50), static_cast<std::size_t>(std::floor(132 * std::log(50.0))));
  EXPECT_EQ(signature_sample_size(Rational(1, 2), 1024, LogBase::Two), 100u);
  EXPECT_EQ(signature_sample_size(Rational(1, 2), 1), 0u);
}

TEST(Certify, FinderSuccessFrequencies) {
  auto h = random_cyclic(17, 0.5, 11);
  const auto all = h.graph.all_vertices();
  std::size_t least = 17;
  for (std::size_t u = 0; u < 17; ++u)
    for (std::size_t v = u + 1; v < 17; ++v) least = std::min(least, distinguisher_count(h.graph, u, v, all));
  ASSERT_GT(least, 0u);
  const Rational q(least, 17);
  const std::size_t t = signature_sample_size(q, 17), ts = super_signature_sample_size(q, 17);
  int sig = 0, super = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    sig += is_signature(h.graph, signature_candidate(h.graph, all, t, 5, trial)).ok ? 1 : 0;
    auto sc = signature_candidate(h.graph, all, ts, 5, trial, streams::kSuperSignature);
    super += is_super_signature(h.graph, sc, q / 4).ok ? 1 : 0;
  }
  EXPECT_GE(2 * sig, trials);
  EXPECT_GE(4 * super, trials);

  auto c5 = graphs::cycle(5);
  auto found = find_signature(c5, c5.all_vertices(), Rational(1, 2), 20, 3);
  ASSERT_TRUE(found.set);
  EXPECT_TRUE(is_signature(c5, *found.set).ok);
  EXPECT_LE(found.set->count(), static_cast<std::size_t>(std::floor(10 * std::log(5.0))));
  auto fs = find_super_signature(h.graph, all, q, 20, 7);
  ASSERT_TRUE(fs.set);
  EXPECT_TRUE(is_super_signature(h.graph, *fs.set, q / 4).ok);
  // t = 0 leaves only the empty candidate, which fails on C_5.
  EXPECT_FALSE(find_signature(c5, c5.all_vertices(), Rational(100), 5).set);
}

TEST(Certify, WilsonInterval) {
  auto w = wilson_interval(0, 50);
  EXPECT_NEAR(w.lo, 0.0, 1e-12);
  EXPECT_NEAR(w.hi, 0.0714, 1e-3);
  w = wilson_interval(25, 50);
  EXPECT_NEAR(w.lo, 0.3664, 1e-3);
  EXPECT_NEAR(w.hi, 0.6336, 1e-3);
}

TEST(Certify, SweepIsDeterministic) {
  SweepOptions opt;
  opt.samples = 6;
  auto a = typicality_sweep({7, 8}, {0.5}, opt);
  auto b = typicality_sweep({7, 8}, {0.5}, opt);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].passes, b[i].passes);
    EXPECT_LE(a[i].count("all"), a[i].count("rigidity"));
    EXPECT_EQ(a[i].q0, Rational(1, 100));
    EXPECT_EQ(a[i].delta0, Rational(1, 200));
  }
}

TEST(Certify, WorkersGiveSameWitness) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto h = random_cyclic(30, 0.2, seed);
    auto a = check_distinguisher_condition(h, Rational(2, 5), 1);
    auto b = check_distinguisher_condition(h, Rational(2, 5), 4);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.witness.vertices, b.witness.vertices);
  }
}
