#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "blowup.hpp"
#include "bounds.hpp"
#include "cayley.hpp"
#include "certify.hpp"
#include "embed.hpp"
#include "extremal.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace inducilab {

struct SuiteItem {
  std::string key;
  std::string statement;
  bool passed = false;
  std::string detail;
  double elapsed_ms = 0;
};

struct SuiteOptions {
  bool quick = false;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct SuiteCheck {
  std::string key;
  std::string statement;
  std::function<bool(const SuiteOptions&, std::ostringstream&)> run;
};

namespace suite_detail {

inline Graph random_graph(std::size_t n, const CounterRng& rng, std::uint64_t& counter, double p = 0.5) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform(counter++) < p) g.add_edge(u, v);
  return g;
}

/// Every injective tuple, no pruning.
inline BigCount brute_force_embeddings(const Graph& h, const Graph& g) {
  const std::size_t k = h.order(), n = g.order();
  std::vector<std::size_t> img(k);
  std::vector<char> used(n, 0);
  BigCount count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          if (h.has_edge(a, b) != g.has_edge(img[a], img[b])) return;
      ++count;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      img[i] = v;
      rec(i + 1);
      used[v] = 0;
    }
  };
  rec(0);
  return count;
}

inline CayleyGraph cycle_cayley(std::size_t n) {
  auto z = AbelianGroup::cyclic(n);
  return build_cayley(z, ConnectionSet(z, {1, n - 1}));
}

inline CounterRng rng_for(const SuiteOptions& opt, std::uint64_t salt) { return CounterRng(opt.seed, streams::kProperty).substream(salt); }

}  // namespace suite_detail

inline bool check_embedding_oracle(const SuiteOptions& opt, std::ostringstream& out) {
  auto rng = suite_detail::rng_for(opt, 1);
  std::uint64_t c = 0;
  std::size_t mismatches = 0;
  const std::size_t pairs = 200;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t k = 1 + rng.below(c++, 5), n = rng.below(c++, 8);
    auto h = suite_detail::random_graph(k, rng, c);
    auto g = suite_detail::random_graph(n, rng, c);
    if (count_embeddings(h, g) != suite_detail::brute_force_embeddings(h, g)) ++mismatches;
  }
  out << pairs << " random pairs, " << mismatches << " mismatches";
  return mismatches == 0;
}

inline bool check_closed_form_counts(const SuiteOptions&, std::ostringstream& out) {
  auto c5 = suite_detail::cycle_cayley(5);
  auto tree = balanced_iterated_tree(c5.graph, 25, LeafPolicy::empty_graph());
  auto blow25 = build_blowup(tree);
  auto blow5 = build_blowup(balanced_iterated_tree(c5.graph, 5, LeafPolicy::empty_graph()));
  PatternInCayley p4(c5, VertexSet(5, {1, 2, 3, 4}));
  struct Case {
    std::uint64_t k, m;
    const Graph& h;
    const Graph& host;
    BigCount expected;
  };
  const Case cases[] = {{5, 1, c5.graph, blow5, 10}, {5, 2, c5.graph, blow25, 31300}, {4, 2, p4.graph(), blow25, 6300}};
  bool ok = true;
  for (const auto& cs : cases) {
    BigCount closed = closed_form_blowup_count(5, cs.k, cs.m), direct = count_embeddings(cs.h, cs.host);
    out << "closed_form(5," << cs.k << "," << cs.m << ")=" << closed << " direct=" << direct << "; ";
    ok = ok && closed == cs.expected && direct == closed;
  }
  return ok;
}

inline bool check_inducibility_limit(const SuiteOptions&, std::ostringstream& out) {
  Rational prev = -1, last = 0;
  bool increasing = true;
  for (std::uint64_t m = 1; m <= 6; ++m) {
    Rational r(closed_form_blowup_count(5, 5, m), ipow(BigCount(5), static_cast<unsigned>(5 * m)));
    increasing = increasing && r > prev;
    prev = r;
    last = r;
  }
  Rational gap = Rational(1, 312) - last;
  if (gap < 0) gap = -gap;
  const bool close = gap < Rational(1, 1000000);
  out << "increasing=" << (increasing ? "yes" : "no") << ", |ratio(6) - 1/312| = " << gap.convert_to<double>();
  return increasing && close && embedding_inducibility_limit(5, 5) == Rational(1, 312);
}

inline bool check_c5_beats_p4_blowup(const SuiteOptions& opt, std::ostringstream& out) {
  const std::size_t n = opt.quick ? 25 : 125;
  auto c5 = graphs::cycle(5), p4 = graphs::path(4);
  bool ok = true;
  for (const auto& policy : {LeafPolicy::empty_graph(), LeafPolicy::emb_maximizer(p4)}) {
    auto g_c5 = build_blowup(balanced_iterated_tree(c5, n, policy));
    auto g_p4 = build_blowup(balanced_iterated_tree(p4, n, policy));
    const BigCount in_c5 = count_embeddings(p4, g_c5, {}, opt.workers) / 2, in_p4 = count_embeddings(p4, g_p4, {}, opt.workers) / 2;
    out << policy.name() << ": C5-blowup " << in_c5 << " vs P4-blowup " << in_p4 << "; ";
    ok = ok && in_c5 > in_p4;
  }
  out << "n=" << n;
  return ok;
}

inline bool check_E_suite(const SuiteOptions& opt, std::ostringstream& out) {
  auto rep = check_E_lemma(6, 30, opt.quick ? 2000 : 10000, opt.seed);
  out << "(i) " << rep.tuples_i << " checked, " << rep.violations_i << " violations; (ii) " << rep.checked_ii << "/" << rep.violations_ii
      << "; (iii) " << rep.checked_iii << " checked, " << rep.violations_iii << " violations, " << rep.inconclusive_iii << " inconclusive";
  return rep.ok();
}

inline bool check_first_differences(const SuiteOptions& opt, std::ostringstream& out) {
  bool ok = true;
  const std::pair<const char*, Graph> hs[] = {{"K2", graphs::complete(2)}, {"K3", graphs::complete(3)}, {"P4", graphs::path(4)}};
  for (const auto& [name, h] : hs) {
    const std::size_t k = h.order();
    auto seq = emb_sequence(h, k, 7, opt.workers);
    auto diag = emb_sequence_diagnostics(k, seq, k);
    out << name << ": " << diag.strict_violations() << " strict violations; ";
    ok = ok && diag.strict_violations() == 0;
  }
  return ok;
}

inline bool check_monotonicity(const SuiteOptions& opt, std::ostringstream& out) {
  const std::size_t n_max = opt.quick ? 6 : 7;
  bool ok = true;
  const std::pair<const char*, Graph> hs[] = {{"P4", graphs::path(4)}, {"K3", graphs::complete(3)}, {"C5", graphs::cycle(5)}};
  for (const auto& [name, h] : hs) {
    const std::size_t k = h.order();
    const BigCount aut = count_automorphisms(h);
    Rational prev = 2;
    out << name << ":";
    for (std::size_t n = k; n <= n_max; ++n) {
      Rational density(emb_max(h, n, ExtremalMode::Exhaustive, opt.workers).value / aut, binomial(n, k));
      out << ' ' << density;
      ok = ok && density <= prev;
      prev = density;
    }
    out << "; ";
  }
  return ok;
}

inline bool check_rotation_hits(const SuiteOptions&, std::ostringstream& out) {
  std::size_t subsets = 0, bad = 0;
  for (std::size_t kt : {5, 7}) {
    auto g = AbelianGroup::cyclic(kt);
    for (std::uint32_t mask = 0; mask < (1U << kt); ++mask) {
      const std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
      if (k + 1 < kt) continue;
      ++subsets;
      VertexSet s(kt);
      for (std::size_t v = 0; v < kt; ++v)
        if (mask >> v & 1U) s.insert(v);
      for (std::size_t x = 0; x < kt; ++x) bad += maps_hitting_vertex(g, s, x) == 2 * k ? 0 : 1;
    }
  }
  out << subsets << " subsets, " << bad << " (subset, vertex) mismatches";
  return bad == 0;
}

inline bool check_automorphism_statistic(const SuiteOptions& opt, std::ostringstream& out) {
  const std::size_t samples = 50;
  bool ok = true;
  for (std::size_t kt : {11, 13, 17}) {
    auto g = AbelianGroup::cyclic(kt);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      auto h = build_cayley(g, sample_connection_set(g, 0.5, sweep_sample_seed(opt.seed, kt, s)));
      hits += aut_is_rotations_reflections(h).value_or(false) ? 1 : 0;
    }
    out << "k=" << kt << ": " << hits << "/" << samples << "; ";
    ok = ok && 5 * hits >= 4 * samples;
  }
  return ok;
}

inline bool check_generating_connectivity(const SuiteOptions& opt, std::ostringstream& out) {
  auto rng = suite_detail::rng_for(opt, 10);
  std::uint64_t c = 0;
  std::size_t mismatches = 0, connected = 0;
  const std::size_t trials = 500;
  const double ps[] = {0.1, 0.2, 0.35, 0.5};
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::size_t> factors;
    std::size_t order = 1;
    const std::size_t rank = 1 + rng.below(c++, 3);
    for (std::size_t i = 0; i < rank; ++i) {
      const std::size_t room = 24 / order;
      if (room < 2) break;
      const std::size_t d = 2 + rng.below(c++, room - 1);
      factors.push_back(d);
      order *= d;
    }
    AbelianGroup g(factors);
    const double p = ps[rng.below(c++, 4)];
    auto lambda = sample_connection_set(g, p, rng.bits(c++));
    const bool conn = is_connected(build_cayley(g, lambda).graph);
    connected += conn ? 1 : 0;
    mismatches += g.is_generating(lambda.elements()) == conn ? 0 : 1;
  }
  out << trials << " samples (" << connected << " connected), " << mismatches << " mismatches";
  return mismatches == 0;
}

inline bool check_blowup_classification(const SuiteOptions& opt, std::ostringstream& out) {
  auto c5 = suite_detail::cycle_cayley(5);
  auto c4 = suite_detail::cycle_cayley(4);
  PatternInCayley whole(c5), p4(c5, VertexSet(5, {1, 2, 3, 4})), square(c4);
  bool ok = true;
  for (const auto* p : {&whole, &p4}) {
    std::size_t violations = 0, count_mismatch = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const std::size_t n = 5 + s % 16;
      auto t = random_blowup_tree(c5.graph, n, opt.seed + s, 11);
      auto summary = classify_embeddings(*p, t);
      violations += static_cast<std::size_t>(summary.violation_count);
      count_mismatch += count_into_blowup(*p, t).value == count_embeddings(p->graph(), build_blowup(t)) ? 0 : 1;
    }
    out << (p == &whole ? "C5" : "P4") << ": " << violations << " violations, " << count_mismatch << " count mismatches; ";
    ok = ok && violations == 0 && count_mismatch == 0;
  }
  BigCount control = 0;
  for (std::uint64_t s = 0; s < 20; ++s) control += classify_embeddings(square, random_blowup_tree(c4.graph, 4 + s % 17, opt.seed + s, 12)).violation_count;
  out << "C4 control: " << control << " violations";
  return ok && control > 0;
}

inline bool check_precondition_chain(const SuiteOptions&, std::ostringstream& out) {
  auto big = check_preconditions(Magnitude{10, 200}, Rational(1, 2));
  auto small = check_preconditions(Magnitude{10, 6}, Rational(1, 2));
  const auto* link = small.find("ktilde_root_above_log");
  out << "10^200 chain " << to_string(big.chain()) << "; 10^6 chain " << to_string(small.chain());
  if (link) out << " (ktilde^{1/40} >= 100 log ktilde: log margin " << link->log_margin << ")";
  return big.chain() == Certainty::True && small.chain() == Certainty::False && link && link->log_margin < 0;
}

inline std::vector<SuiteCheck> acceptance_checks() {
  return {
      {"embedding_oracle", "backtracking count equals brute-force enumeration on 200 random pairs", check_embedding_oracle},
      {"closed_form_blowup_counts", "closed-form blow-up counts equal direct counts on the 25-vertex blow-up of C5", check_closed_form_counts},
      {"inducibility_limit", "closed_form(5,5,m)/5^{5m} increases to 1/312", check_inducibility_limit},
      {"c5_beats_p4_blowup", "C5 blow-up has more induced P4 than the P4 blow-up, both leaf policies", check_c5_beats_p4_blowup},
      {"E_lemma", "E_l(m) maximizes products, is supermultiplicative and obeys the ratio bound", check_E_suite},
      {"first_difference_bounds", "(k/(m-1)) emb(m-1) <= emb(m)-emb(m-1) <= (k/m) emb(m) for K2, K3, P4", check_first_differences},
      {"induced_density_monotone", "ind(H,n)/C(n,k) is nonincreasing for P4, K3, C5", check_monotonicity},
      {"rotation_hits", "exactly 2k of the 2k̃ maps send some vertex of H to any given x", check_rotation_hits},
      {"automorphism_statistic", "aut = 2k̃ in at least 80% of samples at k̃ = 11, 13, 17", check_automorphism_statistic},
      {"generating_iff_connected", "Lambda generates G iff Cay(G, Lambda) is connected", check_generating_connectivity},
      {"blowup_classification", "embeddings into blow-ups stay in a part or follow a map; C4 control violates", check_blowup_classification},
      {"precondition_chain", "log-space chain certified at 10^200 and refuted with a gap at 10^6", check_precondition_chain},
  };
}

// Further invariants run only by verify-suite.

inline bool check_per_vertex_lower_bound(const SuiteOptions& opt, std::ostringstream& out) {
  std::size_t graphs_checked = 0, bad = 0;
  const Graph hs[] = {graphs::complete(2), graphs::complete(3), graphs::path(4), graphs::cycle(5)};
  for (const auto& h : hs)
    for (std::size_t n = std::max<std::size_t>(2, h.order()); n <= (opt.quick ? 6u : 7u); ++n) {
      auto best = emb_max(h, n, ExtremalMode::Exhaustive, opt.workers);
      const Rational need = Rational(BigCount(h.order()), BigCount(n + h.order())) * Rational(best.value);
      for (const auto& g : best.witnesses) {
        ++graphs_checked;
        for (const auto& c : per_vertex_embedding_counts(h, g)) bad += Rational(c) >= need ? 0 : 1;
      }
    }
  out << graphs_checked << " maximizers, " << bad << " vertices below k/(n+k) emb(H,n)";
  return bad == 0;
}

inline bool check_signature_extension(const SuiteOptions& opt, std::ostringstream& out) {
  auto rng = suite_detail::rng_for(opt, 20);
  std::uint64_t c = 0;
  std::size_t checked = 0, bad = 0;
  for (std::size_t t = 0; t < (opt.quick ? 40u : 150u); ++t) {
    auto h = suite_detail::random_graph(5, rng, c);
    auto g = suite_detail::random_graph(9, rng, c);
    VertexSet x(5);
    for (std::size_t v = 0; v < 5; ++v)
      if (rng.below(c++, 2)) x.insert(v);
    if (!is_signature(h, x).ok || x.empty()) continue;
    VertexSet u(9);
    for (std::size_t v = 0; v < 9; ++v)
      if (rng.below(c++, 3)) u.insert(v);
    auto xs = x.members();
    for_each_embedding(
        h, g,
        [&](const Embedding& e) {
          EmbedConstraints cons;
          for (auto v : xs) cons.fixed.emplace_back(v, e[v]);
          cons.range = u;
          ++checked;
          const BigCount bound = xs.size() == 5 ? BigCount(1) : E(5 - xs.size(), u.count());
          bad += count_embeddings(h, g, cons) <= bound ? 0 : 1;
          return checked % 7 != 0;  // a few fixed maps per pair
        },
        {});
  }
  out << checked << " (H, f) pairs, " << bad << " above E_{k-|X|}(|U|)";
  return bad == 0 && checked > 0;
}

inline bool check_signature_properties(const SuiteOptions& opt, std::ostringstream& out) {
  auto rng = suite_detail::rng_for(opt, 21);
  std::uint64_t c = 0;
  std::size_t bad = 0, sets = 0;
  for (std::size_t t = 0; t < (opt.quick ? 100u : 500u); ++t) {
    const std::size_t n = 3 + rng.below(c++, 5);
    auto h = suite_detail::random_graph(n, rng, c);
    std::size_t least = n;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) least = std::min(least, distinguisher_count(h, a, b, h.all_vertices()));
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      VertexSet s(n);
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1U) s.insert(v);
      const bool sig = is_signature(h, s).ok;
      ++sets;
      if (s.count() + least >= n && !sig) ++bad;
      if (!s.empty() && is_super_signature(h, s, Rational(1, 10)).ok && !sig) ++bad;
      if (sig)
        for (std::size_t v = 0; v < n; ++v)
          if (!s.contains(v)) {
            VertexSet bigger = s;
            bigger.insert(v);
            bad += is_signature(h, bigger).ok ? 0 : 1;
          }
    }
  }
  out << sets << " (H, S) pairs, " << bad << " violations of large-set, super-signature or superset properties";
  return bad == 0;
}

inline bool check_typical_reasonable(const SuiteOptions& opt, std::ostringstream& out) {
  std::size_t typical = 0, bad = 0;
  for (std::uint64_t s = 0; s < (opt.quick ? 20u : 60u); ++s) {
    const std::size_t n = 9 + s % 4;
    auto h = build_cayley(AbelianGroup::cyclic(n), sample_connection_set(AbelianGroup::cyclic(n), 0.5, sweep_sample_seed(opt.seed, n, s)));
    if (check_typical(h, Rational(3, 10), Rational(1, 5)).exit_code() != 0) continue;
    ++typical;
    const double shift = std::log(static_cast<double>(n)) / (4.0 * static_cast<double>(n));
    const Rational q(static_cast<long>(std::floor((0.3 - shift) * 1000)), 1000), d(static_cast<long>(std::floor((0.2 - shift) * 1000)), 1000);
    auto r = check_reasonable(h, VertexSet::full(n), q, d);
    bad += r.distinguishers.kind == VerdictKind::Pass && r.rigidity.kind == VerdictKind::Pass ? 0 : 1;
  }
  out << typical << " typical samples, " << bad << " not reasonable in (b), (c)";
  return bad == 0 && typical > 0;
}

inline bool check_witness_replay(const SuiteOptions& opt, std::ostringstream& out) {
  std::size_t fails = 0, bad = 0;
  for (std::uint64_t s = 0; s < (opt.quick ? 20u : 60u); ++s) {
    const std::size_t n = 6 + s % 5;
    auto g = AbelianGroup::cyclic(n);
    auto h = build_cayley(g, sample_connection_set(g, 0.5, s + opt.seed));
    const Rational q0(1, 4), d0(1, 4);
    auto rep = check_typical(h, q0, d0);
    for (const auto* v : rep.verdicts()) {
      if (v->kind != VerdictKind::Fail) continue;
      ++fails;
      bad += replay_witness(h, v->condition, v->witness, q0, d0) ? 0 : 1;
    }
  }
  out << fails << " failure witnesses, " << bad << " not reproduced";
  return bad == 0 && fails > 0;
}

inline bool check_weak_rigidity(const SuiteOptions& opt, std::ostringstream& out) {
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t s = 0; s < (opt.quick ? 10u : 30u); ++s) {
    auto g = AbelianGroup::cyclic(9 + s % 3);
    auto h = build_cayley(g, sample_connection_set(g, 0.5, s + opt.seed));
    auto rep = check_iv_prime_variant(h, Rational(1, 20), Rational(1, 5));
    if (!rep.implication_consistent) continue;
    ++checked;
    bad += *rep.implication_consistent ? 0 : 1;
  }
  out << checked << " instances with (ii) and weak rigidity, " << bad << " without full rigidity";
  return bad == 0;
}

inline bool check_epsilon_ledger(const SuiteOptions&, std::ostringstream& out) {
  auto at_scale = epsilon_ledger(Rational(BigCount(1), ipow(BigCount(10), 20)), Magnitude{10, 200});
  auto chain_at = [](unsigned e) {
    auto l = epsilon_ledger(Rational(BigCount(1), ipow(BigCount(10), e)), Magnitude{10, 200});
    const auto* chain = l.find("eps_chain_below_half_q");
    return chain ? chain->verdict() : Certainty::Unknown;
  };
  bool ordered = true;
  for (unsigned e = 21; e <= 40; ++e) ordered = ordered && chain_at(e) == Certainty::True;
  const bool control = chain_at(2) == Certainty::False;
  out << "q=1e-20, k=10^200: " << (at_scale.all_hold() ? "all hold" : "failure") << "; chain over q=1e-21..1e-40: " << (ordered ? "holds" : "fails")
      << "; q=1e-2 control: " << (control ? "refuted" : "not refuted");
  return at_scale.all_hold() && ordered && control;
}

inline bool check_balanced_partition(const SuiteOptions&, std::ostringstream& out) {
  auto c5 = suite_detail::cycle_cayley(5);
  PatternInCayley whole(c5);
  PartitionOptions positive;
  positive.min_part = 1;
  auto r = optimize_partition(whole, 10, LeafPolicy::emb_maximizer(whole.graph()), positive);
  out << "n=10, positive parts: " << r.maximizers.size() << " maximizers, all balanced " << (r.all_balanced ? "yes" : "no") << ", value "
      << r.balanced_value.lower;
  return r.certified && r.all_balanced;
}

inline std::vector<SuiteCheck> verify_suite_checks() {
  auto all = acceptance_checks();
  std::vector<SuiteCheck> extra = {
      {"per_vertex_lower_bound", "every vertex of a maximizer lies in >= k/(n+k) emb(H,n) embeddings", check_per_vertex_lower_bound},
      {"signature_extension_bound", "extensions of a map on a signature into U number at most E_{k-|X|}(|U|)", check_signature_extension},
      {"signature_properties", "large distinguished sets, super-signatures and supersets are signatures", check_signature_properties},
      {"typical_implies_reasonable", "typical Cayley graphs give reasonable subgraphs in (b) and (c)", check_typical_reasonable},
      {"witness_replay", "every failure witness reproduces its failure", check_witness_replay},
      {"weak_rigidity_implication", "(ii) with weak rigidity and 2 delta0 <= q0 gives full rigidity", check_weak_rigidity},
      {"epsilon_ledger", "epsilon inequalities hold at q=1e-20, k=10^200; the chain holds for smaller q and fails at q=1e-2", check_epsilon_ledger},
      {"balanced_partition", "with positive parts, balanced part sizes maximize T for C5 at n=10", check_balanced_partition},
  };
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

inline SuiteItem run_check(const SuiteCheck& c, const SuiteOptions& opt) {
  SuiteItem item;
  item.key = c.key;
  item.statement = c.statement;
  auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  try {
    item.passed = c.run(opt, detail);
  } catch (const std::exception& e) {
    item.passed = false;
    detail << "error: " << e.what();
  }
  item.detail = detail.str();
  item.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return item;
}

}  // namespace inducilab
