#pragma once

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bigcount.hpp"
#include "cayley.hpp"
#include "embed.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "interval.hpp"
#include "rng.hpp"

namespace inducilab {

/// Wall-clock budget; zero means unlimited.
class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds budget = std::chrono::milliseconds{0})
      : unlimited_(budget.count() <= 0), end_(std::chrono::steady_clock::now() + budget) {}
  bool expired() const { return !unlimited_ && std::chrono::steady_clock::now() >= end_; }

 private:
  bool unlimited_;
  std::chrono::steady_clock::time_point end_;
};

struct Witness {
  enum class Kind { None, Vertex, Pair, SetPair, Map };
  Kind kind = Kind::None;
  std::vector<std::size_t> vertices;                      // Vertex: {v}; Pair: {v, w}
  std::vector<std::size_t> set_x, set_y;                  // SetPair
  std::vector<std::pair<std::size_t, std::size_t>> map;   // Map: (x, f(x)), x increasing

  static Witness vertex(std::size_t v) { return {Kind::Vertex, {v}, {}, {}, {}}; }
  static Witness pair(std::size_t v, std::size_t w) { return {Kind::Pair, {v, w}, {}, {}, {}}; }
};

enum class VerdictKind { Pass, Fail, Skipped };

inline const char* to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Pass: return "Pass";
    case VerdictKind::Fail: return "Fail";
    default: return "Skipped";
  }
}

struct ConditionVerdict {
  std::string condition;
  VerdictKind kind = VerdictKind::Skipped;
  Witness witness;
  std::string reason;
  bool exact = true;
  double elapsed_ms = 0;

  static ConditionVerdict named(std::string name, VerdictKind kind = VerdictKind::Pass) {
    ConditionVerdict v;
    v.condition = std::move(name);
    v.kind = kind;
    return v;
  }
};

/// Exit-code contract: 0 all pass, 1 any fail, 2 otherwise skipped.
inline int exit_code(const std::vector<const ConditionVerdict*>& vs) {
  bool skipped = false;
  for (const auto* v : vs) {
    if (v->kind == VerdictKind::Fail) return 1;
    skipped = skipped || v->kind == VerdictKind::Skipped;
  }
  return skipped ? 2 : 0;
}

inline std::size_t distinguisher_count(const Graph& h, std::size_t v, std::size_t w, const VertexSet& restrict) {
  if (v == w) throw DomainError("distinguisher count needs distinct vertices");
  if (v >= h.order() || w >= h.order()) throw DomainError("vertex out of range");
  VertexSet d = (h.neighbors(v) ^ h.neighbors(w)) & restrict;
  d.erase(v);
  d.erase(w);
  return d.count();
}

namespace detail {

/// ceil(x * n) for rational x.
inline std::size_t ceil_times(const Rational& x, std::size_t n) {
  Rational v = x * Rational(n);
  BigCount q = numerator(v) / denominator(v);
  if (q * denominator(v) < numerator(v)) ++q;
  return q < 0 ? 0 : static_cast<std::size_t>(q);
}

/// Smallest integer s with s >= 2 n^{4/5}, i.e. s^5 >= 32 n^4.
inline std::size_t homogeneous_side(std::size_t n) {
  const BigCount target = 32 * ipow(BigCount(n), 4);
  std::size_t s = 0;
  while (ipow(BigCount(s), 5) < target) ++s;
  return s;
}

template <class Clock = std::chrono::steady_clock>
double ms_since(typename Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// First pair (v < w) in row-major order with fewer than `need` distinguishers inside `restrict`,
/// scanning rows round-robin across workers.
inline std::optional<std::pair<std::size_t, std::size_t>> weak_pair(const Graph& g, const VertexSet& restrict, const Rational& need,
                                                                    unsigned workers) {
  const std::size_t n = g.order();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> found(workers);
  auto run = [&](unsigned id) {
    for (std::size_t v = id; v < n; v += workers)
      for (std::size_t w = v + 1; w < n; ++w)
        if (Rational(distinguisher_count(g, v, w, restrict)) < need) {
          found[id] = std::make_pair(v, w);
          return;
        }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(run, id);
    for (auto& t : pool) t.join();
  }
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (const auto& f : found)
    if (f && (!best || *f < *best)) best = f;
  return best;
}

/// Orbit-minimal test for a vertex subset under the listed maps.
inline bool is_orbit_minimal(const std::vector<std::size_t>& xs, const std::vector<VertexMap>& maps) {
  std::vector<std::size_t> img(xs.size());
  for (const auto& m : maps) {
    for (std::size_t i = 0; i < xs.size(); ++i) img[i] = m(xs[i]);
    std::sort(img.begin(), img.end());
    if (img < xs) return false;
  }
  return true;
}

struct RigiditySearch {
  const CayleyGraph& host;
  std::vector<std::size_t> domain;   // candidate X are subsets of this
  std::size_t min_size = 0;          // |X| >= min_size
  std::optional<std::size_t> agree;  // (iv'): some map agrees on >= agree vertices; otherwise full equality
  bool quotient_domain = false;      // X may be moved by the maps (domain is all of V)
  const Deadline* deadline = nullptr;

  struct Outcome {
    std::optional<Witness> counterexample;
    bool complete = true;
  };

  bool explained(const std::vector<std::size_t>& xs, const Embedding& f, const std::vector<VertexMap>& maps) const {
    if (!agree) {
      const std::size_t x0 = xs[0];
      const auto& gr = host.group;
      for (std::size_t cand : {gr.sub_index(f[0], x0), gr.add_index(f[0], x0)}) {
        for (int reflect = 0; reflect < 2; ++reflect) {
          bool ok = true;
          for (std::size_t i = 0; i < xs.size() && ok; ++i) {
            std::size_t img = gr.add_index(reflect ? gr.neg_index(xs[i]) : xs[i], cand);
            ok = img == f[i];
          }
          if (ok) return true;
        }
      }
      return false;
    }
    for (const auto& m : maps) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) hits += m(xs[i]) == f[i] ? 1 : 0;
      if (hits >= *agree) return true;
    }
    return false;
  }

  Outcome run() const {
    Outcome out;
    const auto maps = rotations_reflections(host.group);
    const std::size_t n = domain.size();
    std::vector<std::size_t> xs;
    // Subsets of the domain by decreasing size; larger sets are cheaper to refute and usually decisive.
    for (std::size_t size = n; size >= std::max<std::size_t>(min_size, 1) && size <= n; --size) {
      std::vector<char> pick(n, 0);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
      do {
        if (deadline && deadline->expired()) {
          out.complete = false;
          return out;
        }
        xs.clear();
        for (std::size_t i = 0; i < n; ++i)
          if (pick[i]) xs.push_back(domain[i]);
        if (quotient_domain && !is_orbit_minimal(xs, maps)) continue;
        VertexSet xset(host.graph.order());
        for (auto x : xs) xset.insert(x);
        auto sub = induced_subgraph(host.graph, xset);
        EmbedConstraints c;
        c.fixed = {{0, 0}};  // post-composing with a rotation moves f(x0) to 0
        bool stopped = false;
        for_each_embedding(
            sub.graph, host.graph,
            [&](const Embedding& f) {
              if (deadline && deadline->expired()) {
                stopped = true;
                return false;
              }
              if (explained(xs, f, maps)) return true;
              Witness w;
              w.kind = Witness::Kind::Map;
              for (std::size_t i = 0; i < xs.size(); ++i) w.map.emplace_back(xs[i], f[i]);
              out.counterexample = std::move(w);
              return false;
            },
            c);
        if (out.counterexample) return out;
        if (stopped) {
          out.complete = false;
          return out;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
      if (size == 0) break;
    }
    return out;
  }
};

}  // namespace detail

inline constexpr std::size_t kExactRigidityCap = 12;

struct TypicalityOptions {
  std::chrono::milliseconds budget{0};
  unsigned workers = 1;
  bool include_iv_prime = false;
};

struct TypicalityReport {
  Rational q0, delta0;
  std::size_t ktilde = 0;
  ConditionVerdict degree, distinguishers, homogeneous, rigidity;
  std::optional<ConditionVerdict> rigidity_weak;

  std::vector<const ConditionVerdict*> verdicts() const {
    std::vector<const ConditionVerdict*> v{&degree, &distinguishers, &homogeneous, &rigidity};
    if (rigidity_weak) v.push_back(&*rigidity_weak);
    return v;
  }
  int exit_code() const { return inducilab::exit_code(verdicts()); }
};

inline void check_typicality_parameters(const Rational& q0, const Rational& delta0) {
  if (q0 <= 0 || q0 >= Rational(1, 2)) throw DomainError("q0 must lie in (0, 1/2)");
  if (delta0 <= 0 || delta0 >= 1) throw DomainError("delta0 must lie in (0, 1)");
}

inline ConditionVerdict check_degree_condition(const CayleyGraph& h, const Rational& q0) {
  auto start = std::chrono::steady_clock::now();
  auto v = ConditionVerdict::named("degree");
  const std::size_t n = h.graph.order();
  const Rational lo = q0 * Rational(n), hi = (1 - q0) * Rational(n);
  for (std::size_t x = 0; x < n; ++x) {
    Rational d(h.graph.degree(x));
    if (d < lo || d > hi) {
      v.kind = VerdictKind::Fail;
      v.witness = Witness::vertex(x);
      v.reason = "degree " + std::to_string(h.graph.degree(x)) + " outside [q0 k, (1-q0) k]";
      break;
    }
  }
  v.elapsed_ms = detail::ms_since(start);
  return v;
}

inline ConditionVerdict check_distinguisher_condition(const CayleyGraph& h, const Rational& q0, unsigned workers = 1) {
  auto start = std::chrono::steady_clock::now();
  auto v = ConditionVerdict::named("distinguishers");
  const std::size_t n = h.graph.order();
  if (auto bad = detail::weak_pair(h.graph, h.graph.all_vertices(), q0 * Rational(n), workers)) {
    v.kind = VerdictKind::Fail;
    v.witness = Witness::pair(bad->first, bad->second);
    v.reason = std::to_string(distinguisher_count(h.graph, bad->first, bad->second, h.graph.all_vertices())) + " distinguishers, below q0 k";
  }
  v.elapsed_ms = detail::ms_since(start);
  return v;
}

/// Searches for disjoint X, Y of size ceil(2 k^{4/5}) with complete or empty bipartite graph between them.
inline ConditionVerdict check_homogeneous_condition(const CayleyGraph& h, const Deadline& deadline) {
  auto start = std::chrono::steady_clock::now();
  auto v = ConditionVerdict::named("homogeneous_pair");
  const std::size_t n = h.graph.order();
  const std::size_t s = detail::homogeneous_side(n);
  if (2 * s > n) {
    v.reason = "vacuous: two disjoint sides of size " + std::to_string(s) + " do not fit";
    v.elapsed_ms = detail::ms_since(start);
    return v;
  }
  // Translating by a rotation puts vertex 0 into X.
  std::vector<std::size_t> xs{0};
  bool aborted = false;
  std::function<bool(std::size_t, const VertexSet&, const VertexSet&)> rec = [&](std::size_t next, const VertexSet& common,
                                                                               const VertexSet& common_non) -> bool {
    if (deadline.expired()) {
      aborted = true;
      return true;
    }
    if (xs.size() == s) {
      const VertexSet& side = common.count() >= s ? common : common_non;
      v.kind = VerdictKind::Fail;
      v.witness.kind = Witness::Kind::SetPair;
      v.witness.set_x = xs;
      auto ys = side.members();
      ys.resize(s);
      v.witness.set_y = ys;
      v.reason = common.count() >= s ? "complete bipartite pair" : "empty bipartite pair";
      return true;
    }
    for (std::size_t u = next; u < n; ++u) {
      VertexSet c = common & h.graph.neighbors(u);
      VertexSet d = common_non - h.graph.neighbors(u);
      c.erase(u);
      d.erase(u);
      if (c.count() < s && d.count() < s) continue;
      xs.push_back(u);
      if (rec(u + 1, c, d)) return true;
      xs.pop_back();
    }
    return false;
  };
  VertexSet c0 = h.graph.neighbors(0), d0 = h.graph.all_vertices() - h.graph.neighbors(0);
  d0.erase(0);
  rec(1, c0, d0);
  if (aborted) {
    v.kind = VerdictKind::Skipped;
    v.exact = false;
    v.reason = "budget exhausted";
  }
  v.elapsed_ms = detail::ms_since(start);
  return v;
}

/// Condition (iv), or its weak form when `weak`: every adjacency-preserving injection on a large X
/// is (nearly) a rotation or reflection.
inline ConditionVerdict check_rigidity_condition(const CayleyGraph& h, const Rational& delta0, const Deadline& deadline, bool weak = false) {
  auto start = std::chrono::steady_clock::now();
  auto v = ConditionVerdict::named(weak ? "rigidity_weak" : "rigidity");
  const std::size_t n = h.graph.order();
  const std::size_t t = detail::ceil_times(1 - delta0, n);
  if (n > kExactRigidityCap && t < n) {
    v.kind = VerdictKind::Skipped;
    v.exact = false;
    v.reason = "exact search limited to " + std::to_string(kExactRigidityCap) + " vertices unless X must be all of V";
    return v;
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  detail::RigiditySearch search{h, all, t, std::nullopt, true, &deadline};
  if (weak) search.agree = detail::ceil_times(1 - 2 * delta0, n);
  detail::RigiditySearch::Outcome out;
  try {
    out = search.run();
  } catch (const CapacityError& e) {
    v.kind = VerdictKind::Skipped;
    v.exact = false;
    v.reason = e.what();
    return v;
  }
  if (out.counterexample) {
    v.kind = VerdictKind::Fail;
    v.witness = *out.counterexample;
    v.reason = weak ? "injection far from every rotation and reflection" : "injection that is no rotation or reflection";
  } else if (!out.complete) {
    v.kind = VerdictKind::Skipped;
    v.exact = false;
    v.reason = "budget exhausted";
  }
  v.elapsed_ms = detail::ms_since(start);
  return v;
}

inline TypicalityReport check_typical(const CayleyGraph& h, const Rational& q0, const Rational& delta0, const TypicalityOptions& opt = {}) {
  check_typicality_parameters(q0, delta0);
  Deadline deadline(opt.budget);
  TypicalityReport rep;
  rep.q0 = q0;
  rep.delta0 = delta0;
  rep.ktilde = h.graph.order();
  rep.degree = check_degree_condition(h, q0);
  rep.distinguishers = check_distinguisher_condition(h, q0, opt.workers);
  rep.homogeneous = check_homogeneous_condition(h, deadline);
  rep.rigidity = check_rigidity_condition(h, delta0, deadline);
  if (opt.include_iv_prime) rep.rigidity_weak = check_rigidity_condition(h, delta0, deadline, true);
  return rep;
}

struct WeakRigidityReport {
  ConditionVerdict weak;
  std::optional<ConditionVerdict> distinguishers;  // present when 2 delta0 <= q0
  std::optional<ConditionVerdict> full;
  /// When 2 delta0 <= q0: distinguishers and weak rigidity passing must force full rigidity.
  std::optional<bool> implication_consistent;
};

inline WeakRigidityReport check_iv_prime_variant(const CayleyGraph& h, const Rational& delta0, std::optional<Rational> q0 = std::nullopt,
                                                 std::chrono::milliseconds budget = std::chrono::milliseconds{0}) {
  if (delta0 <= 0 || delta0 >= 1) throw DomainError("delta0 must lie in (0, 1)");
  const std::size_t n = h.graph.order();
  if (n > kExactRigidityCap && detail::ceil_times(1 - delta0, n) < n)
    throw CapacityError("weak rigidity check is exact only up to " + std::to_string(kExactRigidityCap) + " vertices");
  Deadline deadline(budget);
  WeakRigidityReport rep;
  rep.weak = check_rigidity_condition(h, delta0, deadline, true);
  if (q0 && 2 * delta0 <= *q0) {
    rep.distinguishers = check_distinguisher_condition(h, *q0);
    rep.full = check_rigidity_condition(h, delta0, deadline);
    if (rep.distinguishers->kind == VerdictKind::Pass && rep.weak.kind == VerdictKind::Pass && rep.full->kind != VerdictKind::Skipped)
      rep.implication_consistent = rep.full->kind == VerdictKind::Pass;
  }
  return rep;
}

struct ReasonableReport {
  Rational q, delta;
  std::size_t k = 0, ktilde = 0;
  bool size_hypothesis = false;  // k >= ktilde - (1/4) log ktilde
  ConditionVerdict prime, distinguishers, rigidity;

  std::vector<const ConditionVerdict*> verdicts() const { return {&prime, &distinguishers, &rigidity}; }
  int exit_code() const { return inducilab::exit_code(verdicts()); }
};

inline ReasonableReport check_reasonable(const CayleyGraph& h, const VertexSet& h_vertices, const Rational& q, const Rational& delta,
                                         std::chrono::milliseconds budget = std::chrono::milliseconds{0}, unsigned workers = 1) {
  if (q <= 0 || q >= Rational(1, 2)) throw DomainError("q must lie in (0, 1/2)");
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1)");
  if (h_vertices.universe() != h.graph.order()) throw DomainError("vertex set does not match the Cayley graph");
  const std::size_t k = h_vertices.count(), n = h.graph.order();
  if (k == 0) throw DomainError("H must have at least one vertex");
  Deadline deadline(budget);
  ReasonableReport rep;
  rep.q = q;
  rep.delta = delta;
  rep.k = k;
  rep.ktilde = n;
  rep.size_hypothesis = static_cast<double>(n - k) <= 0.25 * std::log(static_cast<double>(n));

  auto start = std::chrono::steady_clock::now();
  auto sub = induced_subgraph(h.graph, h_vertices);
  rep.prime = ConditionVerdict::named("prime");
  auto pr = is_prime(sub.graph);
  if (!pr.prime) {
    rep.prime.kind = VerdictKind::Fail;
    rep.prime.witness.kind = Witness::Kind::SetPair;
    if (pr.witness) pr.witness->for_each([&](std::size_t i) { rep.prime.witness.set_x.push_back(sub.back_map[i]); });
    rep.prime.reason = "module";
  }
  rep.prime.elapsed_ms = detail::ms_since(start);

  start = std::chrono::steady_clock::now();
  rep.distinguishers = ConditionVerdict::named("distinguishers");
  // Pairs range over all of V(H̃) while distinguishers are counted inside V(H).
  if (auto bad = detail::weak_pair(h.graph, h_vertices, q * Rational(k), workers)) {
    rep.distinguishers.kind = VerdictKind::Fail;
    rep.distinguishers.witness = Witness::pair(bad->first, bad->second);
    rep.distinguishers.reason = std::to_string(distinguisher_count(h.graph, bad->first, bad->second, h_vertices)) + " distinguishers in V(H), below q k";
  }
  rep.distinguishers.elapsed_ms = detail::ms_since(start);

  start = std::chrono::steady_clock::now();
  rep.rigidity = ConditionVerdict::named("rigidity");
  const std::size_t t = detail::ceil_times(1 - delta, k);
  if (n > kExactRigidityCap && t < k) {
    rep.rigidity.kind = VerdictKind::Skipped;
    rep.rigidity.exact = false;
    rep.rigidity.reason = "exact search limited to " + std::to_string(kExactRigidityCap) + " vertices unless X must be all of V(H)";
  } else {
    detail::RigiditySearch search{h, h_vertices.members(), t, std::nullopt, false, &deadline};
    try {
      auto out = search.run();
      if (out.counterexample) {
        rep.rigidity.kind = VerdictKind::Fail;
        rep.rigidity.witness = *out.counterexample;
        rep.rigidity.reason = "injection that is no rotation or reflection";
      } else if (!out.complete) {
        rep.rigidity.kind = VerdictKind::Skipped;
        rep.rigidity.exact = false;
        rep.rigidity.reason = "budget exhausted";
      }
    } catch (const CapacityError& e) {
      rep.rigidity.kind = VerdictKind::Skipped;
      rep.rigidity.exact = false;
      rep.rigidity.reason = e.what();
    }
  }
  rep.rigidity.elapsed_ms = detail::ms_since(start);
  return rep;
}

/// Re-checks that a stored witness still demonstrates the failure of `condition` on h.
/// Conditions: degree, distinguishers, homogeneous_pair, rigidity, rigidity_weak, prime, reasonable_distinguishers.
inline bool replay_witness(const CayleyGraph& h, const std::string& condition, const Witness& w, const Rational& q, const Rational& delta,
                           const std::optional<VertexSet>& h_vertices = std::nullopt) {
  const std::size_t n = h.graph.order();
  auto in_range = [n](std::size_t v) { return v < n; };
  if (condition == "degree") {
    if (w.kind != Witness::Kind::Vertex || w.vertices.size() != 1 || !in_range(w.vertices[0])) return false;
    Rational d(h.graph.degree(w.vertices[0]));
    return d < q * Rational(n) || d > (1 - q) * Rational(n);
  }
  if (condition == "distinguishers" || condition == "reasonable_distinguishers") {
    if (w.kind != Witness::Kind::Pair || w.vertices.size() != 2 || !in_range(w.vertices[0]) || !in_range(w.vertices[1]) || w.vertices[0] == w.vertices[1])
      return false;
    const VertexSet restrict = h_vertices ? *h_vertices : h.graph.all_vertices();
    return Rational(distinguisher_count(h.graph, w.vertices[0], w.vertices[1], restrict)) < q * Rational(restrict.count());
  }
  if (condition == "homogeneous_pair") {
    const std::size_t s = detail::homogeneous_side(n);
    if (w.kind != Witness::Kind::SetPair || w.set_x.size() < s || w.set_y.size() < s) return false;
    VertexSet x(n), y(n);
    for (auto v : w.set_x) {
      if (!in_range(v)) return false;
      x.insert(v);
    }
    for (auto v : w.set_y) {
      if (!in_range(v) || x.contains(v)) return false;
      y.insert(v);
    }
    if (x.count() != w.set_x.size() || y.count() != w.set_y.size()) return false;
    bool all = true, none = true;
    x.for_each([&](std::size_t a) {
      std::size_t c = h.graph.neighbors(a).intersection_count(y);
      all = all && c == y.count();
      none = none && c == 0;
    });
    return all || none;
  }
  if (condition == "prime") {
    if (!h_vertices || w.kind != Witness::Kind::SetPair) return false;
    VertexSet m(n);
    for (auto v : w.set_x) {
      if (!in_range(v) || !h_vertices->contains(v)) return false;
      m.insert(v);
    }
    if (m.count() < 2 || m.count() >= h_vertices->count()) return false;
    bool ok = true;
    (*h_vertices - m).for_each([&](std::size_t u) {
      std::size_t c = h.graph.neighbors(u).intersection_count(m);
      ok = ok && (c == 0 || c == m.count());
    });
    return ok;
  }
  if (condition == "rigidity" || condition == "rigidity_weak") {
    if (w.kind != Witness::Kind::Map || w.map.empty()) return false;
    const std::size_t base = h_vertices ? h_vertices->count() : n;
    if (w.map.size() < detail::ceil_times(1 - delta, base)) return false;
    for (std::size_t i = 0; i < w.map.size(); ++i) {
      auto [x, fx] = w.map[i];
      if (!in_range(x) || !in_range(fx) || (h_vertices && !h_vertices->contains(x))) return false;
      for (std::size_t j = 0; j < i; ++j) {
        auto [y, fy] = w.map[j];
        if (x == y || fx == fy || h.graph.has_edge(x, y) != h.graph.has_edge(fx, fy)) return false;
      }
    }
    const std::size_t need = condition == "rigidity" ? w.map.size() : detail::ceil_times(1 - 2 * delta, n);
    for (const auto& m : rotations_reflections(h.group)) {
      std::size_t hits = 0;
      for (auto [x, fx] : w.map) hits += m(x) == fx ? 1 : 0;
      if (hits >= need) return false;
    }
    return true;
  }
  throw DomainError("unknown condition '" + condition + "'");
}

struct SignatureCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

inline SignatureCheck is_signature(const Graph& h, const VertexSet& s) {
  if (s.universe() != h.order()) throw DomainError("vertex set does not match the graph");
  const auto outside = (h.all_vertices() - s).members();
  for (std::size_t i = 0; i < outside.size(); ++i)
    for (std::size_t j = i + 1; j < outside.size(); ++j)
      if ((h.neighbors(outside[i]) & s) == (h.neighbors(outside[j]) & s)) return {false, std::make_pair(outside[i], outside[j])};
  return {};
}

inline SignatureCheck is_super_signature(const Graph& h, const VertexSet& s, const Rational& r) {
  if (s.universe() != h.order()) throw DomainError("vertex set does not match the graph");
  if (s.count() == 0) throw DomainError("a super-signature must be non-empty");
  const Rational need = r * Rational(s.count());
  const auto outside = (h.all_vertices() - s).members();
  for (std::size_t i = 0; i < outside.size(); ++i)
    for (std::size_t j = i + 1; j < outside.size(); ++j)
      if (Rational(((h.neighbors(outside[i]) ^ h.neighbors(outside[j])) & s).count()) < need) return {false, std::make_pair(outside[i], outside[j])};
  return {};
}

namespace detail {

/// floor(c / q * log k) with the log in the given base, certified by interval arithmetic.
inline std::size_t sample_size(const Rational& c, const Rational& q, std::size_t k, LogBase base) {
  if (k <= 1) return 0;
  if (base != LogBase::E) {
    const std::size_t b = base == LogBase::Two ? 2 : 10;
    std::size_t j = 0, pw = 1;
    while (pw < k) {
      pw *= b;
      ++j;
    }
    if (pw == k) {
      Rational v = c / q * Rational(j);
      return static_cast<std::size_t>(BigCount(numerator(v) / denominator(v)));
    }
  }
  for (mpfr_prec_t prec = Interval::kDefaultPrecision; prec <= kMaxPrecision; prec *= 2) {
    auto lg = log(Interval::from_long(static_cast<long>(k), prec));
    if (base != LogBase::E) lg = lg / log(Interval::from_long(base == LogBase::Two ? 2 : 10, prec));
    auto v = Interval::from_rational(c / q, prec) * lg;
    const double lo = std::floor(v.lower()), hi = std::floor(v.upper());
    if (lo == hi) return static_cast<std::size_t>(std::max(0.0, lo));
  }
  throw CapacityError("sample size sits on an integer boundary beyond the precision cap");
}

inline VertexSet draw_with_repetition(const std::vector<std::size_t>& xs, std::size_t universe, std::size_t t, const CounterRng& rng) {
  VertexSet s(universe);
  for (std::size_t i = 0; i < t; ++i) s.insert(xs[rng.below(i, xs.size())]);
  return s;
}

}  // namespace detail

struct SignatureSearch {
  std::optional<VertexSet> set;
  std::size_t sample_size = 0;
  std::size_t trials_used = 0;
};

/// One candidate of the randomized construction: t draws from X with repetition.
inline VertexSet signature_candidate(const Graph& h, const VertexSet& x, std::size_t t, std::uint64_t seed, std::uint64_t trial,
                                     std::uint64_t stream = streams::kSignature) {
  const auto xs = x.members();
  if (xs.empty()) return VertexSet(h.order());
  return detail::draw_with_repetition(xs, h.order(), t, CounterRng(seed, stream).substream(trial));
}

inline std::size_t signature_sample_size(const Rational& q, std::size_t k, LogBase base = LogBase::E) { return detail::sample_size(5, q, k, base); }
inline std::size_t super_signature_sample_size(const Rational& q, std::size_t k, LogBase base = LogBase::E) {
  return detail::sample_size(33, q, k, base);
}

inline SignatureSearch find_signature(const Graph& h, const VertexSet& x, const Rational& q, std::size_t trials, std::uint64_t seed = 1,
                                      LogBase base = LogBase::E) {
  if (q <= 0) throw DomainError("q must be positive");
  SignatureSearch out;
  out.sample_size = signature_sample_size(q, h.order(), base);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    out.trials_used = trial + 1;
    auto s = signature_candidate(h, x, out.sample_size, seed, trial);
    if (is_signature(h, s).ok) {
      out.set = std::move(s);
      return out;
    }
  }
  return out;
}

/// Certified q/4-super-signature from t = floor((33/q) log k) draws, or nothing after `trials`.
inline SignatureSearch find_super_signature(const Graph& h, const VertexSet& x, const Rational& q, std::size_t trials, std::uint64_t seed = 1,
                                            LogBase base = LogBase::E) {
  if (q <= 0) throw DomainError("q must be positive");
  SignatureSearch out;
  out.sample_size = super_signature_sample_size(q, h.order(), base);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    out.trials_used = trial + 1;
    auto s = signature_candidate(h, x, out.sample_size, seed, trial, streams::kSuperSignature);
    if (s.count() > 0 && is_super_signature(h, s, q / 4).ok) {
      out.set = std::move(s);
      return out;
    }
  }
  return out;
}

struct WilsonInterval {
  double lo = 0, hi = 1;
};

inline WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double alpha = 0.05) {
  if (n == 0) return {};
  const double z = boost::math::quantile(boost::math::normal(), 1 - alpha / 2);
  const double ph = static_cast<double>(successes) / static_cast<double>(n), nn = static_cast<double>(n);
  const double denom = 1 + z * z / nn;
  const double centre = (ph + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct SweepOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  double target = 0.5;  // a cell is Consistent when the Wilson upper bound reaches this pass rate
  std::chrono::milliseconds budget_per_check{2000};
};

struct SweepCell {
  std::size_t ktilde = 0;
  double p = 0;
  Rational q0, delta0;
  std::size_t samples = 0;
  std::vector<std::pair<std::string, std::size_t>> passes;  // per condition, plus "all" and "aut_2k"
  std::size_t skipped = 0;
  WilsonInterval all_interval;
  bool consistent = false;

  std::size_t count(const std::string& name) const {
    for (const auto& [n, c] : passes)
      if (n == name) return c;
    return 0;
  }
};

/// Seed of the Λ sample `s` in a sweep cell over the cyclic group of order ktilde.
inline std::uint64_t sweep_sample_seed(std::uint64_t seed, std::size_t ktilde, std::size_t s) {
  return CounterRng(seed, streams::kSweep).substream(ktilde).bits(s);
}

/// Whether every automorphism of the Cayley graph is one of its rotations and reflections.
inline std::optional<bool> aut_is_rotations_reflections(const CayleyGraph& h, const Deadline& deadline = Deadline()) {
  const auto maps = rotations_reflections(h.group);
  std::set<std::vector<std::size_t>> known;
  for (const auto& m : maps) known.insert(m.image);
  bool extra = false, stopped = false;
  EmbedConstraints c;
  c.fixed = {{0, 0}};
  for_each_embedding(
      h.graph, h.graph,
      [&](const Embedding& f) {
        if (deadline.expired()) {
          stopped = true;
          return false;
        }
        if (known.count(f)) return true;
        extra = true;
        return false;
      },
      c);
  if (extra) return false;
  if (stopped) return std::nullopt;
  return true;
}

/// Monte Carlo frequencies of the typicality conditions over Λ samples on cyclic groups, with
/// q0 = p'/50 and delta0 = p'/100. Cells are labeled Consistent/Inconsistent, never Pass.
inline std::vector<SweepCell> typicality_sweep(const std::vector<std::size_t>& ktildes, const std::vector<double>& ps, const SweepOptions& opt) {
  std::vector<SweepCell> out;
  for (auto kt : ktildes)
    for (double p : ps) {
      if (!(p > 0 && p < 1)) throw DomainError("p must lie in (0,1)");
      SweepCell cell;
      cell.ktilde = kt;
      cell.p = p;
      const Rational pr = parse_rational(std::to_string(p));
      const Rational pp = pr < 1 - pr ? pr : 1 - pr;
      cell.q0 = pp / 50;
      cell.delta0 = pp / 100;
      cell.samples = opt.samples;
      std::vector<std::size_t> pass(6, 0);
      const auto group = AbelianGroup::cyclic(kt);
      for (std::size_t s = 0; s < opt.samples; ++s) {
        auto h = build_cayley(group, sample_connection_set(group, p, sweep_sample_seed(opt.seed, kt, s)));
        TypicalityOptions topt;
        topt.budget = opt.budget_per_check;
        auto rep = check_typical(h, cell.q0, cell.delta0, topt);
        const ConditionVerdict* vs[] = {&rep.degree, &rep.distinguishers, &rep.homogeneous, &rep.rigidity};
        bool all = true;
        for (int i = 0; i < 4; ++i) {
          pass[i] += vs[i]->kind == VerdictKind::Pass ? 1 : 0;
          all = all && vs[i]->kind == VerdictKind::Pass;
          cell.skipped += vs[i]->kind == VerdictKind::Skipped ? 1 : 0;
        }
        pass[4] += all ? 1 : 0;
        auto aut = aut_is_rotations_reflections(h, Deadline(opt.budget_per_check));
        pass[5] += aut.value_or(false) ? 1 : 0;
      }
      const char* names[] = {"degree", "distinguishers", "homogeneous_pair", "rigidity", "all", "aut_2k"};
      for (int i = 0; i < 6; ++i) cell.passes.emplace_back(names[i], pass[i]);
      cell.all_interval = wilson_interval(pass[4], opt.samples, opt.alpha);
      cell.consistent = cell.all_interval.hi >= opt.target;
      out.push_back(std::move(cell));
    }
  return out;
}

}  // namespace inducilab
