#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "bigcount.hpp"
#include "cayley.hpp"
#include "embed.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace inducilab {

/// A leaf holds a concrete graph; a blow-up node replaces each base vertex by a non-empty child.
struct BlowupTree {
  enum class Kind { Leaf, Blowup };
  Kind kind = Kind::Leaf;
  Graph graph;                    // the leaf graph, or the base being blown up
  std::vector<BlowupTree> parts;  // one per base vertex when kind == Blowup

  static BlowupTree leaf(Graph g) { return BlowupTree{Kind::Leaf, std::move(g), {}}; }
  static BlowupTree blowup(Graph base, std::vector<BlowupTree> parts) {
    BlowupTree t{Kind::Blowup, std::move(base), std::move(parts)};
    t.validate();
    return t;
  }

  bool is_leaf() const noexcept { return kind == Kind::Leaf; }

  std::size_t size() const {
    if (is_leaf()) return graph.order();
    std::size_t s = 0;
    for (const auto& p : parts) s += p.size();
    return s;
  }

  std::vector<std::size_t> part_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& p : parts) out.push_back(p.size());
    return out;
  }

  void validate() const {
    if (is_leaf()) return;
    if (parts.size() != graph.order()) throw StructuralError("a blow-up needs exactly one part per base vertex");
    for (const auto& p : parts) {
      if (p.size() == 0) throw StructuralError("blow-up parts must be non-empty");
      p.validate();
    }
  }

  /// Part sizes differ by at most one at every blow-up node.
  bool is_balanced() const {
    if (is_leaf()) return true;
    auto s = part_sizes();
    auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    if (*hi - *lo > 1) return false;
    return std::all_of(parts.begin(), parts.end(), [](const BlowupTree& p) { return p.is_balanced(); });
  }
};

struct LeafPolicy {
  enum class Kind { EmptyGraph, EmbMaximizer, Explicit };
  Kind kind = Kind::EmptyGraph;
  Graph pattern;                 // H, for EmbMaximizer
  std::vector<Graph> leaves;     // for Explicit: first graph of the requested order is used
  mutable bool fell_back = false;  // EmbMaximizer asked beyond the exhaustive cap

  static LeafPolicy empty_graph() { return {}; }
  static LeafPolicy emb_maximizer(Graph h) { return LeafPolicy{Kind::EmbMaximizer, std::move(h), {}}; }
  static LeafPolicy explicit_leaves(std::vector<Graph> gs) { return LeafPolicy{Kind::Explicit, Graph(), std::move(gs)}; }

  /// Leaf graph on m vertices. EmbMaximizer takes the graph6-first maximizer and falls back to
  /// the empty graph above the exhaustive cap (recorded in fell_back).
  Graph leaf(std::size_t m) const {
    switch (kind) {
      case Kind::EmptyGraph: return Graph(m);
      case Kind::EmbMaximizer:
        if (m > kIsomorphismClassCap) {
          fell_back = true;
          return Graph(m);
        }
        return emb_max(pattern, m).witnesses.front();
      case Kind::Explicit:
        for (const auto& g : leaves)
          if (g.order() == m) return g;
        throw StructuralError("no explicit leaf graph on " + std::to_string(m) + " vertices");
    }
    return Graph(m);
  }

  std::string name() const {
    switch (kind) {
      case Kind::EmbMaximizer: return "EmbMaximizer";
      case Kind::Explicit: return "Explicit";
      case Kind::EmptyGraph: break;
    }
    return "EmptyGraph";
  }
};

/// ceil(n/k) repeated (n mod k) times, then floor(n/k).
inline std::vector<std::size_t> balanced_parts(std::size_t n, std::size_t ktilde) {
  if (ktilde == 0) throw DomainError("the base graph needs at least one vertex");
  std::vector<std::size_t> sizes(ktilde, n / ktilde);
  for (std::size_t i = 0; i < n % ktilde; ++i) ++sizes[i];
  return sizes;
}

/// Balanced iterated blow-up of base on n vertices; anything below |V(base)| becomes a leaf.
inline BlowupTree balanced_iterated_tree(const Graph& base, std::size_t n, const LeafPolicy& policy) {
  if (n < base.order() || base.order() <= 1) return BlowupTree::leaf(policy.leaf(n));
  std::vector<BlowupTree> parts;
  for (auto s : balanced_parts(n, base.order())) parts.push_back(balanced_iterated_tree(base, s, policy));
  return BlowupTree::blowup(base, std::move(parts));
}

/// Blow-up with the given top-level sizes (all positive) and balanced iterated parts below.
inline BlowupTree blowup_with_sizes(const Graph& base, const std::vector<std::size_t>& sizes, const LeafPolicy& policy) {
  std::vector<BlowupTree> parts;
  for (auto s : sizes) parts.push_back(balanced_iterated_tree(base, s, policy));
  return BlowupTree::blowup(base, std::move(parts));
}

struct MaterializedBlowup {
  Graph graph;
  std::vector<std::size_t> top_part;  // top-level part of each vertex (0 for a leaf root)
  std::vector<std::size_t> offsets;   // first vertex of each top-level part
};

namespace detail {

inline void place(const BlowupTree& t, Graph& g, std::size_t offset) {
  if (t.is_leaf()) {
    for (auto [u, v] : t.graph.edges()) g.add_edge(offset + u, offset + v);
    return;
  }
  std::vector<std::size_t> start;
  std::size_t at = offset;
  for (const auto& p : t.parts) {
    start.push_back(at);
    at += p.size();
  }
  for (std::size_t i = 0; i < t.parts.size(); ++i) {
    place(t.parts[i], g, start[i]);
    for (std::size_t j = i + 1; j < t.parts.size(); ++j) {
      if (!t.graph.has_edge(i, j)) continue;
      for (std::size_t a = 0; a < t.parts[i].size(); ++a)
        for (std::size_t b = 0; b < t.parts[j].size(); ++b) g.add_edge(start[i] + a, start[j] + b);
    }
  }
}

}  // namespace detail

/// Parts occupy consecutive vertex ranges in part order.
inline MaterializedBlowup materialize(const BlowupTree& t) {
  t.validate();
  MaterializedBlowup m{Graph(t.size()), std::vector<std::size_t>(t.size(), 0), {0}};
  detail::place(t, m.graph, 0);
  if (!t.is_leaf()) {
    m.offsets.clear();
    std::size_t at = 0;
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
      m.offsets.push_back(at);
      for (std::size_t a = 0; a < t.parts[i].size(); ++a) m.top_part[at + a] = i;
      at += t.parts[i].size();
    }
  }
  return m;
}

inline Graph build_blowup(const BlowupTree& t) { return materialize(t).graph; }

/// 2 k̃^m (k̃^{(k-1)(m-1)} + ... + k̃^{k-1} + 1).
inline BigCount closed_form_blowup_count(std::uint64_t ktilde, std::uint64_t k, std::uint64_t m) {
  if (k > ktilde) throw DomainError("closed form needs k <= k̃");
  if (m < 1) throw DomainError("closed form needs m >= 1");
  BigCount sum = 0;
  for (std::uint64_t i = 0; i < m; ++i) sum += ipow(BigCount(ktilde), static_cast<unsigned>((k - 1) * i));
  return 2 * ipow(BigCount(ktilde), static_cast<unsigned>(m)) * sum;
}

/// 2 / (k̃^{k-1} - 1), the limit of closed_form / k̃^{mk}.
inline Rational embedding_inducibility_limit(std::uint64_t ktilde, std::uint64_t k) {
  BigCount d = ipow(BigCount(ktilde), static_cast<unsigned>(k - 1)) - 1;
  if (d <= 0) throw DomainError("limit needs k̃^{k-1} > 1");
  return Rational(BigCount(2), d);
}

/// H = H̃[h_vertices] with vertex x of H standing for h_vertices' x-th member.
struct PatternInCayley {
  const CayleyGraph* host = nullptr;
  VertexSet vertices;
  InducedSubgraph h;

  PatternInCayley(const CayleyGraph& cayley, VertexSet verts) : host(&cayley), vertices(std::move(verts)), h(induced_subgraph(cayley.graph, vertices)) {}
  explicit PatternInCayley(const CayleyGraph& cayley) : PatternInCayley(cayley, cayley.graph.all_vertices()) {}

  const Graph& graph() const { return h.graph; }
  std::size_t k() const { return h.graph.order(); }
};

struct RigidityCertificate {
  bool prime = false;
  std::optional<VertexSet> module;                      // when not prime
  bool rigid = false;                                   // every H -> H̃ embedding is a listed map restricted
  std::optional<Embedding> unexplained;                 // an embedding that is not
  std::vector<std::vector<std::size_t>> restrictions;   // distinct phi|V(H), as images of H's vertices
  bool holds() const { return prime && rigid; }
};

/// Distinct restrictions of the 2k̃ maps to V(H), in map-list order of first appearance.
inline std::vector<std::vector<std::size_t>> distinct_restrictions(const PatternInCayley& p) {
  std::vector<std::vector<std::size_t>> out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& m : rotations_reflections(p.host->group)) {
    std::vector<std::size_t> r;
    for (auto x : p.h.back_map) r.push_back(m.image[x]);
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

inline RigidityCertificate certify_rigidity(const PatternInCayley& p) {
  RigidityCertificate c;
  auto pr = is_prime(p.graph());
  c.prime = pr.prime;
  c.module = pr.witness;
  c.restrictions = distinct_restrictions(p);
  std::set<std::vector<std::size_t>> allowed(c.restrictions.begin(), c.restrictions.end());
  c.rigid = true;
  for_each_embedding(p.graph(), p.host->graph, [&](const Embedding& e) {
    if (allowed.count(e)) return true;
    c.rigid = false;
    c.unexplained = e;
    return false;
  });
  return c;
}

struct InPart {
  std::size_t part;
};
struct FollowsMap {
  std::size_t map_index;  // first listed rotation/reflection that fits
};
struct Violation {
  std::size_t x, y;    // offending pair of H-vertices
  std::string reason;
};
using EmbeddingClass = std::variant<InPart, FollowsMap, Violation>;

/// Tags one embedding into a materialized blow-up of H̃ by where its vertices land.
inline EmbeddingClass classify_embedding(const PatternInCayley& p, const MaterializedBlowup& blow, const Embedding& theta) {
  const std::size_t k = p.k();
  std::vector<std::size_t> part(k);
  for (std::size_t x = 0; x < k; ++x) part[x] = blow.top_part.at(theta.at(x));
  if (std::all_of(part.begin(), part.end(), [&](std::size_t q) { return q == part[0]; })) return InPart{part[0]};
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y)
      if (part[x] == part[y]) return Violation{x, y, "two vertices share a part without the whole pattern doing so"};
  auto maps = rotations_reflections(p.host->group);
  std::size_t best = 0, best_agree = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::size_t agree = 0;
    for (std::size_t x = 0; x < k; ++x) agree += maps[i].image[p.h.back_map[x]] == part[x] ? 1 : 0;
    if (agree == k) return FollowsMap{i};
    if (agree > best_agree) {
      best_agree = agree;
      best = i;
    }
  }
  std::size_t bad = 0, good = 0;
  for (std::size_t x = 0; x < k; ++x) {
    if (maps[best].image[p.h.back_map[x]] != part[x])
      bad = x;
    else
      good = x;
  }
  return Violation{std::min(bad, good), std::max(bad, good), "part pattern follows no rotation or reflection"};
}

struct ClassificationSummary {
  BigCount in_part = 0, follows_map = 0;
  std::vector<Violation> violations;  // first few
  BigCount violation_count = 0;
  BigCount total() const { return in_part + follows_map + violation_count; }
};

inline ClassificationSummary classify_embeddings(const PatternInCayley& p, const BlowupTree& t, std::size_t keep_violations = 8) {
  if (t.is_leaf() || !(t.graph == p.host->graph)) throw StructuralError("classification needs a blow-up of the Cayley graph at the root");
  auto blow = materialize(t);
  ClassificationSummary s;
  for_each_embedding(p.graph(), blow.graph, [&](const Embedding& e) {
    auto c = classify_embedding(p, blow, e);
    if (std::holds_alternative<InPart>(c)) {
      s.in_part += 1;
    } else if (std::holds_alternative<FollowsMap>(c)) {
      s.follows_map += 1;
    } else {
      s.violation_count += 1;
      if (s.violations.size() < keep_violations) s.violations.push_back(std::get<Violation>(c));
    }
  });
  return s;
}

inline constexpr std::size_t kDirectCountCap = 4096;

struct BlowupCount {
  BigCount value = 0;
  bool by_classification = false;  // false: direct enumeration on the materialized graph
  RigidityCertificate certificate;
};

namespace detail {

inline BigCount count_recursive(const PatternInCayley& p, const std::vector<std::vector<std::size_t>>& restrictions, const BlowupTree& t) {
  if (t.is_leaf()) return count_embeddings(p.graph(), t.graph);
  if (!(t.graph == p.host->graph)) {
    if (t.size() > kDirectCountCap) throw CapacityError("direct count beyond the materialization cap");
    return count_embeddings(p.graph(), build_blowup(t));
  }
  auto sizes = t.part_sizes();
  BigCount total = 0;
  for (const auto& r : restrictions) {
    BigCount prod = 1;
    for (auto j : r) prod *= sizes[j];
    total += prod;
  }
  for (const auto& part : t.parts) total += count_recursive(p, restrictions, part);
  return total;
}

}  // namespace detail

/// Embeddings of H = H̃[V(H)] into the blow-up: placements along each distinct phi|V(H) plus the
/// recursive count inside every part. Exact when H is prime and rigid over H̃; otherwise falls
/// back to enumerating the materialized graph.
inline BlowupCount count_into_blowup(const PatternInCayley& p, const BlowupTree& t) {
  t.validate();
  BlowupCount r;
  r.certificate = certify_rigidity(p);
  if (r.certificate.holds()) {
    r.by_classification = true;
    r.value = detail::count_recursive(p, r.certificate.restrictions, t);
    return r;
  }
  if (t.size() > kDirectCountCap) throw CapacityError("no rigidity certificate and the blow-up is too large to count directly");
  r.value = count_embeddings(p.graph(), build_blowup(t));
  return r;
}

/// Random blow-up of base on n vertices: random positive composition, parts recursively blown up
/// or filled with random leaf graphs.
inline BlowupTree random_blowup_tree(const Graph& base, std::size_t n, std::uint64_t seed, std::uint64_t salt = 0) {
  CounterRng rng(seed, streams::kBlowupSpec + 1000 * salt);
  std::uint64_t c = 0;
  auto random_leaf = [&](std::size_t m) {
    Graph g(m);
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = u + 1; v < m; ++v)
        if (rng.uniform(c++) < 0.5) g.add_edge(u, v);
    return g;
  };
  if (n < base.order()) return BlowupTree::leaf(random_leaf(n));
  const std::size_t kt = base.order();
  std::vector<std::size_t> sizes(kt, 1);
  for (std::size_t extra = n - kt; extra > 0; --extra) ++sizes[rng.below(c++, kt)];
  std::vector<BlowupTree> parts;
  for (std::size_t i = 0; i < kt; ++i) {
    if (sizes[i] >= kt && rng.uniform(c++) < 0.5)
      parts.push_back(random_blowup_tree(base, sizes[i], seed, salt * 31 + i + 1));
    else
      parts.push_back(BlowupTree::leaf(random_leaf(sizes[i])));
  }
  return BlowupTree::blowup(base, std::move(parts));
}

// ---------------------------------------------------------------------------------------------
// Part-size objective

/// Exact value when lower == upper.
struct CountBounds {
  BigCount lower = 0, upper = 0;
  bool exact() const { return lower == upper; }
};

/// emb(H, m) as realized under a leaf policy. For EmbMaximizer above the exhaustive cap, and only
/// when allow_bounds is set, returns [best known construction, averaging bound from the cap].
inline CountBounds leaf_embedding_count(const PatternInCayley& p, std::size_t m, const LeafPolicy& policy, bool allow_bounds) {
  const Graph& h = p.graph();
  if (m < h.order()) return {0, 0};
  switch (policy.kind) {
    case LeafPolicy::Kind::EmptyGraph: {
      BigCount c = count_embeddings(h, Graph(m));
      return {c, c};
    }
    case LeafPolicy::Kind::Explicit: {
      BigCount c = count_embeddings(h, policy.leaf(m));
      return {c, c};
    }
    case LeafPolicy::Kind::EmbMaximizer: break;
  }
  if (m <= kIsomorphismClassCap) {
    BigCount c = emb_max(h, m).value;
    return {c, c};
  }
  if (!allow_bounds) throw CapacityError("emb(H, " + std::to_string(m) + ") is beyond the exhaustive cap");
  // emb(H,n)/(n)_k never increases in n, which bounds emb(H,m) from the cap value.
  const std::size_t m0 = kIsomorphismClassCap;
  BigCount at_cap = emb_max(h, m0).value;
  BigCount upper = at_cap * falling_factorial(m, h.order()) / falling_factorial(m0, h.order());
  BlowupTree t = balanced_iterated_tree(p.host->graph, m, LeafPolicy::emb_maximizer(h));
  BigCount lower = count_embeddings(h, build_blowup(t));
  LocalSearchOptions opt;
  opt.restarts = 4;
  opt.max_steps = 60;
  lower = std::max(lower, emb_max(h, m, ExtremalMode::LocalSearch, 1, opt).value);
  return {lower, std::max(lower, upper)};
}

struct ObjectiveValue {
  BigCount placements = 0;          // sum over distinct phi|V(H) of prod n_phi(x)
  std::vector<CountBounds> inside;  // emb(H, n_j) per part
  CountBounds total;
};

/// T = sum_phi N_phi + sum_j emb(H, n_j).
inline ObjectiveValue objective_T(const PatternInCayley& p, const std::vector<std::size_t>& sizes, const LeafPolicy& policy,
                                  bool allow_bounds = false) {
  if (sizes.size() != p.host->order()) throw DomainError("need one part size per vertex of the Cayley graph");
  ObjectiveValue v;
  for (const auto& r : distinct_restrictions(p)) {
    BigCount prod = 1;
    for (auto j : r) prod *= sizes[j];
    v.placements += prod;
  }
  v.total = {v.placements, v.placements};
  for (auto s : sizes) {
    v.inside.push_back(leaf_embedding_count(p, s, policy, allow_bounds));
    v.total.lower += v.inside.back().lower;
    v.total.upper += v.inside.back().upper;
  }
  return v;
}

struct PartitionCandidate {
  std::vector<std::size_t> sizes;
  CountBounds value;
  bool balanced = false;
};

struct PartitionReport {
  std::size_t n = 0, ktilde = 0;
  std::vector<PartitionCandidate> maximizers;  // every composition that may attain the max
  bool all_balanced = false;
  bool certified = false;                      // every listed value exact, so the list is the argmax
  std::optional<bool> balanced_attains_max;    // empty when the bounds cannot decide
  CountBounds balanced_value;
  std::size_t compositions = 0, evaluated = 0;
  std::string reduction;
};

struct PartitionOptions {
  bool reduce = false;        // evaluate one composition per symmetry orbit
  std::size_t min_part = 0;   // 1 restricts to blow-ups with every part non-empty
  unsigned workers = 1;
  std::uint64_t budget = 5'000'000;
};

namespace detail {

template <class Fn>
void for_each_composition(std::size_t n, std::size_t parts, std::size_t min_part, Fn&& fn) {
  std::vector<std::size_t> s(parts, min_part);
  if (parts * min_part > n) return;
  std::size_t rest = n - parts * min_part;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      s[i] = min_part + left;
      fn(s);
      return;
    }
    for (std::size_t a = left + 1; a-- > 0;) {
      s[i] = min_part + a;
      rec(i + 1, left - a);
    }
  };
  if (parts == 0) return;
  rec(0, rest);
}

}  // namespace detail

inline BigCount composition_count(std::size_t n, std::size_t parts, std::size_t min_part = 0) {
  if (parts * min_part > n) return 0;
  return binomial(n - parts * min_part + parts - 1, parts - 1);
}

/// Brute force over part-size vectors summing to n.
inline PartitionReport optimize_partition(const PatternInCayley& p, std::size_t n, const LeafPolicy& policy, const PartitionOptions& opt = {}) {
  const std::size_t kt = p.host->order();
  PartitionReport rep;
  rep.n = n;
  rep.ktilde = kt;
  BigCount total = composition_count(n, kt, opt.min_part);
  if (!opt.reduce && (kt > 6 || n > 20)) throw CapacityError("composition search without reduction is limited to k̃ <= 6 and n <= 20");
  if (total > opt.budget) throw CapacityError("composition count " + total.str() + " exceeds the budget");
  rep.compositions = static_cast<std::size_t>(total);

  // T(s o psi) = T(s) for psi among the 2k̃ maps, since they form a group; when V(H) = V(H̃)
  // every N_phi is the full product and any permutation of the sizes preserves T.
  const bool full_symmetry = p.k() == kt;
  auto maps = rotations_reflections(p.host->group);
  if (opt.reduce)
    rep.reduction = full_symmetry ? "sorted multisets: H spans H̃, so T is symmetric in the part sizes"
                                  : "orbits under the rotations and reflections, which permute the terms of T";
  auto canonical = [&](const std::vector<std::size_t>& s) {
    if (full_symmetry) return std::is_sorted(s.rbegin(), s.rend());
    for (const auto& m : maps) {
      std::vector<std::size_t> t(kt);
      for (std::size_t j = 0; j < kt; ++j) t[j] = s[m.image[j]];
      if (t > s) return false;
    }
    return true;
  };

  std::vector<std::vector<std::size_t>> todo;
  detail::for_each_composition(n, kt, opt.min_part, [&](const std::vector<std::size_t>& s) {
    if (!opt.reduce || canonical(s)) todo.push_back(s);
  });
  rep.evaluated = todo.size();

  // Leaf counts first (shared cache), then the pure placement sums in parallel.
  std::map<std::size_t, CountBounds> inside;
  for (const auto& s : todo)
    for (auto m : s)
      if (!inside.count(m)) inside[m] = leaf_embedding_count(p, m, policy, true);
  auto restrictions = distinct_restrictions(p);
  std::vector<CountBounds> values(todo.size());
  unsigned workers = std::max(1U, opt.workers);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < todo.size(); i += workers) {
      BigCount placements = 0;
      for (const auto& r : restrictions) {
        BigCount prod = 1;
        for (auto j : r) prod *= todo[i][j];
        placements += prod;
      }
      CountBounds b{placements, placements};
      for (auto m : todo[i]) {
        b.lower += inside[m].lower;
        b.upper += inside[m].upper;
      }
      values[i] = b;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  BigCount best_lower = 0;
  for (const auto& v : values) best_lower = std::max(best_lower, v.lower);
  rep.certified = true;
  rep.all_balanced = true;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    if (values[i].upper < best_lower) continue;
    auto [lo, hi] = std::minmax_element(todo[i].begin(), todo[i].end());
    PartitionCandidate c{todo[i], values[i], *hi - *lo <= 1};
    rep.certified = rep.certified && c.value.exact() && c.value.lower == best_lower;
    rep.all_balanced = rep.all_balanced && c.balanced;
    rep.maximizers.push_back(std::move(c));
  }

  if (n >= kt * opt.min_part) {
    auto bal = balanced_parts(n, kt);
    auto bal_value = objective_T(p, bal, policy, true).total;
    rep.balanced_value = bal_value;
    BigCount best_upper = 0;
    for (const auto& v : values) best_upper = std::max(best_upper, v.upper);
    if (bal_value.lower >= best_upper || (rep.certified && bal_value.exact() && bal_value.lower == best_lower))
      rep.balanced_attains_max = true;
    else if (bal_value.upper < best_lower)
      rep.balanced_attains_max = false;
  }
  return rep;
}

}  // namespace inducilab
