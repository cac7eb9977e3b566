#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace inducilab {

/// Symmetric zero-free subset of a group, stored as sorted element indices.
class ConnectionSet {
 public:
  ConnectionSet(AbelianGroup group, std::vector<std::size_t> member_indices) : group_(std::move(group)), members_(std::move(member_indices)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (auto m : members_) {
      if (m >= group_.order()) throw DomainError("connection-set element outside the group");
      if (m == 0) throw DomainError("connection set must not contain 0");
      if (!std::binary_search(members_.begin(), members_.end(), group_.neg_index(m)))
        throw DomainError("connection set must be closed under negation");
    }
  }
  static ConnectionSet from_elements(const AbelianGroup& group, const std::vector<GroupElement>& elems) {
    std::vector<std::size_t> idx;
    for (const auto& e : elems) idx.push_back(group.index_of(e));
    return ConnectionSet(group, idx);
  }

  const AbelianGroup& group() const noexcept { return group_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::size_t idx) const { return std::binary_search(members_.begin(), members_.end(), idx); }
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    for (auto m : members_) out.push_back(group_.from_index(m));
    return out;
  }

  friend bool operator==(const ConnectionSet& a, const ConnectionSet& b) { return a.group_ == b.group_ && a.members_ == b.members_; }

 private:
  AbelianGroup group_;
  std::vector<std::size_t> members_;
};

/// Each class {g,-g} is included iff its counter-based draw falls below p; the counter is the
/// smaller mixed-radix index of the class.
inline ConnectionSet sample_connection_set(const AbelianGroup& group, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("sampling probability must lie strictly between 0 and 1");
  CounterRng rng(seed, streams::kConnectionSet);
  std::vector<std::size_t> members;
  for (auto rep : group.kappa_class_representatives()) {
    if (rng.uniform(rep) < p) {
      members.push_back(rep);
      members.push_back(group.neg_index(rep));
    }
  }
  return ConnectionSet(group, members);
}

struct CayleyGraph {
  AbelianGroup group;
  ConnectionSet lambda;
  Graph graph;

  std::size_t order() const noexcept { return graph.order(); }
};

inline CayleyGraph build_cayley(const AbelianGroup& group, const ConnectionSet& lambda) {
  if (!(lambda.group() == group)) throw DomainError("connection set belongs to a different group");
  const std::size_t n = group.order();
  Graph g(n);
  for (std::size_t x = 0; x < n; ++x)
    for (auto s : lambda.members()) {
      std::size_t y = group.add_index(x, s);
      if (x < y) g.add_edge(x, y);
    }
  return CayleyGraph{group, lambda, std::move(g)};
}

inline CayleyGraph build_cayley(const ConnectionSet& lambda) { return build_cayley(lambda.group(), lambda); }

struct VertexMap {
  enum class Kind { Rotation, Reflection, Generic };
  Kind kind = Kind::Generic;
  std::size_t shift = 0;           // the g of x -> x+g or x -> -x+g
  std::vector<std::size_t> image;  // image[x]

  std::size_t operator()(std::size_t x) const { return image.at(x); }
  friend bool operator==(const VertexMap& a, const VertexMap& b) { return a.image == b.image; }
};

/// The 2k̃ maps x -> x+g then x -> -x+g, each in increasing g-index order. Kept as a multiset:
/// in groups with 2-torsion some rotations coincide with reflections.
inline std::vector<VertexMap> rotations_reflections(const AbelianGroup& group) {
  const std::size_t n = group.order();
  std::vector<VertexMap> maps;
  maps.reserve(2 * n);
  for (int reflect = 0; reflect < 2; ++reflect)
    for (std::size_t g = 0; g < n; ++g) {
      VertexMap m{reflect ? VertexMap::Kind::Reflection : VertexMap::Kind::Rotation, g, std::vector<std::size_t>(n)};
      for (std::size_t x = 0; x < n; ++x) m.image[x] = group.add_index(reflect ? group.neg_index(x) : x, g);
      maps.push_back(std::move(m));
    }
  return maps;
}

inline std::size_t distinct_map_count(const std::vector<VertexMap>& maps) {
  std::set<std::vector<std::size_t>> seen;
  for (const auto& m : maps) seen.insert(m.image);
  return seen.size();
}

/// Number of listed rotations/reflections phi with x in phi(H_vertices).
inline std::size_t maps_hitting_vertex(const AbelianGroup& group, const VertexSet& h_vertices, std::size_t x) {
  if (h_vertices.universe() != group.order()) throw DomainError("vertex set does not match the group");
  if (x >= group.order()) throw DomainError("vertex outside the group");
  std::size_t hits = 0;
  for (const auto& m : rotations_reflections(group)) {
    bool hit = false;
    h_vertices.for_each([&](std::size_t y) { hit = hit || m.image[y] == x; });
    hits += hit ? 1 : 0;
  }
  return hits;
}

inline InducedSubgraph delete_vertices(const CayleyGraph& h, const VertexSet& d) {
  if (d.universe() != h.order()) throw DomainError("deletion set does not match the Cayley graph");
  if (d.count() >= h.order()) throw DomainError("cannot delete every vertex");
  return induced_subgraph(h.graph, d.complement());
}

enum class LogBase { E, Two, Ten };

inline double log_in(LogBase base, double x) {
  switch (base) {
    case LogBase::Two: return std::log2(x);
    case LogBase::Ten: return std::log10(x);
    case LogBase::E: break;
  }
  return std::log(x);
}

inline LogBase parse_log_base(const std::string& s) {
  if (s == "e") return LogBase::E;
  if (s == "2") return LogBase::Two;
  if (s == "10") return LogBase::Ten;
  throw DomainError("log base must be one of e, 2, 10");
}

inline std::string to_string(LogBase b) {
  switch (b) {
    case LogBase::Two: return "2";
    case LogBase::Ten: return "10";
    case LogBase::E: break;
  }
  return "e";
}

/// Largest |D| allowed by k >= k̃ - (1/4) log k̃.
inline std::size_t deletion_budget(std::size_t ktilde, LogBase base = LogBase::E) {
  if (ktilde == 0) throw DomainError("empty group");
  return static_cast<std::size_t>(std::floor(0.25 * log_in(base, static_cast<double>(ktilde))));
}

}  // namespace inducilab
