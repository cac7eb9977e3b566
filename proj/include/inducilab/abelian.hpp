#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace inducilab {

class AbelianGroup;

/// Element of a product of cyclic groups, stored as residues per factor.
struct GroupElement {
  std::vector<std::size_t> coordinates;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Finite abelian group Z/d1 x ... x Z/dr. Elements are also addressed by a
/// mixed-radix index in [0, order) with the first factor least significant;
/// index 0 is the identity.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::size_t> factor_orders) : factors_(std::move(factor_orders)) {
    if (factors_.empty()) factors_.push_back(1);
    order_ = 1;
    for (auto d : factors_) {
      if (d == 0) throw DomainError("cyclic factor orders must be positive");
      order_ *= d;
    }
  }

  static AbelianGroup cyclic(std::size_t n) { return AbelianGroup({n}); }

  const std::vector<std::size_t>& factor_orders() const noexcept { return factors_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return factors_.size(); }

  GroupElement identity() const { return GroupElement{std::vector<std::size_t>(factors_.size(), 0)}; }

  GroupElement element(std::span<const std::size_t> coords) const {
    if (coords.size() != factors_.size()) throw StructuralError("element has wrong number of coordinates");
    GroupElement g{std::vector<std::size_t>(coords.begin(), coords.end())};
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] >= factors_[i]) throw DomainError("coordinate out of range for factor Z/" + std::to_string(factors_[i]));
    return g;
  }
  GroupElement element(std::initializer_list<std::size_t> coords) const {
    std::vector<std::size_t> v(coords);
    return element(std::span<const std::size_t>(v));
  }

  std::size_t index_of(const GroupElement& g) const {
    check(g);
    std::size_t idx = 0;
    for (std::size_t i = factors_.size(); i-- > 0;) idx = idx * factors_[i] + g.coordinates[i];
    return idx;
  }
  GroupElement from_index(std::size_t idx) const {
    if (idx >= order_) throw DomainError("element index out of range");
    GroupElement g{std::vector<std::size_t>(factors_.size())};
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      g.coordinates[i] = idx % factors_[i];
      idx /= factors_[i];
    }
    return g;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) out.push_back(from_index(i));
    return out;
  }

  GroupElement add(const GroupElement& g, const GroupElement& h) const {
    check(g);
    check(h);
    GroupElement r{std::vector<std::size_t>(factors_.size())};
    for (std::size_t i = 0; i < factors_.size(); ++i) r.coordinates[i] = (g.coordinates[i] + h.coordinates[i]) % factors_[i];
    return r;
  }
  GroupElement neg(const GroupElement& g) const {
    check(g);
    GroupElement r{std::vector<std::size_t>(factors_.size())};
    for (std::size_t i = 0; i < factors_.size(); ++i) r.coordinates[i] = (factors_[i] - g.coordinates[i]) % factors_[i];
    return r;
  }
  GroupElement sub(const GroupElement& g, const GroupElement& h) const { return add(g, neg(h)); }

  // Index-level arithmetic used by the graph code.
  std::size_t add_index(std::size_t a, std::size_t b) const {
    std::size_t r = 0, mul = 1;
    for (auto d : factors_) {
      r += ((a % d + b % d) % d) * mul;
      a /= d;
      b /= d;
      mul *= d;
    }
    return r;
  }
  std::size_t neg_index(std::size_t a) const {
    std::size_t r = 0, mul = 1;
    for (auto d : factors_) {
      r += ((d - a % d) % d) * mul;
      a /= d;
      mul *= d;
    }
    return r;
  }
  std::size_t sub_index(std::size_t a, std::size_t b) const { return add_index(a, neg_index(b)); }

  bool is_identity(const GroupElement& g) const {
    check(g);
    return std::all_of(g.coordinates.begin(), g.coordinates.end(), [](std::size_t c) { return c == 0; });
  }

  /// The unordered pair {g, -g}; a singleton when g is an involution.
  std::vector<GroupElement> kappa(const GroupElement& g) const {
    if (is_identity(g)) throw DomainError("kappa is defined on nonzero elements only");
    GroupElement m = neg(g);
    if (m == g) return {g};
    return g < m ? std::vector<GroupElement>{g, m} : std::vector<GroupElement>{m, g};
  }

  /// One representative per class {g,-g} of G \ {0}: the member with the smaller
  /// mixed-radix index, listed in increasing index order.
  std::vector<std::size_t> kappa_class_representatives() const {
    std::vector<std::size_t> reps;
    for (std::size_t i = 1; i < order_; ++i)
      if (i <= neg_index(i)) reps.push_back(i);
    return reps;
  }
  std::vector<GroupElement> kappa_classes() const {
    std::vector<GroupElement> out;
    for (auto i : kappa_class_representatives()) out.push_back(from_index(i));
    return out;
  }

  /// All x with x + x = t; empty or a coset of the 2-torsion subgroup.
  std::vector<GroupElement> doubling_solutions(const GroupElement& t) const {
    check(t);
    std::size_t ti = index_of(t);
    std::vector<GroupElement> out;
    for (std::size_t x = 0; x < order_; ++x)
      if (add_index(x, x) == ti) out.push_back(from_index(x));
    return out;
  }

  /// Whether the subgroup generated by `gens` is all of G.
  bool is_generating(const std::vector<GroupElement>& gens) const {
    std::vector<std::size_t> g_idx;
    for (const auto& g : gens) g_idx.push_back(index_of(g));
    std::vector<char> seen(order_, 0);
    std::vector<std::size_t> frontier{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      std::size_t x = frontier.back();
      frontier.pop_back();
      for (auto g : g_idx) {
        std::size_t y = add_index(x, g);
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
          frontier.push_back(y);
        }
      }
    }
    return reached == order_;
  }

  std::string describe() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "xZ/" : "Z/") + std::to_string(factors_[i]);
    return s;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.factors_ == b.factors_; }

 private:
  void check(const GroupElement& g) const {
    if (g.coordinates.size() != factors_.size()) throw StructuralError("element does not belong to " + describe());
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (g.coordinates[i] >= factors_[i]) throw StructuralError("element does not belong to " + describe());
  }

  std::vector<std::size_t> factors_;
  std::size_t order_ = 1;
};

}  // namespace inducilab
