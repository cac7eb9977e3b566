#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigcount.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "interval.hpp"
#include "rng.hpp"

namespace inducilab {

/// Product of the near-equal split m = m_1 + ... + m_l; zero when m < l.
inline BigCount E(std::size_t l, std::size_t m) {
  if (l == 0) throw DomainError("E needs l >= 1");
  const std::size_t q = m / l, r = m % l;
  return ipow(BigCount(q + 1), static_cast<unsigned>(r)) * ipow(BigCount(q), static_cast<unsigned>(l - r));
}

namespace detail {

inline Rational rpow(const Rational& base, long e) {
  Rational r = 1;
  Rational b = e >= 0 ? base : Rational(1) / base;
  for (long i = 0; i < std::labs(e); ++i) r *= b;
  return r;
}

}  // namespace detail

struct ELemmaReport {
  std::size_t l_max = 0, m_max = 0;
  std::uint64_t tuples_i = 0, violations_i = 0;
  std::uint64_t checked_ii = 0, violations_ii = 0;
  std::uint64_t checked_iii = 0, violations_iii = 0, inconclusive_iii = 0;
  std::vector<std::string> examples;

  bool ok() const { return violations_i == 0 && violations_ii == 0 && violations_iii == 0 && inconclusive_iii == 0; }
};

/// Grid point for the ratio bound: E_{l'}(m') <= e^{3(l-l') - mu l/2} (l/m)^{l-l'} E_l(m).
struct ERatioPoint {
  std::size_t l, lp, m, mp;
  Rational mu;
};

inline Certainty check_E_ratio(const ERatioPoint& pt) {
  if (pt.m < pt.l || pt.lp > pt.l || pt.lp == 0 || pt.mu < 0 || Rational(pt.mp) > (1 - pt.mu) * Rational(pt.m))
    throw DomainError("grid point outside the ratio-bound hypotheses");
  const BigCount lhs = E(pt.lp, pt.mp);
  const long d = static_cast<long>(pt.l - pt.lp);
  const Rational scale = detail::rpow(Rational(BigCount(pt.l), BigCount(pt.m)), d) * Rational(E(pt.l, pt.m));
  const Rational exponent = Rational(3 * d) - pt.mu * Rational(BigCount(pt.l), 2);
  if (exponent == 0) return Rational(lhs) <= scale ? Certainty::True : Certainty::False;
  return decide([&](mpfr_prec_t prec) {
    auto rhs = exp(Interval::from_rational(exponent, prec)) * Interval::from_rational(scale, prec);
    return compare(Interval::from_integer(lhs, prec), rhs, Relation::LessEqual);
  });
}

/// Deterministic grid of `count` hypothesis-satisfying points with l <= 12 and m <= 200.
inline std::vector<ERatioPoint> E_ratio_grid(std::size_t count, std::uint64_t seed = 1) {
  CounterRng rng(seed, streams::kProperty);
  std::vector<ERatioPoint> out;
  out.reserve(count);
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    const std::uint64_t c = 8 * i;
    ERatioPoint pt;
    pt.l = 1 + rng.below(c, 12);
    pt.lp = 1 + rng.below(c + 1, pt.l);
    pt.m = pt.l + rng.below(c + 2, 201 - pt.l);
    pt.mu = Rational(BigCount(rng.below(c + 3, 21)), 20);
    const Rational cap = (1 - pt.mu) * Rational(pt.m);
    const auto mp_max = static_cast<std::uint64_t>(numerator(cap) / denominator(cap));
    pt.mp = rng.below(c + 4, mp_max + 1);
    out.push_back(pt);
  }
  return out;
}

/// Property suite for E: maximality over compositions, supermultiplicativity, and the ratio bound on a grid.
inline ELemmaReport check_E_lemma(std::size_t l_max, std::size_t m_max, std::size_t grid_points = 10000, std::uint64_t seed = 1) {
  ELemmaReport rep;
  rep.l_max = l_max;
  rep.m_max = m_max;
  for (std::size_t l = 1; l <= l_max; ++l) {
    std::vector<BigCount> best(m_max + 1, 0);
    std::vector<std::size_t> parts(l);
    std::function<void(std::size_t, std::size_t, const BigCount&)> rec = [&](std::size_t i, std::size_t sum, const BigCount& prod) {
      if (i == l) {
        ++rep.tuples_i;
        if (prod > best[sum]) best[sum] = prod;
        return;
      }
      for (std::size_t v = 0; sum + v <= m_max; ++v) rec(i + 1, sum + v, prod * v);
    };
    rec(0, 0, BigCount(1));
    BigCount running = 0;
    for (std::size_t m = 0; m <= m_max; ++m) {
      if (best[m] > running) running = best[m];
      if (running != E(l, m)) {
        ++rep.violations_i;
        rep.examples.push_back("max-product mismatch at l=" + std::to_string(l) + " m=" + std::to_string(m));
      }
    }
  }
  for (std::size_t l = 1; l <= l_max; ++l)
    for (std::size_t lp = 1; lp <= l_max; ++lp)
      for (std::size_t m = 0; m <= m_max; ++m)
        for (std::size_t mp = 0; mp <= m_max; ++mp) {
          ++rep.checked_ii;
          if (E(l, m) * E(lp, mp) > E(l + lp, m + mp)) {
            ++rep.violations_ii;
            rep.examples.push_back("product bound fails at l=" + std::to_string(l) + " l'=" + std::to_string(lp) + " m=" +
                                   std::to_string(m) + " m'=" + std::to_string(mp));
          }
        }
  for (const auto& pt : E_ratio_grid(grid_points, seed)) {
    ++rep.checked_iii;
    switch (check_E_ratio(pt)) {
      case Certainty::True: break;
      case Certainty::False:
        ++rep.violations_iii;
        rep.examples.push_back("ratio bound fails at l=" + std::to_string(pt.l) + " l'=" + std::to_string(pt.lp) + " m=" +
                               std::to_string(pt.m) + " m'=" + std::to_string(pt.mp) + " mu=" + to_string(pt.mu));
        break;
      case Certainty::Unknown: ++rep.inconclusive_iii; break;
    }
  }
  return rep;
}

/// One certified comparison lhs (<, <=) rhs. `log_margin` is log(rhs/lhs), NaN when a side is not positive.
struct Comparison {
  std::string lhs, rhs;
  Relation relation = Relation::Less;
  Certainty verdict = Certainty::Unknown;
  double log_margin = std::numeric_limits<double>::quiet_NaN();
};

/// A named inequality, possibly a chain; it holds when every link holds.
struct InequalityVerdict {
  std::string name;
  std::vector<Comparison> links;

  Certainty verdict() const {
    bool unknown = false;
    for (const auto& c : links) {
      if (c.verdict == Certainty::False) return Certainty::False;
      unknown = unknown || c.verdict == Certainty::Unknown;
    }
    return unknown ? Certainty::Unknown : Certainty::True;
  }
};

namespace detail {

/// c * q^a * L^b with L = log(1/q). Ratios of two monomials with a = b = 0 compare exactly.
struct Monomial {
  Rational c;
  int a = 0, b = 0;

  Monomial operator*(const Monomial& o) const { return {c * o.c, a + o.a, b + o.b}; }
  Monomial operator/(const Monomial& o) const { return {c / o.c, a - o.a, b - o.b}; }
};

/// A positive quantity: either a monomial in (q, L) or an opaque interval evaluator.
struct Quantity {
  std::string label;
  std::optional<Monomial> mono;
  std::function<Interval(mpfr_prec_t)> eval;
};

struct LedgerContext {
  Rational q;
  Magnitude k;

  Interval L(mpfr_prec_t prec) const { return log(Interval::from_long(1, prec) / Interval::from_rational(q, prec)); }
  Interval value(const Monomial& m, mpfr_prec_t prec) const {
    auto qi = Interval::from_rational(q, prec);
    auto r = Interval::from_rational(m.c, prec);
    auto Li = L(prec);
    for (int i = 0; i < std::abs(m.a); ++i) r = m.a > 0 ? r * qi : r / qi;
    for (int i = 0; i < std::abs(m.b); ++i) r = m.b > 0 ? r * Li : r / Li;
    return r;
  }
  Quantity mono(std::string label, Monomial m) const {
    return {std::move(label), m, [this, m](mpfr_prec_t prec) { return value(m, prec); }};
  }
  Quantity opaque(std::string label, std::function<Interval(mpfr_prec_t)> f) const { return {std::move(label), std::nullopt, std::move(f)}; }

  Comparison compare_q(const Quantity& lhs, const Quantity& rhs, Relation rel) const {
    Comparison c{lhs.label, rhs.label, rel, Certainty::Unknown};
    if (lhs.mono && rhs.mono) {
      Monomial ratio = *lhs.mono / *rhs.mono;
      if (ratio.a == 0 && ratio.b == 0) {
        c.verdict = (rel == Relation::Less ? ratio.c < 1 : ratio.c <= 1) ? Certainty::True : Certainty::False;
        c.log_margin = -std::log(ratio.c.convert_to<double>());
        return c;
      }
    }
    mpfr_prec_t used = Interval::kDefaultPrecision;
    c.verdict = decide([&](mpfr_prec_t prec) {
      used = prec;
      return compare(lhs.eval(prec), rhs.eval(prec), rel);
    });
    auto l = lhs.eval(used), r = rhs.eval(used);
    if (l.positive() && r.positive()) c.log_margin = (log(r) - log(l)).mid();
    return c;
  }
};

}  // namespace detail

struct EpsilonLedger {
  Rational q, delta;
  Magnitude k;
  std::vector<std::pair<std::string, Interval>> eps;  // eps1..eps5 at 128 bits
  std::vector<InequalityVerdict> inequalities;

  bool all_hold() const {
    for (const auto& v : inequalities)
      if (v.verdict() != Certainty::True) return false;
    return true;
  }
  const InequalityVerdict* find(const std::string& name) const {
    for (const auto& v : inequalities)
      if (v.name == name) return &v;
    return nullptr;
  }
};

/// Evaluates the five epsilon parameters for q and checks the ten inequalities they must satisfy.
/// `delta` only enters the eps2 < delta check.
inline EpsilonLedger epsilon_ledger(const Rational& q, const Magnitude& k, const Rational& delta = Rational(1, 2)) {
  if (q <= 0 || q >= 1) throw DomainError("q must lie in (0,1)");
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0,1)");
  using detail::Monomial;
  detail::LedgerContext ctx{q, k};
  EpsilonLedger led{q, delta, k, {}, {}};

  const Monomial m1{Rational(1, 3), 1, 0};
  const Monomial m2{Rational(1, 100), 1, -1};
  const Monomial m3{Rational(1, 100000), 1, -2};
  const Monomial m4{Rational(1, 10000000), 2, -2};
  const Monomial m5{Rational(BigCount(1), ipow(BigCount(10), 19)), 4, -4};
  auto e1 = ctx.mono("eps1", m1), e2 = ctx.mono("eps2", m2), e3 = ctx.mono("eps3", m3), e4 = ctx.mono("eps4", m4),
       e5 = ctx.mono("eps5", m5);
  for (auto* e : {&e1, &e2, &e3, &e4, &e5}) led.eps.emplace_back(e->label, e->eval(128));

  auto constant = [&](std::string label, Rational v) { return ctx.mono(std::move(label), Monomial{v, 0, 0}); };
  auto log_k = [k](mpfr_prec_t prec) { return k.log(prec); };
  auto k_val = [k](mpfr_prec_t prec) { return k.value(prec); };
  auto qi = [q](mpfr_prec_t prec) { return Interval::from_rational(q, prec); };
  const auto Less = Relation::Less;

  auto chain = [&](std::string name, std::vector<detail::Quantity> xs, std::vector<Relation> rels) {
    InequalityVerdict v{std::move(name), {}};
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) v.links.push_back(ctx.compare_q(xs[i], xs[i + 1], rels[i]));
    led.inequalities.push_back(std::move(v));
  };
  auto strict = [&](std::size_t n) { return std::vector<Relation>(n, Less); };

  chain("eps_chain_below_half_q", {e5, e4, e3, e2, e1, ctx.mono("q/2", {Rational(1, 2), 1, 0}), constant("1e-20", Rational(BigCount(1), ipow(BigCount(10), 20)))},
        strict(6));
  chain("eps_chain_below_hundredth", {e5, e4, e3, e2, constant("1/100", Rational(1, 100))}, strict(4));
  chain("eps2_entropy_below_eps1",
        {ctx.opaque("log(1/eps2)*eps2",
                    [&ctx, m2](mpfr_prec_t prec) {
                      auto e = ctx.value(m2, prec);
                      return log(Interval::from_long(1, prec) / e) * e;
                    }),
         ctx.opaque("(log 2/8)*eps1",
                    [&ctx, m1](mpfr_prec_t prec) { return log(Interval::from_long(2, prec)) / Interval::from_long(8, prec) * ctx.value(m1, prec); })},
        strict(1));
  chain("eps2_below_delta", {e2, ctx.opaque("delta", [delta](mpfr_prec_t prec) { return Interval::from_rational(delta, prec); })}, strict(1));
  chain("eps3_entropy_below_eps2",
        {ctx.opaque("log(1/eps3)*eps3",
                    [&ctx, m3](mpfr_prec_t prec) {
                      auto e = ctx.value(m3, prec);
                      return log(Interval::from_long(1, prec) / e) * e;
                    }),
         ctx.mono("eps2/100", m2 * Monomial{Rational(1, 100), 0, 0})},
        strict(1));
  {
    auto bound = ctx.opaque("1e6/q*(log k)^2/k", [=](mpfr_prec_t prec) {
      auto lk = log_k(prec);
      return Interval::from_long(1000000, prec) / qi(prec) * lk * lk / k_val(prec);
    });
    InequalityVerdict v{"eps3_square_above_k_term", {}};
    v.links.push_back(ctx.compare_q(e3, e2, Less));
    v.links.push_back(ctx.compare_q(ctx.mono("eps3^2", m3 * m3), e3, Less));
    v.links.push_back(ctx.compare_q(bound, ctx.mono("eps3^2", m3 * m3), Less));
    led.inequalities.push_back(std::move(v));
  }
  chain("eps4_below_q_eps3", {e4, ctx.mono("q/20*eps3", m3 * Monomial{Rational(1, 20), 1, 0})}, strict(1));
  chain("eps5_below_eps4_square", {e5, ctx.mono("1e-5*eps4^2", m4 * m4 * Monomial{Rational(1, 100000), 0, 0})}, {Relation::LessEqual});
  chain("eps5_below_q", {e5, ctx.mono("q/1e4", {Rational(1, 10000), 1, 0})}, strict(1));
  {
    auto t1 = ctx.opaque("40/q*(log k)^2/k", [=](mpfr_prec_t prec) {
      auto lk = log_k(prec);
      return Interval::from_long(40, prec) / qi(prec) * lk * lk / k_val(prec);
    });
    auto t2 = ctx.opaque("1e3/q*log k/k", [=](mpfr_prec_t prec) { return Interval::from_long(1000, prec) / qi(prec) * log_k(prec) / k_val(prec); });
    auto t3 = ctx.opaque("1e3/k", [=](mpfr_prec_t prec) { return Interval::from_long(1000, prec) / k_val(prec); });
    chain("eps_chain_above_k_terms", {t3, t2, t1, e5, e4, e3, e2, e1}, strict(7));
  }
  return led;
}

/// A check lhs >= rhs between positive quantities, decided on their logarithms.
struct LogCheck {
  std::string name;
  std::string statement;
  Certainty verdict = Certainty::Unknown;
  double log_margin = std::numeric_limits<double>::quiet_NaN();  // log(lhs) - log(rhs)
};

struct PreconditionReport {
  Magnitude ktilde;
  Rational p, p_prime, q, delta;
  std::size_t deleted = 0;
  std::vector<LogCheck> checks;

  const LogCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  /// The four links deriving k^{1/20} >= 5e3 (log ktilde)^2 from ktilde^{1/40} >= 100 log ktilde.
  Certainty chain() const {
    bool unknown = false;
    for (const char* n : {"ktilde_root_above_log", "k_root_above_half_ktilde_root", "half_ktilde_root_above_log_square", "k_root_above_log_square"}) {
      auto c = find(n)->verdict;
      if (c == Certainty::False) return c;
      unknown = unknown || c == Certainty::Unknown;
    }
    return unknown ? Certainty::Unknown : Certainty::True;
  }
};

struct PreconditionOptions {
  std::size_t deleted = 0;         // k = ktilde - deleted
  std::optional<Rational> q;       // default p'/75
  std::optional<Rational> delta;   // default p'/150
};

/// Theorem-precondition arithmetic, all in log space so ktilde may be given as 10^200.
inline PreconditionReport check_preconditions(const Magnitude& ktilde, const Rational& p, const PreconditionOptions& opt = {}) {
  if (p <= 0 || p >= 1) throw DomainError("p must lie in (0,1)");
  PreconditionReport rep;
  rep.ktilde = ktilde;
  rep.p = p;
  rep.p_prime = p < 1 - p ? p : 1 - p;
  rep.q = opt.q.value_or(rep.p_prime / 75);
  rep.delta = opt.delta.value_or(rep.p_prime / 150);
  rep.deleted = opt.deleted;
  if (ktilde.base < 2) throw DomainError("ktilde must be at least 2");

  using Side = std::function<Interval(mpfr_prec_t)>;
  auto L = [ktilde](mpfr_prec_t prec) { return ktilde.log(prec); };
  auto LL = [L](mpfr_prec_t prec) { return log(L(prec)); };
  const std::size_t d = opt.deleted;
  auto logk = [ktilde, d](mpfr_prec_t prec) {
    if (d == 0) return ktilde.log(prec);
    return log(ktilde.value(prec) - Interval::from_long(static_cast<long>(d), prec));
  };
  auto R = [](const Rational& v) { return [v](mpfr_prec_t prec) { return log(Interval::from_rational(v, prec)); }; };
  auto C = [](long v) { return [v](mpfr_prec_t prec) { return log(Interval::from_long(v, prec)); }; };
  auto F = [](long num, long den) { return [num, den](mpfr_prec_t prec) { return Interval::from_long(num, prec) / Interval::from_long(den, prec); }; };

  auto add = [&](std::string name, std::string statement, Side log_lhs, Side log_rhs) {
    LogCheck c{std::move(name), std::move(statement)};
    mpfr_prec_t used = Interval::kDefaultPrecision;
    c.verdict = decide([&](mpfr_prec_t prec) {
      used = prec;
      return compare(log_rhs(prec), log_lhs(prec), Relation::LessEqual);
    });
    c.log_margin = (log_lhs(used) - log_rhs(used)).mid();
    rep.checks.push_back(std::move(c));
  };

  add("ktilde_at_least_1e200", "ktilde >= 10^200", L, [](mpfr_prec_t prec) { return Interval::from_long(200, prec) * log(Interval::from_long(10, prec)); });
  if (auto exact = ktilde.exact(); exact && rep.checks.back().verdict == Certainty::Unknown)
    rep.checks.back().verdict = *exact >= ipow(BigCount(10), 200) ? Certainty::True : Certainty::False;
  add("structure_p_bound", "p' >= 1e6 (log ktilde)^{6/5} ktilde^{-1/5}", R(rep.p_prime),
      [=](mpfr_prec_t prec) { return C(1000000)(prec) + F(6, 5)(prec) * LL(prec) - F(1, 5)(prec) * L(prec); });
  add("typicality_p_bound", "p' >= 1e3 (log ktilde)^{1/2} ktilde^{-1/5}", R(rep.p_prime),
      [=](mpfr_prec_t prec) { return C(1000)(prec) + F(1, 2)(prec) * LL(prec) - F(1, 5)(prec) * L(prec); });
  if (d == 0) {
    rep.checks.push_back({"deletion_bound", "ktilde - k <= (1/4) log ktilde", Certainty::True, std::numeric_limits<double>::infinity()});
  } else {
    add("deletion_bound", "ktilde - k <= (1/4) log ktilde", [=](mpfr_prec_t prec) { return log(F(1, 4)(prec) * L(prec)); },
        C(static_cast<long>(d)));
  }
  add("reasonable_q_bound", "q >= 1e4 (log k)^{6/5} k^{-1/5}", R(rep.q),
      [=](mpfr_prec_t prec) { return C(10000)(prec) + F(6, 5)(prec) * log(logk(prec)) - F(1, 5)(prec) * logk(prec); });
  add("reasonable_delta_bound", "delta >= 1e3 (log k)^{1/5} k^{-1/5}", R(rep.delta),
      [=](mpfr_prec_t prec) { return C(1000)(prec) + F(1, 5)(prec) * log(logk(prec)) - F(1, 5)(prec) * logk(prec); });
  add("ktilde_root_above_log", "ktilde^{1/40} >= 100 log ktilde", [=](mpfr_prec_t prec) { return F(1, 40)(prec) * L(prec); },
      [=](mpfr_prec_t prec) { return C(100)(prec) + LL(prec); });
  add("k_root_above_half_ktilde_root", "k^{1/20} >= (1/2) ktilde^{1/20}", [=](mpfr_prec_t prec) { return F(1, 20)(prec) * logk(prec); },
      [=](mpfr_prec_t prec) { return F(1, 20)(prec) * L(prec) - C(2)(prec); });
  add("half_ktilde_root_above_log_square", "(1/2) ktilde^{1/20} >= 5e3 (log ktilde)^2",
      [=](mpfr_prec_t prec) { return F(1, 20)(prec) * L(prec) - C(2)(prec); },
      [=](mpfr_prec_t prec) { return C(5000)(prec) + Interval::from_long(2, prec) * LL(prec); });
  add("k_root_above_log_square", "k^{1/20} >= 5e3 (log ktilde)^2", [=](mpfr_prec_t prec) { return F(1, 20)(prec) * logk(prec); },
      [=](mpfr_prec_t prec) { return C(5000)(prec) + Interval::from_long(2, prec) * LL(prec); });
  return rep;
}

struct SequenceCheck {
  std::string name;
  std::size_t m = 0, m_prime = 0;
  Rational lhs, rhs;  // claim: lhs <= rhs
  bool holds = false;
};

struct SequenceDiagnostics {
  std::size_t k = 0, m_lo = 0;
  std::vector<SequenceCheck> strict;       // first-difference bounds, unconditional
  std::vector<SequenceCheck> report_only;  // bounds that rely on large-k hypotheses

  std::size_t strict_violations() const {
    std::size_t v = 0;
    for (const auto& c : strict) v += c.holds ? 0 : 1;
    return v;
  }
  std::size_t report_violations() const {
    std::size_t v = 0;
    for (const auto& c : report_only) v += c.holds ? 0 : 1;
    return v;
  }
};

/// seq[i] = emb(H, m_lo + i) for a pattern on k vertices.
inline SequenceDiagnostics emb_sequence_diagnostics(std::size_t k, const std::vector<BigCount>& seq, std::size_t m_lo) {
  if (seq.empty()) throw DomainError("empty emb sequence");
  if (k == 0) throw DomainError("pattern must have at least one vertex");
  if (m_lo == 0) throw DomainError("sequence must start at m >= 1");
  for (const auto& v : seq)
    if (v < 0) throw DomainError("negative entry in emb sequence");
  SequenceDiagnostics out;
  out.k = k;
  out.m_lo = m_lo;
  const std::size_t m_hi = m_lo + seq.size() - 1;
  auto emb = [&](std::size_t m) { return Rational(seq[m - m_lo]); };
  const Rational kk(k);
  const Rational top = detail::rpow(kk, 2 - static_cast<long>(k));
  const Rational second = 2 * detail::rpow(kk, 4 - static_cast<long>(k));

  for (std::size_t m = std::max<std::size_t>(2, m_lo + 1); m <= m_hi; ++m) {
    Rational diff = emb(m) - emb(m - 1);
    Rational lower = kk / Rational(m - 1) * emb(m - 1);
    Rational upper = kk / Rational(m) * emb(m);
    out.strict.push_back({"first_difference_lower", m, 0, lower, diff, lower <= diff});
    out.strict.push_back({"first_difference_upper", m, 0, diff, upper, diff <= upper});
  }
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    Rational bound = top * detail::rpow(Rational(m), static_cast<long>(k));
    out.report_only.push_back({"emb_power_bound", m, 0, emb(m), bound, emb(m) <= bound});
  }
  for (std::size_t m = std::max<std::size_t>(3, m_lo + 2); m <= m_hi; ++m) {
    Rational lhs = emb(m) - 2 * emb(m - 1) + emb(m - 2);
    Rational bound = second * detail::rpow(Rational(m), static_cast<long>(k) - 2);
    out.report_only.push_back({"second_difference_bound", m, 0, lhs, bound, lhs <= bound});
  }
  for (std::size_t m = m_lo + 1; m <= m_hi; ++m)
    for (std::size_t mp = std::max<std::size_t>(1, m_lo); mp + 2 <= m; ++mp) {
      Rational lhs = emb(m) - emb(m - 1) - emb(mp + 1) + emb(mp);
      Rational bound = Rational(m - mp) * second * detail::rpow(Rational(m), static_cast<long>(k) - 2);
      out.report_only.push_back({"difference_gap_bound", m, mp, lhs, bound, lhs <= bound});
    }
  return out;
}

}  // namespace inducilab
