#include <gtest/gtest.h>

#include <cmath>

#include "inducilab/bounds.hpp"
#include "inducilab/extremal.hpp"

using namespace inducilab;

TEST(Interval, BasicArithmeticEncloses) {
  auto third = Interval::from_rational(Rational(1, 3));
  EXPECT_LE(third.lower(), 1.0 / 3);
  EXPECT_GE(third.upper(), 1.0 / 3);
  auto l = log(Interval::from_long(10));
  EXPECT_LE(l.lower(), std::log(10.0));
  EXPECT_GE(l.upper(), std::log(10.0));
  auto e = exp(Interval::from_long(0));
  EXPECT_EQ(e.lower(), 1.0);
  EXPECT_EQ(e.upper(), 1.0);
  auto neg = Interval::from_long(-2) * Interval::from_long(3);
  EXPECT_EQ(neg.lower(), -6.0);
  EXPECT_THROW(log(Interval::from_long(0)), DomainError);
  EXPECT_THROW(Interval::from_long(1) / Interval::from_long(0), DomainError);
}

TEST(Interval, HighPrecisionSeparatesCloseValues) {
  // 1 + 2^-100 vs 1 is unknown at 64 bits but decided at higher precision.
  Rational tiny(BigCount(1), ipow(BigCount(2), 100));
  auto c = decide([&](mpfr_prec_t prec) { return compare(Interval::from_long(1, prec), Interval::from_rational(1 + tiny, prec), Relation::Less); });
  EXPECT_EQ(c, Certainty::True);
  auto at64 = compare(Interval::from_long(1), Interval::from_rational(1 + tiny), Relation::Less);
  EXPECT_EQ(at64, Certainty::Unknown);
}

TEST(Interval, Magnitudes) {
  auto m = parse_magnitude("10^200");
  EXPECT_EQ(m.exponent, 200u);
  auto l = m.log(128);
  EXPECT_NEAR(l.mid(), 200 * std::log(10.0), 1e-9);
  EXPECT_EQ(parse_magnitude("12").exact(), BigCount(12));
  EXPECT_EQ(parse_magnitude("2**10").exact(), BigCount(1024));
  EXPECT_THROW(parse_magnitude("ten"), DomainError);
}

TEST(Bounds, EExamples) {
  EXPECT_EQ(E(3, 7), 12);
  EXPECT_EQ(E(4, 3), 0);
  EXPECT_EQ(E(5, 10), 32);
  EXPECT_EQ(E(1, 9), 9);
  EXPECT_THROW(E(0, 3), DomainError);
}

TEST(Bounds, EBracketsAndMonotonicity) {
  for (std::size_t l = 1; l <= 8; ++l)
    for (std::size_t m = 0; m <= 40; ++m) {
      BigCount floor_pow = ipow(BigCount(m / l), static_cast<unsigned>(l));
      EXPECT_LE(floor_pow, E(l, m));
      EXPECT_LE(Rational(E(l, m)), detail::rpow(Rational(BigCount(m), BigCount(l)), static_cast<long>(l)));
      if (m % l == 0) EXPECT_EQ(E(l, m), floor_pow);
      if (m > 0) EXPECT_LE(E(l, m - 1), E(l, m));
    }
}

TEST(Bounds, ELemmaSuite) {
  auto rep = check_E_lemma(6, 30, 10000);
  EXPECT_EQ(rep.violations_i, 0u);
  EXPECT_EQ(rep.violations_ii, 0u);
  EXPECT_EQ(rep.violations_iii, 0u);
  EXPECT_EQ(rep.inconclusive_iii, 0u);
  EXPECT_EQ(rep.checked_iii, 10000u);
  EXPECT_EQ(rep.checked_ii, 6u * 6 * 31 * 31);
  EXPECT_TRUE(rep.ok());
}

TEST(Bounds, RatioBoundReducesToMonotonicity) {
  for (std::size_t m = 1; m <= 20; ++m)
    for (std::size_t mp = 0; mp <= m; ++mp) EXPECT_EQ(check_E_ratio({4, 4, std::max<std::size_t>(m, 4), std::min(mp, std::max<std::size_t>(m, 4)), 0}), Certainty::True);
  EXPECT_THROW(check_E_ratio({4, 5, 10, 3, 0}), DomainError);
  EXPECT_THROW(check_E_ratio({4, 2, 10, 9, Rational(1, 2)}), DomainError);
}

TEST(Bounds, EpsilonLedgerAtPaperScale) {
  Rational q(BigCount(1), ipow(BigCount(10), 20));
  auto led = epsilon_ledger(q, Magnitude{10, 200});
  for (const auto& v : led.inequalities) EXPECT_EQ(v.verdict(), Certainty::True) << v.name;
  EXPECT_TRUE(led.all_hold());
  EXPECT_EQ(led.inequalities.size(), 10u);
  // The eps5/eps4^2 link is an exact equality and must still be certified.
  EXPECT_EQ(led.find("eps5_below_eps4_square")->links[0].verdict, Certainty::True);
}

TEST(Bounds, EpsilonLedgerValuesMatchFloatingPoint) {
  auto led = epsilon_ledger(Rational(1, 1000), Magnitude::of(100000));
  const double L = std::log(1000.0);
  const double expect[] = {1e-3 / 3, 1e-2 * 1e-3 / L, 1e-5 * 1e-3 / (L * L), 1e-7 * 1e-6 / (L * L), 1e-19 * 1e-12 / std::pow(L, 4)};
  for (int i = 0; i < 5; ++i) {
    EXPECT_LE(led.eps[i].second.lower(), expect[i] * (1 + 1e-12));
    EXPECT_GE(led.eps[i].second.upper(), expect[i] * (1 - 1e-12));
  }
}

TEST(Bounds, EpsilonLedgerFailsAtSmallScale) {
  auto led = epsilon_ledger(Rational(1, 10), Magnitude::of(100));
  EXPECT_FALSE(led.all_hold());
  EXPECT_EQ(led.find("eps_chain_below_half_q")->verdict(), Certainty::False);
  EXPECT_THROW(epsilon_ledger(Rational(0), Magnitude::of(100)), DomainError);
  EXPECT_THROW(epsilon_ledger(Rational(1), Magnitude::of(100)), DomainError);
}

TEST(Bounds, EpsilonOrderingOnLogGrid) {
  for (int e = 2; e <= 60; e += 2) {
    Rational q(BigCount(1), ipow(BigCount(10), e));
    auto led = epsilon_ledger(q, Magnitude{10, 200});
    auto* ord = led.find("eps_chain_below_hundredth");
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ord->links[i].verdict, Certainty::True) << "q=1e-" << e;
    EXPECT_EQ(led.find("eps_chain_below_half_q")->links[3].verdict, Certainty::True);
  }
}

TEST(Bounds, PreconditionChainAtPaperScale) {
  auto rep = check_preconditions(Magnitude{10, 200}, Rational(1, 2));
  EXPECT_EQ(rep.chain(), Certainty::True);
  EXPECT_EQ(rep.find("ktilde_at_least_1e200")->verdict, Certainty::True);
  EXPECT_EQ(rep.find("structure_p_bound")->verdict, Certainty::True);
  EXPECT_EQ(rep.find("typicality_p_bound")->verdict, Certainty::True);
  EXPECT_EQ(rep.find("reasonable_q_bound")->verdict, Certainty::True);
  // ktilde^{1/40} = 1e5 against 100 * 200 log 10.
  EXPECT_NEAR(rep.find("ktilde_root_above_log")->log_margin, std::log(1e5) - std::log(100 * 200 * std::log(10.0)), 1e-9);
  auto with_deletion = check_preconditions(Magnitude{10, 200}, Rational(1, 2), {100, std::nullopt, std::nullopt});
  EXPECT_EQ(with_deletion.find("deletion_bound")->verdict, Certainty::True);
  EXPECT_EQ(with_deletion.chain(), Certainty::True);
  auto too_many = check_preconditions(Magnitude{10, 200}, Rational(1, 2), {116, std::nullopt, std::nullopt});
  EXPECT_EQ(too_many.find("deletion_bound")->verdict, Certainty::False);
}

TEST(Bounds, PreconditionFailuresAtDeskScale) {
  auto rep = check_preconditions(Magnitude{10, 6}, Rational(1, 2));
  EXPECT_EQ(rep.chain(), Certainty::False);
  auto* root = rep.find("ktilde_root_above_log");
  EXPECT_EQ(root->verdict, Certainty::False);
  EXPECT_LT(root->log_margin, -5);
  EXPECT_EQ(rep.find("structure_p_bound")->verdict, Certainty::False);
  EXPECT_EQ(rep.p_prime, Rational(1, 2));
  EXPECT_EQ(check_preconditions(Magnitude::of(1000), Rational(7, 10)).p_prime, Rational(3, 10));
  EXPECT_THROW(check_preconditions(Magnitude::of(1000), Rational(0)), DomainError);
}

TEST(Bounds, SequenceDiagnosticsK2IsTightOnTheRight) {
  std::vector<BigCount> seq;
  for (std::size_t m = 2; m <= 10; ++m) seq.push_back(BigCount(m * (m - 1)));
  auto d = emb_sequence_diagnostics(2, seq, 2);
  EXPECT_EQ(d.strict_violations(), 0u);
  for (const auto& c : d.strict) {
    if (c.name == "first_difference_upper") EXPECT_EQ(c.lhs, c.rhs);
    if (c.name == "first_difference_lower") EXPECT_EQ(c.rhs - c.lhs, 2);
  }
  EXPECT_THROW(emb_sequence_diagnostics(2, {}, 2), DomainError);
  EXPECT_THROW(emb_sequence_diagnostics(2, {BigCount(-1)}, 2), DomainError);
  EXPECT_THROW(emb_sequence_diagnostics(2, {BigCount(1)}, 0), DomainError);
}

TEST(Bounds, SequenceDiagnosticsOnExactSequences) {
  for (const auto& h : {graphs::complete(3), graphs::path(4)}) {
    auto seq = emb_sequence(h, h.order(), 7);
    auto d = emb_sequence_diagnostics(h.order(), seq, h.order());
    EXPECT_EQ(d.strict_violations(), 0u);
    EXPECT_FALSE(d.strict.empty());
    EXPECT_FALSE(d.report_only.empty());
  }
  // A sequence that grows too fast breaks the upper first-difference bound.
  auto bad = emb_sequence_diagnostics(2, {BigCount(2), BigCount(100)}, 2);
  EXPECT_GT(bad.strict_violations(), 0u);
}
