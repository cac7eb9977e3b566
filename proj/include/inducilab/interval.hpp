#pragma once

#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <cstddef>
#include <string>

#include "bigcount.hpp"
#include "errors.hpp"

namespace inducilab {

/// Closed interval [lo, hi] with outward-rounded MPFR endpoints.
class Interval {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 64;

  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const Interval& o) {
    mpfr_init2(lo_, o.precision());
    mpfr_init2(hi_, o.precision());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept : Interval(o.precision()) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval& operator=(Interval o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval from_long(long v, mpfr_prec_t prec = kDefaultPrecision) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
  }

  static Interval from_integer(const BigCount& v, mpfr_prec_t prec = kDefaultPrecision) {
    Interval r(prec);
    const std::string s = inducilab::to_string(v);
    mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
    return r;
  }

  static Interval from_rational(const Rational& v, mpfr_prec_t prec = kDefaultPrecision) {
    return from_integer(numerator(v), prec) / from_integer(denominator(v), prec);
  }

  static Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const { return 0.5 * (lower() + upper()); }
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a) {
    Interval r(a.precision());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const auto prec = std::max(a.precision(), b.precision());
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    bool first = true;
    for (auto* x : {&a.lo_, &a.hi_})
      for (auto* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t, *x, *y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, *x, *y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(t);
    return r;
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    Interval inv(b.precision());
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  friend Interval log(const Interval& a) {
    if (!a.positive()) throw DomainError("log of a non-positive interval");
    Interval r(a.precision());
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval exp(const Interval& a) {
    Interval r(a.precision());
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }
  /// a^e for a > 0, through exp(e log a).
  friend Interval pow(const Interval& a, const Interval& e) { return exp(e * log(a)); }
  friend Interval pow(const Interval& a, const Rational& e) { return pow(a, from_rational(e, a.precision())); }

  friend Interval ipow(const Interval& a, unsigned long e) {
    Interval r = from_long(1, a.precision());
    for (unsigned long i = 0; i < e; ++i) r = r * a;
    return r;
  }

  /// Certain ordering: every point of a lies strictly below every point of b.
  friend bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_); }
  friend bool certainly_less_equal(const Interval& a, const Interval& b) { return mpfr_lessequal_p(a.hi_, b.lo_); }

  std::string to_string(int digits = 12) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "[%.*Rg, %.*Rg]", digits, lo_, digits, hi_);
    return buf;
  }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval log(const Interval& a);
Interval exp(const Interval& a);

enum class Certainty { True, False, Unknown };

inline const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::True: return "true";
    case Certainty::False: return "false";
    default: return "unknown";
  }
}

enum class Relation { Less, LessEqual };

inline Certainty compare(const Interval& a, const Interval& b, Relation rel) {
  if (rel == Relation::Less) {
    if (certainly_less(a, b)) return Certainty::True;
    if (certainly_less_equal(b, a)) return Certainty::False;
  } else {
    if (certainly_less_equal(a, b)) return Certainty::True;
    if (certainly_less(b, a)) return Certainty::False;
  }
  return Certainty::Unknown;
}

inline constexpr mpfr_prec_t kMaxPrecision = 4096;

/// Re-evaluates `eval(prec)` with doubling precision from 64 bits until the answer is not Unknown.
template <class Eval>
Certainty decide(Eval&& eval, mpfr_prec_t start = Interval::kDefaultPrecision) {
  for (mpfr_prec_t prec = start; prec <= kMaxPrecision; prec *= 2) {
    Certainty c = eval(prec);
    if (c != Certainty::Unknown) return c;
  }
  return Certainty::Unknown;
}

/// A positive integer given as base^exponent so values like 10^200 stay symbolic.
struct Magnitude {
  BigCount base = 1;
  unsigned long exponent = 1;

  static Magnitude of(const BigCount& v) { return {v, 1}; }

  Interval value(mpfr_prec_t prec) const {
    if (base <= 0) throw DomainError("magnitude base must be positive");
    return pow(Interval::from_integer(base, prec), Interval::from_long(static_cast<long>(exponent), prec));
  }
  Interval log(mpfr_prec_t prec) const {
    return Interval::from_long(static_cast<long>(exponent), prec) * inducilab::log(Interval::from_integer(base, prec));
  }
  /// Exact value when it has at most `max_bits` bits.
  std::optional<BigCount> exact(std::size_t max_bits = 4096) const {
    if (base <= 1) return base;
    if (msb(base) * exponent > max_bits) return std::nullopt;
    return ipow(base, static_cast<unsigned>(exponent));
  }
  std::string to_string() const { return exponent == 1 ? inducilab::to_string(base) : inducilab::to_string(base) + "^" + std::to_string(exponent); }
};

/// Accepts "12345", "10^200" or "10**200".
inline Magnitude parse_magnitude(const std::string& text) {
  auto at = text.find('^');
  std::size_t skip = 1;
  if (at == std::string::npos) {
    at = text.find("**");
    skip = 2;
  }
  try {
    if (at == std::string::npos) return Magnitude::of(BigCount(text));
    return {BigCount(text.substr(0, at)), std::stoul(text.substr(at + skip))};
  } catch (const std::exception&) {
    throw DomainError("cannot parse magnitude '" + text + "'");
  }
}

}  // namespace inducilab
