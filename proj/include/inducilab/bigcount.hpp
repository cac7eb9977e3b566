#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace inducilab {

/// Exact natural-number counts (embeddings grow like n^k).
using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigCount from_u128(unsigned __int128 v) {
  BigCount hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

inline BigCount ipow(const BigCount& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

inline BigCount falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigCount r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= (n - i);
  return r;
}

inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigCount num = falling_factorial(n, k);
  BigCount den = falling_factorial(k, k);
  return num / den;
}

inline std::string to_string(const BigCount& c) { return c.str(); }
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Parses "0.25", "1/3", "1e-20", "3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty number", 0);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigCount num(text.substr(0, slash));
    BigCount den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    return Rational(num, den);
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  BigCount mantissa = 0;
  long exponent = 0;
  bool any_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      any_digit = true;
      if (after_point) --exponent;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("expected digits in '" + text + "'", pos);
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw ParseError("unexpected character in '" + text + "'", pos);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + text + "'", pos + 1);
    }
    if (pos + 1 + used != text.size()) throw ParseError("trailing characters in '" + text + "'", pos + 1 + used);
    exponent += e;
  }
  Rational r = mantissa;
  if (exponent > 0) r *= ipow(BigCount(10), static_cast<unsigned>(exponent));
  if (exponent < 0) r /= ipow(BigCount(10), static_cast<unsigned>(-exponent));
  return negative ? Rational(-r) : r;
}

}  // namespace inducilab
