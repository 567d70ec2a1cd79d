// Copyright 2026 The txcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TXCOST_ARITHMETIC_HPP_
#define TXCOST_ARITHMETIC_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace txcost {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Comparison policy for the two supported scalar modes. Every predicate in
// the library goes through these so that a single tolerance governs floating
// point mode while rational mode stays exact.
template <class R>
struct arith;

template <>
struct arith<double> {
  static constexpr bool exact = false;
  static constexpr double tol = 1e-9;

  static bool eq(double a, double b) { return std::fabs(a - b) <= tol; }
  static bool ne(double a, double b) { return !eq(a, b); }
  static bool lt(double a, double b) { return a < b - tol; }
  static bool leq(double a, double b) { return a <= b + tol; }
  static bool gt(double a, double b) { return lt(b, a); }
  static bool geq(double a, double b) { return leq(b, a); }
  static bool is_zero(double a) { return eq(a, 0.0); }
  static bool is_finite(double a) { return std::isfinite(a); }
  static double abs(double a) { return std::fabs(a); }
  static double to_double(double a) { return a; }
  static double from_rational(const Rational& r) {
    return r.convert_to<double>();
  }
};

template <>
struct arith<Rational> {
  static constexpr bool exact = true;

  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool ne(const Rational& a, const Rational& b) { return a != b; }
  static bool lt(const Rational& a, const Rational& b) { return a < b; }
  static bool leq(const Rational& a, const Rational& b) { return a <= b; }
  static bool gt(const Rational& a, const Rational& b) { return a > b; }
  static bool geq(const Rational& a, const Rational& b) { return a >= b; }
  static bool is_zero(const Rational& a) { return a.is_zero(); }
  static bool is_finite(const Rational&) { return true; }
  static Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }
  static double to_double(const Rational& a) { return a.convert_to<double>(); }
  static const Rational& from_rational(const Rational& r) { return r; }
};

namespace detail {

// Sign, digit string and decimal exponent of a literal: value is
// +/- digits * 10^exponent.
struct DecimalParts {
  bool negative = false;
  std::string digits;
  int exponent = 0;
};

inline std::optional<DecimalParts> split_decimal(std::string_view text) {
  DecimalParts parts;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    parts.negative = text[pos] == '-';
    ++pos;
  }
  std::size_t digits_seen = 0;
  int frac_digits = 0;
  bool dot_seen = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      parts.digits.push_back(c);
      ++digits_seen;
      if (dot_seen) ++frac_digits;
    } else if (c == '.') {
      if (dot_seen) return std::nullopt;
      dot_seen = true;
    } else {
      break;
    }
  }
  if (digits_seen == 0) return std::nullopt;
  long long exp10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    std::size_t exp_digits = 0;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
      exp10 = exp10 * 10 + (text[pos] - '0');
      if (exp10 > 9999) return std::nullopt;
      ++exp_digits;
    }
    if (exp_digits == 0) return std::nullopt;
    if (exp_neg) exp10 = -exp10;
  }
  if (pos != text.size()) return std::nullopt;
  parts.exponent = static_cast<int>(exp10) - frac_digits;
  // cpp_int reads a leading zero as an octal prefix; strip them.
  std::size_t keep = parts.digits.find_first_not_of('0');
  parts.digits.erase(0, keep == std::string::npos ? parts.digits.size() - 1
                                                  : keep);
  return parts;
}

inline Rational rational_from_parts(const DecimalParts& parts) {
  BigInt mantissa(parts.digits.empty() ? "0" : parts.digits);
  Rational value(mantissa);
  if (parts.exponent > 0) {
    value *= Rational(pow(BigInt(10), static_cast<unsigned>(parts.exponent)));
  } else if (parts.exponent < 0) {
    value /= Rational(pow(BigInt(10), static_cast<unsigned>(-parts.exponent)));
  }
  if (parts.negative) value = -value;
  return value;
}

}  // namespace detail

// Parses a decimal literal ("60", "0.05", "-1.2e2") exactly; both scalar
// modes accept the same language and double mode receives the correctly
// rounded value of the exact decimal.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto parts = detail::split_decimal(text);
  if (!parts) return std::nullopt;
  return detail::rational_from_parts(*parts);
}

template <class R>
std::optional<R> parse_number(std::string_view text) {
  auto exact = parse_rational(text);
  if (!exact) return std::nullopt;
  return R(arith<R>::from_rational(*exact));
}

// Display rounding used by --paper-rounding: one decimal place, ties away
// from zero. Returns the value in tenths.
inline long long round_tenths(double value) { return std::llround(value * 10.0); }

inline long long round_tenths(const Rational& value) {
  Rational tenths = value * 10;
  BigInt num = numerator(tenths);
  BigInt den = denominator(tenths);
  BigInt quot = num / den;
  BigInt rem = num % den;
  if (2 * abs(rem) >= den) quot += num < 0 ? -1 : 1;
  return quot.convert_to<long long>();
}

template <class R>
std::string round_tenths_str(const R& value) {
  long long tenths = round_tenths(value);
  std::string out;
  if (tenths < 0) {
    out.push_back('-');
    tenths = -tenths;
  }
  out += std::to_string(tenths / 10);
  out.push_back('.');
  out += std::to_string(tenths % 10);
  return out;
}

}  // namespace txcost

#endif  // TXCOST_ARITHMETIC_HPP_
