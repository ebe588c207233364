// Copyright 2026 The synspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "synspace/error.hpp"

namespace synspace {

/// Exact distances. Axiom checks compare with == and <=, so no tolerance.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Accepts "p", "p/q" and finite decimals "1.25", each with an optional
/// leading '-'. Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    throw Error(ErrorKind::ParseError,
                "bad rational '" + std::string(text) + "': " + why);
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      fail("expected p/q with decimal digits");
    Integer q{std::string(den)};
    if (q == 0) fail("zero denominator");
    value = Rational(Integer{std::string(num)}, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) ||
        !detail::all_digits(frac))
      fail("expected a finite decimal");
    Integer scale = boost::multiprecision::pow(Integer(10),
                                               static_cast<unsigned>(frac.size()));
    Integer digits{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(s)) fail("expected an integer, p/q or decimal");
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

/// Canonical exact rendering: "3", "-1/2", "6/5".
inline std::string to_string(const Rational& r) {
  const Integer& num = boost::multiprecision::numerator(r);
  const Integer& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Decimal rendering for text tables. Terminating expansions are printed
/// exactly; anything else gets six places and a leading '~'.
inline std::string to_decimal(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;

  Integer rest = den;
  while (rest % 2 == 0) rest /= 2;
  while (rest % 5 == 0) rest /= 5;
  bool exact = rest == 1;

  std::string out = Integer(num / den).str();
  Integer rem = num % den;
  std::string frac;
  for (int places = 0; rem != 0 && places < (exact ? 64 : 6); ++places) {
    rem *= 10;
    frac += Integer(rem / den).str();
    rem %= den;
  }
  if (!frac.empty()) out += "." + frac;
  if (negative) out = "-" + out;
  return exact ? out : "~" + out;
}

}  // namespace synspace
