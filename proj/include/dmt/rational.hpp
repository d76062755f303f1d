#pragma once

#include <boost/rational.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "dmt/errors.hpp"

namespace dmt {

using Rational = boost::rational<std::int64_t>;

/// (x)^+ = max(0, x)
template <typename Q>
constexpr Q positive_part(const Q& x) {
  return x < Q(0) ? Q(0) : x;
}

template <typename Q>
constexpr Q min_of(const Q& a, const Q& b) {
  return b < a ? b : a;
}

template <typename Q>
constexpr Q max_of(const Q& a, const Q& b) {
  return a < b ? b : a;
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

/// Renders as "n/d" (denominator always present).
inline std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Parses "7", "-3/4" or a plain decimal "0.01" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw validation_error("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view digits, bool allow_sign) -> std::int64_t {
    bool negative = false;
    if (allow_sign && !digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      negative = digits.front() == '-';
      digits.remove_prefix(1);
    }
    if (digits.empty() || digits.size() > 17) fail();
    std::int64_t value = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
      value = value * 10 + (c - '0');
    }
    return negative ? -value : value;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto den = parse_int(text.substr(slash + 1), false);
    if (den == 0) fail();
    return Rational(parse_int(text.substr(0, slash), true), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational q(whole.empty() ? 0 : parse_int(whole, false));
    if (!frac.empty()) q += Rational(parse_int(frac, false), scale);
    return negative ? -q : q;
  }
  return Rational(parse_int(text, true));
}

}  // namespace dmt
