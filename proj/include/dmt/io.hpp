#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dmt/errors.hpp"
#include "dmt/piecewise_linear.hpp"
#include "dmt/rational.hpp"

namespace dmt {

/// 12 significant digits, '.' separator, no locale dependence.
inline std::string format_decimal(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

inline std::string format_decimal(const Rational& value) { return format_decimal(to_double(value)); }

/// Inclusive grid "lo:hi:step" (exact rationals), or a single value.
inline std::vector<Rational> parse_grid(std::string_view spec) {
  auto first = spec.find(':');
  if (first == std::string_view::npos) return {parse_rational(spec)};
  auto second = spec.find(':', first + 1);
  detail::require(second != std::string_view::npos, "grid must be lo:hi:step, got '" + std::string(spec) + "'");
  const Rational lo = parse_rational(spec.substr(0, first));
  const Rational hi = parse_rational(spec.substr(first + 1, second - first - 1));
  const Rational step = parse_rational(spec.substr(second + 1));
  detail::require(step > Rational(0), "grid step must be positive");
  detail::require(lo <= hi, "grid lower end exceeds upper end");
  std::vector<Rational> grid;
  for (std::int64_t i = 0;; ++i) {
    Rational x = lo + step * Rational(i);
    if (x > hi) break;
    grid.push_back(x);
  }
  return grid;
}

/// Comma separated list of rationals, or a single grid spec.
inline std::vector<Rational> parse_list_or_grid(std::string_view spec) {
  if (spec.find(':') != std::string_view::npos) return parse_grid(spec);
  std::vector<Rational> out;
  while (!spec.empty()) {
    auto comma = spec.find(',');
    out.push_back(parse_rational(spec.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return out;
}

inline nlohmann::json curve_to_json(const PiecewiseLinear& curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : curve.breakpoints()) arr.push_back({to_string(p.x), to_string(p.y)});
  return arr;
}

inline PiecewiseLinear curve_from_json(const nlohmann::json& arr) {
  detail::require(arr.is_array(), "curve JSON must be an array of breakpoint pairs");
  std::vector<PiecewiseLinear::point> pts;
  for (const auto& pair : arr) {
    detail::require(pair.is_array() && pair.size() == 2, "breakpoint must be a [x, y] pair");
    pts.push_back({parse_rational(pair[0].get<std::string>()), parse_rational(pair[1].get<std::string>())});
  }
  return PiecewiseLinear(std::move(pts));
}

/// Samples the curve on the grid as "r,d" rows with a one-line header.
inline void write_curve_csv(std::ostream& os, const PiecewiseLinear& curve, const std::vector<Rational>& grid) {
  os << "r,d\n";
  for (const Rational& r : grid) os << format_decimal(r) << ',' << format_decimal(curve(r)) << '\n';
}

}  // namespace dmt
