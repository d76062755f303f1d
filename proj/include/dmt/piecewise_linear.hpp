#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dmt/errors.hpp"
#include "dmt/rational.hpp"

namespace dmt {

/// Continuous piecewise-linear function on [0, inf) with exact breakpoints.
///
/// The first breakpoint sits at x = 0, x-coordinates are strictly
/// increasing, and the function continues as a constant beyond the last
/// breakpoint. Values are nonnegative. Every instance is kept normalized
/// (no collinear interior points, no redundant trailing points), so
/// structural equality is function equality.
template <typename Q>
class basic_piecewise_linear {
public:
  struct point {
    Q x;
    Q y;
    friend bool operator==(const point&, const point&) = default;
  };

  explicit basic_piecewise_linear(std::vector<point> points) : points_(std::move(points)) {
    detail::require(!points_.empty(), "piecewise-linear curve needs at least one breakpoint");
    detail::require(points_.front().x == Q(0), "first breakpoint must be at x = 0");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      detail::require(points_[i].y >= Q(0), "curve values must be nonnegative");
      if (i > 0) detail::require(points_[i - 1].x < points_[i].x, "breakpoint x must be strictly increasing");
    }
    normalize();
  }

  static basic_piecewise_linear constant(const Q& value) { return basic_piecewise_linear({{Q(0), value}}); }

  std::span<const point> breakpoints() const noexcept { return points_; }

  Q operator()(const Q& x) const {
    detail::require(x >= Q(0), "curve evaluated at negative argument");
    auto it = std::lower_bound(points_.begin(), points_.end(), x,
                               [](const point& p, const Q& v) { return p.x < v; });
    if (it == points_.end()) return points_.back().y;
    if (it->x == x) return it->y;
    const point& hi = *it;
    const point& lo = *(it - 1);
    return lo.y + (hi.y - lo.y) * (x - lo.x) / (hi.x - lo.x);
  }

  bool is_non_increasing() const noexcept {
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (points_[i].y > points_[i - 1].y) return false;
    return true;
  }

  friend bool operator==(const basic_piecewise_linear&, const basic_piecewise_linear&) = default;

private:
  void normalize() {
    std::vector<point> out;
    out.reserve(points_.size());
    for (const point& p : points_) {
      while (out.size() >= 2) {
        const point& a = out[out.size() - 2];
        const point& b = out.back();
        if ((b.y - a.y) * (p.x - b.x) != (p.y - b.y) * (b.x - a.x)) break;
        out.pop_back();
      }
      out.push_back(p);
    }
    // constant continuation makes a flat final segment redundant
    while (out.size() >= 2 && out[out.size() - 2].y == out.back().y) out.pop_back();
    points_ = std::move(out);
  }

  std::vector<point> points_;
};

using PiecewiseLinear = basic_piecewise_linear<Rational>;

/// DMT of the M x N point-to-point Rayleigh channel: linear interpolation of
/// (k, (M-k)(N-k)) for k = 0..min(M, N), zero beyond min(M, N).
template <typename Q = Rational>
basic_piecewise_linear<Q> ptp_dmt(int tx_antennas, int rx_antennas) {
  detail::require(tx_antennas >= 1 && rx_antennas >= 1, "antenna counts must be >= 1");
  using point = typename basic_piecewise_linear<Q>::point;
  std::vector<point> pts;
  const int kmax = std::min(tx_antennas, rx_antennas);
  for (int k = 0; k <= kmax; ++k)
    pts.push_back({Q(k), Q(static_cast<std::int64_t>(tx_antennas - k) * (rx_antennas - k))});
  return basic_piecewise_linear<Q>(std::move(pts));
}

/// r -> curve(a * r)
template <typename Q>
basic_piecewise_linear<Q> compose_scale(const basic_piecewise_linear<Q>& curve, const Q& a) {
  detail::require(a > Q(0), "scale factor must be positive");
  using point = typename basic_piecewise_linear<Q>::point;
  std::vector<point> pts;
  for (const auto& p : curve.breakpoints()) pts.push_back({p.x / a, p.y});
  return basic_piecewise_linear<Q>(std::move(pts));
}

/// Exact pointwise minimum of two curves; segment crossings become breakpoints.
template <typename Q>
basic_piecewise_linear<Q> pointwise_min(const basic_piecewise_linear<Q>& a, const basic_piecewise_linear<Q>& b) {
  using point = typename basic_piecewise_linear<Q>::point;
  std::vector<Q> xs;
  for (const auto& p : a.breakpoints()) xs.push_back(p.x);
  for (const auto& p : b.breakpoints()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Both curves are affine between consecutive merged abscissae and constant
  // after the last one, so crossings can only occur strictly inside a gap.
  std::vector<Q> all = xs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Q d0 = a(xs[i]) - b(xs[i]);
    const Q d1 = a(xs[i + 1]) - b(xs[i + 1]);
    if ((d0 < Q(0) && d1 > Q(0)) || (d0 > Q(0) && d1 < Q(0)))
      all.push_back(xs[i] + d0 * (xs[i + 1] - xs[i]) / (d0 - d1));
  }
  std::sort(all.begin(), all.end());

  std::vector<point> pts;
  pts.reserve(all.size());
  for (const Q& x : all) pts.push_back({x, min_of(a(x), b(x))});
  return basic_piecewise_linear<Q>(std::move(pts));
}

template <typename Q>
basic_piecewise_linear<Q> pointwise_min(std::span<const basic_piecewise_linear<Q>> curves) {
  detail::require(!curves.empty(), "pointwise_min of an empty list");
  basic_piecewise_linear<Q> acc = curves.front();
  for (std::size_t i = 1; i < curves.size(); ++i) acc = pointwise_min(acc, curves[i]);
  return acc;
}

template <typename Q>
basic_piecewise_linear<Q> pointwise_min(const std::vector<basic_piecewise_linear<Q>>& curves) {
  return pointwise_min(std::span<const basic_piecewise_linear<Q>>(curves));
}

}  // namespace dmt
