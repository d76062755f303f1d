#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "dmt/errors.hpp"
#include "dmt/rational.hpp"

// Femto-cell access policies with CSIT. The femto user (1) talks to the
// femto access point; the macro user (2) talks to the macro base station and
// leaks into the femto access point. alpha = log SNR_m / log SNR_f.

namespace dmt {

enum class AccessPolicy { closed, open, orthogonal };

inline AccessPolicy parse_access_policy(std::string_view name) {
  if (name == "closed") return AccessPolicy::closed;
  if (name == "open") return AccessPolicy::open;
  if (name == "orthogonal") return AccessPolicy::orthogonal;
  throw validation_error("unknown access policy '" + std::string(name) + "'");
}

struct FemtoConfig {
  Rational alpha{1};
  double snr_f_db = 0.0;
  Rational inr_exponent{1};  // INR_f = SNR_f^inr_exponent

  void validate() const {
    detail::require(alpha > Rational(0), "alpha must be > 0");
    detail::require(inr_exponent >= Rational(0) && inr_exponent <= Rational(1), "inr_exponent must lie in [0, 1]");
    detail::require(std::isfinite(snr_f_db), "snr_f_db must be finite");
  }
};

/// Multiplexing gains of the femto (r11) and macro (r22) users. In open
/// access the macro user's aggregate r2 = r21 + r22 plays the role of r22.
struct FemtoRates {
  Rational r11{0};
  Rational r22{0};

  void validate() const {
    detail::require(r11 >= Rational(0) && r22 >= Rational(0), "multiplexing gains must be >= 0");
  }
};

namespace detail {

inline Rational femto_common_terms(const FemtoRates& rates, const Rational& alpha, const Rational& d_b) {
  rates.validate();
  require(alpha > Rational(0), "alpha must be > 0");
  const Rational sum = rates.r11 + rates.r22;
  const Rational d_a = positive_part(Rational(1) - rates.r11);
  const Rational d_c = Rational(2) * positive_part(Rational(1) - Rational(2) * sum) +
                       positive_part(alpha - Rational(2) * sum);
  return min_of(d_a, min_of(d_b, d_c));
}

}  // namespace detail

/// Closed access: min((1-r11)^+, (alpha-r22)^+, 2(1-2 r_sum)^+ + (alpha-2 r_sum)^+).
inline Rational closed_access_dmt(const FemtoRates& rates, const Rational& alpha) {
  return detail::femto_common_terms(rates, alpha, positive_part(alpha - rates.r22));
}

/// Open access: as closed access, but the macro term becomes
/// (1-r22)^+ + (alpha-r22)^+ since the femto AP offers a second path.
inline Rational open_access_dmt(const FemtoRates& rates, const Rational& alpha) {
  return detail::femto_common_terms(
      rates, alpha, positive_part(Rational(1) - rates.r22) + positive_part(alpha - rates.r22));
}

/// DoF per user under orthogonal access, alpha / (1 + alpha).
inline Rational orthogonal_dof(const Rational& alpha) {
  detail::require(alpha >= Rational(0), "alpha must be >= 0");
  return alpha / (Rational(1) + alpha);
}

/// Largest equal per-user DoF r admitted by the policy's high-SNR constraints.
inline Rational symmetric_dof(AccessPolicy policy, const Rational& alpha) {
  detail::require(alpha > Rational(0), "alpha must be > 0");
  const Rational half_sum_cap = max_of(Rational(1), alpha) / Rational(2);
  switch (policy) {
    case AccessPolicy::closed:
      // r <= 1, r <= alpha, 2r <= max(1, alpha)
      return min_of(Rational(1), min_of(alpha, half_sum_cap));
    case AccessPolicy::open:
      // r <= 1, r <= max(alpha, 1), 2r <= max(1, alpha)
      return min_of(Rational(1), half_sum_cap);
    case AccessPolicy::orthogonal:
      return orthogonal_dof(alpha);
  }
  throw validation_error("unknown access policy");
}

/// Channel coefficients of the Z topology (H_12 = 0).
struct ZChannelGains {
  std::complex<double> h11;
  std::complex<double> h21;
  std::complex<double> h22;
};

/// Linear-scale link SNRs of the femto geometry.
struct ZChannelSnr {
  double snr_f = 1.0;
  double snr_m = 1.0;
  double inr_f = 1.0;

  void validate() const {
    for (double v : {snr_f, snr_m, inr_f})
      detail::require(std::isfinite(v) && v > 0.0, "link SNRs must be positive and finite");
  }

  /// SNR_f from dB; SNR_m = SNR_f^alpha; INR_f = SNR_f^inr_exponent.
  static ZChannelSnr from_config(const FemtoConfig& config) {
    config.validate();
    const double snr = std::pow(10.0, config.snr_f_db / 10.0);
    return {snr, std::pow(snr, to_double(config.alpha)), std::pow(snr, to_double(config.inr_exponent))};
  }
};

/// Right-hand sides (bits/channel use) of the four Z-channel outer-bound constraints.
struct ZOuterBound {
  double femto;        // (a) R11
  double macro;        // (b) R2
  double sum_direct;   // (c) R11 + R2
  double sum_crossed;  // (d) R11 + R2
};

inline ZOuterBound z_outer_bound(const ZChannelGains& gains, const ZChannelSnr& snr) {
  snr.validate();
  for (auto h : {gains.h11, gains.h21, gains.h22})
    detail::require(std::isfinite(h.real()) && std::isfinite(h.imag()), "channel gains must be finite");
  const double f = snr.snr_f * std::norm(gains.h11);
  const double i = snr.inr_f * std::norm(gains.h21);
  const double m = snr.snr_m * std::norm(gains.h22);
  return {
      std::log2(1.0 + f),
      std::log2(1.0 + std::max(m, i)),
      std::log2(1.0 + f + i) + std::log2(1.0 + m / (1.0 + i)),
      std::log2(1.0 + f + i / (1.0 + m)) + std::log2(1.0 + m),
  };
}

/// Open access (Z channel): is (R11, R2) inside the outer bound?
inline bool z_outer_bound_contains(const ZChannelGains& gains, const ZChannelSnr& snr, double r11, double r2) {
  detail::require(r11 >= 0.0 && r2 >= 0.0, "rates must be >= 0");
  const ZOuterBound b = z_outer_bound(gains, snr);
  return r11 <= b.femto && r2 <= b.macro && r11 + r2 <= b.sum_direct && r11 + r2 <= b.sum_crossed;
}

/// Closed access (Z interference channel): as the Z-channel bound, but the
/// macro message reaches only the macro base station, so its individual
/// constraint keeps just the direct link.
inline bool closed_outer_bound_contains(const ZChannelGains& gains, const ZChannelSnr& snr, double r11, double r22) {
  detail::require(r11 >= 0.0 && r22 >= 0.0, "rates must be >= 0");
  const ZOuterBound b = z_outer_bound(gains, snr);
  const double macro_direct = std::log2(1.0 + snr.snr_m * std::norm(gains.h22));
  return r11 <= b.femto && r22 <= macro_direct && r11 + r22 <= b.sum_direct && r11 + r22 <= b.sum_crossed;
}

}  // namespace dmt
