#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dmt/errors.hpp"
#include "dmt/femto_access.hpp"
#include "dmt/network_dmt.hpp"
#include "dmt/philox.hpp"
#include "dmt/rational.hpp"

// Seeded Monte Carlo outage simulation over Rayleigh block fading for the
// Z topology (h11: tx1->rx1, h21: tx2->rx1, h22: tx2->rx2). Outage is the
// event that the target rates fall outside what the chosen decoders support
// on the realized channel; no codewords are simulated.

namespace dmt {

enum class Link : std::uint32_t { h11 = 0, h21 = 1, h22 = 2 };

/// Independent CN(0, variance) coefficient per link.
struct FadingModel {
  double var11 = 1.0;
  double var21 = 1.0;
  double var22 = 1.0;

  double variance(Link link) const noexcept {
    switch (link) {
      case Link::h11: return var11;
      case Link::h21: return var21;
      case Link::h22: return var22;
    }
    return 1.0;
  }

  void validate() const {
    for (double v : {var11, var21, var22})
      detail::require(std::isfinite(v) && v > 0.0, "fading variances must be positive and finite");
  }
};

/// One CN(0, variance) draw, fully determined by (seed, trial, link).
inline std::complex<double> sample_link(double variance, std::uint64_t trial_index, Link link,
                                        std::uint64_t seed) noexcept {
  const auto out = Philox4x32::generate(
      {static_cast<std::uint32_t>(trial_index), static_cast<std::uint32_t>(trial_index >> 32),
       static_cast<std::uint32_t>(link), 0u},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const double u_mag = to_open_unit(out[0], out[1]);
  const double u_phase = to_open_unit(out[2], out[3]);
  // |h|^2 ~ Exp(mean = variance), uniform phase
  return std::polar(std::sqrt(-variance * std::log(u_mag)), 2.0 * std::numbers::pi * u_phase);
}

inline ZChannelGains sample_channel(const FadingModel& model, std::uint64_t trial_index, std::uint64_t seed) noexcept {
  return {sample_link(model.var11, trial_index, Link::h11, seed),
          sample_link(model.var21, trial_index, Link::h21, seed),
          sample_link(model.var22, trial_index, Link::h22, seed)};
}

/// Rate split of user 2: the common part is decoded at receiver 1, the
/// private part is treated as noise there.
struct SplitConfig {
  double lambda_common = 0.0;  // fraction of user 2's power on the common message
  double rate_common = 0.0;
  double rate_private = 0.0;

  double total_rate() const noexcept { return rate_common + rate_private; }

  void validate() const {
    detail::require(lambda_common >= 0.0 && lambda_common <= 1.0, "lambda_common must lie in [0, 1]");
    detail::require(rate_common >= 0.0 && rate_private >= 0.0, "split rates must be >= 0");
  }
};

/// Decoders receiver 1 may choose from on each realization.
struct StrategySet {
  bool treat_as_noise = false;
  bool joint_decode = false;
  bool rate_split = false;

  void validate() const {
    detail::require(treat_as_noise || joint_decode || rate_split, "at least one decoding strategy must be enabled");
  }

  /// "tin+joint+split" style names.
  static StrategySet parse(std::string_view text) {
    StrategySet set;
    while (!text.empty()) {
      const auto plus = text.find('+');
      const auto token = text.substr(0, plus);
      if (token == "tin") set.treat_as_noise = true;
      else if (token == "joint") set.joint_decode = true;
      else if (token == "split") set.rate_split = true;
      else throw validation_error("unknown decoding strategy '" + std::string(token) + "'");
      if (plus == std::string_view::npos) break;
      text.remove_prefix(plus + 1);
    }
    set.validate();
    return set;
  }

  std::string name() const {
    std::string out;
    auto add = [&](bool on, const char* token) {
      if (!on) return;
      if (!out.empty()) out += '+';
      out += token;
    };
    add(treat_as_noise, "tin");
    add(joint_decode, "joint");
    add(rate_split, "split");
    return out;
  }
};

/// Receiver 1 treats user 2 as noise; receiver 2 is interference free.
inline bool tin_ok(const ZChannelGains& g, double snr, double r11, double r2_total) {
  const double s11 = snr * std::norm(g.h11), s21 = snr * std::norm(g.h21), s22 = snr * std::norm(g.h22);
  return r11 <= std::log2(1.0 + s11 / (1.0 + s21)) && r2_total <= std::log2(1.0 + s22);
}

/// Receiver 1 decodes both messages as a two-user MAC.
inline bool joint_ok(const ZChannelGains& g, double snr, double r11, double r2_total) {
  const double s11 = snr * std::norm(g.h11), s21 = snr * std::norm(g.h21), s22 = snr * std::norm(g.h22);
  return r11 <= std::log2(1.0 + s11) && r2_total <= std::log2(1.0 + s21) &&
         r11 + r2_total <= std::log2(1.0 + s11 + s21) && r2_total <= std::log2(1.0 + s22);
}

/// Receiver 1 jointly decodes W1 and user 2's common part with the private
/// part as noise; receiver 2 decodes its whole superposed codeword.
inline bool split_ok(const ZChannelGains& g, double snr, double r11, const SplitConfig& split) {
  const double s11 = snr * std::norm(g.h11), s21 = snr * std::norm(g.h21), s22 = snr * std::norm(g.h22);
  const double ic = split.lambda_common * s21;
  const double noise = 1.0 + (1.0 - split.lambda_common) * s21;
  return r11 <= std::log2(1.0 + s11 / noise) && split.rate_common <= std::log2(1.0 + ic / noise) &&
         r11 + split.rate_common <= std::log2(1.0 + (s11 + ic) / noise) &&
         split.total_rate() <= std::log2(1.0 + s22);
}

/// Target rates of the Z interference channel. Strategies without splitting
/// see user 2 at split.total_rate().
struct ZicRates {
  double r11 = 0.0;
  SplitConfig split;

  void validate() const {
    detail::require(r11 >= 0.0, "rates must be >= 0");
    split.validate();
  }
};

/// Success if any enabled strategy supports the rates on this realization.
inline bool zic_success(const ZChannelGains& g, double snr, const StrategySet& strategies, const ZicRates& rates) {
  const double r2 = rates.split.total_rate();
  return (strategies.treat_as_noise && tin_ok(g, snr, rates.r11, r2)) ||
         (strategies.joint_decode && joint_ok(g, snr, rates.r11, r2)) ||
         (strategies.rate_split && split_ok(g, snr, rates.r11, rates.split));
}

struct OutageEstimate {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double p_hat = 0.0;
  double ci95_halfwidth = 0.0;  // normal approximation
  std::uint64_t seed = 0;

  static OutageEstimate from_counts(std::uint64_t trials, std::uint64_t failures, std::uint64_t seed) {
    const double p = static_cast<double>(failures) / static_cast<double>(trials);
    return {trials, failures, p, 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), seed};
  }
};

inline unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Counts trials where `success(gains)` is false. Trials are split into
/// contiguous blocks across workers; since every draw depends only on
/// (seed, trial index) the count is independent of the worker count.
template <typename SuccessFn>
OutageEstimate estimate_outage(const FadingModel& model, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                               const SuccessFn& success) {
  model.validate();
  detail::require(trials >= 1, "trial count must be >= 1");
  workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), trials));

  std::vector<std::uint64_t> failures(workers, 0);
  auto run = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    std::uint64_t count = 0;
    for (std::uint64_t t = begin; t < end; ++t)
      if (!success(sample_channel(model, t, seed))) ++count;
    failures[w] = count;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::uint64_t total = 0;
  for (auto f : failures) total += f;
  return OutageEstimate::from_counts(trials, total, seed);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Outage of the Z interference channel at one SNR (common to all links,
/// shaped by the per-link variances).
inline OutageEstimate outage_probability(const FadingModel& model, double snr_db, const StrategySet& strategies,
                                         const ZicRates& rates, std::uint64_t trials, std::uint64_t seed,
                                         unsigned workers = 1) {
  strategies.validate();
  rates.validate();
  detail::require(std::isfinite(snr_db), "SNR must be finite");
  const double snr = db_to_linear(snr_db);
  return estimate_outage(model, trials, seed, workers,
                         [&](const ZChannelGains& g) { return zic_success(g, snr, strategies, rates); });
}

/// First SNR (dB) where the outage curve drops to `target`, by linear
/// interpolation of log10(p) in dB between the bracketing grid points.
inline std::optional<double> crossing_snr_db(std::span<const double> snr_db, std::span<const double> p_hat,
                                             double target) {
  detail::require(snr_db.size() == p_hat.size(), "SNR grid and estimates differ in length");
  for (std::size_t i = 1; i < snr_db.size(); ++i) {
    if (p_hat[i - 1] >= target && p_hat[i] < target) {
      if (p_hat[i] <= 0.0) return snr_db[i];
      const double y0 = std::log10(p_hat[i - 1]), y1 = std::log10(p_hat[i]), yt = std::log10(target);
      return snr_db[i - 1] + (yt - y0) / (y1 - y0) * (snr_db[i] - snr_db[i - 1]);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Diversity slope estimation. A scenario turns an SNR into a success
// predicate over channel realizations, with target rates R = r log2(SNR) + base.

/// Single link h11 with fixed-rate offset.
struct SingleLinkScenario {
  double r = 0.0;
  double base_rate = 0.0;

  auto at_snr(double snr_db) const {
    const double snr = db_to_linear(snr_db);
    const double rate = r * std::log2(snr) + base_rate;
    return [snr, rate](const ZChannelGains& g) { return rate <= std::log2(1.0 + snr * std::norm(g.h11)); };
  }
};

/// Z interference channel without rate splitting.
struct ZicScenario {
  StrategySet strategies{true, true, false};
  double r1 = 0.0;
  double r2 = 0.0;
  double base_rate = 0.0;

  void validate() const {
    strategies.validate();
    detail::require(!strategies.rate_split, "slope estimation does not support rate splitting");
  }

  auto at_snr(double snr_db) const {
    const double snr = db_to_linear(snr_db);
    const double scale = std::log2(snr);
    const ZicRates rates{r1 * scale + base_rate, SplitConfig{0.0, 0.0, r2 * scale + base_rate}};
    return [snr, rates, s = strategies](const ZChannelGains& g) { return zic_success(g, snr, s, rates); };
  }
};

/// Femto cell with SNR_m = SNR_f^alpha and INR_f = SNR_f^inr_exponent;
/// success means the rate pair is inside the policy's outer bound.
struct FemtoScenario {
  AccessPolicy policy = AccessPolicy::closed;
  Rational alpha{1};
  Rational inr_exponent{1};
  double r11 = 0.0;
  double r22 = 0.0;
  double base_rate = 0.0;

  void validate() const {
    detail::require(policy != AccessPolicy::orthogonal, "orthogonal access has no outage bound to simulate");
    FemtoConfig{alpha, 0.0, inr_exponent}.validate();
  }

  auto at_snr(double snr_db) const {
    const ZChannelSnr snr = ZChannelSnr::from_config({alpha, snr_db, inr_exponent});
    const double scale = std::log2(snr.snr_f);
    const double rate11 = r11 * scale + base_rate, rate22 = r22 * scale + base_rate;
    const bool open = policy == AccessPolicy::open;
    return [snr, rate11, rate22, open](const ZChannelGains& g) {
      return open ? z_outer_bound_contains(g, snr, rate11, rate22)
                  : closed_outer_bound_contains(g, snr, rate11, rate22);
    };
  }
};

struct SlopePoint {
  double snr_db = 0.0;
  OutageEstimate estimate;
  bool used = false;  // false when below the failure floor
};

struct SlopeFit {
  double slope = 0.0;  // negated log10(p) vs log10(SNR) least-squares slope
  std::vector<SlopePoint> points;
};

inline constexpr std::uint64_t kMinFailuresPerPoint = 50;

/// Estimates the diversity order as the negated least-squares slope of
/// log10(outage) versus log10(SNR) over an evenly spaced dB window.
template <typename Scenario>
SlopeFit diversity_slope(const FadingModel& model, const Scenario& scenario, double snr_lo_db, double snr_hi_db,
                         int points, std::uint64_t trials_per_point, std::uint64_t seed, unsigned workers = 1) {
  detail::require(snr_lo_db < snr_hi_db, "SNR window must satisfy lo < hi");
  detail::require(points >= 2, "slope fit needs at least two SNR points");
  if constexpr (requires { scenario.validate(); }) scenario.validate();

  SlopeFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int i = 0; i < points; ++i) {
    const double db = snr_lo_db + (snr_hi_db - snr_lo_db) * i / (points - 1);
    SlopePoint pt{db, estimate_outage(model, trials_per_point, seed, workers, scenario.at_snr(db)), false};
    if (pt.estimate.failures >= kMinFailuresPerPoint) {
      pt.used = true;
      const double x = db / 10.0, y = std::log10(pt.estimate.p_hat);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++used;
    }
    fit.points.push_back(pt);
  }
  if (used < 2) throw statistical_error("diversity too high for trial budget");
  const double n = used;
  fit.slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace dmt
