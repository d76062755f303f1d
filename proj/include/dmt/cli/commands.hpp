#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmt/errors.hpp"
#include "dmt/femto_access.hpp"
#include "dmt/io.hpp"
#include "dmt/network_dmt.hpp"
#include "dmt/outage_mc.hpp"
#include "dmt/piecewise_linear.hpp"
#include "dmt/rational.hpp"

// Command bodies behind the `dmt` executable. Each takes a plain config
// struct (filled from flags or a config file) and returns its output as
// data; writing files and mapping errors to exit codes is left to app.hpp.

namespace dmt::cli {

// ----------------------------------------------------------------- dmt ----

struct DmtCommandConfig {
  std::vector<std::string> networks{"ic-nocsit"};  // mac, x, ic-nocsit, ic-csit, zic
  int users = 2;
  int tx_antennas = 1;
  int rx_antennas = 1;
  std::string r_grid = "0:1:1/100";
  std::string out;

  friend bool operator==(const DmtCommandConfig&, const DmtCommandConfig&) = default;
};

/// Exact symmetric-rate DMT curve of the named network.
inline PiecewiseLinear network_curve(const std::string& network, int users, int tx_antennas, int rx_antennas) {
  if (network == "mac") return mac_dmt_curve_symmetric(users, tx_antennas, rx_antennas);
  if (network == "x") return x_network_dmt_curve_symmetric(users, tx_antennas, rx_antennas);
  if (network == "ic-nocsit" || network == "zic") return mac_dmt_curve_symmetric(2, 1, 1);
  if (network == "ic-csit") return ic_dmt_full_csit_curve();
  throw validation_error("network: unknown network '" + network + "' (expected mac, x, ic-nocsit, ic-csit, zic)");
}

/// Pointwise value through the network's own operation, not the curve.
inline Rational network_value(const std::string& network, const DmtCommandConfig& cfg, const Rational& r) {
  if (network == "mac") {
    MacSpec spec{{std::vector<int>(static_cast<std::size_t>(cfg.users), cfg.tx_antennas), cfg.rx_antennas},
                 std::vector<Rational>(static_cast<std::size_t>(cfg.users), r)};
    return mac_dmt(spec);
  }
  if (network == "x") {
    XNetworkSpec spec{{std::vector<int>(static_cast<std::size_t>(cfg.users), cfg.tx_antennas), cfg.rx_antennas}, {}};
    for (int s = 0; s < cfg.users; ++s)
      for (int d = 0; d < cfg.users; ++d) spec.rates[{s, d}] = r;
    return x_network_dmt(spec);
  }
  if (network == "ic-nocsit") return ic_dmt_no_csit(r, r);
  if (network == "zic") return zic_dmt(r, r);
  if (network == "ic-csit") return ic_dmt_full_csit_symmetric(r);
  throw validation_error("network: unknown network '" + network + "'");
}

struct DmtTable {
  std::string csv;
  nlohmann::json curves;  // network name -> breakpoint list
};

inline DmtTable dmt_table(const DmtCommandConfig& cfg) {
  detail::require(!cfg.networks.empty(), "network: at least one network is required");
  detail::require(cfg.users >= 1 && cfg.users <= 16, "users: must lie in [1, 16]");
  detail::require(cfg.tx_antennas >= 1, "tx-antennas: must be >= 1");
  detail::require(cfg.rx_antennas >= 1, "rx-antennas: must be >= 1");
  const auto grid = parse_grid(cfg.r_grid);
  for (const auto& r : grid) detail::require(r >= Rational(0), "r-grid: multiplexing gains must be >= 0");

  DmtTable table{{}, nlohmann::json::object()};
  std::vector<PiecewiseLinear> curves;
  for (const auto& net : cfg.networks) {
    curves.push_back(network_curve(net, cfg.users, cfg.tx_antennas, cfg.rx_antennas));
    table.curves[net] = curve_to_json(curves.back());
  }

  std::ostringstream os;
  os << 'r';
  if (cfg.networks.size() == 1) {
    os << ",d";
  } else {
    for (const auto& net : cfg.networks) os << ",d_" << net;
  }
  os << '\n';
  for (const auto& r : grid) {
    os << format_decimal(r);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const Rational d = network_value(cfg.networks[i], cfg, r);
      if (d != curves[i](r))
        throw std::logic_error("curve and pointwise DMT disagree for " + cfg.networks[i] + " at r=" + to_string(r));
      os << ',' << format_decimal(d);
    }
    os << '\n';
  }
  table.csv = os.str();
  return table;
}

// ----------------------------------------------------------------- dof ----

struct DofCommandConfig {
  std::string alpha_grid = "1/20:3:1/20";
  std::string out;

  friend bool operator==(const DofCommandConfig&, const DofCommandConfig&) = default;
};

inline std::string dof_table(const DofCommandConfig& cfg) {
  const auto alphas = parse_list_or_grid(cfg.alpha_grid);
  for (const auto& a : alphas) detail::require(a > Rational(0), "alpha-grid: alpha must be > 0");
  std::ostringstream os;
  os << "alpha,dof_closed,dof_open,dof_orthogonal\n";
  for (const auto& a : alphas) {
    os << format_decimal(a) << ',' << format_decimal(symmetric_dof(AccessPolicy::closed, a)) << ','
       << format_decimal(symmetric_dof(AccessPolicy::open, a)) << ','
       << format_decimal(symmetric_dof(AccessPolicy::orthogonal, a)) << '\n';
  }
  return os.str();
}

// --------------------------------------------------------------- femto ----

struct FemtoCommandConfig {
  std::string alphas = "1/2,1,2";
  std::string r_grid = "0:1/2:1/100";
  std::string out;

  friend bool operator==(const FemtoCommandConfig&, const FemtoCommandConfig&) = default;
};

inline std::string femto_table(const FemtoCommandConfig& cfg) {
  const auto alphas = parse_list_or_grid(cfg.alphas);
  const auto grid = parse_grid(cfg.r_grid);
  for (const auto& a : alphas) detail::require(a > Rational(0), "alphas: alpha must be > 0");
  for (const auto& r : grid) detail::require(r >= Rational(0), "r-grid: multiplexing gains must be >= 0");
  std::ostringstream os;
  os << "alpha,r,d_closed,d_open\n";
  for (const auto& a : alphas) {
    for (const auto& r : grid) {
      const FemtoRates rates{r, r};
      os << format_decimal(a) << ',' << format_decimal(r) << ',' << format_decimal(closed_access_dmt(rates, a))
         << ',' << format_decimal(open_access_dmt(rates, a)) << '\n';
    }
  }
  return os.str();
}

// -------------------------------------------------------------- outage ----

struct OutageCommandConfig {
  std::vector<double> variances{1.0, 1.0, 1.0};  // sigma^2 for h11, h21, h22
  std::vector<double> rates{0.0, 0.0, 0.0};      // R11, R2 common, R2 private (bits)
  double lambda_common = 0.0;
  std::string snr_db = "0:40:1";
  std::vector<std::string> strategy_sets{"tin+joint"};
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;

  friend bool operator==(const OutageCommandConfig&, const OutageCommandConfig&) = default;
};

struct OutageSweep {
  struct Curve {
    StrategySet strategies;
    std::vector<double> snr_db;
    std::vector<OutageEstimate> estimates;
  };
  std::vector<Curve> curves;
  std::string csv;
  nlohmann::json descriptor;
};

inline OutageSweep outage_sweep(const OutageCommandConfig& cfg) {
  detail::require(cfg.variances.size() == 3, "variances: expected three values (h11, h21, h22)");
  detail::require(cfg.rates.size() == 3, "rates: expected three values (R11, R2 common, R2 private)");
  detail::require(cfg.trials >= 1, "trials: must be >= 1");
  detail::require(!cfg.strategy_sets.empty(), "strategy-sets: at least one set is required");
  const FadingModel model{cfg.variances[0], cfg.variances[1], cfg.variances[2]};
  model.validate();
  const ZicRates rates{cfg.rates[0], SplitConfig{cfg.lambda_common, cfg.rates[1], cfg.rates[2]}};
  rates.validate();
  std::vector<double> snr_grid;
  for (const auto& q : parse_grid(cfg.snr_db)) snr_grid.push_back(to_double(q));

  OutageSweep sweep;
  std::ostringstream os;
  os << "snr_db,strategy_set,trials,failures,p_hat,ci95\n";
  std::uint64_t total_failures = 0;
  for (const auto& name : cfg.strategy_sets) {
    OutageSweep::Curve curve{StrategySet::parse(name), snr_grid, {}};
    for (double db : snr_grid) {
      const auto est = outage_probability(model, db, curve.strategies, rates, cfg.trials, cfg.seed, cfg.workers);
      total_failures += est.failures;
      os << format_decimal(db) << ',' << curve.strategies.name() << ',' << est.trials << ',' << est.failures << ','
         << format_decimal(est.p_hat) << ',' << format_decimal(est.ci95_halfwidth) << '\n';
      curve.estimates.push_back(est);
    }
    sweep.curves.push_back(std::move(curve));
  }
  const bool any_rate = cfg.rates[0] > 0.0 || cfg.rates[1] > 0.0 || cfg.rates[2] > 0.0;
  if (total_failures == 0 && any_rate)
    throw statistical_error("no outage observed at any SNR point; increase --trials or lower the SNR window");

  sweep.csv = os.str();
  std::vector<std::string> set_names;
  for (const auto& c : sweep.curves) set_names.push_back(c.strategies.name());
  sweep.descriptor = {
      {"model", {{"var11", model.var11}, {"var21", model.var21}, {"var22", model.var22}}},
      {"rates", {{"r11", rates.r11}, {"r2_common", rates.split.rate_common}, {"r2_private", rates.split.rate_private}}},
      {"split", {{"lambda_common", rates.split.lambda_common}}},
      {"snr_db", cfg.snr_db},
      {"strategy_sets", set_names},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
  };
  return sweep;
}

// --------------------------------------------------------------- slope ----

struct SlopeCommandConfig {
  std::string scenario = "single";  // single, zic, femto-closed, femto-open
  std::string r = "0";
  double base_rate = 0.0;
  std::string alpha = "1";
  std::string inr_exponent = "1";
  std::string strategies = "tin+joint";
  std::vector<double> variances{1.0, 1.0, 1.0};
  double snr_lo_db = 20.0;
  double snr_hi_db = 40.0;
  int points = 5;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  friend bool operator==(const SlopeCommandConfig&, const SlopeCommandConfig&) = default;
};

struct SlopeReport {
  SlopeFit fit;
  Rational reference;
  std::string text;
};

inline SlopeReport slope_report(const SlopeCommandConfig& cfg) {
  detail::require(cfg.variances.size() == 3, "variances: expected three values (h11, h21, h22)");
  detail::require(cfg.trials >= 1, "trials: must be >= 1");
  detail::require(cfg.base_rate >= 0.0, "base-rate: must be >= 0");
  const FadingModel model{cfg.variances[0], cfg.variances[1], cfg.variances[2]};
  const Rational r = parse_rational(cfg.r);
  detail::require(r >= Rational(0), "r: multiplexing gain must be >= 0");
  const double rd = to_double(r);

  SlopeReport report{};
  if (cfg.scenario == "single") {
    report.fit = diversity_slope(model, SingleLinkScenario{rd, cfg.base_rate}, cfg.snr_lo_db, cfg.snr_hi_db,
                                 cfg.points, cfg.trials, cfg.seed, cfg.workers);
    report.reference = ptp_dmt(1, 1)(r);
  } else if (cfg.scenario == "zic") {
    report.fit = diversity_slope(model, ZicScenario{StrategySet::parse(cfg.strategies), rd, rd, cfg.base_rate},
                                 cfg.snr_lo_db, cfg.snr_hi_db, cfg.points, cfg.trials, cfg.seed, cfg.workers);
    report.reference = zic_dmt(r, r);
  } else if (cfg.scenario == "femto-closed" || cfg.scenario == "femto-open") {
    const bool open = cfg.scenario == "femto-open";
    const Rational alpha = parse_rational(cfg.alpha);
    const FemtoScenario scenario{open ? AccessPolicy::open : AccessPolicy::closed,
                                 alpha, parse_rational(cfg.inr_exponent), rd, rd, cfg.base_rate};
    report.fit = diversity_slope(model, scenario, cfg.snr_lo_db, cfg.snr_hi_db, cfg.points, cfg.trials, cfg.seed,
                                 cfg.workers);
    report.reference = open ? open_access_dmt({r, r}, alpha) : closed_access_dmt({r, r}, alpha);
  } else {
    throw validation_error("scenario: unknown scenario '" + cfg.scenario +
                           "' (expected single, zic, femto-closed, femto-open)");
  }

  std::ostringstream os;
  os << "scenario " << cfg.scenario << ", r = " << format_decimal(r) << '\n';
  os << "snr_db,trials,failures,p_hat,ci95,used\n";
  for (const auto& pt : report.fit.points)
    os << format_decimal(pt.snr_db) << ',' << pt.estimate.trials << ',' << pt.estimate.failures << ','
       << format_decimal(pt.estimate.p_hat) << ',' << format_decimal(pt.estimate.ci95_halfwidth) << ','
       << (pt.used ? "yes" : "no") << '\n';
  os << "fitted slope: " << format_decimal(report.fit.slope) << '\n';
  os << "analytic reference: " << format_decimal(report.reference) << " (" << to_string(report.reference) << ")\n";
  report.text = os.str();
  return report;
}

}  // namespace dmt::cli
