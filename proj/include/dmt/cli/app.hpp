#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "dmt/cli/commands.hpp"
#include "dmt/errors.hpp"

namespace dmt::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 2, kStatistical = 3, kIo = 4 };

class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Configs {
  DmtCommandConfig dmt;
  DofCommandConfig dof;
  FemtoCommandConfig femto;
  OutageCommandConfig outage;
  SlopeCommandConfig slope;
};

struct Commands {
  CLI::App* dmt = nullptr;
  CLI::App* dof = nullptr;
  CLI::App* femto = nullptr;
  CLI::App* outage = nullptr;
  CLI::App* slope = nullptr;
};

namespace detail {

inline void add_workers(CLI::App* cmd, unsigned& workers) {
  cmd->add_option("--workers", workers, "Monte Carlo worker threads (0 = all cores)")
      ->envname("DMT_WORKERS")
      ->capture_default_str();
}

}  // namespace detail

/// Registers every subcommand with options bound to `cfg`. `--config FILE`
/// reads a TOML-style file whose [section] names the subcommand and whose
/// keys mirror the long flag names; flags given on the command line win.
inline Commands build_app(CLI::App& app, Configs& cfg) {
  app.require_subcommand(1);
  app.set_config("--config", "", "Experiment configuration file");
  Commands cmds;

  auto* dmt = cmds.dmt = app.add_subcommand("dmt", "Symmetric-rate DMT curve of a network");
  dmt->fallthrough()->configurable();
  dmt->add_option("network", cfg.dmt.networks, "mac, x, ic-nocsit, ic-csit or zic (several allowed)")
      ->capture_default_str();
  dmt->add_option("--users", cfg.dmt.users, "Users (mac, x)")->capture_default_str();
  dmt->add_option("--tx-antennas", cfg.dmt.tx_antennas, "Transmit antennas per user (mac, x)")->capture_default_str();
  dmt->add_option("--rx-antennas", cfg.dmt.rx_antennas, "Receive antennas (mac, x)")->capture_default_str();
  dmt->add_option("--r-grid", cfg.dmt.r_grid, "Multiplexing grid lo:hi:step (exact, e.g. 0:1/2:1/300)")
      ->capture_default_str();
  dmt->add_option("--out", cfg.dmt.out, "Output CSV path (breakpoints go to <out>.curve.json)");

  auto* dof = cmds.dof = app.add_subcommand("dof", "Symmetric DoF of femto access policies versus alpha");
  dof->fallthrough()->configurable();
  dof->add_option("--alpha-grid", cfg.dof.alpha_grid, "alpha grid lo:hi:step or list")->capture_default_str();
  dof->add_option("--out", cfg.dof.out, "Output CSV path");

  auto* femto = cmds.femto = app.add_subcommand("femto", "Closed/open access DMT curves per alpha");
  femto->fallthrough()->configurable();
  femto->add_option("--alphas", cfg.femto.alphas, "alpha list or grid")->capture_default_str();
  femto->add_option("--r-grid", cfg.femto.r_grid, "Multiplexing grid lo:hi:step")->capture_default_str();
  femto->add_option("--out", cfg.femto.out, "Output CSV path");

  auto* outage = cmds.outage = app.add_subcommand("outage", "Monte Carlo outage sweep of the Z interference channel");
  outage->fallthrough()->configurable();
  outage->add_option("--variances", cfg.outage.variances, "sigma^2 of h11 h21 h22")->expected(3)->capture_default_str();
  outage->add_option("--rates", cfg.outage.rates, "R11, R2 common, R2 private (bits)")->expected(3)->capture_default_str();
  outage->add_option("--lambda", cfg.outage.lambda_common, "Power fraction on user 2's common message")
      ->capture_default_str();
  outage->add_option("--snr-db", cfg.outage.snr_db, "SNR grid lo:hi:step in dB")->capture_default_str();
  outage->add_option("--strategy-sets", cfg.outage.strategy_sets, "Decoder sets, e.g. tin+joint tin+joint+split")
      ->capture_default_str();
  outage->add_option("--trials", cfg.outage.trials, "Trials per SNR point")->capture_default_str();
  outage->add_option("--seed", cfg.outage.seed, "RNG seed")->capture_default_str();
  detail::add_workers(outage, cfg.outage.workers);
  outage->add_option("--out", cfg.outage.out, "Output CSV path (descriptor goes to <out>.json)");

  auto* slope = cmds.slope = app.add_subcommand("slope", "Empirical diversity slope against the analytic value");
  slope->fallthrough()->configurable();
  slope->add_option("--scenario", cfg.slope.scenario, "single, zic, femto-closed or femto-open")
      ->capture_default_str();
  slope->add_option("--r", cfg.slope.r, "Multiplexing gain per user")->capture_default_str();
  slope->add_option("--base-rate", cfg.slope.base_rate, "Fixed rate offset in bits")->capture_default_str();
  slope->add_option("--alpha", cfg.slope.alpha, "alpha (femto scenarios)")->capture_default_str();
  slope->add_option("--inr-exponent", cfg.slope.inr_exponent, "INR_f exponent (femto scenarios)")
      ->capture_default_str();
  slope->add_option("--strategies", cfg.slope.strategies, "Decoder set (zic)")->capture_default_str();
  slope->add_option("--variances", cfg.slope.variances, "sigma^2 of h11 h21 h22")->expected(3)->capture_default_str();
  slope->add_option("--snr-lo", cfg.slope.snr_lo_db, "Window start (dB)")->capture_default_str();
  slope->add_option("--snr-hi", cfg.slope.snr_hi_db, "Window end (dB)")->capture_default_str();
  slope->add_option("--points", cfg.slope.points, "SNR points in the window")->capture_default_str();
  slope->add_option("--trials", cfg.slope.trials, "Trials per SNR point")->capture_default_str();
  slope->add_option("--seed", cfg.slope.seed, "RNG seed")->capture_default_str();
  detail::add_workers(slope, cfg.slope.workers);

  return cmds;
}

/// Serializes the options set on one subcommand as a config file section.
inline std::string dump_config(const CLI::App& command) {
  return "[" + command.get_name() + "]\n" + command.config_to_str(false, false);
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw io_error("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw io_error("failed writing '" + path + "'");
}

/// Runs the parsed subcommand, writing tables to `out` (or files) and
/// diagnostics to `err`. Returns the process exit code.
inline int dispatch(const Commands& cmds, const Configs& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cmds.dmt->parsed()) {
      const auto table = dmt_table(cfg.dmt);
      if (cfg.dmt.out.empty()) {
        out << table.csv;
        err << table.curves.dump() << '\n';
      } else {
        write_text(cfg.dmt.out, table.csv);
        write_text(cfg.dmt.out + ".curve.json", table.curves.dump(2) + "\n");
      }
    } else if (cmds.dof->parsed()) {
      const auto csv = dof_table(cfg.dof);
      cfg.dof.out.empty() ? void(out << csv) : write_text(cfg.dof.out, csv);
    } else if (cmds.femto->parsed()) {
      const auto csv = femto_table(cfg.femto);
      cfg.femto.out.empty() ? void(out << csv) : write_text(cfg.femto.out, csv);
    } else if (cmds.outage->parsed()) {
      const auto sweep = outage_sweep(cfg.outage);
      if (cfg.outage.out.empty()) {
        out << sweep.csv;
      } else {
        write_text(cfg.outage.out, sweep.csv);
        write_text(cfg.outage.out + ".json", sweep.descriptor.dump(2) + "\n");
      }
    } else if (cmds.slope->parsed()) {
      out << slope_report(cfg.slope).text;
    }
  } catch (const validation_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const statistical_error& e) {
    err << "error: " << e.what() << '\n';
    return kStatistical;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kSuccess;
}

/// Full entry point: parse argv, run, map errors to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Diversity-multiplexing tradeoff calculator and outage simulator", "dmt"};
  Configs cfg;
  const Commands cmds = build_app(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return dispatch(cmds, cfg, out, err);
}

}  // namespace dmt::cli
