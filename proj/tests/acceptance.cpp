// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dmt/cli/commands.hpp"
#include "dmt/dmt.hpp"

namespace {

using dmt::Rational;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  explicit Check(Outcome& out) : out_(out) {}
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }

 private:
  Outcome& out_;
};

Rational grid_point(int i, int n) { return Rational(i, n); }

std::string str(const Rational& q) { return dmt::to_string(q); }

// 1. IC without CSIT matches full CSIT up to r = 1/3 and falls below it after.
Outcome fig2_shape() {
  Outcome out;
  Check c(out);
  for (int i = 0; i <= 100; ++i) {
    const Rational r = grid_point(i, 100);
    const Rational no = dmt::ic_dmt_no_csit(r, r), full = dmt::ic_dmt_full_csit_symmetric(r);
    if (r <= Rational(1, 3)) {
      c.expect(no == full, "mismatch at r=" + str(r));
    } else if (r < Rational(1, 2)) {
      c.expect(no < full, "no strict gap at r=" + str(r));
    } else {
      c.expect(no == Rational(0) && full == Rational(0), "nonzero at r=" + str(r));
    }
  }
  for (const Rational& r : {Rational(1, 3) + Rational(1, 1000), Rational(49, 100), Rational(499, 1000)})
    c.expect(dmt::ic_dmt_no_csit(r, r) < dmt::ic_dmt_full_csit_symmetric(r), "no strict gap at r=" + str(r));

  const auto curve = dmt::cli::network_curve("ic-nocsit", 2, 1, 1);
  const auto bps = curve.breakpoints();
  const bool has_corner = std::any_of(bps.begin(), bps.end(), [](const auto& p) {
    return p.x == Rational(1, 3) && p.y == Rational(2, 3);
  });
  c.expect(has_corner, "breakpoint (1/3, 2/3) missing");
  const auto full = dmt::ic_dmt_full_csit_curve();
  for (int i = 0; i <= 100; ++i) {
    const Rational r = grid_point(i, 200);
    if (r <= Rational(1, 3)) c.expect(curve(r) == full(r), "curves differ at r=" + str(r));
  }
  out.detail = out.pass ? "corner at (1/3, 2/3)" : out.detail;
  return out;
}

// 2. ZIC, IC without CSIT and enumerated MAC agree on a 101x101 grid.
Outcome oracle_equivalence() {
  Outcome out;
  Check c(out);
  for (int i = 0; i <= 100 && out.pass; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const Rational r1 = grid_point(i, 100), r2 = grid_point(j, 100);
      const Rational mac = dmt::mac_dmt(dmt::MacSpec{dmt::AntennaConfig::single_antenna(2), {r1, r2}});
      const Rational ic = dmt::ic_dmt_no_csit(r1, r2), zic = dmt::zic_dmt(r1, r2);
      c.expect(ic == mac && zic == mac, "disagreement at (" + str(r1) + ", " + str(r2) + ")");
    }
  }
  for (int i = 0; i <= 100; ++i) {
    const Rational r = grid_point(i, 100);
    const Rational one = dmt::positive_part(Rational(1) - r);
    const Rational two = dmt::positive_part(Rational(1) - Rational(2) * r);
    const Rational closed = dmt::min_of(one, dmt::min_of(Rational(2) * two, Rational(3) * two));
    c.expect(dmt::ic_dmt_no_csit(r, r) == closed, "closed form differs at r=" + str(r));
  }
  out.detail = out.pass ? "10201 grid points" : out.detail;
  return out;
}

// 3. Closed and open access coincide for alpha in {1, 2}; closed is worse at 1/2.
Outcome fig3_identity() {
  Outcome out;
  Check c(out);
  for (const Rational& alpha : {Rational(1), Rational(2)}) {
    for (int i = 0; i <= 100; ++i) {
      const Rational r = grid_point(i, 200);
      const dmt::FemtoRates rates{r, r};
      c.expect(dmt::closed_access_dmt(rates, alpha) == dmt::open_access_dmt(rates, alpha),
               "alpha=" + str(alpha) + " differs at r=" + str(r));
    }
  }
  const Rational half(1, 2);
  for (int i = 0; i <= 100; ++i) {
    const Rational r = grid_point(i, 200);
    const dmt::FemtoRates rates{r, r};
    c.expect(dmt::closed_access_dmt(rates, half) <= dmt::open_access_dmt(rates, half),
             "alpha=1/2 closed above open at r=" + str(r));
  }
  const dmt::FemtoRates at{Rational(1, 5), Rational(1, 5)};
  const Rational closed = dmt::closed_access_dmt(at, half), open = dmt::open_access_dmt(at, half);
  c.expect(closed == Rational(3, 10) && open == Rational(2, 5),
           "r=1/5: closed " + str(closed) + ", open " + str(open));
  out.detail = out.pass ? "alpha=1/2, r=1/5: closed 3/10 < open 2/5" : out.detail;
  return out;
}

// 4. Symmetric DoF per policy.
Outcome fig4_dof() {
  Outcome out;
  Check c(out);
  using dmt::AccessPolicy;
  for (const auto& alpha : dmt::parse_grid("1/20:3:1/20")) {
    const Rational closed = dmt::symmetric_dof(AccessPolicy::closed, alpha);
    const Rational open = dmt::symmetric_dof(AccessPolicy::open, alpha);
    if (alpha >= Rational(1, 2)) {
      c.expect(closed == open, "closed != open at alpha=" + str(alpha));
    } else {
      c.expect(closed < open, "closed not below open at alpha=" + str(alpha));
    }
  }
  const Rational o1 = dmt::symmetric_dof(AccessPolicy::orthogonal, Rational(1));
  const Rational c1 = dmt::symmetric_dof(AccessPolicy::closed, Rational(1));
  c.expect(o1 == c1 && o1 == Rational(1, 2), "alpha=1: orthogonal " + str(o1) + ", closed " + str(c1));
  const Rational oh = dmt::symmetric_dof(AccessPolicy::orthogonal, Rational(1, 2));
  const Rational ch = dmt::symmetric_dof(AccessPolicy::closed, Rational(1, 2));
  c.expect(oh == Rational(1, 3) && ch == Rational(1, 2), "alpha=1/2: orthogonal " + str(oh) + ", closed " + str(ch));
  out.detail = out.pass ? "alpha=1/2: orthogonal 1/3 < closed 1/2" : out.detail;
  return out;
}

dmt::cli::OutageCommandConfig fig1_config() {
  dmt::cli::OutageCommandConfig cfg;
  cfg.variances = {1.0, 0.03, 1.4};
  cfg.rates = {2.0, 0.4, 2.0};
  cfg.lambda_common = 0.7;
  cfg.snr_db = "10:35:1/4";
  cfg.strategy_sets = {"tin+joint", "tin+joint+split"};
  cfg.trials = 1000000;
  cfg.seed = 20090601;
  cfg.workers = 0;
  return cfg;
}

// 5. Rate splitting gains about 2 dB at p = 6e-2 and bends the outage curve.
Outcome fig1_monte_carlo() {
  Outcome out;
  Check c(out);
  const auto sweep = dmt::cli::outage_sweep(fig1_config());
  std::vector<std::vector<double>> p;
  for (const auto& curve : sweep.curves) {
    std::vector<double> ph;
    for (const auto& e : curve.estimates) {
      c.expect(e.trials >= 1000000, "fewer than 1e6 trials per point");
      ph.push_back(e.p_hat);
    }
    p.push_back(std::move(ph));
  }
  const auto& snr = sweep.curves[0].snr_db;
  const auto base = dmt::crossing_snr_db(snr, p[0], 6e-2);
  const auto split = dmt::crossing_snr_db(snr, p[1], 6e-2);
  if (!base || !split) {
    c.expect(false, "a curve never reaches p = 6e-2");
    return out;
  }
  const double gap = *base - *split;
  c.expect(std::abs(gap - 2.0) <= 0.75, "gap " + dmt::format_decimal(gap) + " dB outside 2 +- 0.75");

  // log-outage difference grows then shrinks: the split curve is steep while
  // TIN dominates and flattens once partial decoding takes over
  std::vector<double> diff;
  for (std::size_t i = 0; i < snr.size(); ++i)
    if (p[0][i] > 0.0 && p[1][i] > 0.0) diff.push_back(std::log10(p[0][i]) - std::log10(p[1][i]));
  const auto peak = std::max_element(diff.begin(), diff.end());
  const bool interior = peak != diff.begin() && peak != diff.end() - 1;
  c.expect(interior && *peak - diff.front() > 0.1 && *peak - diff.back() > 0.1,
           "log-outage difference is monotone");
  std::ostringstream os;
  os << "crossings " << dmt::format_decimal(*base) << " / " << dmt::format_decimal(*split) << " dB, gap "
     << dmt::format_decimal(gap) << " dB, peak log10 ratio " << dmt::format_decimal(*peak);
  if (out.pass) out.detail = os.str();
  return out;
}

// 6. Fitted slopes against analytic diversity.
Outcome empirical_slopes() {
  Outcome out;
  Check c(out);
  const dmt::FadingModel unit{};
  std::ostringstream os;

  const auto single = dmt::diversity_slope(unit, dmt::SingleLinkScenario{0.0, 1.0}, 20.0, 40.0, 5, 1000000, 101, 0);
  c.expect(std::abs(single.slope - 1.0) <= 0.1, "single link slope " + dmt::format_decimal(single.slope));

  const dmt::ZicScenario zic{{true, true, false}, 0.2, 0.2, 0.0};
  const auto z = dmt::diversity_slope(unit, zic, 20.0, 40.0, 5, 1000000, 102, 0);
  const double z_ref = dmt::to_double(dmt::zic_dmt(Rational(1, 5), Rational(1, 5)));
  c.expect(std::abs(z.slope - z_ref) <= 0.15, "ZIC slope " + dmt::format_decimal(z.slope));

  dmt::FemtoScenario femto;
  femto.policy = dmt::AccessPolicy::closed;
  femto.alpha = Rational(1, 2);
  femto.r11 = 0.2;
  femto.r22 = 0.2;
  const auto f = dmt::diversity_slope(unit, femto, 20.0, 40.0, 5, 1000000, 103, 0);
  const double f_ref =
      dmt::to_double(dmt::closed_access_dmt({Rational(1, 5), Rational(1, 5)}, Rational(1, 2)));
  c.expect(std::abs(f.slope - f_ref) <= 0.15, "closed-access slope " + dmt::format_decimal(f.slope));

  for (const auto* fit : {&single, &z, &f})
    for (const auto& pt : fit->points)
      c.expect(pt.used && pt.estimate.failures >= dmt::kMinFailuresPerPoint,
               "point below failure floor at " + dmt::format_decimal(pt.snr_db) + " dB");

  os << "single " << dmt::format_decimal(single.slope) << " (1), ZIC " << dmt::format_decimal(z.slope) << " ("
     << dmt::format_decimal(z_ref) << "), closed " << dmt::format_decimal(f.slope) << " ("
     << dmt::format_decimal(f_ref) << ")";
  if (out.pass) out.detail = os.str();
  return out;
}

// 7. Same seed, same bytes, whatever the worker count.
Outcome determinism() {
  Outcome out;
  Check c(out);
  auto cfg = fig1_config();
  cfg.snr_db = "10:30:5/2";
  cfg.trials = 200000;
  cfg.workers = 1;
  const std::string reference = dmt::cli::outage_sweep(cfg).csv;
  c.expect(dmt::cli::outage_sweep(cfg).csv == reference, "repeat run differs");
  for (unsigned w : {4u, 16u}) {
    cfg.workers = w;
    c.expect(dmt::cli::outage_sweep(cfg).csv == reference, "workers=" + std::to_string(w) + " differs");
  }
  if (out.pass) out.detail = "workers 1, 4, 16 and a repeat run";
  return out;
}

// 8. Fading draws are exponential in power; single-link outage has a closed form.
Outcome distributional_sanity() {
  Outcome out;
  Check c(out);
  const dmt::FadingModel model{1.0, 0.03, 1.4};
  constexpr std::size_t n = 100000;
  const double critical = 1.628 / std::sqrt(static_cast<double>(n));
  std::ostringstream os;
  for (dmt::Link link : {dmt::Link::h11, dmt::Link::h21, dmt::Link::h22}) {
    const double var = model.variance(link);
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::norm(dmt::sample_link(var, t, link, 77)) / var;
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = 1.0 - std::exp(-x[i]);
      d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    c.expect(d < critical, "KS statistic " + dmt::format_decimal(d) + " on link " +
                               std::to_string(static_cast<int>(link)));
    os << "KS " << dmt::format_decimal(d) << ", ";
  }
  for (double db : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    for (double var : {1.0, 1.4}) {
      const double rate = 1.0;
      const auto est = dmt::estimate_outage(dmt::FadingModel{var, 1.0, 1.0}, 100000, 78, 0,
                                            dmt::SingleLinkScenario{0.0, rate}.at_snr(db));
      const double exact = 1.0 - std::exp(-(std::exp2(rate) - 1.0) / (var * dmt::db_to_linear(db)));
      c.expect(std::abs(est.p_hat - exact) <= 3.0 * est.ci95_halfwidth,
               "single link at " + dmt::format_decimal(db) + " dB: " + dmt::format_decimal(est.p_hat) + " vs " +
                   dmt::format_decimal(exact));
    }
  }
  os << "critical " << dmt::format_decimal(critical);
  if (out.pass) out.detail = os.str();
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double budget_s;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "IC DMT with and without CSIT", fig2_shape, 1.0},
      {2, "ZIC / IC / MAC equivalence", oracle_equivalence, 1.0},
      {3, "open vs closed access DMT", fig3_identity, 1.0},
      {4, "symmetric DoF per access policy", fig4_dof, 1.0},
      {5, "rate-splitting outage gain", fig1_monte_carlo, 300.0},
      {6, "empirical diversity slopes", empirical_slopes, 600.0},
      {7, "deterministic outage CSV", determinism, 0.0},
      {8, "fading and single-link outage", distributional_sanity, 0.0},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_s > 0.0 && secs > cr.budget_s && o.pass) {
      o.pass = false;
      o.detail = "over time budget of " + dmt::format_decimal(cr.budget_s) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d: %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
