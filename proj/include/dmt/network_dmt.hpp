#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "dmt/errors.hpp"
#include "dmt/piecewise_linear.hpp"
#include "dmt/rational.hpp"

// Analytic DMT of the MAC, the X network, and the two-user interference and
// Z interference channels. All links are assumed to have equal strength, so
// nothing here takes fading variances.

namespace dmt {

struct AntennaConfig {
  std::vector<int> tx;  // M_s per source
  int rx = 1;           // N, shared by all receivers

  static AntennaConfig single_antenna(std::size_t users) { return {std::vector<int>(users, 1), 1}; }

  void validate() const {
    detail::require(!tx.empty(), "at least one transmitter is required");
    for (int m : tx) detail::require(m >= 1, "transmit antenna counts must be >= 1");
    detail::require(rx >= 1, "receive antenna count must be >= 1");
  }
};

/// Multiplexing gains r_sd keyed by 0-based (source, destination).
using MultiplexingTuple = std::map<std::pair<int, int>, Rational>;

struct MacSpec {
  AntennaConfig antennas;
  std::vector<Rational> rates;

  void validate() const {
    antennas.validate();
    detail::require(rates.size() == antennas.tx.size(), "MAC needs one rate per user");
    for (const auto& r : rates) detail::require(r >= Rational(0), "multiplexing gains must be >= 0");
  }
};

struct XNetworkSpec {
  AntennaConfig antennas;  // S = D = antennas.tx.size()
  MultiplexingTuple rates;

  void validate() const {
    antennas.validate();
    const int users = static_cast<int>(antennas.tx.size());
    for (const auto& [link, r] : rates) {
      detail::require(link.first >= 0 && link.first < users && link.second >= 0 && link.second < users,
                      "X-network rate refers to a link outside the S x S topology");
      detail::require(r >= Rational(0), "multiplexing gains must be >= 0");
    }
  }
};

/// Diversity of user `user` (0-based): minimum over every user set containing
/// it of d_{sum M, N}(sum r). All 2^(S-1) sets are enumerated.
inline Rational mac_user_dmt(const MacSpec& spec, std::size_t user) {
  spec.validate();
  const std::size_t users = spec.rates.size();
  detail::require(user < users, "MAC user index out of range");
  detail::require(users < 63, "too many MAC users for subset enumeration");

  std::vector<std::size_t> others;
  for (std::size_t s = 0; s < users; ++s)
    if (s != user) others.push_back(s);

  std::map<int, PiecewiseLinear> ptp_cache;
  Rational best(0);
  bool first = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
    int antennas = spec.antennas.tx[user];
    Rational rate = spec.rates[user];
    for (std::size_t j = 0; j < others.size(); ++j) {
      if (mask & (std::uint64_t{1} << j)) {
        antennas += spec.antennas.tx[others[j]];
        rate += spec.rates[others[j]];
      }
    }
    auto it = ptp_cache.find(antennas);
    if (it == ptp_cache.end()) it = ptp_cache.emplace(antennas, ptp_dmt(antennas, spec.antennas.rx)).first;
    const Rational d = it->second(rate);
    if (first || d < best) best = d;
    first = false;
  }
  return best;
}

/// Overall MAC diversity: the worst user.
inline Rational mac_dmt(const MacSpec& spec) {
  spec.validate();
  Rational best = mac_user_dmt(spec, 0);
  for (std::size_t s = 1; s < spec.rates.size(); ++s) best = min_of(best, mac_user_dmt(spec, s));
  return best;
}

/// MAC DMT curve for equal rates r_1 = ... = r_S = r and M antennas per user.
inline PiecewiseLinear mac_dmt_curve_symmetric(int users, int tx_antennas, int rx_antennas) {
  detail::require(users >= 1, "MAC needs at least one user");
  std::vector<PiecewiseLinear> terms;
  for (int k = 1; k <= users; ++k)
    terms.push_back(compose_scale(ptp_dmt(k * tx_antennas, rx_antennas), Rational(k)));
  return pointwise_min(terms);
}

/// X network: aggregate r_s = sum_d r_sd and evaluate the MAC at one receiver.
inline Rational x_network_dmt(const XNetworkSpec& spec) {
  spec.validate();
  MacSpec mac{spec.antennas, std::vector<Rational>(spec.antennas.tx.size(), Rational(0))};
  for (const auto& [link, r] : spec.rates) mac.rates[static_cast<std::size_t>(link.first)] += r;
  return mac_dmt(mac);
}

/// X network curve with every r_sd = r, so each source carries S * r.
inline PiecewiseLinear x_network_dmt_curve_symmetric(int users, int tx_antennas, int rx_antennas) {
  return compose_scale(mac_dmt_curve_symmetric(users, tx_antennas, rx_antennas), Rational(users));
}

namespace detail {

inline MacSpec two_user_siso(const Rational& r1, const Rational& r2) {
  return {AntennaConfig::single_antenna(2), {r1, r2}};
}

}  // namespace detail

/// Two-user single-antenna interference channel without CSIT (same as the MAC).
inline Rational ic_dmt_no_csit(const Rational& r1, const Rational& r2) {
  return mac_dmt(detail::two_user_siso(r1, r2));
}

/// min((1-r)^+, 3(1-2r)^+): symmetric IC with full CSIT.
inline Rational ic_dmt_full_csit_symmetric(const Rational& r) {
  detail::require(r >= Rational(0), "multiplexing gain must be >= 0");
  return min_of(positive_part(Rational(1) - r), Rational(3) * positive_part(Rational(1) - Rational(2) * r));
}

inline PiecewiseLinear ic_dmt_full_csit_curve() {
  const PiecewiseLinear single({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  const PiecewiseLinear pair({{Rational(0), Rational(3)}, {Rational(1, 2), Rational(0)}});
  return pointwise_min(single, pair);
}

/// Z interference channel (no link from transmitter 1 to receiver 2).
/// Its DMT coincides with the two-user MAC; kept separate so that identity is
/// checked rather than assumed.
inline Rational zic_dmt(const Rational& r1, const Rational& r2) {
  MacSpec mac = detail::two_user_siso(r1, r2);
  return min_of(mac_user_dmt(mac, 0), mac_user_dmt(mac, 1));
}

}  // namespace dmt
