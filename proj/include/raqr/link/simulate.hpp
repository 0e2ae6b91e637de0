#pragma once

#include <cstdint>
#include <vector>

#include "raqr/link/channel.hpp"
#include "raqr/link/modem.hpp"
#include "raqr/rx/receiver.hpp"

namespace raqr::link {

struct BerPoint {
  double tx_power_dbm = 0.0;
  double snr_db = 0.0; // mean symbol SNR over fading
  double ber = 0.0;
  double ber_stderr = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
};

struct RatePoint {
  double tx_power_dbm = 0.0;
  double snr_raqr_db = 0.0;
  double snr_conv_db = 0.0;
  double rate_raqr = 0.0; // bits/s/Hz, MRC over the receive array
  double rate_conv = 0.0;
  double gap_stderr = 0.0;
};

double dbm_to_w(double dbm);

// mean symbol SNR: received field power over the model's field-equivalent
// noise power in the channel bandwidth
double snr_at_power(double tx_power_w, const ChannelConfig& cfg,
                    const rx::BasebandModel& model);

// coherent Monte Carlo BER with per-symbol fading and genie channel
// knowledge, y = rho e^{j phi} h sqrt(P L) x + w
std::vector<BerPoint> simulate_siso(const ChannelConfig& cfg,
                                    const rx::BasebandModel& model,
                                    Modulation mod,
                                    const std::vector<double>& power_dbm,
                                    std::uint64_t bits_per_point,
                                    int threads = 0);

// ergodic achievable rate E_h[log2(1 + SNR ||h||^2)] for both models on
// common channel draws
std::vector<RatePoint> simulate_mimo_rate(const ChannelConfig& cfg,
                                          int elements,
                                          const rx::BasebandModel& raqr,
                                          const rx::BasebandModel& conv,
                                          const std::vector<double>& power_dbm,
                                          int draws, int threads = 0);

} // namespace raqr::link
