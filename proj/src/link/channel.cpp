#include "raqr/link/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "raqr/constants.hpp"

namespace raqr::link {

void ChannelConfig::validate() const {
  if (!(distance_m > 0)) throw std::invalid_argument("channel: distance <= 0");
  if (exponent < 2.0 || exponent > 6.0)
    throw std::invalid_argument("channel: path-loss exponent outside [2, 6]");
  if (!(ref_distance_m > 0))
    throw std::invalid_argument("channel: reference distance <= 0");
  if (!(carrier_hz > 0) || !(bandwidth_hz > 0))
    throw std::invalid_argument("channel: carrier and bandwidth must be positive");
}

double pathloss(double distance_m, double exponent, double ref_distance_m) {
  if (!(distance_m > 0) || !(ref_distance_m > 0))
    throw std::invalid_argument("pathloss: distances must be positive");
  return std::pow(distance_m / ref_distance_m, -exponent);
}

double power_density_w_m2(double tx_power_w, const ChannelConfig& cfg) {
  cfg.validate();
  if (tx_power_w < 0) throw std::invalid_argument("channel: negative power");
  double d0 = cfg.ref_distance_m;
  return tx_power_w / (4.0 * consts::pi * d0 * d0) *
         pathloss(cfg.distance_m, cfg.exponent, d0);
}

double received_field_vcm(double tx_power_w, const ChannelConfig& cfg) {
  return std::sqrt(consts::eta0 * power_density_w_m2(tx_power_w, cfg)) / 100.0;
}

std::complex<double> draw_channel(const ChannelConfig& cfg, Rng& rng) {
  if (!cfg.fading) return {1.0, 0.0};
  return rng.cgauss();
}

Eigen::VectorXcd draw_channel_vector(const ChannelConfig& cfg, int elements,
                                     Rng& rng) {
  if (elements < 1) throw std::invalid_argument("channel: elements < 1");
  Eigen::VectorXcd h(elements);
  for (int m = 0; m < elements; ++m) h[m] = draw_channel(cfg, rng);
  return h;
}

} // namespace raqr::link
