#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "raqr/rng.hpp"

namespace raqr::link {

struct ChannelConfig {
  double distance_m = 200.0;
  double exponent = 3.8;
  double ref_distance_m = 1.0;
  bool fading = true; // Rayleigh when true, unit gain otherwise
  double carrier_hz = 6.9458e9;
  double bandwidth_hz = 1e4;
  std::uint64_t seed = 1;

  void validate() const;
};

// free-space power-law gain (d/d0)^(-exponent)
double pathloss(double distance_m, double exponent, double ref_distance_m = 1.0);

// mean incident power density at the receiver, isotropic reference
// aperture 4 pi d0^2
double power_density_w_m2(double tx_power_w, const ChannelConfig& cfg);

// rms incident field, V/cm, through the free-space impedance
double received_field_vcm(double tx_power_w, const ChannelConfig& cfg);

// one unit-variance circularly symmetric complex Gaussian gain (or exactly 1
// with fading disabled)
std::complex<double> draw_channel(const ChannelConfig& cfg, Rng& rng);

Eigen::VectorXcd draw_channel_vector(const ChannelConfig& cfg, int elements,
                                     Rng& rng);

} // namespace raqr::link
