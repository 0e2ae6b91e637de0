#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace raqr::link {

// uniform linear array, element spacing in carrier wavelengths
struct ArrayGeometry {
  int elements = 5;
  double spacing_wl = 0.5;

  void validate() const;
};

// narrowband far-field response a_m = exp(j 2 pi spacing m sin theta)
Eigen::VectorXcd steering_vector(const ArrayGeometry& g, double theta_rad);

// single-source deterministic CRB on the arrival angle, rad^2:
// 6 / (snr T (2 pi spacing)^2 cos^2 theta M (M^2 - 1))
double doa_crb(const ArrayGeometry& g, double snr_linear, int samples,
               double theta_rad);

// conditional maximum likelihood: coarse grid scan of ||X^H a(theta)||^2
// with golden-section refinement
double doa_estimate(const Eigen::MatrixXcd& samples, const ArrayGeometry& g,
                    double grid_step_rad = 1e-3);

struct DoaMse {
  double snr_db = 0.0;
  double mse_rad2 = 0.0;
  double crb_rad2 = 0.0;
  int trials = 0;
};

// Monte Carlo MSE of the ML estimator against the bound at one SNR
DoaMse doa_mse_trials(const ArrayGeometry& g, double theta_rad, int samples,
                      double snr_linear, int trials, std::uint64_t seed,
                      int threads = 0);

} // namespace raqr::link
