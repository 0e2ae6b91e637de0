#include "raqr/link/doa.hpp"

#include <cmath>
#include <stdexcept>

#include "raqr/constants.hpp"
#include "raqr/errors.hpp"
#include "raqr/parallel.hpp"
#include "raqr/rng.hpp"

namespace raqr::link {

void ArrayGeometry::validate() const {
  if (elements < 1) throw std::invalid_argument("array: elements < 1");
  if (!(spacing_wl > 0)) throw std::invalid_argument("array: spacing <= 0");
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& g, double theta_rad) {
  g.validate();
  if (std::abs(theta_rad) >= 0.5 * consts::pi)
    throw std::invalid_argument("steering_vector: |theta| must be < pi/2");
  Eigen::VectorXcd a(g.elements);
  double k = 2.0 * consts::pi * g.spacing_wl * std::sin(theta_rad);
  for (int m = 0; m < g.elements; ++m)
    a[m] = std::complex<double>(std::cos(k * m), std::sin(k * m));
  return a;
}

double doa_crb(const ArrayGeometry& g, double snr_linear, int samples,
               double theta_rad) {
  g.validate();
  if (g.elements < 2)
    throw EstimationError("doa_crb: a single element cannot identify an angle");
  if (!(snr_linear > 0) || samples < 1)
    throw std::invalid_argument("doa_crb: snr and samples must be positive");
  if (std::abs(theta_rad) >= 0.5 * consts::pi)
    throw std::invalid_argument("doa_crb: |theta| must be < pi/2");
  double m = g.elements;
  double c = std::cos(theta_rad);
  double w = 2.0 * consts::pi * g.spacing_wl;
  return 6.0 / (snr_linear * samples * w * w * c * c * m * (m * m - 1.0));
}

namespace {

double ml_objective(const Eigen::MatrixXcd& x, const ArrayGeometry& g,
                    double theta) {
  return (x.adjoint() * steering_vector(g, theta)).squaredNorm();
}

} // namespace

double doa_estimate(const Eigen::MatrixXcd& samples, const ArrayGeometry& g,
                    double grid_step_rad) {
  g.validate();
  if (samples.rows() != g.elements)
    throw std::invalid_argument("doa_estimate: sample rows != array elements");
  if (samples.cols() < samples.rows())
    throw std::invalid_argument("doa_estimate: need at least M snapshots");
  if (!(grid_step_rad > 0))
    throw std::invalid_argument("doa_estimate: grid step <= 0");
  if (samples.squaredNorm() == 0.0)
    throw EstimationError("doa_estimate: degenerate all-zero samples");

  const double lim = 0.5 * consts::pi - grid_step_rad;
  double best_theta = 0.0, best_val = -1.0;
  for (double th = -lim; th <= lim; th += grid_step_rad) {
    double v = ml_objective(samples, g, th);
    if (v > best_val) {
      best_val = v;
      best_theta = th;
    }
  }

  double a = std::max(-lim, best_theta - grid_step_rad);
  double b = std::min(lim, best_theta + grid_step_rad);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double v1 = ml_objective(samples, g, x1), v2 = ml_objective(samples, g, x2);
  for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
    if (v1 < v2) {
      a = x1;
      x1 = x2;
      v1 = v2;
      x2 = a + gr * (b - a);
      v2 = ml_objective(samples, g, x2);
    } else {
      b = x2;
      x2 = x1;
      v2 = v1;
      x1 = b - gr * (b - a);
      v1 = ml_objective(samples, g, x1);
    }
  }
  return 0.5 * (a + b);
}

DoaMse doa_mse_trials(const ArrayGeometry& g, double theta_rad, int samples,
                      double snr_linear, int trials, std::uint64_t seed,
                      int threads) {
  g.validate();
  if (trials < 1) throw std::invalid_argument("doa_mse_trials: trials < 1");
  if (samples < g.elements)
    throw std::invalid_argument("doa_mse_trials: need at least M snapshots");

  Eigen::VectorXd sq_err(trials);
  const double amp = std::sqrt(snr_linear);
  parallel_for(
      trials,
      [&](int t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        Eigen::VectorXcd a = steering_vector(g, theta_rad);
        Eigen::MatrixXcd x(g.elements, samples);
        for (int i = 0; i < samples; ++i) {
          // unit-modulus source symbol keeps the per-sample SNR exact
          double ph = 2.0 * consts::pi * rng.uniform();
          std::complex<double> s =
              amp * std::complex<double>(std::cos(ph), std::sin(ph));
          for (int m = 0; m < g.elements; ++m) x(m, i) = a[m] * s + rng.cgauss();
        }
        double th = doa_estimate(x, g);
        sq_err[t] = (th - theta_rad) * (th - theta_rad);
      },
      threads);

  DoaMse out;
  out.snr_db = 10.0 * std::log10(snr_linear);
  out.mse_rad2 = sq_err.mean();
  out.crb_rad2 = doa_crb(g, snr_linear, samples, theta_rad);
  out.trials = trials;
  return out;
}

} // namespace raqr::link
