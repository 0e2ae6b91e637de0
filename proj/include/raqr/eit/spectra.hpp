#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "raqr/eit/ladder.hpp"

namespace raqr::eit {

// probe transmission and cell susceptibility versus probe detuning
struct SpectralTrace {
  Eigen::VectorXd detuning_rad_s; // ascending
  Eigen::VectorXd transmission;   // in [0, 1]
  Eigen::VectorXcd chi;

  void validate() const;
};

struct Peak {
  int index = -1;
  double x = 0.0;          // sub-grid apex position (quadratic interpolation)
  double height = 0.0;
  double prominence = 0.0;
};

// steady-state sweep over the probe detuning grid; the grid must span at
// least +-5 gamma2 around zero. Stationary-atom spectrum.
SpectralTrace transmission_spectrum(const LadderScheme& scheme,
                                    const Eigen::VectorXd& detuning_grid,
                                    int threads = 0);

// thermal 1-D average over Maxwell-Boltzmann velocity classes for the
// counter-propagating probe/coupling geometry; probe sees -k_p v, coupling
// +k_c v. Uniform trapezoid quadrature over +-4.5 sigma.
SpectralTrace doppler_average(const LadderScheme& scheme,
                              const Eigen::VectorXd& detuning_grid,
                              int velocity_classes, int threads = 0);

// local maxima with prominence >= prominence_frac of the trace's dynamic
// range, apex refined by a three-point parabola, sorted by position
std::vector<Peak> find_peaks(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y,
                             double prominence_frac = 0.1);

// distance in Hz between the two most prominent transmission peaks;
// throws AtsThresholdError when fewer than two peaks stand out. The default
// threshold admits the weak wing features of a strongly driven ladder
// (relative prominence falls as (gamma2/Omega_RF)^2, about 1e-2 at 16 gamma2)
// while staying above doppler-quadrature ripple.
double ats_splitting_hz(const SpectralTrace& trace,
                        double prominence_frac = 1e-3);

// RF field amplitude that produces a given resonant splitting for a known
// transition dipole
double field_from_splitting_vcm(double splitting_hz, double d34_ea0);

// CSV export: detuning_Hz,transmission,re_chi,im_chi
void write_csv(const SpectralTrace& trace, std::ostream& os);

} // namespace raqr::eit
