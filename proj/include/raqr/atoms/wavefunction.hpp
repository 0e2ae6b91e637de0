#pragma once

#include <Eigen/Dense>

#include "raqr/atoms/species.hpp"

namespace raqr::atoms {

// Radial grid control. Integration runs on x = sqrt(r/a0) with uniform
// step; a step of 0.01 gives ~200 points per de Broglie oscillation near
// the inner turning point (the fastest oscillation has wavenumber
// sqrt(8) in x), far beyond the required 20.
struct GridSpec {
  double step_x = 0.01;
  double inner_floor_bohr = 1e-6; // hard floor when l = 0
  double outer_pad = 15.0;        // r_out = 2 n (n + pad), bohr
};

// Sampled radial function R(r) with its grid (bohr, strictly increasing).
// Normalized so the trapezoid rule on the stored grid gives
// integral |r R|^2 dr = 1. Sign convention: R > 0 at the outer grid end.
struct WavefunctionTrace {
  Eigen::VectorXd r; // bohr
  Eigen::VectorXd R; // a0^{-3/2}
  int nodes = 0;
  int lattice_offset = 0; // grid index: x_i = (lattice_offset + i) * step_x
  double step_x = 0.0;
};

// Solves the radial equation in the Coulomb approximation at the effective
// principal number (energy -1/(2 n*^2)), integrating inward with Numerov.
// Integration stops once the solution has decayed under the inner
// centrifugal barrier, so the stored grid covers the classically relevant
// region only.
WavefunctionTrace radial_wavefunction(const AtomSpecies& sp, const RydbergState& s,
                                      const GridSpec& grid = {});

// Signed <a| r |b> in units of a0 (multiply by e for the dipole moment).
// Requires |l_a - l_b| = 1. Both functions are evaluated on the shared
// x-lattice, so the overlap integral needs no interpolation.
double radial_matrix_element(const AtomSpecies& sp, const RydbergState& a,
                             const RydbergState& b, const GridSpec& grid = {});

// |psi(r, theta, phi)|^2 in a0^-3 for the fine-structure state, i.e. the
// radial density times the spin-weighted sum of |Y_l,ml|^2. r in meters.
// Points beyond the outer grid end are exponentially dead and return 0;
// points inside the inner cutoff (where the Coulomb approximation has no
// support) throw std::out_of_range.
double electron_density(const AtomSpecies& sp, const RydbergState& s, double r_m,
                        double theta, double phi, const GridSpec& grid = {});

} // namespace raqr::atoms
