#pragma once

#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "raqr/atoms/wavefunction.hpp"

namespace raqr::atoms {

// Energy traces E_t(field) of the fixed-mj manifold around a center state.
// traces_ghz is (field points) x (basis size); column t follows one
// adiabatic trace by maximum eigenvector overlap between consecutive field
// steps. Energies are relative to the ionization limit.
struct StarkMap {
  RydbergState center;
  double window_ghz = 0.0;
  Eigen::VectorXd fields_vcm;
  Eigen::MatrixXd traces_ghz;
  std::vector<RydbergState> basis; // zero-field identity of each trace
  int center_trace = -1;
};

// Diagonalizes H = H0 + field * D over all states with |n - n_center| <= 4
// whose zero-field energy lies within +-window/2 of the center state, at
// the center's mj. The window must capture at least two adjacent
// high-l manifolds. D uses z-polarization (fixed mj).
StarkMap stark_map(const AtomSpecies& sp, const RydbergState& center,
                   double window_ghz, const Eigen::VectorXd& fields_vcm,
                   const GridSpec& grid = {});

// Least-squares fit of E(field) = E0 + (alpha/2) field^2; returns alpha in
// MHz/(V/cm)^2 (same sign convention as the quadratic Stark shift) plus the
// R^2 of the fit.
struct QuadraticFit {
  double alpha_mhz_vcm2 = 0.0;
  double r_squared = 0.0;
};
QuadraticFit quadratic_stark_fit(const Eigen::VectorXd& fields_vcm,
                                 const Eigen::VectorXd& energies_ghz);

// Scalar polarizability of a low-l state (l <= 2) from the quadratic fit of
// its Stark trace over a weak-field span chosen automatically. States in
// the near-degenerate high-l manifold shift linearly and are rejected.
double polarizability_mhz_vcm2(const AtomSpecies& sp, const RydbergState& s,
                               const GridSpec& grid = {});

// Interior minima of the gap between adjacent (energy-ordered) traces;
// in a fixed-mj basis all traces share the same symmetry so every close
// approach is avoided.
struct AntiCrossing {
  double field_vcm = 0.0;
  double gap_ghz = 0.0;
  int lower_trace = -1;
};
std::vector<AntiCrossing> find_anticrossings(const StarkMap& map);

// CSV export: header "field_vcm,trace_000,..." then one row per field.
void write_csv(const StarkMap& map, std::ostream& os);
void write_csv(const WavefunctionTrace& tr, std::ostream& os);

} // namespace raqr::atoms
