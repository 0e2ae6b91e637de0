#pragma once

#include <complex>

#include <Eigen/Dense>

namespace raqr::eit {

// Four-level ladder |1> -> |2> -> |3> -> |4>: ground, intermediate,
// Rydberg, RF-coupled Rydberg. Drives in the rotating-wave approximation,
// decay chain 4 -> 3 -> 2 -> 1 plus one lumped pure-dephasing rate acting
// on both Rydberg levels. All rates and detunings in rad/s.
struct LadderScheme {
  double rabi_probe = 0.0;
  double rabi_coupling = 0.0;
  double rabi_rf = 0.0;
  double detune_probe = 0.0;
  double detune_coupling = 0.0;
  double detune_rf = 0.0;
  double decay_2 = 0.0;
  double decay_3 = 0.0;
  double decay_4 = 0.0;
  double dephase = 0.0; // extra Rydberg-coherence dephasing (collisions, laser linewidth)

  double rf_dipole_ea0 = 0.0; // |3>-|4> transition dipole, e*a0

  // vapor cell, used by susceptibility and Doppler averaging
  double density_m3 = 0.0;
  double length_m = 0.0;
  double temperature_k = 0.0;
  double mass_kg = 0.0;
  double probe_wavelength_m = 0.0;
  double coupling_wavelength_m = 0.0;
  double probe_dipole_cm = 0.0; // |1>-|2> dipole, C*m

  void validate() const;

  // same scheme with the RF Rabi frequency set from a field amplitude
  // through rf_dipole_ea0
  LadderScheme with_rf_field(double field_vcm) const;
  double rf_field_vcm() const; // inverse of the above
};

// Cs D2-line repo defaults (not measured values): probe 852 nm, coupling
// 510 nm, gamma2 = 2pi*5.2 MHz, Rydberg decay 2pi*10 kHz, Omega_P = 2pi*1 MHz,
// Omega_C = 2pi*3 MHz.
LadderScheme cs_ladder_defaults();

using DensityMatrix4 = Eigen::Matrix4cd;

// Hamiltonian over hbar in the rotating frame, rad/s
Eigen::Matrix4cd hamiltonian(const LadderScheme& s);

// Lindblad generator on column-major vec(rho): d vec(rho)/dt = L vec(rho)
Eigen::MatrixXcd liouvillian(const LadderScheme& s);

// unique kernel element of the liouvillian with trace 1
DensityMatrix4 steady_state(const LadderScheme& s);

// rho(t) = exp(L t) rho0 through a dense matrix exponential
DensityMatrix4 propagate(const LadderScheme& s, const DensityMatrix4& rho0,
                         double t_s);

// dimensionless probe-transition susceptibility of the cell,
// chi = 2 N d12^2 rho_21 / (eps0 hbar Omega_P)
std::complex<double> probe_susceptibility(const LadderScheme& s,
                                          const DensityMatrix4& rho);

} // namespace raqr::eit
