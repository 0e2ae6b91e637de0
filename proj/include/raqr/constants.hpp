#pragma once

// Physical constants, CODATA 2018 values, SI units throughout.
namespace raqr::consts {

inline constexpr double c0 = 2.99792458e8;          // speed of light, m/s
inline constexpr double h = 6.62607015e-34;         // Planck constant, J s
inline constexpr double hbar = 1.054571817e-34;     // reduced Planck constant, J s
inline constexpr double e_charge = 1.602176634e-19; // elementary charge, C
inline constexpr double kB = 1.380649e-23;          // Boltzmann constant, J/K
inline constexpr double eps0 = 8.8541878128e-12;    // vacuum permittivity, F/m
inline constexpr double eta0 = 376.730313668;       // free-space impedance, ohm
inline constexpr double a0 = 5.29177210903e-11;     // Bohr radius, m
inline constexpr double m_e = 9.1093837015e-31;     // electron mass, kg
inline constexpr double amu = 1.66053906660e-27;    // atomic mass unit, kg
inline constexpr double rydberg_hz = 3.2898419602508e15; // R_inf * c, Hz
inline constexpr double pi = 3.14159265358979323846;

// Rabi rate of a 1 e*a0 dipole driven by a 1 V/cm field, rad/s.
// Handy scale when converting tabulated dipoles to couplings.
inline constexpr double rabi_per_ea0_vcm = e_charge * a0 * 100.0 / hbar;

inline constexpr double cm1_to_hz = c0 * 100.0; // wavenumber (1/cm) to Hz

} // namespace raqr::consts
