#pragma once

#include <map>
#include <string>

namespace raqr::atoms {

// One Rydberg level |n, l, j, mj> of an alkali atom. j and mj are
// half-integers stored as doubles; validate() enforces the usual coupling
// rules (n >= l+1, j = l +- 1/2, |mj| <= j).
struct RydbergState {
  int n = 0;
  int l = 0;
  double j = 0.5;
  double mj = 0.5;
  void validate() const;
};

// Rydberg-Ritz expansion delta(n) = d0 + d2/(n-d0)^2 + d4/(n-d0)^4.
struct DefectCoeffs {
  double d0 = 0.0;
  double d2 = 0.0;
  double d4 = 0.0;
};

// Static per-species data: masses, series quantum defects resolved by (l, j),
// the two optical transition wavelengths used in ladder schemes, and anchor
// constants for the coarse scaling laws. Built-in tables exist for Cs133,
// Rb87 and Rb85; the same data can round-trip through a key-value text file
// (see data/*.atom and README for the schema).
struct AtomSpecies {
  std::string name;
  double mass_kg = 0.0;
  double ionization_thz = 0.0;        // from the ground state
  double rydberg_thz = 0.0;           // mass-corrected Rydberg constant
  double probe_wavelength_m = 0.0;    // ground -> intermediate (D2)
  double coupling_wavelength_m = 0.0; // intermediate -> Rydberg
  double probe_dipole_cm = 0.0;       // effective D2 dipole, C m
  double intermediate_decay_rad_s = 0.0;
  double lifetime_anchor_s = 0.0;               // tau ~ anchor * (n*)^3
  double polarizability_anchor_mhz_vcm2 = 0.0;  // alpha ~ anchor * (n*)^7
  std::map<std::pair<int, int>, DefectCoeffs> defects; // key (l, 2j)

  static AtomSpecies cs133();
  static AtomSpecies rb87();
  static AtomSpecies rb85();
  static AtomSpecies by_name(const std::string& name);
  static AtomSpecies from_file(const std::string& path);
  void to_file(const std::string& path) const;

  // copy with every quantum defect zeroed; hydrogen-like reference atom
  AtomSpecies defect_free() const;

  // Rydberg-Ritz defect for the (l, j) series at principal number n.
  // Series without a table entry (high l) have negligible defect -> 0.
  double quantum_defect(int l, double j, int n) const;
  double effective_n(const RydbergState& s) const;

  void validate() const;
};

// Level energy relative to the ionization limit, THz (negative, increasing
// with n).
double level_energy_thz(const AtomSpecies& sp, const RydbergState& s);

// |E_a - E_b| as a frequency in GHz; 0 for degenerate pairs.
double transition_frequency_ghz(const AtomSpecies& sp, const RydbergState& a,
                                const RydbergState& b);

// Electric-dipole selection rules on the quantum numbers alone.
bool allowed_transition(const RydbergState& a, const RydbergState& b);

enum class ScalingProperty {
  orbital_radius,   // m
  binding_energy,   // THz
  level_spacing,    // THz, to the next manifold
  lifetime,         // s (order-of-magnitude anchor)
  polarizability,   // MHz/(V/cm)^2 (order-of-magnitude anchor)
  dipole_moment,    // e*a0, neighbor-transition scale
};

struct ScaledValue {
  double value;
  const char* unit;
};

// Coarse power-law estimate of a property at principal number n, using the
// S-series defect of the species. Exponents: r ~ n*^2, E_b ~ n*^-2,
// spacing ~ n*^-3, tau ~ n*^3, alpha ~ n*^7, d ~ n*^2.
ScaledValue scaling_property(const AtomSpecies& sp, int n, ScalingProperty p);

} // namespace raqr::atoms
