#include "raqr/atoms/species.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "raqr/config.hpp"
#include "raqr/constants.hpp"
#include "raqr/errors.hpp"

namespace raqr::atoms {

namespace {

constexpr const char* kSeriesLetters = "spdfgh";

std::string series_key(int l, double j) {
  // encoding used in species files: d5_2 means l=2, j=5/2
  int j2 = static_cast<int>(std::lround(2.0 * j));
  std::string out;
  out += (l < 6) ? kSeriesLetters[l] : 'x';
  out += std::to_string(j2);
  out += "_2";
  return out;
}

double mass_corrected_rydberg_thz(double mass_kg) {
  return consts::rydberg_hz / (1.0 + consts::m_e / mass_kg) * 1e-12;
}

} // namespace

void RydbergState::validate() const {
  if (n < 1 || l < 0 || l >= n)
    throw std::invalid_argument("RydbergState: require 0 <= l < n, got n=" +
                                std::to_string(n) + " l=" + std::to_string(l));
  double dj = j - l;
  if (std::abs(std::abs(dj) - 0.5) > 1e-9 || j < 0.5 - 1e-9)
    throw std::invalid_argument("RydbergState: j must be l +- 1/2 and >= 1/2");
  if (std::abs(mj) > j + 1e-9 ||
      std::abs(std::remainder(mj - 0.5, 1.0)) > 1e-9)
    throw std::invalid_argument("RydbergState: mj must be half-integer, |mj| <= j");
}

void AtomSpecies::validate() const {
  if (name.empty()) throw std::invalid_argument("species: empty name");
  if (mass_kg <= 0 || ionization_thz <= 0 || rydberg_thz <= 0 ||
      probe_wavelength_m <= 0 || coupling_wavelength_m <= 0)
    throw std::invalid_argument("species '" + name + "': non-positive datum");
}

double AtomSpecies::quantum_defect(int l, double j, int n) const {
  auto it = defects.find({l, static_cast<int>(std::lround(2.0 * j))});
  if (it == defects.end()) return 0.0;
  const DefectCoeffs& c = it->second;
  double m = static_cast<double>(n) - c.d0;
  if (std::abs(m) < 1e-9) throw NumericalError("quantum defect: n too small");
  double m2 = m * m;
  return c.d0 + c.d2 / m2 + c.d4 / (m2 * m2);
}

double AtomSpecies::effective_n(const RydbergState& s) const {
  s.validate();
  double nstar = s.n - quantum_defect(s.l, s.j, s.n);
  if (nstar <= 0)
    throw std::invalid_argument("effective_n: defect exceeds n for " + name);
  return nstar;
}

AtomSpecies AtomSpecies::defect_free() const {
  AtomSpecies sp = *this;
  sp.defects.clear();
  return sp;
}

double level_energy_thz(const AtomSpecies& sp, const RydbergState& s) {
  double nstar = sp.effective_n(s);
  return -sp.rydberg_thz / (nstar * nstar);
}

double transition_frequency_ghz(const AtomSpecies& sp, const RydbergState& a,
                                const RydbergState& b) {
  return std::abs(level_energy_thz(sp, a) - level_energy_thz(sp, b)) * 1e3;
}

bool allowed_transition(const RydbergState& a, const RydbergState& b) {
  a.validate();
  b.validate();
  if (std::abs(a.l - b.l) != 1) return false;
  double dm = std::abs(a.mj - b.mj);
  return dm < 1.0 + 1e-9; // dm in {0, 1}
}

ScaledValue scaling_property(const AtomSpecies& sp, int n, ScalingProperty p) {
  if (n < 10) throw std::invalid_argument("scaling_property: require n >= 10");
  double nstar = n - sp.quantum_defect(0, 0.5, n);
  switch (p) {
    case ScalingProperty::orbital_radius:
      // <r> of a circular-ish orbit, 1.5 n*^2 a0
      return {1.5 * nstar * nstar * consts::a0, "m"};
    case ScalingProperty::binding_energy:
      return {sp.rydberg_thz / (nstar * nstar), "THz"};
    case ScalingProperty::level_spacing:
      return {2.0 * sp.rydberg_thz / (nstar * nstar * nstar), "THz"};
    case ScalingProperty::lifetime:
      return {sp.lifetime_anchor_s * nstar * nstar * nstar, "s"};
    case ScalingProperty::polarizability:
      return {sp.polarizability_anchor_mhz_vcm2 * std::pow(nstar, 7.0),
              "MHz/(V/cm)^2"};
    case ScalingProperty::dipole_moment:
      return {nstar * nstar, "e*a0"};
  }
  throw std::invalid_argument("scaling_property: unknown property");
}

// ---------------------------------------------------------------------------
// built-in species tables
//
// Quantum defects: Cs from Goy et al., PRA 26, 2733 (1982) and Weber &
// Sansonetti, PRA 35, 4650 (1987); Rb from Li et al., PRA 67, 052502 (2003)
// and Han et al., PRA 74, 054502 (2006). Ionization energies from NIST ASD.
// D2-line data from the usual alkali datasheets (Steck).

AtomSpecies AtomSpecies::cs133() {
  AtomSpecies sp;
  sp.name = "Cs133";
  sp.mass_kg = 132.905451961 * consts::amu;
  sp.ionization_thz = 31406.4677325 * consts::cm1_to_hz * 1e-12;
  sp.rydberg_thz = mass_corrected_rydberg_thz(sp.mass_kg);
  sp.probe_wavelength_m = 852.347e-9;
  sp.coupling_wavelength_m = 510.0e-9;
  sp.probe_dipole_cm = 3.797e-29; // ~4.48 e*a0, effective D2 dipole
  sp.intermediate_decay_rad_s = 2.0 * consts::pi * 5.234e6;
  sp.lifetime_anchor_s = 1.0e-9;
  sp.polarizability_anchor_mhz_vcm2 = 1.0e-5;
  sp.defects[{0, 1}] = {4.0493532, 0.2391, 0.0};
  sp.defects[{1, 1}] = {3.5915871, 0.36273, 0.0};
  sp.defects[{1, 3}] = {3.5590676, 0.37469, 0.0};
  sp.defects[{2, 3}] = {2.4754562, 0.009320, 0.0};
  sp.defects[{2, 5}] = {2.4663144, 0.01381, 0.0};
  sp.defects[{3, 5}] = {0.0334954, -0.191, 0.0};
  sp.defects[{3, 7}] = {0.0335005, -0.191, 0.0};
  return sp;
}

AtomSpecies AtomSpecies::rb87() {
  AtomSpecies sp;
  sp.name = "Rb87";
  sp.mass_kg = 86.909180531 * consts::amu;
  sp.ionization_thz = 33690.80480 * consts::cm1_to_hz * 1e-12;
  sp.rydberg_thz = mass_corrected_rydberg_thz(sp.mass_kg);
  sp.probe_wavelength_m = 780.241e-9;
  sp.coupling_wavelength_m = 480.0e-9;
  sp.probe_dipole_cm = 3.584e-29;
  sp.intermediate_decay_rad_s = 2.0 * consts::pi * 6.0666e6;
  sp.lifetime_anchor_s = 1.0e-9;
  sp.polarizability_anchor_mhz_vcm2 = 1.0e-5;
  sp.defects[{0, 1}] = {3.1311804, 0.1784, 0.0};
  sp.defects[{1, 1}] = {2.6548849, 0.2900, 0.0};
  sp.defects[{1, 3}] = {2.6416737, 0.2950, 0.0};
  sp.defects[{2, 3}] = {1.34809171, -0.60286, 0.0};
  sp.defects[{2, 5}] = {1.34646572, -0.59600, 0.0};
  sp.defects[{3, 5}] = {0.0165192, -0.085, 0.0};
  sp.defects[{3, 7}] = {0.0165437, -0.086, 0.0};
  return sp;
}

AtomSpecies AtomSpecies::rb85() {
  AtomSpecies sp = rb87();
  sp.name = "Rb85";
  sp.mass_kg = 84.911789738 * consts::amu;
  sp.ionization_thz = 33690.79890 * consts::cm1_to_hz * 1e-12;
  sp.rydberg_thz = mass_corrected_rydberg_thz(sp.mass_kg);
  return sp;
}

AtomSpecies AtomSpecies::by_name(const std::string& name) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (key == "cs133") return cs133();
  if (key == "rb87") return rb87();
  if (key == "rb85") return rb85();
  throw MissingDataError("unknown species '" + name +
                         "' (built-ins: Cs133, Rb87, Rb85)");
}

AtomSpecies AtomSpecies::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MissingDataError("cannot open species file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  auto kv = parse_kv_text(ss.str(), path);

  auto take = [&kv, &path](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end())
      throw MissingDataError(path + ": missing species key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_num = [&take, &path](const std::string& key) {
    std::string v = take(key);
    try {
      std::size_t used = 0;
      double x = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError(path + ": key '" + key + "': '" + v + "' is not a number");
    }
  };

  AtomSpecies sp;
  sp.name = take("name");
  sp.mass_kg = take_num("mass_amu") * consts::amu;
  sp.ionization_thz = take_num("ionization_cm1") * consts::cm1_to_hz * 1e-12;
  sp.rydberg_thz = mass_corrected_rydberg_thz(sp.mass_kg);
  sp.probe_wavelength_m = take_num("probe_wavelength_nm") * 1e-9;
  sp.coupling_wavelength_m = take_num("coupling_wavelength_nm") * 1e-9;
  sp.probe_dipole_cm = take_num("probe_dipole_ea0") * consts::e_charge * consts::a0;
  sp.intermediate_decay_rad_s = 2.0 * consts::pi * take_num("intermediate_decay_mhz") * 1e6;
  sp.lifetime_anchor_s = take_num("lifetime_anchor_ns") * 1e-9;
  sp.polarizability_anchor_mhz_vcm2 = take_num("polarizability_anchor_mhz_vcm2");

  // remaining keys must all be defect entries: defect.<series>.<d0|d2|d4>
  std::map<std::string, DefectCoeffs> series;
  for (const auto& [k, v] : kv) {
    if (k.rfind("defect.", 0) != 0)
      throw ConfigError(path + ": unknown species key '" + k + "'");
    std::size_t dot = k.rfind('.');
    std::string ser = k.substr(7, dot - 7);
    std::string part = k.substr(dot + 1);
    double x = 0;
    try {
      x = std::stod(v);
    } catch (const std::exception&) {
      throw ConfigError(path + ": key '" + k + "': not a number");
    }
    if (part == "d0") series[ser].d0 = x;
    else if (part == "d2") series[ser].d2 = x;
    else if (part == "d4") series[ser].d4 = x;
    else throw ConfigError(path + ": unknown defect coefficient '" + part + "'");
  }
  for (const auto& [ser, c] : series) {
    if (ser.size() < 4 || ser.substr(ser.size() - 2) != "_2")
      throw ConfigError(path + ": bad series name '" + ser + "'");
    const char* lpos = std::strchr(kSeriesLetters, ser[0]);
    if (!lpos) throw ConfigError(path + ": bad series letter in '" + ser + "'");
    int l = static_cast<int>(lpos - kSeriesLetters);
    int j2 = std::stoi(ser.substr(1, ser.size() - 3));
    sp.defects[{l, j2}] = c;
  }
  sp.validate();
  return sp;
}

void AtomSpecies::to_file(const std::string& path) const {
  validate();
  std::ofstream f(path);
  if (!f) throw MissingDataError("cannot write species file '" + path + "'");
  f << "# species data for " << name << "\n";
  f << "name = " << name << "\n";
  char buf[64];
  auto w = [&f, &buf](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    f << key << " = " << buf << "\n";
  };
  w("mass_amu", mass_kg / consts::amu);
  w("ionization_cm1", ionization_thz * 1e12 / consts::cm1_to_hz);
  w("probe_wavelength_nm", probe_wavelength_m * 1e9);
  w("coupling_wavelength_nm", coupling_wavelength_m * 1e9);
  w("probe_dipole_ea0", probe_dipole_cm / (consts::e_charge * consts::a0));
  w("intermediate_decay_mhz", intermediate_decay_rad_s / (2.0 * consts::pi) * 1e-6);
  w("lifetime_anchor_ns", lifetime_anchor_s * 1e9);
  w("polarizability_anchor_mhz_vcm2", polarizability_anchor_mhz_vcm2);
  for (const auto& [lj, c] : defects) {
    std::string ser = series_key(lj.first, lj.second / 2.0);
    w(("defect." + ser + ".d0").c_str(), c.d0);
    w(("defect." + ser + ".d2").c_str(), c.d2);
    w(("defect." + ser + ".d4").c_str(), c.d4);
  }
}

} // namespace raqr::atoms
