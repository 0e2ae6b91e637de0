#include "raqr/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "raqr/errors.hpp"

namespace raqr {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text,
                                                 const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": empty key or value");
    out[key] = val;
  }
  return out;
}

void Config::declare(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

void Config::merge_text(const std::string& text, const std::string& origin,
                        bool allow_new_keys) {
  for (const auto& [k, v] : parse_kv_text(text, origin)) {
    if (!allow_new_keys && !kv_.count(k))
      throw ConfigError(origin + ": unknown key '" + k + "'");
    kv_[k] = v;
  }
}

void Config::merge_file(const std::string& path, bool allow_new_keys) {
  std::ifstream f(path);
  if (!f) throw MissingDataError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  merge_text(ss.str(), path, allow_new_keys);
}

void Config::set(const std::string& key, const std::string& value) {
  if (!kv_.count(key)) throw ConfigError("unknown key '" + key + "'");
  kv_[key] = value;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

const std::string& Config::fetch(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw MissingDataError("missing config key '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const {
  const std::string& s = fetch(key);
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str() || *end != '\0')
    throw ConfigError("key '" + key + "': '" + s + "' is not a number");
  return v;
}

long Config::integer(const std::string& key) const {
  double v = num(key);
  long n = static_cast<long>(v);
  if (static_cast<double>(n) != v)
    throw ConfigError("key '" + key + "': expected an integer, got '" +
                      fetch(key) + "'");
  return n;
}

bool Config::flag(const std::string& key) const {
  const std::string& s = fetch(key);
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  throw ConfigError("key '" + key + "': expected on/off, got '" + s + "'");
}

const std::string& Config::str(const std::string& key) const { return fetch(key); }

void Config::dump(std::ostream& os) const {
  for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
}

Config Config::defaults() {
  Config c;
  auto d = [&c](const char* k, const char* v) { c.declare(k, v); };

  // run control
  d("run.seed", "1");
  d("run.threads", "0");          // 0 = hardware concurrency
  d("run.format", "csv");         // csv | json

  // species selection; a file path overrides the built-in table
  d("species.name", "Cs133");     // Cs133 | Rb87 | Rb85
  d("species.file", "none");

  // stark-map
  d("stark.center_n", "30");
  d("stark.center_l", "2");
  d("stark.center_j", "2.5");
  d("stark.center_mj", "0.5");
  d("stark.window_ghz", "400");
  d("stark.field_max_vcm", "150");
  d("stark.field_points", "61");

  // eit-spectrum / ats-readout; rates are angular (rad/s)
  d("eit.scenario", "ii");        // i = probe only, ii = +coupling, iii = +rf
  d("eit.rabi_probe_rad_s", "6.2831853e6");    // 2*pi * 1 MHz
  d("eit.rabi_coupling_rad_s", "1.8849556e7"); // 2*pi * 3 MHz
  d("eit.rabi_rf_rad_s", "1.2566371e8");       // 2*pi * 20 MHz
  d("eit.detune_coupling_rad_s", "0");
  d("eit.detune_rf_rad_s", "0");
  d("eit.decay2_rad_s", "3.2672564e7");        // 2*pi * 5.2 MHz
  d("eit.decay3_rad_s", "6.2831853e4");        // 2*pi * 10 kHz
  d("eit.decay4_rad_s", "6.2831853e4");
  d("eit.dephase_rad_s", "0");
  d("eit.grid_span_rad_s", "3.7699112e8");     // 2*pi * 60 MHz, probe detuning half-span
  d("eit.grid_points", "1201");
  d("eit.doppler", "off");
  d("eit.velocity_classes", "301");

  // vapor cell
  d("cell.density_m3", "1e14");
  d("cell.length_m", "0.02");
  d("cell.temperature_k", "300");

  // RF-coupled Rydberg pair shared by ats-readout and the superheterodyne
  // receiver; dipole_ea0 = auto computes it from the wavefunctions
  d("rf.state_n", "47");
  d("rf.state_l", "2");
  d("rf.state_j", "2.5");
  d("rf.partner_n", "48");
  d("rf.partner_l", "1");
  d("rf.partner_j", "1.5");
  d("rf.mj", "0.5");
  d("rf.dipole_ea0", "auto");

  // ats-readout field sweep
  d("ats.field_min_vcm", "0.002");
  d("ats.field_max_vcm", "0.005");
  d("ats.field_points", "5");

  // superheterodyne receiver (sensing configuration, single photodiode)
  d("superhet.carrier_hz", "6.9458e9");
  d("superhet.if_hz", "150e3");
  d("superhet.max_if_offset_hz", "10e6");
  d("superhet.lo_field_vcm", "auto");          // auto = bias at the steepest slope
  d("superhet.probe_power_w", "1e-6");
  d("superhet.photodetect", "diod");           // diod | bcod
  d("superhet.responsivity_a_w", "0.5");
  d("superhet.transimpedance_ohm", "1e4");
  d("superhet.noise_current_a_rthz", "20e-12");
  d("superhet.if_bandwidth_hz", "5e4");
  d("superhet.bcod_avg_cycles", "4");
  d("superhet.min_slope_vcm", "1e-2");         // below this |dT/dE| the bias is rejected

  // standard quantum limit scaling
  d("sql.atom_number", "1e6");
  d("sql.ramsey_s", "10e-6");
  d("sql.integration_s", "1");
  d("sql.calibration_vcm_s", "1.6e-11");

  // conventional RF receiver baseline
  d("conventional.temperature_k", "290");
  d("conventional.noise_figure_db", "6");

  // link geometry and modem
  d("link.distance_m", "200");
  d("link.exponent", "3.8");
  d("link.ref_distance_m", "1");
  d("link.bandwidth_hz", "1e4");
  d("link.modulation", "qpsk");  // bpsk | qpsk | 16qam
  d("link.fading", "on");
  d("link.power_min_dbm", "-10");
  d("link.power_max_dbm", "40");
  d("link.power_step_db", "2");
  d("link.bits_per_point", "1000000");
  // communication receiver: balanced detection, narrowband IF electronics
  d("link.rx_photodetect", "bcod");
  d("link.rx_probe_power_w", "15e-6");
  d("link.rx_noise_current_a_rthz", "2e-12");
  d("link.mimo_elements", "5");
  d("link.mimo_draws", "20000");

  // direction finding
  d("doa.elements", "5");
  d("doa.spacing_wl", "0.5");
  d("doa.theta_rad", "0.3");
  d("doa.samples", "64");
  d("doa.snr_min_db", "0");
  d("doa.snr_max_db", "30");
  d("doa.snr_step_db", "5");
  d("doa.trials", "500");
  d("doa.grid_step_rad", "1e-3");

  return c;
}

} // namespace raqr
