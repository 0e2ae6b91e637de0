// raqr: command-line front end. Every experiment is a subcommand; each run
// resolves its configuration (defaults < --config file < --set overrides <
// dedicated flags), writes a manifest plus a replayable resolved config into
// the output directory, and emits data tables as CSV or JSON.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "raqr/atoms/species.hpp"
#include "raqr/atoms/stark.hpp"
#include "raqr/atoms/wavefunction.hpp"
#include "raqr/atoms/angular.hpp"
#include "raqr/config.hpp"
#include "raqr/constants.hpp"
#include "raqr/csv.hpp"
#include "raqr/eit/spectra.hpp"
#include "raqr/errors.hpp"
#include "raqr/link/doa.hpp"
#include "raqr/link/simulate.hpp"
#include "raqr/rx/receiver.hpp"
#include "raqr/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- plumbing

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string format;              // empty = keep configured value
  long long seed = -1;             // < 0 = keep configured value
  int threads = -1;                // < 0 = keep configured value
  std::vector<std::string> sets;   // key=value overrides
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "configuration file overlaying the defaults");
  cmd->add_option("--out", o.out_dir, "output directory, created if absent")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed (overrides run.seed)");
  cmd->add_option("--threads", o.threads, "worker threads, 0 = hardware (overrides run.threads)");
  cmd->add_option("--format", o.format, "data table format: csv | json");
  cmd->add_option("--set", o.sets, "override one config key, key=value (repeatable)");
}

raqr::Config resolve_config(const CommonOpts& o) {
  raqr::Config cfg = raqr::Config::defaults();
  if (!o.config_path.empty()) cfg.merge_file(o.config_path);
  for (const std::string& kv : o.sets) cfg.merge_text(kv, "--set");
  if (o.seed >= 0) cfg.set("run.seed", std::to_string(o.seed));
  if (o.threads >= 0) cfg.set("run.threads", std::to_string(o.threads));
  if (!o.format.empty()) cfg.set("run.format", o.format);
  const std::string& fmt = cfg.str("run.format");
  if (fmt != "csv" && fmt != "json")
    throw raqr::ConfigError("run.format must be csv or json, got '" + fmt + "'");
  return cfg;
}

std::string iso_utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// numeric table with named columns; renders as CSV rows or a JSON object
struct ColumnTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(const std::vector<double>& r) {
    if (r.size() != columns.size())
      throw std::logic_error("table row width mismatch");
    rows.push_back(r);
  }
};

void render_table(const ColumnTable& t, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    raqr::CsvWriter w(os);
    w.header(t.columns);
    for (const auto& r : t.rows) w.row(r);
    return;
  }
  ordered_json j;
  j["columns"] = t.columns;
  auto rows = ordered_json::array();
  for (const auto& r : t.rows) rows.push_back(r);
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

// Owns the output directory, the manifest lifecycle and table emission.
// The manifest is written in "running" state before any work and finalized
// afterwards; data files themselves carry no timestamps so a repeated run
// is byte-identical.
class RunContext {
public:
  RunContext(std::string subcommand, const raqr::Config& cfg, std::string out_dir)
      : sub_(std::move(subcommand)), cfg_(cfg), out_(std::move(out_dir)),
        t0_(std::chrono::steady_clock::now()) {
    fs::create_directories(out_);
    manifest_["tool"] = "raqr";
    manifest_["tool_version"] = raqr::kVersion;
    manifest_["subcommand"] = sub_;
    manifest_["status"] = "running";
    manifest_["seed"] = cfg_.integer("run.seed");
    manifest_["started"] = iso_utc_now();
    manifest_["finished"] = nullptr;
    manifest_["elapsed_s"] = nullptr;
    manifest_["resolved_config"] = ordered_json(cfg_.entries());
    manifest_["output_paths"] = ordered_json::array();
    write_manifest();
    emit_resolved_config();
  }

  const raqr::Config& cfg() const { return cfg_; }
  int threads() const { return static_cast<int>(cfg_.integer("run.threads")); }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(cfg_.integer("run.seed")); }
  const fs::path& dir() const { return out_; }

  void write_table(const std::string& stem, const ColumnTable& t) {
    const std::string& fmt = cfg_.str("run.format");
    std::string name = stem + "." + fmt;
    std::ofstream f(out_ / name, std::ios::binary);
    if (!f) throw raqr::MissingDataError("cannot open output file '" + (out_ / name).string() + "'");
    render_table(t, fmt, f);
    outputs_.push_back(name);
  }

  void note(const std::string& key, const ordered_json& value) { extras_[key] = value; }

  void finish() {
    manifest_["status"] = "ok";
    finalize();
  }

  void fail(const std::string& what) {
    manifest_["status"] = "error";
    manifest_["error"] = what;
    finalize();
  }

private:
  void emit_resolved_config() {
    std::string name = sub_ + ".resolved.cfg";
    std::ofstream f(out_ / name, std::ios::binary);
    if (!f) throw raqr::MissingDataError("cannot open output file '" + (out_ / name).string() + "'");
    cfg_.dump(f);
    outputs_.push_back(name);
  }

  void finalize() {
    manifest_["finished"] = iso_utc_now();
    manifest_["elapsed_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    manifest_["output_paths"] = outputs_;
    if (!extras_.empty()) manifest_["summary"] = extras_;
    write_manifest();
  }

  void write_manifest() {
    std::ofstream f(out_ / (sub_ + ".manifest.json"), std::ios::binary);
    f << manifest_.dump(2) << '\n';
  }

  std::string sub_;
  raqr::Config cfg_;
  fs::path out_;
  std::chrono::steady_clock::time_point t0_;
  ordered_json manifest_;
  ordered_json extras_;
  std::vector<std::string> outputs_;
};

// ------------------------------------------------------- shared assembly

raqr::atoms::AtomSpecies species_from(const raqr::Config& cfg) {
  const std::string& file = cfg.str("species.file");
  if (file != "none") return raqr::atoms::AtomSpecies::from_file(file);
  return raqr::atoms::AtomSpecies::by_name(cfg.str("species.name"));
}

raqr::atoms::RydbergState rf_state(const raqr::Config& cfg) {
  raqr::atoms::RydbergState s;
  s.n = static_cast<int>(cfg.integer("rf.state_n"));
  s.l = static_cast<int>(cfg.integer("rf.state_l"));
  s.j = cfg.num("rf.state_j");
  s.mj = cfg.num("rf.mj");
  s.validate();
  return s;
}

raqr::atoms::RydbergState rf_partner(const raqr::Config& cfg) {
  raqr::atoms::RydbergState s;
  s.n = static_cast<int>(cfg.integer("rf.partner_n"));
  s.l = static_cast<int>(cfg.integer("rf.partner_l"));
  s.j = cfg.num("rf.partner_j");
  s.mj = cfg.num("rf.mj");
  s.validate();
  return s;
}

// z-dipole of the RF-coupled Rydberg pair, e*a0; "auto" computes radial
// matrix element times the angular factor at the configured mj
double resolve_rf_dipole(const raqr::Config& cfg, const raqr::atoms::AtomSpecies& sp) {
  const std::string& v = cfg.str("rf.dipole_ea0");
  if (v != "auto") return cfg.num("rf.dipole_ea0");
  raqr::atoms::RydbergState a = rf_state(cfg);
  raqr::atoms::RydbergState b = rf_partner(cfg);
  if (!raqr::atoms::allowed_transition(a, b))
    throw raqr::ConfigError("rf pair is not dipole-coupled; check rf.* quantum numbers");
  double radial = raqr::atoms::radial_matrix_element(sp, a, b);
  double angular = raqr::atoms::stark_angular_factor(a.l, a.j, b.l, b.j, cfg.num("rf.mj"));
  return std::abs(radial * angular);
}

raqr::eit::LadderScheme scheme_from(const raqr::Config& cfg,
                                    const raqr::atoms::AtomSpecies& sp,
                                    double rf_dipole_ea0) {
  raqr::eit::LadderScheme s;
  s.rabi_probe = cfg.num("eit.rabi_probe_rad_s");
  s.rabi_coupling = cfg.num("eit.rabi_coupling_rad_s");
  s.rabi_rf = cfg.num("eit.rabi_rf_rad_s");
  s.detune_coupling = cfg.num("eit.detune_coupling_rad_s");
  s.detune_rf = cfg.num("eit.detune_rf_rad_s");
  s.decay_2 = cfg.num("eit.decay2_rad_s");
  s.decay_3 = cfg.num("eit.decay3_rad_s");
  s.decay_4 = cfg.num("eit.decay4_rad_s");
  s.dephase = cfg.num("eit.dephase_rad_s");
  s.rf_dipole_ea0 = rf_dipole_ea0;
  s.density_m3 = cfg.num("cell.density_m3");
  s.length_m = cfg.num("cell.length_m");
  s.temperature_k = cfg.num("cell.temperature_k");
  s.mass_kg = sp.mass_kg;
  s.probe_wavelength_m = sp.probe_wavelength_m;
  s.coupling_wavelength_m = sp.coupling_wavelength_m;
  s.probe_dipole_cm = sp.probe_dipole_cm;
  s.validate();
  return s;
}

void apply_scenario(raqr::eit::LadderScheme& s, const std::string& scenario) {
  if (scenario == "i") {
    s.rabi_coupling = 0.0;
    s.rabi_rf = 0.0;
  } else if (scenario == "ii") {
    s.rabi_rf = 0.0;
  } else if (scenario != "iii") {
    throw raqr::ConfigError("eit.scenario must be i, ii or iii, got '" + scenario + "'");
  }
}

Eigen::VectorXd detuning_grid(const raqr::Config& cfg) {
  double span = cfg.num("eit.grid_span_rad_s");
  long n = cfg.integer("eit.grid_points");
  if (n < 3) throw raqr::ConfigError("eit.grid_points must be at least 3");
  return Eigen::VectorXd::LinSpaced(n, -span, span);
}

raqr::rx::Photodetect photodetect_from(const std::string& name) {
  if (name == "diod") return raqr::rx::Photodetect::kDiod;
  if (name == "bcod") return raqr::rx::Photodetect::kBcod;
  throw raqr::ConfigError("photodetect mode must be diod or bcod, got '" + name + "'");
}

// builds the receiver; link_rx swaps in the communication-grade detector
// chain (balanced detection, its own probe power and electronics floor)
raqr::rx::SuperhetConfig superhet_from(const raqr::Config& cfg,
                                       const raqr::atoms::AtomSpecies& sp,
                                       bool link_rx) {
  raqr::rx::SuperhetConfig c;
  c.scheme = scheme_from(cfg, sp, resolve_rf_dipole(cfg, sp));
  c.carrier_hz = cfg.num("superhet.carrier_hz");
  c.lo_hz = c.carrier_hz - cfg.num("superhet.if_hz");
  c.max_if_offset_hz = cfg.num("superhet.max_if_offset_hz");
  c.probe_power_w = link_rx ? cfg.num("link.rx_probe_power_w")
                            : cfg.num("superhet.probe_power_w");
  c.mode = photodetect_from(link_rx ? cfg.str("link.rx_photodetect")
                                    : cfg.str("superhet.photodetect"));
  c.responsivity_a_w = cfg.num("superhet.responsivity_a_w");
  c.transimpedance_v_a = cfg.num("superhet.transimpedance_ohm");
  c.noise_current_a_rthz = link_rx ? cfg.num("link.rx_noise_current_a_rthz")
                                   : cfg.num("superhet.noise_current_a_rthz");
  c.if_bandwidth_hz = cfg.num("superhet.if_bandwidth_hz");
  c.bcod_avg_cycles = static_cast<int>(cfg.integer("superhet.bcod_avg_cycles"));
  c.min_slope_per_vcm = cfg.num("superhet.min_slope_vcm");
  c.atom_number = cfg.num("sql.atom_number");
  c.ramsey_s = cfg.num("sql.ramsey_s");
  c.integration_s = cfg.num("sql.integration_s");
  c.sql_calibration_vcm_s = cfg.num("sql.calibration_vcm_s");

  double f_pair = raqr::atoms::transition_frequency_ghz(sp, rf_state(cfg), rf_partner(cfg)) * 1e9;
  if (f_pair > 0 && std::abs(f_pair - c.carrier_hz) > 0.01 * f_pair)
    std::cerr << "note: superhet.carrier_hz = " << c.carrier_hz
              << " Hz differs from the configured rf pair transition ("
              << f_pair << " Hz) by more than 1%\n";

  const std::string& lo = cfg.str("superhet.lo_field_vcm");
  c.lo_field_vcm = (lo == "auto") ? raqr::rx::optimal_lo_field(c) : cfg.num("superhet.lo_field_vcm");
  c.validate();
  return c;
}

raqr::link::ChannelConfig channel_from(const raqr::Config& cfg, std::uint64_t seed) {
  raqr::link::ChannelConfig c;
  c.distance_m = cfg.num("link.distance_m");
  c.exponent = cfg.num("link.exponent");
  c.ref_distance_m = cfg.num("link.ref_distance_m");
  c.fading = cfg.flag("link.fading");
  c.carrier_hz = cfg.num("superhet.carrier_hz");
  c.bandwidth_hz = cfg.num("link.bandwidth_hz");
  c.seed = seed;
  c.validate();
  return c;
}

raqr::rx::BasebandModel conventional_from(const raqr::Config& cfg) {
  return raqr::rx::conventional_baseline(cfg.num("conventional.temperature_k"),
                                         cfg.num("conventional.noise_figure_db"),
                                         cfg.num("link.bandwidth_hz"));
}

std::vector<double> power_grid(const raqr::Config& cfg) {
  double lo = cfg.num("link.power_min_dbm");
  double hi = cfg.num("link.power_max_dbm");
  double step = cfg.num("link.power_step_db");
  if (step <= 0 || hi < lo) throw raqr::ConfigError("bad link power grid");
  std::vector<double> out;
  for (double p = lo; p <= hi + 1e-9; p += step) out.push_back(p);
  return out;
}

// ------------------------------------------------------------ subcommands

void run_stark_map(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::atoms::AtomSpecies sp = species_from(cfg);
  raqr::atoms::RydbergState center;
  center.n = static_cast<int>(cfg.integer("stark.center_n"));
  center.l = static_cast<int>(cfg.integer("stark.center_l"));
  center.j = cfg.num("stark.center_j");
  center.mj = cfg.num("stark.center_mj");
  center.validate();

  long pts = cfg.integer("stark.field_points");
  if (pts < 2) throw raqr::ConfigError("stark.field_points must be at least 2");
  Eigen::VectorXd fields =
      Eigen::VectorXd::LinSpaced(pts, 0.0, cfg.num("stark.field_max_vcm"));

  raqr::atoms::StarkMap map =
      raqr::atoms::stark_map(sp, center, cfg.num("stark.window_ghz"), fields);

  ColumnTable traces;
  traces.columns.push_back("field_vcm");
  for (int t = 0; t < map.traces_ghz.cols(); ++t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "trace_%03d", t);
    traces.columns.push_back(buf);
  }
  for (int f = 0; f < map.fields_vcm.size(); ++f) {
    std::vector<double> row;
    row.reserve(traces.columns.size());
    row.push_back(map.fields_vcm[f]);
    for (int t = 0; t < map.traces_ghz.cols(); ++t) row.push_back(map.traces_ghz(f, t));
    traces.add(row);
  }
  rc.write_table("stark_map", traces);

  ColumnTable basis;
  basis.columns = {"trace", "n", "l", "j", "mj", "energy_ghz", "is_center"};
  for (std::size_t t = 0; t < map.basis.size(); ++t) {
    const auto& s = map.basis[t];
    basis.add({static_cast<double>(t), static_cast<double>(s.n), static_cast<double>(s.l),
               s.j, s.mj, map.traces_ghz(0, static_cast<int>(t)),
               static_cast<int>(t) == map.center_trace ? 1.0 : 0.0});
  }
  rc.write_table("stark_map.basis", basis);

  std::vector<raqr::atoms::AntiCrossing> ac = raqr::atoms::find_anticrossings(map);
  ColumnTable act;
  act.columns = {"field_vcm", "gap_ghz", "lower_trace"};
  for (const auto& a : ac)
    act.add({a.field_vcm, a.gap_ghz, static_cast<double>(a.lower_trace)});
  rc.write_table("stark_map.anticrossings", act);

  rc.note("basis_size", static_cast<int>(map.basis.size()));
  rc.note("center_trace", map.center_trace);
  rc.note("anticrossings", static_cast<int>(ac.size()));
  std::cerr << "stark-map: " << map.basis.size() << " states, " << ac.size()
            << " anti-crossings on [0, " << fields[fields.size() - 1] << "] V/cm\n";
}

void run_eit_spectrum(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::atoms::AtomSpecies sp = species_from(cfg);
  raqr::eit::LadderScheme s = scheme_from(cfg, sp, resolve_rf_dipole(cfg, sp));
  apply_scenario(s, cfg.str("eit.scenario"));

  Eigen::VectorXd grid = detuning_grid(cfg);
  raqr::eit::SpectralTrace tr;
  if (cfg.flag("eit.doppler"))
    tr = raqr::eit::doppler_average(s, grid, static_cast<int>(cfg.integer("eit.velocity_classes")),
                                    rc.threads());
  else
    tr = raqr::eit::transmission_spectrum(s, grid, rc.threads());

  ColumnTable t;
  t.columns = {"detuning_hz", "transmission", "re_chi", "im_chi"};
  for (int i = 0; i < tr.detuning_rad_s.size(); ++i)
    t.add({tr.detuning_rad_s[i] / (2.0 * raqr::consts::pi), tr.transmission[i],
           tr.chi[i].real(), tr.chi[i].imag()});
  rc.write_table("eit_spectrum", t);

  std::vector<raqr::eit::Peak> peaks =
      raqr::eit::find_peaks(tr.detuning_rad_s, tr.transmission);
  rc.note("transmission_peaks", static_cast<int>(peaks.size()));
  std::cerr << "eit-spectrum: scenario " << cfg.str("eit.scenario") << ", "
            << peaks.size() << " transmission peak(s), min T = "
            << tr.transmission.minCoeff() << "\n";
}

void run_ats_readout(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::atoms::AtomSpecies sp = species_from(cfg);
  double d34 = resolve_rf_dipole(cfg, sp);
  raqr::eit::LadderScheme base = scheme_from(cfg, sp, d34);

  long pts = cfg.integer("ats.field_points");
  if (pts < 1) throw raqr::ConfigError("ats.field_points must be at least 1");
  Eigen::VectorXd fields = Eigen::VectorXd::LinSpaced(
      pts, cfg.num("ats.field_min_vcm"), cfg.num("ats.field_max_vcm"));
  Eigen::VectorXd grid = detuning_grid(cfg);

  ColumnTable t;
  t.columns = {"field_vcm", "rabi_rf_rad_s", "splitting_hz", "field_readout_vcm"};
  for (int i = 0; i < fields.size(); ++i) {
    raqr::eit::LadderScheme s = base.with_rf_field(fields[i]);
    raqr::eit::SpectralTrace tr = raqr::eit::transmission_spectrum(s, grid, rc.threads());
    double split = raqr::eit::ats_splitting_hz(tr);
    double readout = raqr::eit::field_from_splitting_vcm(split, d34);
    t.add({fields[i], s.rabi_rf, split, readout});
  }
  rc.write_table("ats_readout", t);
  rc.note("rf_dipole_ea0", d34);
  std::cerr << "ats-readout: dipole " << d34 << " e*a0, " << fields.size()
            << " field points\n";
}

void run_sensitivity(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::atoms::AtomSpecies sp = species_from(cfg);
  raqr::rx::SuperhetConfig c = superhet_from(cfg, sp, false);

  double slope = raqr::rx::transmission_slope(c);
  auto [rho, phi] = raqr::rx::superhet_gain(c);
  raqr::rx::NoiseBudget nb = raqr::rx::noise_budget(c);
  raqr::rx::BasebandModel model = raqr::rx::baseband_model(c);
  raqr::rx::BasebandModel conv = conventional_from(cfg);

  ColumnTable t;
  t.columns = {"lo_field_vcm", "transmission", "slope_per_vcm", "rho_v_per_vcm",
               "phi_rad", "sql_vcm_rthz", "shot_vcm_rthz", "electronic_vcm_rthz",
               "total_vcm_rthz", "sensitivity_vcm_rthz", "conventional_vcm_rthz"};
  t.add({c.lo_field_vcm, raqr::rx::transmission_at_field(c, c.lo_field_vcm), slope,
         rho, phi, nb.sql, nb.photon_shot, nb.pd_electrical, nb.total,
         model.sensitivity, conv.sensitivity});
  rc.write_table("sensitivity", t);

  rc.note("sensitivity_vcm_rthz", model.sensitivity);
  rc.note("conventional_vcm_rthz", conv.sensitivity);
  std::cerr << "sensitivity: " << model.sensitivity << " V/cm/rtHz at LO bias "
            << c.lo_field_vcm << " V/cm (conventional " << conv.sensitivity << ")\n";
}

void run_siso_ber(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::atoms::AtomSpecies sp = species_from(cfg);
  raqr::link::ChannelConfig ch = channel_from(cfg, rc.seed());
  raqr::rx::BasebandModel rydberg = raqr::rx::baseband_model(superhet_from(cfg, sp, true));
  raqr::rx::BasebandModel conv = conventional_from(cfg);
  raqr::link::Modulation mod = raqr::link::modulation_from_name(cfg.str("link.modulation"));
  std::vector<double> powers = power_grid(cfg);
  auto bits = static_cast<std::uint64_t>(cfg.integer("link.bits_per_point"));

  std::vector<raqr::link::BerPoint> a =
      raqr::link::simulate_siso(ch, rydberg, mod, powers, bits, rc.threads());
  std::vector<raqr::link::BerPoint> b =
      raqr::link::simulate_siso(ch, conv, mod, powers, bits, rc.threads());

  ColumnTable t;
  t.columns = {"tx_power_dbm", "snr_raqr_db", "ber_raqr", "ber_raqr_stderr",
               "errors_raqr", "snr_conv_db", "ber_conv", "ber_conv_stderr",
               "errors_conv", "bits"};
  for (std::size_t i = 0; i < a.size(); ++i)
    t.add({a[i].tx_power_dbm, a[i].snr_db, a[i].ber, a[i].ber_stderr,
           static_cast<double>(a[i].errors), b[i].snr_db, b[i].ber, b[i].ber_stderr,
           static_cast<double>(b[i].errors), static_cast<double>(a[i].bits)});
  rc.write_table("siso_ber", t);
  std::cerr << "siso-ber: " << powers.size() << " power points, " << bits
            << " bits each\n";
}

void run_mimo_rate(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::atoms::AtomSpecies sp = species_from(cfg);
  raqr::link::ChannelConfig ch = channel_from(cfg, rc.seed());
  raqr::rx::BasebandModel rydberg = raqr::rx::baseband_model(superhet_from(cfg, sp, true));
  raqr::rx::BasebandModel conv = conventional_from(cfg);

  std::vector<raqr::link::RatePoint> pts = raqr::link::simulate_mimo_rate(
      ch, static_cast<int>(cfg.integer("link.mimo_elements")), rydberg, conv,
      power_grid(cfg), static_cast<int>(cfg.integer("link.mimo_draws")), rc.threads());

  ColumnTable t;
  t.columns = {"tx_power_dbm", "snr_raqr_db", "snr_conv_db", "rate_raqr",
               "rate_conv", "gap_bits", "gap_stderr"};
  for (const auto& p : pts)
    t.add({p.tx_power_dbm, p.snr_raqr_db, p.snr_conv_db, p.rate_raqr, p.rate_conv,
           p.rate_raqr - p.rate_conv, p.gap_stderr});
  rc.write_table("mimo_rate", t);
  if (!pts.empty()) {
    const auto& top = pts.back();
    rc.note("gap_bits_at_max_power", top.rate_raqr - top.rate_conv);
    std::cerr << "mimo-rate: gap at max power = " << top.rate_raqr - top.rate_conv
              << " bits/s/Hz\n";
  }
}

raqr::link::ArrayGeometry array_from(const raqr::Config& cfg) {
  raqr::link::ArrayGeometry g;
  g.elements = static_cast<int>(cfg.integer("doa.elements"));
  g.spacing_wl = cfg.num("doa.spacing_wl");
  g.validate();
  return g;
}

std::vector<double> snr_grid_db(const raqr::Config& cfg) {
  double lo = cfg.num("doa.snr_min_db");
  double hi = cfg.num("doa.snr_max_db");
  double step = cfg.num("doa.snr_step_db");
  if (step <= 0 || hi < lo) throw raqr::ConfigError("bad doa SNR grid");
  std::vector<double> out;
  for (double s = lo; s <= hi + 1e-9; s += step) out.push_back(s);
  return out;
}

void run_doa_crb(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::link::ArrayGeometry g = array_from(cfg);
  double theta = cfg.num("doa.theta_rad");
  int samples = static_cast<int>(cfg.integer("doa.samples"));

  ColumnTable t;
  t.columns = {"snr_db", "crb_rad2"};
  for (double s : snr_grid_db(cfg))
    t.add({s, raqr::link::doa_crb(g, std::pow(10.0, s / 10.0), samples, theta)});
  rc.write_table("doa_crb", t);
  std::cerr << "doa-crb: M = " << g.elements << ", T = " << samples << "\n";
}

void run_doa_mse(RunContext& rc) {
  const raqr::Config& cfg = rc.cfg();
  raqr::link::ArrayGeometry g = array_from(cfg);
  double theta = cfg.num("doa.theta_rad");
  int samples = static_cast<int>(cfg.integer("doa.samples"));
  int trials = static_cast<int>(cfg.integer("doa.trials"));

  ColumnTable t;
  t.columns = {"snr_db", "mse_rad2", "crb_rad2", "trials"};
  for (double s : snr_grid_db(cfg)) {
    raqr::link::DoaMse m = raqr::link::doa_mse_trials(
        g, theta, samples, std::pow(10.0, s / 10.0), trials, rc.seed(), rc.threads());
    t.add({m.snr_db, m.mse_rad2, m.crb_rad2, static_cast<double>(m.trials)});
  }
  rc.write_table("doa_mse", t);
  std::cerr << "doa-mse: " << trials << " trials per SNR point\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"raqr: desk-scale Rydberg atomic quantum receiver simulator"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    void (*run)(RunContext&);
  };
  static const Sub subs[] = {
      {"stark-map", "Stark map of a Rydberg manifold with anti-crossing detection", run_stark_map},
      {"eit-spectrum", "probe transmission spectrum of the four-level ladder", run_eit_spectrum},
      {"ats-readout", "Autler-Townes splitting sweep with field readout", run_ats_readout},
      {"sensitivity", "superheterodyne noise budget and field sensitivity", run_sensitivity},
      {"siso-ber", "Monte Carlo bit error rate over the fading link", run_siso_ber},
      {"mimo-rate", "ergodic achievable rate of the receive array", run_mimo_rate},
      {"doa-crb", "direction-finding Cramer-Rao bound across SNR", run_doa_crb},
      {"doa-mse", "maximum-likelihood direction estimator against the bound", run_doa_mse},
      {"dump-config", "print the resolved configuration to standard output", nullptr},
  };

  std::vector<CommonOpts> opts(std::size(subs));
  const Sub* selected = nullptr;
  const CommonOpts* selected_opts = nullptr;
  std::string scenario_flag;

  for (std::size_t i = 0; i < std::size(subs); ++i) {
    CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].help);
    add_common_flags(cmd, opts[i]);
    if (std::string(subs[i].name) == "eit-spectrum")
      cmd->add_option("--scenario", scenario_flag,
                      "drive scenario: i (probe), ii (+coupling), iii (+RF)");
    cmd->callback([&, i] {
      selected = &subs[i];
      selected_opts = &opts[i];
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    raqr::Config cfg = resolve_config(*selected_opts);
    if (!scenario_flag.empty()) cfg.set("eit.scenario", scenario_flag);

    if (!selected->run) { // dump-config: data to standard output
      cfg.dump(std::cout);
      return 0;
    }

    RunContext rc(selected->name, cfg, selected_opts->out_dir);
    try {
      selected->run(rc);
      rc.finish();
    } catch (const std::exception& e) {
      rc.fail(e.what());
      throw;
    }
    return 0;
  } catch (const raqr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const raqr::MissingDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 1;
  } catch (const raqr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
}
