#include "raqr/rx/receiver.hpp"

#include <cmath>
#include <stdexcept>

#include "raqr/constants.hpp"
#include "raqr/errors.hpp"

namespace raqr::rx {

namespace {

double transmission_of_scheme(const eit::LadderScheme& s) {
  std::complex<double> chi = eit::probe_susceptibility(s, eit::steady_state(s));
  double k = 2.0 * consts::pi / s.probe_wavelength_m;
  return std::exp(-k * chi.imag() * s.length_m);
}

// default probe step for the central difference: small against the
// Rabi-to-field scale of the RF transition
double slope_step_vcm(const SuperhetConfig& cfg) {
  double feature =
      cfg.scheme.decay_2 / (cfg.scheme.rf_dipole_ea0 * consts::rabi_per_ea0_vcm);
  return std::max(1e-4 * feature, 1e-3 * cfg.lo_field_vcm);
}

} // namespace

void SuperhetConfig::validate() const {
  scheme.validate();
  if (scheme.rf_dipole_ea0 <= 0)
    throw std::invalid_argument("superhet: rf transition dipole must be positive");
  if (std::abs(f_if_hz()) > max_if_offset_hz)
    throw ConfigError("superhet: |f_c - f_l| exceeds the instantaneous bandwidth");
  if (lo_field_vcm < 0) throw std::invalid_argument("superhet: negative LO field");
  if (probe_power_w <= 0) throw std::invalid_argument("superhet: probe power <= 0");
  if (responsivity_a_w <= 0 || transimpedance_v_a <= 0)
    throw std::invalid_argument("superhet: detector constants must be positive");
  if (noise_current_a_rthz < 0)
    throw std::invalid_argument("superhet: negative noise current");
  if (if_bandwidth_hz <= 0) throw std::invalid_argument("superhet: bandwidth <= 0");
  if (bcod_avg_cycles < 1) throw std::invalid_argument("superhet: boxcar < 1 cycle");
  if (min_slope_per_vcm <= 0)
    throw std::invalid_argument("superhet: slope threshold must be positive");
  if (atom_number <= 0 || ramsey_s <= 0 || integration_s <= 0 ||
      sql_calibration_vcm_s <= 0)
    throw std::invalid_argument("superhet: SQL parameters must be positive");
}

double transmission_at_field(const SuperhetConfig& cfg, double field_vcm) {
  return transmission_of_scheme(cfg.scheme.with_rf_field(field_vcm));
}

double transmission_slope(const SuperhetConfig& cfg) {
  cfg.validate();
  double h = slope_step_vcm(cfg);
  // T depends on the field only through |Omega_RF|, so reflecting the lower
  // point keeps a true central difference everywhere; at zero bias the even
  // symmetry makes the slope vanish exactly
  double lo = std::abs(cfg.lo_field_vcm - h);
  double hi = cfg.lo_field_vcm + h;
  return (transmission_at_field(cfg, hi) - transmission_at_field(cfg, lo)) /
         (2.0 * h);
}

std::pair<double, double> superhet_gain(const SuperhetConfig& cfg) {
  double slope = transmission_slope(cfg);
  if (std::abs(slope) < cfg.min_slope_per_vcm)
    throw ZeroGainBiasError(
        "superhet_gain: transmission slope at the LO bias is below the "
        "configured threshold; no usable small-signal gain");
  double rho = cfg.transimpedance_v_a * cfg.responsivity_a_w *
               cfg.probe_power_w * std::abs(slope);
  double phi = slope < 0 ? consts::pi : 0.0;
  return {rho, phi};
}

double optimal_lo_field(const SuperhetConfig& cfg) {
  cfg.validate();
  // scan out to an RF drive of several intermediate linewidths, past any
  // useful bias point
  double f_hi = 8.0 * cfg.scheme.decay_2 /
                (cfg.scheme.rf_dipole_ea0 * consts::rabi_per_ea0_vcm);
  auto slope_mag = [&](double f) {
    SuperhetConfig c = cfg;
    c.lo_field_vcm = f;
    return std::abs(transmission_slope(c));
  };
  const int coarse = 33;
  int best = 1;
  double best_val = -1.0;
  for (int i = 1; i < coarse; ++i) {
    double v = slope_mag(f_hi * i / (coarse - 1.0));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = f_hi * (best - 1) / (coarse - 1.0);
  double b = f_hi * std::min(best + 1, coarse - 1) / (coarse - 1.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double v1 = slope_mag(x1), v2 = slope_mag(x2);
  for (int it = 0; it < 40 && (b - a) > 1e-4 * f_hi; ++it) {
    if (v1 < v2) {
      a = x1;
      x1 = x2;
      v1 = v2;
      x2 = a + gr * (b - a);
      v2 = slope_mag(x2);
    } else {
      b = x2;
      x2 = x1;
      v2 = v1;
      x1 = b - gr * (b - a);
      v1 = slope_mag(x1);
    }
  }
  return 0.5 * (a + b);
}

RealSeries superhet_optical_power(const SuperhetConfig& cfg,
                                  double signal_field_vcm,
                                  double signal_phase_rad, double fs_hz,
                                  int samples) {
  cfg.validate();
  if (signal_field_vcm < 0)
    throw std::invalid_argument("superhet waveform: negative signal field");
  double f_if = cfg.f_if_hz();
  if (f_if <= 0)
    throw std::invalid_argument("superhet waveform: carrier must sit above the LO");
  if (fs_hz < 4.0 * f_if)
    throw std::invalid_argument("superhet waveform: sample rate below 4x the IF");
  if (samples < 2) throw std::invalid_argument("superhet waveform: too short");

  RealSeries out;
  out.dt_s = 1.0 / fs_hz;
  out.samples.resize(samples);
  for (int k = 0; k < samples; ++k) {
    double ph = 2.0 * consts::pi * f_if * k * out.dt_s + signal_phase_rad;
    // slowly varying amplitude of the co-polarized LO + signal sum
    std::complex<double> env(cfg.lo_field_vcm + signal_field_vcm * std::cos(ph),
                             signal_field_vcm * std::sin(ph));
    out.samples[k] = cfg.probe_power_w * transmission_at_field(cfg, std::abs(env));
  }
  return out;
}

RealSeries photodetect(const RealSeries& power_w, Photodetect mode,
                       double responsivity_a_w, int cm_window_samples,
                       Rng* noise) {
  power_w.validate();
  if (responsivity_a_w <= 0)
    throw std::invalid_argument("photodetect: responsivity must be positive");
  if (power_w.samples.minCoeff() < 0)
    throw std::invalid_argument("photodetect: negative optical power sample");

  const int n = static_cast<int>(power_w.samples.size());
  RealSeries out;
  out.dt_s = power_w.dt_s;
  out.samples = responsivity_a_w * power_w.samples;

  if (mode == Photodetect::kBcod) {
    if (cm_window_samples < 1)
      throw std::invalid_argument("photodetect: BCOD boxcar must be >= 1 sample");
    // balanced reference branch carries the slowly varying common mode; a
    // centered boxcar whose length is an integer number of IF cycles passes
    // the beat untouched and nulls everything much slower
    Eigen::VectorXd cm(n);
    int half = cm_window_samples / 2;
    for (int i = 0; i < n; ++i) {
      int lo = std::max(0, i - half);
      int hi = std::min(n - 1, lo + cm_window_samples - 1);
      lo = std::max(0, hi - cm_window_samples + 1);
      cm[i] = out.samples.segment(lo, hi - lo + 1).mean();
    }
    out.samples -= cm;
  }

  if (noise) {
    double fs = power_w.fs_hz();
    for (int i = 0; i < n; ++i) {
      // one-sided shot PSD 2 q R P spread over the Nyquist band
      double var = consts::e_charge * responsivity_a_w * power_w.samples[i] * fs;
      out.samples[i] += std::sqrt(var) * noise->gauss();
    }
  }
  return out;
}

double sql_sensitivity(double atom_number, double ramsey_s,
                       double integration_s, double calibration_vcm_s) {
  if (atom_number <= 0 || ramsey_s <= 0 || integration_s <= 0 ||
      calibration_vcm_s <= 0)
    throw std::invalid_argument("sql_sensitivity: all inputs must be positive");
  return calibration_vcm_s / std::sqrt(atom_number * ramsey_s * integration_s);
}

NoiseBudget noise_budget(const SuperhetConfig& cfg) {
  auto [rho, phi] = superhet_gain(cfg);
  (void)phi;
  // field-referred conversion at the photocurrent plane, A per V/cm
  double resp_field = rho / cfg.transimpedance_v_a;
  double p_det = transmission_at_field(cfg, cfg.lo_field_vcm) * cfg.probe_power_w;

  NoiseBudget nb;
  nb.photon_shot =
      std::sqrt(2.0 * consts::e_charge * cfg.responsivity_a_w * p_det) / resp_field;
  nb.pd_electrical = cfg.noise_current_a_rthz / resp_field;
  nb.sql = sql_sensitivity(cfg.atom_number, cfg.ramsey_s, cfg.integration_s,
                           cfg.sql_calibration_vcm_s);
  nb.total = std::sqrt(nb.sql * nb.sql + nb.photon_shot * nb.photon_shot +
                       nb.pd_electrical * nb.pd_electrical);
  return nb;
}

BasebandModel baseband_model(const SuperhetConfig& cfg) {
  auto [rho, phi] = superhet_gain(cfg);
  NoiseBudget nb = noise_budget(cfg);
  BasebandModel m;
  m.rho = rho;
  m.phi = phi;
  m.sensitivity = nb.total;
  m.noise_psd = rho * rho * nb.total * nb.total;
  return m;
}

BasebandModel conventional_baseline(double temperature_k,
                                    double noise_figure_db,
                                    double bandwidth_hz) {
  if (temperature_k <= 0 || bandwidth_hz <= 0)
    throw std::invalid_argument("conventional_baseline: T and W must be positive");
  if (noise_figure_db < 0)
    throw std::invalid_argument("conventional_baseline: noise figure < 0 dB");
  // kTBF thermal floor, field-referred against the 290 K / 0 dB anchor
  double f = std::pow(10.0, noise_figure_db / 10.0);
  BasebandModel m;
  m.rho = 1.0;
  m.phi = 0.0;
  m.sensitivity = 1.5e-9 * std::sqrt(temperature_k / 290.0 * f);
  m.noise_psd = m.sensitivity * m.sensitivity;
  return m;
}

} // namespace raqr::rx
