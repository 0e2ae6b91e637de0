#pragma once

#include <utility>

#include "raqr/eit/ladder.hpp"
#include "raqr/rng.hpp"
#include "raqr/rx/series.hpp"

namespace raqr::rx {

enum class Photodetect { kDiod, kBcod };

// superheterodyne readout: an RF local oscillator biases the |3>-|4>
// transition and a weak co-frequency signal appears as an amplitude beat at
// f_c - f_l on the transmitted probe
struct SuperhetConfig {
  eit::LadderScheme scheme; // LO drive enters as scheme.rabi_rf via lo_field_vcm
  double carrier_hz = 6.9458e9;
  double lo_hz = 6.9458e9 - 150e3;
  double max_if_offset_hz = 10e6; // instantaneous-bandwidth guard
  double lo_field_vcm = 0.0;
  double probe_power_w = 1e-6;
  Photodetect mode = Photodetect::kDiod;
  double responsivity_a_w = 0.5;
  double transimpedance_v_a = 1e4;
  double noise_current_a_rthz = 20e-12; // input-referred electronics floor
  double if_bandwidth_hz = 5e4;
  int bcod_avg_cycles = 4;      // common-mode boxcar length in IF cycles
  double min_slope_per_vcm = 1e-2;

  // atom-ensemble quantum-projection limit
  double atom_number = 1e6;
  double ramsey_s = 10e-6;
  double integration_s = 1.0;
  double sql_calibration_vcm_s = 1.6e-11;

  double f_if_hz() const { return carrier_hz - lo_hz; }
  void validate() const;
};

struct NoiseBudget {
  double sql = 0.0;           // all components field-referred, V/cm/rtHz
  double photon_shot = 0.0;
  double pd_electrical = 0.0;
  double total = 0.0;         // root sum of squares
};

// equivalent baseband channel y = rho * exp(j phi) * x
struct BasebandModel {
  double rho = 0.0;       // baseband volts per V/cm of RF signal field
  double phi = 0.0;
  double noise_psd = 0.0; // V^2/Hz at the same reference plane
  double sensitivity = 0.0; // sqrt(noise_psd)/rho, V/cm/rtHz
};

// probe transmission at line center with the RF drive set from a field
double transmission_at_field(const SuperhetConfig& cfg, double field_vcm);

// signed small-signal slope dT/dE at the LO bias (central difference)
double transmission_slope(const SuperhetConfig& cfg);

// (rho, phi) of the superheterodyne response at the LO bias
std::pair<double, double> superhet_gain(const SuperhetConfig& cfg);

// bias field maximizing |dT/dE| (coarse scan plus golden-section refine)
double optimal_lo_field(const SuperhetConfig& cfg);

// detector-plane optical power with LO plus one signal tone, evaluated
// through the nonlinear transmission curve sample by sample
RealSeries superhet_optical_power(const SuperhetConfig& cfg,
                                  double signal_field_vcm,
                                  double signal_phase_rad, double fs_hz,
                                  int samples);

// photocurrent from optical power; cm_window_samples is the BCOD boxcar
// length (ignored for DIOD); pass a generator to add shot noise
RealSeries photodetect(const RealSeries& power_w, Photodetect mode,
                       double responsivity_a_w, int cm_window_samples,
                       Rng* noise);

// projection-noise-limited field sensitivity, calibration/sqrt(N T_r T_i)
double sql_sensitivity(double atom_number, double ramsey_s,
                       double integration_s, double calibration_vcm_s);

NoiseBudget noise_budget(const SuperhetConfig& cfg);
BasebandModel baseband_model(const SuperhetConfig& cfg);

// thermal-limit metal-antenna reference: 1.5 nV/cm/rtHz at 290 K and 0 dB
// noise figure, scaling as sqrt(T/290 * F)
BasebandModel conventional_baseline(double temperature_k,
                                    double noise_figure_db,
                                    double bandwidth_hz);

} // namespace raqr::rx
