#include "raqr/eit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "raqr/constants.hpp"
#include "raqr/csv.hpp"
#include "raqr/errors.hpp"
#include "raqr/parallel.hpp"

namespace raqr::eit {

namespace {

void check_grid(const LadderScheme& s, const Eigen::VectorXd& grid) {
  if (grid.size() < 3) throw std::invalid_argument("spectrum: grid too small");
  for (int i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw std::invalid_argument("spectrum: detuning grid must be strictly ascending");
  if (grid[0] > -5.0 * s.decay_2 || grid[grid.size() - 1] < 5.0 * s.decay_2)
    throw std::invalid_argument("spectrum: grid must span at least +-5 gamma2");
}

// Beer-Lambert transmission from the complex cell susceptibility
double transmission_of(const LadderScheme& s, std::complex<double> chi) {
  double k = 2.0 * consts::pi / s.probe_wavelength_m;
  double t = std::exp(-k * chi.imag() * s.length_m);
  if (t > 1.0 + 1e-9)
    throw NumericalError("spectrum: negative absorption, transmission > 1");
  return std::clamp(t, 0.0, 1.0);
}

SpectralTrace assemble(const LadderScheme& s, const Eigen::VectorXd& grid,
                       const Eigen::VectorXcd& chi) {
  SpectralTrace tr;
  tr.detuning_rad_s = grid;
  tr.chi = chi;
  tr.transmission.resize(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    tr.transmission[i] = transmission_of(s, chi[i]);
  return tr;
}

} // namespace

void SpectralTrace::validate() const {
  if (detuning_rad_s.size() != transmission.size() ||
      detuning_rad_s.size() != chi.size())
    throw std::invalid_argument("SpectralTrace: mismatched column lengths");
  for (int i = 1; i < detuning_rad_s.size(); ++i)
    if (detuning_rad_s[i] <= detuning_rad_s[i - 1])
      throw std::invalid_argument("SpectralTrace: grid must be strictly ascending");
  if (transmission.size() > 0 &&
      (transmission.minCoeff() < 0.0 || transmission.maxCoeff() > 1.0))
    throw std::invalid_argument("SpectralTrace: transmission outside [0, 1]");
}

SpectralTrace transmission_spectrum(const LadderScheme& scheme,
                                    const Eigen::VectorXd& detuning_grid,
                                    int threads) {
  scheme.validate();
  check_grid(scheme, detuning_grid);
  const int n = static_cast<int>(detuning_grid.size());
  Eigen::VectorXcd chi(n);
  parallel_for(
      n,
      [&](int i) {
        LadderScheme s = scheme;
        s.detune_probe = detuning_grid[i];
        chi[i] = probe_susceptibility(s, steady_state(s));
      },
      threads);
  return assemble(scheme, detuning_grid, chi);
}

SpectralTrace doppler_average(const LadderScheme& scheme,
                              const Eigen::VectorXd& detuning_grid,
                              int velocity_classes, int threads) {
  scheme.validate();
  check_grid(scheme, detuning_grid);
  if (velocity_classes < 31)
    throw std::invalid_argument("doppler_average: need >= 31 velocity classes");
  if (scheme.mass_kg <= 0)
    throw std::invalid_argument("doppler_average: atomic mass not set");

  double sigma_v = std::sqrt(consts::kB * scheme.temperature_k / scheme.mass_kg);
  if (sigma_v == 0.0) return transmission_spectrum(scheme, detuning_grid, threads);

  const double kp = 2.0 * consts::pi / scheme.probe_wavelength_m;
  const double kc = 2.0 * consts::pi / scheme.coupling_wavelength_m;

  // Trapezoid quadrature on a two-scale velocity grid. The thermal envelope
  // is smooth over ~sigma_v, but the integrand also carries resonances a few
  // m/s wide: the one-photon line (width gamma2/kp) and the two-photon
  // feature, which the wavelength mismatch compresses by 1/|kc - kp|. Both
  // stay inside a computable core window for every probe detuning on the
  // grid, so the rule spends most points there and samples the Gaussian
  // wings coarsely. (A Gauss-Hermite rule of any affordable order cannot
  // resolve these features; its nodes are tied to the thermal scale.)
  const int m = velocity_classes;
  const double span = 4.5 * sigma_v;
  double reach = std::max(std::abs(detuning_grid[0]),
                          std::abs(detuning_grid[detuning_grid.size() - 1]));
  double broadening = 5.0 * scheme.decay_2 + scheme.rabi_coupling + scheme.rabi_rf;
  double core_1ph = (reach + broadening) / kp;
  double dk = std::abs(kc - kp);
  double core_2ph =
      dk > 0.0 ? (reach + std::abs(scheme.detune_coupling) +
                  std::abs(scheme.detune_rf) + broadening) / dk
               : span;
  double v_core = std::min(span, std::max(core_1ph, core_2ph));

  Eigen::VectorXd v(m);
  if (v_core >= 0.9 * span) {
    for (int k = 0; k < m; ++k) v[k] = -span + 2.0 * span * k / (m - 1);
  } else {
    int m_core = (3 * m) / 4;
    int m_wing = (m - m_core) / 2;    // per side, boundary point excluded
    m_core = m - 2 * m_wing;
    int idx = 0;
    for (int k = 0; k < m_wing; ++k)  // [-span, -v_core)
      v[idx++] = -span + (span - v_core) * k / m_wing;
    for (int k = 0; k < m_core; ++k)  // [-v_core, v_core]
      v[idx++] = -v_core + 2.0 * v_core * k / (m_core - 1);
    for (int k = 1; k <= m_wing; ++k) // (v_core, span]
      v[idx++] = v_core + (span - v_core) * k / m_wing;
  }

  Eigen::VectorXd w(m);
  for (int k = 0; k < m; ++k) {
    double cell = 0.5 * ((k + 1 < m ? v[k + 1] : v[k]) - (k > 0 ? v[k - 1] : v[k]));
    w[k] = cell * std::exp(-0.5 * v[k] * v[k] / (sigma_v * sigma_v));
  }
  w /= w.sum();

  const int n = static_cast<int>(detuning_grid.size());

  Eigen::MatrixXcd chi_class(n, m);
  parallel_for(
      n * m,
      [&](int job) {
        int i = job % n, k = job / n;
        LadderScheme s = scheme;
        s.detune_probe = detuning_grid[i] - kp * v[k];
        s.detune_coupling = scheme.detune_coupling + kc * v[k];
        chi_class(i, k) = probe_susceptibility(s, steady_state(s));
      },
      threads);
  Eigen::VectorXcd chi = chi_class * w.cast<std::complex<double>>();
  return assemble(scheme, detuning_grid, chi);
}

std::vector<Peak> find_peaks(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                             double prominence_frac) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("find_peaks: need matched columns, >= 3 points");
  const int n = static_cast<int>(y.size());
  double range = y.maxCoeff() - y.minCoeff();
  if (range <= 0.0) return {};
  double thresh = prominence_frac * range;

  std::vector<Peak> peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    // prominence: drop to the highest saddle separating this peak from
    // higher ground on either side
    double left_min = y[i], right_min = y[i];
    for (int k = i - 1; k >= 0; --k) {
      if (y[k] > y[i]) break;
      left_min = std::min(left_min, y[k]);
      if (k == 0) left_min = std::min(left_min, y[0]);
    }
    for (int k = i + 1; k < n; ++k) {
      if (y[k] > y[i]) break;
      right_min = std::min(right_min, y[k]);
    }
    double prom = y[i] - std::max(left_min, right_min);
    if (prom < thresh) continue;

    // three-point parabola through the apex; degenerate -> grid position
    double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    double d01 = x1 - x0, d12 = x1 - x2;
    double num = d01 * d01 * (y[i] - y[i + 1]) - d12 * d12 * (y[i] - y[i - 1]);
    double den = d01 * (y[i] - y[i + 1]) - d12 * (y[i] - y[i - 1]);
    Peak p;
    p.index = i;
    p.x = den != 0.0 ? x1 - 0.5 * num / den : x1;
    p.height = y[i];
    p.prominence = prom;
    peaks.push_back(p);
  }
  return peaks;
}

double ats_splitting_hz(const SpectralTrace& trace, double prominence_frac) {
  trace.validate();
  std::vector<Peak> peaks =
      find_peaks(trace.detuning_rad_s, trace.transmission, prominence_frac);
  if (peaks.size() < 2)
    throw AtsThresholdError(
        "ats_splitting: fewer than two transmission peaks; the spectrum is in "
        "the standard (unsplit) regime");
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.prominence > b.prominence; });
  return std::abs(peaks[0].x - peaks[1].x) / (2.0 * consts::pi);
}

double field_from_splitting_vcm(double splitting_hz, double d34_ea0) {
  if (d34_ea0 == 0.0)
    throw std::invalid_argument("field_from_splitting: zero transition dipole");
  if (splitting_hz <= 0.0)
    throw std::invalid_argument("field_from_splitting: splitting must be positive");
  double dipole_cm = std::abs(d34_ea0) * consts::e_charge * consts::a0;
  return consts::h * splitting_hz / dipole_cm / 100.0; // V/m -> V/cm
}

void write_csv(const SpectralTrace& trace, std::ostream& os) {
  CsvWriter w(os);
  w.header({"detuning_Hz", "transmission", "re_chi", "im_chi"});
  for (int i = 0; i < trace.detuning_rad_s.size(); ++i) {
    double row[4] = {trace.detuning_rad_s[i] / (2.0 * consts::pi),
                     trace.transmission[i], trace.chi[i].real(),
                     trace.chi[i].imag()};
    w.row(row);
  }
}

} // namespace raqr::eit
