#include "raqr/rx/dsp.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "raqr/constants.hpp"
#include "raqr/csv.hpp"
#include "raqr/errors.hpp"

namespace raqr::rx {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  double px = consts::pi * x;
  return std::sin(px) / px;
}

double blackman(double u) { // u in [0, 1]
  return 0.42 - 0.5 * std::cos(2.0 * consts::pi * u) +
         0.08 * std::cos(4.0 * consts::pi * u);
}

void check_samples_finite(const Eigen::VectorXd& v) {
  if (!v.allFinite()) throw std::invalid_argument("series: non-finite sample");
}

} // namespace

void RealSeries::validate() const {
  if (!(dt_s > 0) || !std::isfinite(dt_s))
    throw std::invalid_argument("series: sample period must be positive");
  if (samples.size() == 0) throw std::invalid_argument("series: empty");
  check_samples_finite(samples);
}

void ComplexSeries::validate() const {
  if (!(dt_s > 0) || !std::isfinite(dt_s))
    throw std::invalid_argument("series: sample period must be positive");
  if (samples.size() == 0) throw std::invalid_argument("series: empty");
  if (bandwidth_hz < 0 || !std::isfinite(bandwidth_hz))
    throw std::invalid_argument("series: bandwidth must be non-negative");
  if (!samples.allFinite()) throw std::invalid_argument("series: non-finite sample");
}

Eigen::VectorXd design_lowpass_fir(double fs_hz, double cutoff_hz,
                                   double transition_hz) {
  if (!(fs_hz > 0) || !(cutoff_hz > 0) || !(transition_hz > 0))
    throw std::invalid_argument("fir: rates must be positive");
  if (cutoff_hz + 0.5 * transition_hz >= 0.5 * fs_hz)
    throw std::invalid_argument("fir: stopband edge beyond Nyquist");
  int n = static_cast<int>(std::ceil(5.5 * fs_hz / transition_hz));
  if (n % 2 == 0) ++n;
  int mid = (n - 1) / 2;
  double fc = cutoff_hz / fs_hz; // cycles per sample
  Eigen::VectorXd h(n);
  for (int k = 0; k < n; ++k)
    h[k] = 2.0 * fc * sinc(2.0 * fc * (k - mid)) *
           blackman(static_cast<double>(k) / (n - 1));
  h /= h.sum();
  return h;
}

Eigen::VectorXcd fir_apply(const Eigen::VectorXd& taps,
                           const Eigen::VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  const int nt = static_cast<int>(taps.size());
  const int mid = (nt - 1) / 2;
  Eigen::VectorXcd y(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> acc = 0.0;
    int k_lo = std::max(0, i + mid - (n - 1));
    int k_hi = std::min(nt - 1, i + mid);
    for (int k = k_lo; k <= k_hi; ++k) acc += taps[k] * x[i + mid - k];
    y[i] = acc;
  }
  return y;
}

ComplexSeries downconvert(const RealSeries& in, double f_if_hz,
                          double bandwidth_hz) {
  in.validate();
  if (!(f_if_hz > 0) || !(bandwidth_hz > 0))
    throw std::invalid_argument("downconvert: frequencies must be positive");
  double fs = in.fs_hz();
  if (fs < 4.0 * f_if_hz)
    throw std::invalid_argument("downconvert: sample rate below 4x the IF");
  if (f_if_hz <= bandwidth_hz)
    throw ImageOverlapError(
        "downconvert: IF must exceed the baseband bandwidth or the image "
        "band folds onto the signal");

  Eigen::VectorXcd mixed(in.samples.size());
  for (int k = 0; k < in.samples.size(); ++k) {
    double ph = -2.0 * consts::pi * f_if_hz * k * in.dt_s;
    mixed[k] = 2.0 * in.samples[k] * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  Eigen::VectorXd taps =
      design_lowpass_fir(fs, 1.25 * bandwidth_hz, 0.5 * bandwidth_hz);
  ComplexSeries out;
  out.dt_s = in.dt_s;
  out.bandwidth_hz = bandwidth_hz;
  out.samples = fir_apply(taps, mixed);
  return out;
}

ComplexSeries sample(const ComplexSeries& in, double rate_hz) {
  in.validate();
  if (!(rate_hz > 0)) throw std::invalid_argument("sample: rate must be positive");
  if (rate_hz < 2.0 * in.bandwidth_hz)
    throw AliasingConfigError("sample: rate below twice the series bandwidth");

  const int half = 64; // windowed-sinc support per side
  const int n_in = static_cast<int>(in.samples.size());
  const double duration = (n_in - 1) * in.dt_s;
  const int n_out = static_cast<int>(std::floor(duration * rate_hz)) + 1;

  ComplexSeries out;
  out.dt_s = 1.0 / rate_hz;
  out.bandwidth_hz = in.bandwidth_hz;
  out.samples.resize(n_out);
  for (int k = 0; k < n_out; ++k) {
    double u = k * out.dt_s / in.dt_s; // position in input sample units
    int c = static_cast<int>(std::floor(u));
    std::complex<double> acc = 0.0;
    for (int m = std::max(0, c - half + 1); m <= std::min(n_in - 1, c + half); ++m) {
      double d = u - m;
      acc += in.samples[m] * sinc(d) * blackman(0.5 + 0.5 * d / half);
    }
    out.samples[k] = acc;
  }
  return out;
}

void write_csv(const RealSeries& s, std::ostream& os) {
  CsvWriter w(os);
  w.header({"t_s", "value"});
  for (int k = 0; k < s.samples.size(); ++k) {
    double row[2] = {k * s.dt_s, s.samples[k]};
    w.row(row);
  }
}

void write_csv(const ComplexSeries& s, std::ostream& os) {
  CsvWriter w(os);
  w.header({"t_s", "re", "im"});
  for (int k = 0; k < s.samples.size(); ++k) {
    double row[3] = {k * s.dt_s, s.samples[k].real(), s.samples[k].imag()};
    w.row(row);
  }
}

void write_raw(const ComplexSeries& s, std::ostream& os) {
  // fields are written in host byte order; all supported targets are
  // little-endian
  os.write("RAQRCPLX", 8);
  std::uint64_t count = static_cast<std::uint64_t>(s.samples.size());
  os.write(reinterpret_cast<const char*>(&count), 8);
  os.write(reinterpret_cast<const char*>(&s.dt_s), 8);
  os.write(reinterpret_cast<const char*>(&s.bandwidth_hz), 8);
  for (int k = 0; k < s.samples.size(); ++k) {
    double re = s.samples[k].real(), im = s.samples[k].imag();
    os.write(reinterpret_cast<const char*>(&re), 8);
    os.write(reinterpret_cast<const char*>(&im), 8);
  }
}

} // namespace raqr::rx
