#include <cmath>
#include <complex>

#include "doctest.h"
#include "raqr/errors.hpp"
#include "raqr/rx/dsp.hpp"

using namespace raqr;
using namespace raqr::rx;

namespace {
constexpr double kTwoPi = 6.283185307179586;

// frequency response of a real tap vector at frequency f
std::complex<double> fir_response(const Eigen::VectorXd& taps, double f, double fs) {
  std::complex<double> h = 0.0;
  for (int n = 0; n < taps.size(); ++n) {
    double ph = -kTwoPi * f * n / fs;
    h += taps[n] * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return h;
}
} // namespace

TEST_SUITE("dsp") {

TEST_CASE("lowpass fir design") {
  const double fs = 1e6, cutoff = 1e5, trans = 2e4;
  Eigen::VectorXd taps = design_lowpass_fir(fs, cutoff, trans);
  REQUIRE(taps.size() % 2 == 1);
  CHECK(taps.sum() == doctest::Approx(1.0).epsilon(1e-9));
  for (int n = 0; n < taps.size() / 2; ++n)
    CHECK(taps[n] == doctest::Approx(taps[taps.size() - 1 - n]).epsilon(1e-12));
  CHECK(std::abs(fir_response(taps, 0.5 * cutoff, fs)) ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(fir_response(taps, cutoff - trans / 2, fs)) > 0.9);
  CHECK(std::abs(fir_response(taps, cutoff + trans / 2, fs)) < 3.2e-4); // -70 dB
  CHECK(std::abs(fir_response(taps, 2.5 * cutoff, fs)) < 3.2e-4);

  CHECK_THROWS_AS(design_lowpass_fir(-1.0, cutoff, trans), std::invalid_argument);
  CHECK_THROWS_AS(design_lowpass_fir(fs, 0.49 * fs, 0.1 * fs),
                  std::invalid_argument); // stopband beyond Nyquist
}

TEST_CASE("fir filtering is delay-free in the passband") {
  const double fs = 1e6;
  Eigen::VectorXd taps = design_lowpass_fir(fs, 1e5, 4e4);
  const int n = 4096;
  Eigen::VectorXcd x(n);
  const double f0 = 3e4;
  for (int k = 0; k < n; ++k) {
    double ph = kTwoPi * f0 * k / fs + 0.4;
    x[k] = std::complex<double>(std::cos(ph), std::sin(ph));
  }
  Eigen::VectorXcd y = fir_apply(taps, x);
  REQUIRE(y.size() == n);
  int guard = static_cast<int>(taps.size());
  for (int k = guard; k < n - guard; k += 97)
    CHECK(std::abs(y[k] - x[k]) < 1e-3);
}

TEST_CASE("downconversion recovers the complex envelope") {
  const double fs = 1e6, f_if = 1e5, bw = 2e4;
  const int n = 8192;
  const double amp = 0.7, phase = 0.9;
  RealSeries in;
  in.dt_s = 1.0 / fs;
  in.samples.resize(n);
  for (int k = 0; k < n; ++k)
    in.samples[k] = amp * std::cos(kTwoPi * f_if * k / fs + phase);
  ComplexSeries out = downconvert(in, f_if, bw);
  REQUIRE(out.samples.size() == n);
  CHECK(out.dt_s == doctest::Approx(in.dt_s).epsilon(1e-15));
  CHECK(out.bandwidth_hz == doctest::Approx(bw).epsilon(1e-12));
  std::complex<double> want = amp * std::complex<double>(std::cos(phase), std::sin(phase));
  for (int k = n / 4; k < 3 * n / 4; k += 211)
    CHECK(std::abs(out.samples[k] - want) < 2e-3 * amp);
}

TEST_CASE("downconversion guards") {
  RealSeries in;
  in.dt_s = 1e-6;
  in.samples = Eigen::VectorXd::Zero(256);
  CHECK_THROWS_AS(downconvert(in, -1e5, 1e4), std::invalid_argument);
  CHECK_THROWS_AS(downconvert(in, 3e5, 1e4), std::invalid_argument); // fs < 4 f_if
  CHECK_THROWS_AS(downconvert(in, 5e4, 6e4), ImageOverlapError);
  RealSeries empty;
  empty.dt_s = 1e-6;
  CHECK_THROWS_AS(downconvert(empty, 1e5, 1e4), std::invalid_argument);
}

TEST_CASE("bandlimited resampling") {
  const double fs = 4e4, bw = 5e3, f0 = 3e3;
  const int n = 2048;
  ComplexSeries in;
  in.dt_s = 1.0 / fs;
  in.bandwidth_hz = bw;
  in.samples.resize(n);
  for (int k = 0; k < n; ++k) {
    double ph = kTwoPi * f0 * k / fs;
    in.samples[k] = std::complex<double>(std::cos(ph), std::sin(ph));
  }
  ComplexSeries out = sample(in, 1.6e5);
  CHECK(out.dt_s == doctest::Approx(1.0 / 1.6e5).epsilon(1e-12));
  int m = static_cast<int>(out.samples.size());
  CHECK(m > 3 * n);
  for (int k = m / 4; k < 3 * m / 4; k += 173) {
    double t = k * out.dt_s;
    std::complex<double> want(std::cos(kTwoPi * f0 * t), std::sin(kTwoPi * f0 * t));
    CHECK(std::abs(out.samples[k] - want) < 5e-3);
  }
  CHECK_THROWS_AS(sample(in, 9e3), AliasingConfigError);
  CHECK_THROWS_AS(sample(in, 0.0), std::invalid_argument);
}

TEST_CASE("series validation") {
  RealSeries r;
  r.dt_s = 0.0;
  r.samples = Eigen::VectorXd::Ones(4);
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  r.dt_s = 1e-6;
  CHECK_NOTHROW(r.validate());
  r.samples[2] = std::nan("");
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  ComplexSeries c;
  c.dt_s = 1e-6;
  c.bandwidth_hz = -1.0;
  c.samples = Eigen::VectorXcd::Ones(4);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

} // TEST_SUITE
