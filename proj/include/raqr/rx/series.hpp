#pragma once

#include <complex>
#include <iosfwd>

#include <Eigen/Dense>

namespace raqr::rx {

// uniformly sampled real waveform (optical power, photocurrent)
struct RealSeries {
  double dt_s = 0.0;
  Eigen::VectorXd samples;

  double fs_hz() const { return 1.0 / dt_s; }
  void validate() const;
};

// uniformly sampled complex baseband stream with its one-sided content bound
struct ComplexSeries {
  double dt_s = 0.0;
  double bandwidth_hz = 0.0;
  Eigen::VectorXcd samples;

  double fs_hz() const { return 1.0 / dt_s; }
  void validate() const;
};

// CSV: t_s,value
void write_csv(const RealSeries& s, std::ostream& os);
// CSV: t_s,re,im
void write_csv(const ComplexSeries& s, std::ostream& os);
// binary: 8-byte magic "RAQRCPLX", u64 count, f64 dt_s, f64 bandwidth_hz,
// then count little-endian (re, im) f64 pairs
void write_raw(const ComplexSeries& s, std::ostream& os);

} // namespace raqr::rx
