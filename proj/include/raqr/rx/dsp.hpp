#pragma once

#include "raqr/rx/series.hpp"

namespace raqr::rx {

// linear-phase lowpass, Blackman-windowed sinc, odd tap count, unit DC gain.
// Passband is flat up to cutoff - transition/2 and the stopband starts at
// cutoff + transition/2 (about -74 dB).
Eigen::VectorXd design_lowpass_fir(double fs_hz, double cutoff_hz,
                                   double transition_hz);

// filter with group delay removed; output has the input length, the first
// and last (taps-1)/2 samples carry edge transients
Eigen::VectorXcd fir_apply(const Eigen::VectorXd& taps,
                           const Eigen::VectorXcd& x);

// mix the input down by f_if (multiply by 2 exp(-j 2 pi f_if t)) and lowpass
// at the requested one-sided bandwidth
ComplexSeries downconvert(const RealSeries& in, double f_if_hz,
                          double bandwidth_hz);

// resample onto a uniform grid at the given rate by windowed-sinc
// interpolation; rate must satisfy Nyquist for the series bandwidth
ComplexSeries sample(const ComplexSeries& in, double rate_hz);

} // namespace raqr::rx
