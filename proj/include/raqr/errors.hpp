#pragma once

#include <stdexcept>

namespace raqr {

// Requested data is absent: unknown species file, missing key, no table entry.
struct MissingDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration text or overrides are malformed, unknown or inconsistent.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An algorithm failed: singular system, no convergence, ill-posed request.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spectrum lacks a resolvable two-peak structure at the requested drive.
struct AtsThresholdError : NumericalError {
  using NumericalError::NumericalError;
};

// An estimator could not produce a usable result from the given samples.
struct EstimationError : NumericalError {
  using NumericalError::NumericalError;
};

// The local-oscillator bias sits on a stationary point of the transmission
// curve, so the small-signal gain vanishes.
struct ZeroGainBiasError : NumericalError {
  using NumericalError::NumericalError;
};

// Down-conversion geometry folds the image band onto the signal band.
struct ImageOverlapError : ConfigError {
  using ConfigError::ConfigError;
};

// Requested sample rate violates the Nyquist bound for the series bandwidth.
struct AliasingConfigError : ConfigError {
  using ConfigError::ConfigError;
};

} // namespace raqr
