#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace raqr {

// splitmix64 step; used to spread one user seed into independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source. mt19937_64 has a standard-specified output
// sequence and the distributions below are implemented explicitly, so a
// (seed, stream) pair produces identical doubles on every platform. Never
// use std::normal_distribution here; its output is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed ^ (0xa5a5a5a5deadbeefULL * (stream + 1));
    // decorrelate nearby (seed, stream) pairs before seeding the engine
    splitmix64(s);
    gen_.seed(splitmix64(s));
  }

  std::uint64_t bits() { return gen_(); }

  // uniform on [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller, one value cached
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // circularly symmetric complex normal, E|z|^2 = 1
  std::complex<double> cgauss() {
    double re = gauss();
    double im = gauss();
    return {re * 0.70710678118654752440, im * 0.70710678118654752440};
  }

private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace raqr
