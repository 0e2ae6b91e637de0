#include "raqr/link/modem.hpp"

#include <cmath>
#include <stdexcept>

namespace raqr::link {

namespace {

// one Gray-coded 4-PAM axis, levels -3,-1,+1,+3
double gray2_level(unsigned two) {
  switch (two & 3u) {
    case 0u: return -3.0;
    case 1u: return -1.0;
    case 3u: return 1.0;
    default: return 3.0; // 2u
  }
}

unsigned gray2_bits(double x) {
  if (x < -2.0) return 0u;
  if (x < 0.0) return 1u;
  if (x < 2.0) return 3u;
  return 2u;
}

const double kQamNorm = std::sqrt(10.0); // unit average symbol energy
const double kQpskNorm = std::sqrt(2.0);

} // namespace

Modulation modulation_from_name(const std::string& name) {
  if (name == "bpsk") return Modulation::kBpsk;
  if (name == "qpsk") return Modulation::kQpsk;
  if (name == "16qam") return Modulation::k16Qam;
  throw std::invalid_argument("unsupported modulation '" + name +
                              "' (bpsk, qpsk, 16qam)");
}

const char* modulation_name(Modulation m) {
  switch (m) {
    case Modulation::kBpsk: return "bpsk";
    case Modulation::kQpsk: return "qpsk";
    default: return "16qam";
  }
}

int bits_per_symbol(Modulation m) {
  switch (m) {
    case Modulation::kBpsk: return 1;
    case Modulation::kQpsk: return 2;
    default: return 4;
  }
}

std::complex<double> map_symbol(Modulation m, unsigned bits) {
  switch (m) {
    case Modulation::kBpsk:
      return {1.0 - 2.0 * (bits & 1u), 0.0};
    case Modulation::kQpsk:
      return {(1.0 - 2.0 * (bits & 1u)) / kQpskNorm,
              (1.0 - 2.0 * ((bits >> 1) & 1u)) / kQpskNorm};
    default:
      return {gray2_level(bits & 3u) / kQamNorm,
              gray2_level((bits >> 2) & 3u) / kQamNorm};
  }
}

unsigned demap_symbol(Modulation m, std::complex<double> z) {
  switch (m) {
    case Modulation::kBpsk:
      return z.real() < 0 ? 1u : 0u;
    case Modulation::kQpsk:
      return (z.real() < 0 ? 1u : 0u) | ((z.imag() < 0 ? 1u : 0u) << 1);
    default:
      return gray2_bits(z.real() * kQamNorm) |
             (gray2_bits(z.imag() * kQamNorm) << 2);
  }
}

} // namespace raqr::link
