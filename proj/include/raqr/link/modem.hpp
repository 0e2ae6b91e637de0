#pragma once

#include <complex>
#include <string>

namespace raqr::link {

enum class Modulation { kBpsk, kQpsk, k16Qam };

Modulation modulation_from_name(const std::string& name);
const char* modulation_name(Modulation m);
int bits_per_symbol(Modulation m);

// Gray-labelled unit-average-energy constellation point for the given bits
// (low bit first on I, then Q)
std::complex<double> map_symbol(Modulation m, unsigned bits);

// maximum-likelihood hard decision, inverse of map_symbol on noiseless input
unsigned demap_symbol(Modulation m, std::complex<double> z);

} // namespace raqr::link
