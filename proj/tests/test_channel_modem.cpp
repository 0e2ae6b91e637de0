#include <cmath>
#include <complex>

#include "doctest.h"
#include "raqr/errors.hpp"
#include "raqr/link/channel.hpp"
#include "raqr/link/modem.hpp"
#include "raqr/link/simulate.hpp"
#include "raqr/rng.hpp"

using namespace raqr;
using namespace raqr::link;

TEST_SUITE("link-channel") {

TEST_CASE("received field anchor") {
  ChannelConfig cfg; // 200 m, exponent 3.8, reference 1 m
  // sqrt(eta0 / (4 pi) * 200^-3.8) / 100, eta0 = 376.730313668
  CHECK(received_field_vcm(1.0, cfg) ==
        doctest::Approx(2.3251627663054503e-06).epsilon(1e-9));
  CHECK(received_field_vcm(4.0, cfg) ==
        doctest::Approx(2.0 * received_field_vcm(1.0, cfg)).epsilon(1e-12));
  ChannelConfig near = cfg;
  near.distance_m = 100.0;
  CHECK(received_field_vcm(1.0, near) / received_field_vcm(1.0, cfg) ==
        doctest::Approx(std::pow(2.0, 1.9)).epsilon(1e-12));
  CHECK(received_field_vcm(0.0, cfg) == 0.0);
}

TEST_CASE("pathloss model") {
  CHECK(pathloss(1.0, 3.8, 1.0) == 1.0);
  CHECK(pathloss(200.0, 2.0, 1.0) == doctest::Approx(2.5e-5).epsilon(1e-12));
  CHECK_THROWS_AS(pathloss(-5.0, 3.8, 1.0), std::invalid_argument);
  ChannelConfig bad;
  bad.exponent = 7.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ChannelConfig{};
  bad.distance_m = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(power_density_w_m2(-1.0, ChannelConfig{}), std::invalid_argument);
}

TEST_CASE("channel draws") {
  ChannelConfig cfg;
  cfg.fading = false;
  Rng rng(3);
  CHECK(draw_channel(cfg, rng) == std::complex<double>(1.0, 0.0));
  cfg.fading = true;
  const int n = 20000;
  double p = 0.0;
  std::complex<double> mean = 0.0;
  for (int i = 0; i < n; ++i) {
    std::complex<double> h = draw_channel(cfg, rng);
    p += std::norm(h);
    mean += h;
  }
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(mean) / n < 0.02);
  Eigen::VectorXcd v = draw_channel_vector(cfg, 5, rng);
  CHECK(v.size() == 5);
}

TEST_CASE("rng determinism and moments") {
  Rng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 64; ++i) CHECK(a.bits() == b.bits());
  bool differs = false;
  for (int i = 0; i < 64; ++i) differs |= (b.bits() != c.bits());
  CHECK(differs);
  Rng g(11);
  const int n = 100000;
  double m1 = 0, m2 = 0;
  for (int i = 0; i < n; ++i) {
    double x = g.gauss();
    m1 += x;
    m2 += x * x;
  }
  CHECK(std::abs(m1 / n) < 0.02);
  CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.03));
  for (int i = 0; i < 1000; ++i) {
    double u = g.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("modem round trip and energy") {
  for (Modulation m : {Modulation::kBpsk, Modulation::kQpsk, Modulation::k16Qam}) {
    int bps = bits_per_symbol(m);
    double energy = 0.0;
    for (unsigned b = 0; b < (1u << bps); ++b) {
      std::complex<double> z = map_symbol(m, b);
      CHECK(demap_symbol(m, z) == b);
      energy += std::norm(z);
    }
    CHECK(energy / (1 << bps) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(bits_per_symbol(Modulation::kBpsk) == 1);
  CHECK(bits_per_symbol(Modulation::kQpsk) == 2);
  CHECK(bits_per_symbol(Modulation::k16Qam) == 4);
}

TEST_CASE("gray labelling: one boundary crossing flips one bit") {
  for (Modulation m : {Modulation::kQpsk, Modulation::k16Qam}) {
    int bps = bits_per_symbol(m);
    double step = (m == Modulation::kQpsk) ? std::sqrt(2.0) : 2.0 / std::sqrt(10.0);
    for (unsigned b = 0; b < (1u << bps); ++b) {
      std::complex<double> z = map_symbol(m, b);
      for (std::complex<double> d : {std::complex<double>(step, 0.0),
                                     std::complex<double>(0.0, step)}) {
        std::complex<double> zp = z + d;
        unsigned got = demap_symbol(m, zp);
        if (got == b) continue; // pushed outward from an edge point
        unsigned diff = got ^ b;
        CHECK(__builtin_popcount(diff) == 1);
      }
    }
  }
}

TEST_CASE("modulation names") {
  CHECK(modulation_from_name("qpsk") == Modulation::kQpsk);
  CHECK(modulation_from_name("bpsk") == Modulation::kBpsk);
  CHECK(modulation_from_name("16qam") == Modulation::k16Qam);
  CHECK(std::string(modulation_name(Modulation::kQpsk)) == "qpsk");
  CHECK_THROWS_AS(modulation_from_name("8psk"), std::invalid_argument);
}

TEST_CASE("snr bookkeeping") {
  ChannelConfig cfg;
  rx::BasebandModel m;
  m.rho = 1.0;
  m.noise_psd = 1e-16;
  m.sensitivity = 1e-8;
  double field = received_field_vcm(1.0, cfg);
  CHECK(snr_at_power(1.0, cfg, m) ==
        doctest::Approx(field * field / (1e-16 * cfg.bandwidth_hz)).epsilon(1e-12));
  m.sensitivity = 0.0;
  CHECK_THROWS_AS(snr_at_power(1.0, cfg, m), std::invalid_argument);
}

} // TEST_SUITE
