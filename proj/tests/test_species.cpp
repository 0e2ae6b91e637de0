#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "raqr/atoms/species.hpp"
#include "raqr/errors.hpp"

using namespace raqr;
using namespace raqr::atoms;

TEST_SUITE("species") {

TEST_CASE("golden cs transition frequencies") {
  AtomSpecies cs = AtomSpecies::cs133();
  RydbergState d47{47, 2, 2.5, 0.5}, p48{48, 1, 1.5, 0.5};
  RydbergState d45{45, 2, 2.5, 0.5}, p46{46, 1, 1.5, 0.5};
  RydbergState d34{34, 2, 2.5, 0.5}, p35{35, 1, 1.5, 0.5};
  CHECK(transition_frequency_ghz(cs, d47, p48) ==
        doctest::Approx(6.9458).epsilon(1e-3));
  CHECK(transition_frequency_ghz(cs, d45, p46) ==
        doctest::Approx(7.9752).epsilon(1e-3));
  CHECK(transition_frequency_ghz(cs, d34, p35) ==
        doctest::Approx(19.629).epsilon(2e-3));
}

TEST_CASE("hydrogenic energies with defects zeroed") {
  AtomSpecies h = AtomSpecies::cs133().defect_free();
  for (int n = 1; n <= 12; ++n) {
    RydbergState s{n, 0, 0.5, 0.5};
    CHECK(level_energy_thz(h, s) ==
          doctest::Approx(-h.rydberg_thz / (n * n)).epsilon(1e-12));
  }
  // degenerate l, j at fixed n
  CHECK(level_energy_thz(h, {20, 0, 0.5, 0.5}) ==
        doctest::Approx(level_energy_thz(h, {20, 15, 14.5, 0.5})).epsilon(1e-12));
}

TEST_CASE("quantum defect series behaviour") {
  AtomSpecies cs = AtomSpecies::cs133();
  // s series defect of Cs is ~4.05, d5/2 ~2.46, high l untabulated -> 0
  CHECK(cs.quantum_defect(0, 0.5, 47) > 4.0);
  CHECK(cs.quantum_defect(0, 0.5, 47) < 4.1);
  CHECK(cs.quantum_defect(2, 2.5, 47) > 2.4);
  CHECK(cs.quantum_defect(2, 2.5, 47) < 2.5);
  CHECK(cs.quantum_defect(5, 4.5, 47) == 0.0);
  // Rydberg-Ritz: defect decreases weakly with n for positive d2
  double lo = cs.quantum_defect(0, 0.5, 20), hi = cs.quantum_defect(0, 0.5, 80);
  CHECK(std::abs(lo - hi) < 0.01);
  RydbergState s{47, 2, 2.5, 0.5};
  CHECK(cs.effective_n(s) == doctest::Approx(47 - cs.quantum_defect(2, 2.5, 47)));
}

TEST_CASE("energy ordering and transition symmetry") {
  AtomSpecies cs = AtomSpecies::cs133();
  CHECK(level_energy_thz(cs, {40, 0, 0.5, 0.5}) <
        level_energy_thz(cs, {41, 0, 0.5, 0.5}));
  CHECK(level_energy_thz(cs, {40, 0, 0.5, 0.5}) < 0.0);
  RydbergState a{47, 2, 2.5, 0.5}, b{48, 1, 1.5, 0.5};
  CHECK(transition_frequency_ghz(cs, a, b) ==
        doctest::Approx(transition_frequency_ghz(cs, b, a)).epsilon(1e-15));
  CHECK(transition_frequency_ghz(cs, a, a) == 0.0);
}

TEST_CASE("selection rules") {
  RydbergState d{47, 2, 2.5, 0.5};
  CHECK(allowed_transition(d, {48, 1, 1.5, 0.5}));
  CHECK(allowed_transition(d, {47, 3, 3.5, 1.5}));
  CHECK_FALSE(allowed_transition(d, {48, 2, 2.5, 0.5})); // dl = 0
  CHECK_FALSE(allowed_transition(d, {48, 0, 0.5, 0.5})); // dl = 2
  CHECK_FALSE(allowed_transition(d, {48, 3, 3.5, 2.5})); // dmj = 2
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS((RydbergState{0, 0, 0.5, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RydbergState{5, 5, 5.5, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RydbergState{5, 2, 0.5, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RydbergState{5, 2, 2.5, 3.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RydbergState{5, 2, 2.5, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((RydbergState{5, 2, 2.5, -2.5}.validate()));
}

TEST_CASE("species lookup and file round trip") {
  CHECK_NOTHROW(AtomSpecies::by_name("cs133"));
  CHECK_NOTHROW(AtomSpecies::by_name("rb87"));
  CHECK_NOTHROW(AtomSpecies::by_name("rb85"));
  CHECK_THROWS_AS(AtomSpecies::by_name("fr223"), MissingDataError);
  CHECK_THROWS_AS(AtomSpecies::from_file("/nonexistent/path.atom"), MissingDataError);

  AtomSpecies rb = AtomSpecies::rb87();
  std::string path = (std::filesystem::temp_directory_path() / "rb87_rt.atom").string();
  rb.to_file(path);
  AtomSpecies back = AtomSpecies::from_file(path);
  CHECK(back.name == rb.name);
  CHECK(back.mass_kg == doctest::Approx(rb.mass_kg).epsilon(1e-12));
  CHECK(back.rydberg_thz == doctest::Approx(rb.rydberg_thz).epsilon(1e-12));
  CHECK(back.probe_wavelength_m == doctest::Approx(rb.probe_wavelength_m).epsilon(1e-12));
  CHECK(back.defects.size() == rb.defects.size());
  for (const auto& [key, dc] : rb.defects) {
    REQUIRE(back.defects.count(key) == 1);
    CHECK(back.defects.at(key).d0 == doctest::Approx(dc.d0).epsilon(1e-12));
    CHECK(back.defects.at(key).d2 == doctest::Approx(dc.d2).epsilon(1e-12));
  }
  std::remove(path.c_str());
}

TEST_CASE("mass-corrected rydberg constants differ per species") {
  double cs = AtomSpecies::cs133().rydberg_thz;
  double rb87 = AtomSpecies::rb87().rydberg_thz;
  double rb85 = AtomSpecies::rb85().rydberg_thz;
  CHECK(cs != rb87);
  CHECK(rb87 > rb85); // heavier isotope, larger reduced-mass constant
  for (double r : {cs, rb87, rb85}) {
    CHECK(r > 3289.0);
    CHECK(r < 3290.0);
  }
}

TEST_CASE("scaling laws") {
  AtomSpecies cs = AtomSpecies::cs133();
  CHECK_THROWS_AS(scaling_property(cs, 5, ScalingProperty::orbital_radius),
                  std::invalid_argument);
  auto nstar = [&](int n) { return n - cs.quantum_defect(0, 0.5, n); };
  double q = nstar(60) / nstar(30);
  auto ratio = [&](ScalingProperty p) {
    return scaling_property(cs, 60, p).value / scaling_property(cs, 30, p).value;
  };
  CHECK(ratio(ScalingProperty::orbital_radius) == doctest::Approx(q * q).epsilon(1e-9));
  CHECK(ratio(ScalingProperty::binding_energy) ==
        doctest::Approx(std::pow(q, -2.0)).epsilon(1e-9));
  CHECK(ratio(ScalingProperty::level_spacing) ==
        doctest::Approx(std::pow(q, -3.0)).epsilon(1e-2));
  CHECK(ratio(ScalingProperty::lifetime) ==
        doctest::Approx(std::pow(q, 3.0)).epsilon(1e-9));
  CHECK(ratio(ScalingProperty::polarizability) ==
        doctest::Approx(std::pow(q, 7.0)).epsilon(1e-9));
  CHECK(scaling_property(cs, 47, ScalingProperty::orbital_radius).value > 1e-7);
  CHECK(std::string(scaling_property(cs, 47, ScalingProperty::lifetime).unit) == "s");
}

} // TEST_SUITE
