#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "raqr/atoms/stark.hpp"
#include "raqr/errors.hpp"

using namespace raqr;
using namespace raqr::atoms;

TEST_SUITE("stark") {

TEST_CASE("hydrogen linear manifold ladder") {
  // Defect-free atom: the n = 5, mj = 1/2 manifold splits linearly with
  // slopes (3/2) n k in atomic units, k the parabolic quantum number
  // difference. With the ml = 0 and |ml| = 1 sectors together the nine
  // shifts are uniformly spaced by 7.5 * u * f, u = e a0 / h in Hz per V/cm.
  AtomSpecies h = AtomSpecies::cs133().defect_free();
  RydbergState center{5, 2, 2.5, 0.5};
  Eigen::VectorXd fields = Eigen::VectorXd::LinSpaced(6, 0.0, 100.0);
  StarkMap map = stark_map(h, center, 155000.0, fields);
  REQUIRE(map.basis.size() == 40); // n = 4..7 at mj = 1/2
  REQUIRE(map.traces_ghz.rows() == 6);
  REQUIRE(map.center_trace >= 0);
  CHECK(map.basis[map.center_trace].n == 5);
  CHECK(map.basis[map.center_trace].l == 2);

  const double u_hz_per_vcm = 100.0 * 1.602176634e-19 * 5.29177210903e-11 /
                              6.62607015e-34;
  std::vector<double> shifts;
  for (std::size_t t = 0; t < map.basis.size(); ++t) {
    if (map.basis[t].n != 5) continue;
    shifts.push_back(map.traces_ghz(5, t) - map.traces_ghz(0, t));
  }
  REQUIRE(shifts.size() == 9);
  std::sort(shifts.begin(), shifts.end());
  for (int k = -4; k <= 4; ++k) {
    double want_ghz = 7.5 * k * u_hz_per_vcm * 100.0 * 1e-9;
    CAPTURE(k);
    CHECK(shifts[k + 4] == doctest::Approx(want_ghz).scale(0.1).epsilon(0.01));
  }
}

TEST_CASE("quadratic fit recovers an exact parabola") {
  Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(9, 0.0, 8.0);
  Eigen::VectorXd e(9);
  const double alpha = -3.7; // MHz/(V/cm)^2
  for (int i = 0; i < 9; ++i)
    e[i] = -4339.5 + 0.5 * alpha * 1e-3 * f[i] * f[i];
  QuadraticFit fit = quadratic_stark_fit(f, e);
  CHECK(fit.alpha_mhz_vcm2 == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(quadratic_stark_fit(f.head(2), e.head(2)), std::invalid_argument);
}

TEST_CASE("synthetic anticrossing detection") {
  // two hyperbola branches, closest approach 2g at f0
  const double g = 0.05, f0 = 6.0, slope = 0.4;
  Eigen::VectorXd fields = Eigen::VectorXd::LinSpaced(101, 0.0, 12.0);
  Eigen::MatrixXd traces(101, 2);
  for (int i = 0; i < 101; ++i) {
    double x = slope * (fields[i] - f0);
    traces(i, 0) = -std::sqrt(g * g + x * x);
    traces(i, 1) = std::sqrt(g * g + x * x);
  }
  StarkMap map;
  map.center = {5, 2, 2.5, 0.5};
  map.window_ghz = 1.0;
  map.fields_vcm = fields;
  map.traces_ghz = traces;
  map.basis = {{5, 2, 2.5, 0.5}, {5, 3, 3.5, 0.5}};
  map.center_trace = 0;
  std::vector<AntiCrossing> ac = find_anticrossings(map);
  REQUIRE(ac.size() == 1);
  CHECK(ac[0].field_vcm == doctest::Approx(f0).epsilon(0.02));
  CHECK(ac[0].gap_ghz == doctest::Approx(2.0 * g).epsilon(0.01));
  CHECK(ac[0].lower_trace == 0);
}

TEST_CASE("cs 30d map structure") {
  AtomSpecies cs = AtomSpecies::cs133();
  RydbergState center{30, 2, 2.5, 0.5};
  Eigen::VectorXd fields = Eigen::VectorXd::LinSpaced(7, 0.0, 30.0);
  StarkMap map = stark_map(cs, center, 400.0, fields);
  REQUIRE(map.basis.size() > 30); // dense high-l manifolds inside the window
  REQUIRE(map.center_trace >= 0);

  // zero-field column equals the unperturbed energies
  for (std::size_t t = 0; t < map.basis.size(); ++t) {
    double want = level_energy_thz(cs, map.basis[t]) * 1e3;
    CHECK(std::abs(map.traces_ghz(0, t) - want) < 1e-3); // 1 MHz
  }
  CHECK(map.traces_ghz.allFinite());
  // the center trace bends up: cs nD5/2 sits just above the near-degenerate
  // (n+1)P3/2 (defect gap 0.093), which repels it to higher energy
  double d_end = map.traces_ghz(6, map.center_trace) -
                 map.traces_ghz(0, map.center_trace);
  CHECK(d_end > 0.0);
}

TEST_CASE("cs 30d5/2 polarizability") {
  AtomSpecies cs = AtomSpecies::cs133();
  double alpha = polarizability_mhz_vcm2(cs, {30, 2, 2.5, 0.5});
  CHECK(alpha > 0.0); // repelled upward by (n+1)P3/2 just below
  CHECK(std::abs(alpha) > 0.05);
  CHECK(std::abs(alpha) < 500.0);
  // |alpha| grows roughly as n*^7
  double alpha35 = polarizability_mhz_vcm2(cs, {35, 2, 2.5, 0.5});
  CHECK(std::abs(alpha35) > 2.0 * std::abs(alpha));
  CHECK_THROWS_AS(polarizability_mhz_vcm2(cs, {30, 4, 4.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("stark map argument checks") {
  AtomSpecies cs = AtomSpecies::cs133();
  RydbergState center{30, 2, 2.5, 0.5};
  Eigen::VectorXd fields = Eigen::VectorXd::LinSpaced(3, 0.0, 10.0);
  CHECK_THROWS_AS(stark_map(cs, center, -5.0, fields), std::invalid_argument);
  CHECK_THROWS_AS(stark_map(cs, center, 0.5, fields), std::invalid_argument);
  Eigen::VectorXd one(1);
  one << 0.0;
  CHECK_THROWS_AS(stark_map(cs, center, 400.0, one), std::invalid_argument);
}

} // TEST_SUITE
