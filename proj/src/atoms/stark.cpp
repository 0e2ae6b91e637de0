#include "raqr/atoms/stark.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "raqr/atoms/angular.hpp"
#include "raqr/constants.hpp"
#include "raqr/csv.hpp"
#include "raqr/errors.hpp"

namespace raqr::atoms {

namespace {

// energy of one e*a0 dipole in a 1 V/cm field, GHz
const double kCouplingGhzPerEa0Vcm =
    consts::rabi_per_ea0_vcm / (2.0 * consts::pi) * 1e-9;

std::vector<RydbergState> build_basis(const AtomSpecies& sp,
                                      const RydbergState& center,
                                      double window_ghz) {
  double e_center = level_energy_thz(sp, center) * 1e3;
  std::vector<RydbergState> basis;
  for (int n = std::max(1, center.n - 4); n <= center.n + 4; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int tj = std::abs(2 * l - 1); tj <= 2 * l + 1; tj += 2) {
        double j = tj / 2.0;
        if (j < std::abs(center.mj)) continue;
        RydbergState s{n, l, j, center.mj};
        double e = level_energy_thz(sp, s) * 1e3;
        if (std::abs(e - e_center) <= 0.5 * window_ghz) basis.push_back(s);
      }
    }
  }
  // deterministic order: by energy, then quantum numbers
  std::sort(basis.begin(), basis.end(), [&sp](const RydbergState& a,
                                              const RydbergState& b) {
    double ea = level_energy_thz(sp, a), eb = level_energy_thz(sp, b);
    if (ea != eb) return ea < eb;
    if (a.n != b.n) return a.n < b.n;
    if (a.l != b.l) return a.l < b.l;
    return a.j < b.j;
  });
  return basis;
}

} // namespace

StarkMap stark_map(const AtomSpecies& sp, const RydbergState& center,
                   double window_ghz, const Eigen::VectorXd& fields_vcm,
                   const GridSpec& grid) {
  center.validate();
  if (window_ghz <= 0) throw std::invalid_argument("stark_map: window <= 0");
  if (fields_vcm.size() < 2 || fields_vcm.minCoeff() < 0)
    throw std::invalid_argument("stark_map: need >= 2 non-negative field points");

  StarkMap map;
  map.center = center;
  map.window_ghz = window_ghz;
  map.fields_vcm = fields_vcm;
  map.basis = build_basis(sp, center, window_ghz);
  const int N = static_cast<int>(map.basis.size());

  int center_idx = -1;
  std::set<int> manifold_ns; // n values contributing near-degenerate l >= 3 states
  for (int i = 0; i < N; ++i) {
    const RydbergState& s = map.basis[i];
    if (s.n == center.n && s.l == center.l && s.j == center.j) center_idx = i;
    if (s.l >= 3) manifold_ns.insert(s.n);
  }
  if (center_idx < 0)
    throw std::invalid_argument("stark_map: window excludes the center state");
  if (manifold_ns.size() < 2)
    throw std::invalid_argument(
        "stark_map: window must capture at least two adjacent manifolds");

  // zero-field energies
  Eigen::VectorXd e0(N);
  for (int i = 0; i < N; ++i) e0[i] = level_energy_thz(sp, map.basis[i]) * 1e3;

  // radial wavefunctions once per state, dipole couplings once per pair
  std::vector<WavefunctionTrace> wfs(N);
  for (int i = 0; i < N; ++i) wfs[i] = radial_wavefunction(sp, map.basis[i], grid);

  auto overlap_r = [&](int i, int k) {
    const WavefunctionTrace& ta = wfs[i];
    const WavefunctionTrace& tb = wfs[k];
    int lo = std::max(ta.lattice_offset, tb.lattice_offset);
    int hi = std::min(ta.lattice_offset + static_cast<int>(ta.r.size()),
                      tb.lattice_offset + static_cast<int>(tb.r.size())) - 1;
    if (hi - lo < 2) return 0.0;
    double acc = 0.0, prev = 0.0;
    for (int idx = lo; idx <= hi; ++idx) {
      int ka = idx - ta.lattice_offset;
      int kb = idx - tb.lattice_offset;
      double r = ta.r[ka];
      double f = (r * ta.R[ka]) * (r * tb.R[kb]) * r;
      if (idx > lo) acc += 0.5 * (prev + f) * (r - ta.r[ka - 1]);
      prev = f;
    }
    return acc;
  };

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N); // e*a0 units
  for (int i = 0; i < N; ++i) {
    for (int k = i + 1; k < N; ++k) {
      const RydbergState& a = map.basis[i];
      const RydbergState& b = map.basis[k];
      if (std::abs(a.l - b.l) != 1) continue;
      double ang = stark_angular_factor(a.l, a.j, b.l, b.j, center.mj);
      if (ang == 0.0) continue;
      double val = overlap_r(i, k) * ang;
      D(i, k) = val;
      D(k, i) = val;
    }
  }

  const int F = static_cast<int>(fields_vcm.size());
  map.traces_ghz.resize(F, N);

  Eigen::MatrixXd prev_vecs;   // eigenvectors at the previous field point
  std::vector<int> trace_of;   // eigen index -> trace index
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (int f = 0; f < F; ++f) {
    Eigen::MatrixXd H = (kCouplingGhzPerEa0Vcm * fields_vcm[f]) * D;
    H.diagonal() = e0;
    solver.compute(H);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    const Eigen::MatrixXd& vecs = solver.eigenvectors();

    std::vector<int> assign(N, -1);
    if (f == 0) {
      // eigenvalues arrive sorted; trace t starts at the t-th basis energy.
      // Zero-field H is diagonal so this is the identity up to degeneracy.
      for (int k = 0; k < N; ++k) assign[k] = k;
    } else {
      // greedy maximum-overlap matching against the previous step
      Eigen::MatrixXd ov = (prev_vecs.transpose() * vecs).cwiseAbs();
      std::vector<std::tuple<double, int, int>> order;
      order.reserve(static_cast<std::size_t>(N) * N);
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) order.emplace_back(ov(a, b), a, b);
      std::sort(order.begin(), order.end(),
                [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
      std::vector<char> used_prev(N, 0), used_cur(N, 0);
      int done = 0;
      for (const auto& [w, a, b] : order) {
        (void)w;
        if (used_prev[a] || used_cur[b]) continue;
        used_prev[a] = used_cur[b] = 1;
        assign[b] = trace_of[a];
        if (++done == N) break;
      }
    }
    for (int k = 0; k < N; ++k) map.traces_ghz(f, assign[k]) = ev[k];
    prev_vecs = vecs;
    trace_of = assign;
  }
  map.center_trace = center_idx;
  return map;
}

QuadraticFit quadratic_stark_fit(const Eigen::VectorXd& fields_vcm,
                                 const Eigen::VectorXd& energies_ghz) {
  if (fields_vcm.size() != energies_ghz.size() || fields_vcm.size() < 3)
    throw std::invalid_argument("quadratic_stark_fit: need >= 3 matched points");
  // E = E0 + c2 f^2, linear least squares in (1, f^2)
  Eigen::MatrixXd A(fields_vcm.size(), 2);
  A.col(0).setOnes();
  A.col(1) = fields_vcm.array().square();
  Eigen::Vector2d coef = A.colPivHouseholderQr().solve(energies_ghz);
  Eigen::VectorXd resid = energies_ghz - A * coef;
  double ss_res = resid.squaredNorm();
  double mean = energies_ghz.mean();
  double ss_tot = (energies_ghz.array() - mean).square().sum();
  QuadraticFit fit;
  fit.alpha_mhz_vcm2 = 2.0 * coef[1] * 1e3; // GHz -> MHz
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double polarizability_mhz_vcm2(const AtomSpecies& sp, const RydbergState& s,
                               const GridSpec& grid) {
  s.validate();
  if (s.l > 2)
    throw std::invalid_argument(
        "polarizability: state sits in a near-degenerate manifold and shifts "
        "linearly; no scalar polarizability");

  // crude second-order estimate to size the weak-field span
  double alpha_est = 0.0; // MHz/(V/cm)^2
  double e_s = level_energy_thz(sp, s) * 1e3;
  double gap_min = 1e300;
  for (int n = std::max(1, s.n - 4); n <= s.n + 4; ++n) {
    for (int dl : {-1, 1}) {
      int l = s.l + dl;
      if (l < 0 || l >= n) continue;
      for (int tj = std::abs(2 * l - 1); tj <= 2 * l + 1; tj += 2) {
        double j = tj / 2.0;
        if (j < std::abs(s.mj)) continue;
        RydbergState k{n, l, j, s.mj};
        double ang = stark_angular_factor(s.l, s.j, k.l, k.j, s.mj);
        if (ang == 0.0) continue;
        double d = radial_matrix_element(sp, s, k, grid) * ang;
        double de = (e_s - level_energy_thz(sp, k) * 1e3) * 1e3; // MHz
        if (de == 0.0) continue;
        gap_min = std::min(gap_min, std::abs(de));
        double c = d * kCouplingGhzPerEa0Vcm * 1e3; // MHz per V/cm
        alpha_est += 2.0 * c * c / de;
      }
    }
  }
  if (alpha_est == 0.0 || gap_min == 1e300)
    throw NumericalError("polarizability: no dipole-coupled neighbors found");

  // pick a span where the expected shift stays ~1% of the nearest gap
  double f_max = std::sqrt(0.02 * gap_min / std::abs(alpha_est));
  Eigen::VectorXd fields = Eigen::VectorXd::LinSpaced(9, 0.0, f_max);
  double window = 8.0 * std::abs(e_s) / s.n; // a few manifold spacings, GHz
  StarkMap map = stark_map(sp, s, window, fields, grid);
  QuadraticFit fit = quadratic_stark_fit(fields, map.traces_ghz.col(map.center_trace));
  if (fit.r_squared < 0.999)
    throw NumericalError("polarizability: Stark trace is not quadratic over the "
                         "probed span");
  return fit.alpha_mhz_vcm2;
}

std::vector<AntiCrossing> find_anticrossings(const StarkMap& map) {
  std::vector<AntiCrossing> out;
  const int F = static_cast<int>(map.traces_ghz.rows());
  const int N = static_cast<int>(map.traces_ghz.cols());
  if (F < 3 || N < 2) return out;

  // work on energy-ordered levels per field point; adjacent-gap minima in
  // the interior are avoided crossings
  Eigen::MatrixXd sorted = map.traces_ghz;
  for (int f = 0; f < F; ++f) {
    Eigen::VectorXd row = sorted.row(f);
    std::sort(row.data(), row.data() + N);
    sorted.row(f) = row;
  }
  for (int t = 0; t + 1 < N; ++t) {
    for (int f = 1; f + 1 < F; ++f) {
      double g_prev = sorted(f - 1, t + 1) - sorted(f - 1, t);
      double g = sorted(f, t + 1) - sorted(f, t);
      double g_next = sorted(f + 1, t + 1) - sorted(f + 1, t);
      if (g < g_prev && g <= g_next && g > 0) {
        // require a genuine approach, not grid noise
        if (g < 0.5 * std::min(g_prev, g_next) ||
            (g < 0.9 * g_prev && g < 0.9 * g_next))
          out.push_back({map.fields_vcm[f], g, t});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AntiCrossing& a, const AntiCrossing& b) { return a.gap_ghz < b.gap_ghz; });
  return out;
}

void write_csv(const StarkMap& map, std::ostream& os) {
  CsvWriter w(os);
  std::vector<std::string> head{"field_vcm"};
  for (int t = 0; t < map.traces_ghz.cols(); ++t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "trace_%03d", t);
    head.push_back(buf);
  }
  w.header(head);
  std::vector<double> row(static_cast<std::size_t>(map.traces_ghz.cols()) + 1);
  for (int f = 0; f < map.traces_ghz.rows(); ++f) {
    row[0] = map.fields_vcm[f];
    for (int t = 0; t < map.traces_ghz.cols(); ++t) row[t + 1] = map.traces_ghz(f, t);
    w.row(row);
  }
}

void write_csv(const WavefunctionTrace& tr, std::ostream& os) {
  CsvWriter w(os);
  w.header({"r_bohr", "radial_R"});
  for (int k = 0; k < tr.r.size(); ++k) {
    double row[2] = {tr.r[k], tr.R[k]};
    w.row(row);
  }
}

} // namespace raqr::atoms
