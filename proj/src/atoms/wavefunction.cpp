#include "raqr/atoms/wavefunction.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "raqr/atoms/angular.hpp"
#include "raqr/constants.hpp"
#include "raqr/errors.hpp"

namespace raqr::atoms {

namespace {

// Transformed radial equation on x = sqrt(r): w'' = g(x) w with
// u(r) = x^{1/2} w(x). Atomic units, V = -1/r.
inline double g_coeff(double x, double e2, double cent) {
  double r = x * x;
  return 8.0 * r * (-1.0 / r - 0.5 * e2) + cent / r;
}

struct RawSolution {
  std::vector<double> w; // innermost first
  int i_lo = 0;          // lattice index of w.front()
};

// Inward Numerov integration from the outer turning region. Returns the
// unnormalized w on the lattice x_i = i*h, truncated where the solution
// has died off under the inner barrier.
RawSolution integrate_inward(double nstar, int l, const GridSpec& grid) {
  const double h = grid.step_x;
  const double e2 = -1.0 / (nstar * nstar); // 2E in atomic units
  const double cent = (2.0 * l + 0.5) * (2.0 * l + 1.5);

  double n_eff = std::max(nstar, static_cast<double>(l + 1));
  double r_out = 2.0 * n_eff * (n_eff + grid.outer_pad);
  double ll1 = static_cast<double>(l) * (l + 1);
  double disc = nstar * nstar - ll1;
  double r_turn = disc > 0 ? nstar * nstar - nstar * std::sqrt(disc) : 0.0;
  double r_start = std::max(grid.inner_floor_bohr, 0.3 * r_turn);

  int i_hi = static_cast<int>(std::ceil(std::sqrt(r_out) / h));
  int i_floor = std::max(1, static_cast<int>(std::floor(std::sqrt(r_start) / h)));
  if (i_hi - i_floor < 16)
    throw NumericalError("radial grid collapsed; check n, l and grid spec");

  std::vector<double> w(i_hi - i_floor + 1, 0.0);
  auto at = [&](int i) -> double& { return w[i - i_floor]; };

  const double hf = h * h / 12.0;
  at(i_hi) = 1e-12;
  at(i_hi - 1) = 2e-12; // grows inward; overall scale fixed by normalization

  const double x_turn_in = std::sqrt(r_turn);
  double wmax = 0.0;
  int i_stop = i_floor;
  double g_ip1 = g_coeff(i_hi * h, e2, cent);
  double g_i = g_coeff((i_hi - 1) * h, e2, cent);
  for (int i = i_hi - 1; i > i_floor; --i) {
    double g_im1 = g_coeff((i - 1) * h, e2, cent);
    double num = (2.0 + 10.0 * hf * g_i) * at(i) - (1.0 - hf * g_ip1) * at(i + 1);
    at(i - 1) = num / (1.0 - hf * g_im1);
    g_ip1 = g_i;
    g_i = g_im1;

    double a = std::abs(at(i - 1));
    if (a > 1e100) { // keep the growing tail inside double range
      for (int k = i - 1; k <= i_hi; ++k) at(k) *= 1e-100;
      wmax *= 1e-100;
      a *= 1e-100;
    }
    if (a > wmax) wmax = a;
    // once under the inner barrier and negligible, stop; integrating
    // further only amplifies the unphysical r^-l companion solution
    if ((i - 1) * h < x_turn_in && a < 1e-9 * wmax && wmax > 0) {
      i_stop = i - 1;
      break;
    }
  }

  RawSolution out;
  out.i_lo = i_stop;
  out.w.assign(w.begin() + (i_stop - i_floor), w.end());
  return out;
}

WavefunctionTrace finish_trace(RawSolution raw, const GridSpec& grid) {
  const double h = grid.step_x;
  const int npts = static_cast<int>(raw.w.size());

  WavefunctionTrace tr;
  tr.step_x = h;
  tr.lattice_offset = raw.i_lo;
  tr.r.resize(npts);
  tr.R.resize(npts);

  // u = x^{1/2} w; norm via trapezoid of u^2 on the stored r grid
  Eigen::VectorXd u(npts);
  for (int k = 0; k < npts; ++k) {
    double x = (raw.i_lo + k) * h;
    tr.r[k] = x * x;
    u[k] = std::sqrt(x) * raw.w[k];
  }
  double norm2 = 0.0;
  for (int k = 0; k + 1 < npts; ++k)
    norm2 += 0.5 * (u[k] * u[k] + u[k + 1] * u[k + 1]) * (tr.r[k + 1] - tr.r[k]);
  if (norm2 <= 0) throw NumericalError("radial_wavefunction: zero norm");
  double inv = 1.0 / std::sqrt(norm2);
  // sign convention: positive tail at the outer end
  if (u[npts - 1] + u[npts - 2] < 0) inv = -inv;
  for (int k = 0; k < npts; ++k) tr.R[k] = inv * u[k] / tr.r[k];

  // count sign changes away from the noise floor
  double umax = u.cwiseAbs().maxCoeff();
  int nodes = 0;
  double prev = 0.0;
  for (int k = 0; k < npts; ++k) {
    double v = u[k];
    if (std::abs(v) < 1e-7 * umax) continue;
    if (prev != 0.0 && (v > 0) != (prev > 0)) ++nodes;
    prev = v;
  }
  tr.nodes = nodes;
  return tr;
}

} // namespace

WavefunctionTrace radial_wavefunction(const AtomSpecies& sp, const RydbergState& s,
                                      const GridSpec& grid) {
  double nstar = sp.effective_n(s);
  return finish_trace(integrate_inward(nstar, s.l, grid), grid);
}

double radial_matrix_element(const AtomSpecies& sp, const RydbergState& a,
                             const RydbergState& b, const GridSpec& grid) {
  if (std::abs(a.l - b.l) != 1)
    throw std::invalid_argument("radial_matrix_element: require |dl| = 1");
  WavefunctionTrace ta = radial_wavefunction(sp, a, grid);
  WavefunctionTrace tb = radial_wavefunction(sp, b, grid);

  // both traces live on the lattice x_i = i*h, so align by index
  int lo = std::max(ta.lattice_offset, tb.lattice_offset);
  int hi_a = ta.lattice_offset + static_cast<int>(ta.r.size()) - 1;
  int hi_b = tb.lattice_offset + static_cast<int>(tb.r.size()) - 1;
  int hi = std::min(hi_a, hi_b);
  if (hi - lo < 2) return 0.0;

  auto integrand = [&](int i) {
    int ka = i - ta.lattice_offset;
    int kb = i - tb.lattice_offset;
    double r = ta.r[ka];
    // u_a u_b r dr with u = r R
    return (r * ta.R[ka]) * (r * tb.R[kb]) * r;
  };
  double acc = 0.0;
  for (int i = lo; i < hi; ++i) {
    double r0 = (static_cast<double>(i) * grid.step_x) * (i * grid.step_x);
    double r1 = (static_cast<double>(i + 1) * grid.step_x) * ((i + 1) * grid.step_x);
    acc += 0.5 * (integrand(i) + integrand(i + 1)) * (r1 - r0);
  }
  return acc;
}

double electron_density(const AtomSpecies& sp, const RydbergState& s, double r_m,
                        double theta, double phi, const GridSpec& grid) {
  (void)phi; // spin-weighted |Y|^2 is phi-independent
  if (r_m <= 0) throw std::out_of_range("electron_density: r must be positive");
  WavefunctionTrace tr = radial_wavefunction(sp, s, grid);
  double r = r_m / consts::a0;
  if (r > tr.r[tr.r.size() - 1]) return 0.0; // beyond the classical region
  if (r < tr.r[0])
    throw std::out_of_range("electron_density: r inside the core cutoff");

  // linear interpolation of R on the stored grid
  int lo = 0, hi = static_cast<int>(tr.r.size()) - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (tr.r[mid] <= r ? lo : hi) = mid;
  }
  double t = (r - tr.r[lo]) / (tr.r[hi] - tr.r[lo]);
  double R = (1.0 - t) * tr.R[lo] + t * tr.R[hi];

  // |n l j mj> = sum_ms CG |l, ml> |ms>; weights are CG^2
  double ang = 0.0;
  for (double ms : {-0.5, 0.5}) {
    double ml = s.mj - ms;
    if (std::abs(ml) > s.l + 1e-9) continue;
    double cg = cg_spin_half(s.l, s.j, s.mj, ms);
    double y = std::sph_legendre(s.l, static_cast<int>(std::lround(std::abs(ml))),
                                 theta);
    ang += cg * cg * y * y;
  }
  return R * R * ang;
}

} // namespace raqr::atoms
