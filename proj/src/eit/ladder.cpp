#include "raqr/eit/ladder.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "raqr/constants.hpp"
#include "raqr/errors.hpp"

namespace raqr::eit {

namespace {
constexpr double kRateCap = 1e11; // rad/s sanity bound on all rates
}

void LadderScheme::validate() const {
  auto rate_ok = [](double r) { return std::isfinite(r) && r >= 0.0 && r <= kRateCap; };
  if (!rate_ok(rabi_probe) || !rate_ok(rabi_coupling) || !rate_ok(rabi_rf))
    throw std::invalid_argument("LadderScheme: Rabi frequencies must lie in [0, 1e11] rad/s");
  if (!rate_ok(decay_2) || !rate_ok(decay_3) || !rate_ok(decay_4) || !rate_ok(dephase))
    throw std::invalid_argument("LadderScheme: decay/dephasing rates must lie in [0, 1e11] rad/s");
  for (double d : {detune_probe, detune_coupling, detune_rf})
    if (!std::isfinite(d) || std::abs(d) > kRateCap)
      throw std::invalid_argument("LadderScheme: detunings must be finite and |d| <= 1e11 rad/s");
  if (density_m3 < 0 || length_m < 0 || temperature_k < 0 || mass_kg < 0)
    throw std::invalid_argument("LadderScheme: cell parameters must be non-negative");
  if (rf_dipole_ea0 < 0 || probe_dipole_cm < 0)
    throw std::invalid_argument("LadderScheme: dipole moments must be non-negative");
}

LadderScheme LadderScheme::with_rf_field(double field_vcm) const {
  if (rf_dipole_ea0 <= 0)
    throw std::invalid_argument("with_rf_field: rf_dipole_ea0 must be positive");
  if (field_vcm < 0) throw std::invalid_argument("with_rf_field: field < 0");
  LadderScheme out = *this;
  out.rabi_rf = rf_dipole_ea0 * field_vcm * consts::rabi_per_ea0_vcm;
  return out;
}

double LadderScheme::rf_field_vcm() const {
  if (rf_dipole_ea0 <= 0)
    throw std::invalid_argument("rf_field_vcm: rf_dipole_ea0 must be positive");
  return rabi_rf / (rf_dipole_ea0 * consts::rabi_per_ea0_vcm);
}

LadderScheme cs_ladder_defaults() {
  LadderScheme s;
  const double mhz = 2.0 * consts::pi * 1e6;
  s.rabi_probe = 1.0 * mhz;
  s.rabi_coupling = 3.0 * mhz;
  s.rabi_rf = 0.0;
  s.decay_2 = 5.2 * mhz;
  s.decay_3 = 0.01 * mhz;
  s.decay_4 = 0.01 * mhz;
  s.dephase = 0.0;
  s.rf_dipole_ea0 = 1400.0;
  s.density_m3 = 1e14;
  s.length_m = 0.02;
  s.temperature_k = 300.0;
  s.mass_kg = 132.905451961 * consts::amu;
  s.probe_wavelength_m = 852.34727582e-9;
  s.coupling_wavelength_m = 510.0e-9;
  s.probe_dipole_cm = 3.797e-29;
  return s;
}

Eigen::Matrix4cd hamiltonian(const LadderScheme& s) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 1) = h(1, 0) = -0.5 * s.rabi_probe;
  h(1, 2) = h(2, 1) = -0.5 * s.rabi_coupling;
  h(2, 3) = h(3, 2) = -0.5 * s.rabi_rf;
  h(1, 1) = -s.detune_probe;
  h(2, 2) = -(s.detune_probe + s.detune_coupling);
  h(3, 3) = -(s.detune_probe + s.detune_coupling + s.detune_rf);
  return h;
}

Eigen::MatrixXcd liouvillian(const LadderScheme& s) {
  s.validate();
  const Eigen::Matrix4cd h = hamiltonian(s);
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  const std::complex<double> img(0.0, 1.0);

  auto kron = [](const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
    Eigen::MatrixXcd out(16, 16);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) out.block<4, 4>(4 * i, 4 * k) = a(i, k) * b;
    return out;
  };

  // column-major vectorization: vec(A rho B) = (B^T (x) A) vec(rho)
  Eigen::MatrixXcd lv = -img * (kron(id, h) - kron(h.transpose(), id));

  auto add_collapse = [&](const Eigen::Matrix4cd& c) {
    Eigen::Matrix4cd cdc = c.adjoint() * c;
    lv += kron(c.conjugate(), c);
    lv -= 0.5 * kron(id, cdc);
    lv -= 0.5 * kron(cdc.transpose(), id);
  };

  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 1) = std::sqrt(s.decay_2);
  add_collapse(c);
  c.setZero();
  c(1, 2) = std::sqrt(s.decay_3);
  add_collapse(c);
  c.setZero();
  c(2, 3) = std::sqrt(s.decay_4);
  add_collapse(c);
  if (s.dephase > 0) {
    c.setZero();
    c(2, 2) = std::sqrt(2.0 * s.dephase);
    add_collapse(c);
    c.setZero();
    c(3, 3) = std::sqrt(2.0 * s.dephase);
    add_collapse(c);
  }
  return lv;
}

DensityMatrix4 steady_state(const LadderScheme& s) {
  Eigen::MatrixXcd lv = liouvillian(s);

  // scale so the rank decision below is about relative magnitudes
  double scale = lv.cwiseAbs().maxCoeff();
  if (scale == 0.0)
    throw NumericalError("steady_state: liouvillian is zero; no relaxation");
  lv /= scale;

  // append the trace functional as an extra row and solve least squares;
  // a one-dimensional kernel gives a full-rank 17x16 system
  Eigen::MatrixXcd a(17, 16);
  a.topRows(16) = lv;
  a.row(16).setZero();
  for (int i = 0; i < 4; ++i) a(16, 5 * i) = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(17);
  b[16] = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < 16)
    throw NumericalError(
        "steady_state: ill-posed, the liouvillian kernel is degenerate "
        "(no decay path connects the levels)");
  Eigen::VectorXcd v = qr.solve(b);

  if ((lv * v).norm() > 1e-10 * v.norm() * 16)
    throw NumericalError("steady_state: kernel residual too large");

  DensityMatrix4 rho = Eigen::Map<DensityMatrix4>(v.data());
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return rho;
}

DensityMatrix4 propagate(const LadderScheme& s, const DensityMatrix4& rho0,
                         double t_s) {
  if (!(t_s >= 0) || !std::isfinite(t_s))
    throw std::invalid_argument("propagate: time must be finite and >= 0");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-9)
    throw std::invalid_argument("propagate: initial state must have unit trace");
  Eigen::MatrixXcd lt = liouvillian(s) * t_s;
  Eigen::MatrixXcd prop = lt.exp();
  Eigen::Map<const Eigen::VectorXcd> v0(rho0.data(), 16);
  Eigen::VectorXcd v = prop * v0;
  DensityMatrix4 rho = Eigen::Map<DensityMatrix4>(v.data());
  return rho;
}

std::complex<double> probe_susceptibility(const LadderScheme& s,
                                          const DensityMatrix4& rho) {
  if (s.rabi_probe <= 0)
    throw std::invalid_argument("probe_susceptibility: undefined at zero probe drive");
  double pref = 2.0 * s.density_m3 * s.probe_dipole_cm * s.probe_dipole_cm /
                (consts::eps0 * consts::hbar * s.rabi_probe);
  return pref * rho(1, 0);
}

} // namespace raqr::eit
