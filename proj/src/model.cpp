#include "gqd/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gqd/constants.hpp"

namespace gqd {

double ModelParams::beta() const {
  if (T <= 0.0) throw std::invalid_argument("ModelParams::beta: requires T > 0");
  return 1.0 / T;
}

double ModelParams::partition() const {
  const double b = beta();
  return 2.0 * (std::cosh(2.0 * b * delta()) + std::cosh(2.0 * b * B));
}

CMat hamiltonian(const ModelParams& p) {
  const CMat sx = pauli_x(), sy = pauli_y(), sz = pauli_z(), id = CMat::identity(2);
  CMat h = p.J * (kron(sx, sx) + kron(sy, sy));
  h += p.B * (kron(sz, id) + kron(id, sz));
  h += p.D * (kron(sx, sy) - kron(sy, sx));
  return h;
}

Spectrum spectrum(const ModelParams& p) {
  const double d = p.delta();
  const double th = p.theta();
  const cplx phase = std::polar(1.0, th);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Spectrum s;
  s.energies = {2.0 * d, -2.0 * d, 2.0 * p.B, -2.0 * p.B};
  s.theta_convention_used = (p.J == 0.0 && p.D == 0.0);
  // |Psi_1,2> = (|10> +- e^{i theta}|01>)/sqrt(2); |Psi_3> = |00>, |Psi_4> = |11>.
  s.states[0] = {0.0, phase * inv_sqrt2, inv_sqrt2, 0.0};
  s.states[1] = {0.0, -phase * inv_sqrt2, inv_sqrt2, 0.0};
  s.states[2] = {1.0, 0.0, 0.0, 0.0};
  s.states[3] = {0.0, 0.0, 0.0, 1.0};
  return s;
}

DensityMatrix::DensityMatrix(const CMat& m) : mat(m) {
  if (m.dim() != 4) throw std::invalid_argument("DensityMatrix: must be 4x4");
  if (hermiticity_defect(m) > tol::eps_eq)
    throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
  if (std::abs(trace(m) - cplx(1.0, 0.0)) > tol::eps_eq)
    throw std::invalid_argument("DensityMatrix: trace != 1 within tolerance");
  const auto w = hermitian_eigenvalues(m);
  if (w[3] < -tol::eps_psd)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(w[3]));
}

DensityMatrix thermal_state(const ModelParams& p) {
  if (p.T <= 0.0)
    throw std::invalid_argument("thermal_state: requires T > 0; use ground_state at T = 0");
  const double b = p.beta();
  const double d = p.delta();
  // Rescale every exponent by the largest one so the entries of the Gibbs
  // matrix stay finite down to very small T.
  const double m = std::max(2.0 * b * d, 2.0 * b * std::abs(p.B));
  const double ed_p = std::exp(2.0 * b * d - m);
  const double ed_m = std::exp(-2.0 * b * d - m);
  const double eb_p = std::exp(2.0 * b * p.B - m);
  const double eb_m = std::exp(-2.0 * b * p.B - m);
  const double zs = ed_p + ed_m + eb_p + eb_m;  // Z e^{-m}

  const double ch = 0.5 * (ed_p + ed_m);  // cosh(2bd) e^{-m}
  const double sh = 0.5 * (ed_p - ed_m);  // sinh(2bd) e^{-m}
  const cplx phase = std::polar(1.0, p.theta());

  CMat rho(4);
  rho(0, 0) = eb_m / zs;
  rho(1, 1) = ch / zs;
  rho(2, 2) = ch / zs;
  rho(3, 3) = eb_p / zs;
  rho(1, 2) = -phase * (sh / zs);
  rho(2, 1) = std::conj(rho(1, 2));
  return DensityMatrix(rho);
}

DensityMatrix thermal_state_numeric(const ModelParams& p) {
  if (p.T <= 0.0)
    throw std::invalid_argument("thermal_state_numeric: requires T > 0");
  const double b = p.beta();
  CMat h = hamiltonian(p);
  // Shift by the ground energy: exp(-b(H - e0)) differs from exp(-bH) only
  // by the normalization, and never overflows.
  const auto w = hermitian_eigenvalues(h);
  const double e0 = w[3];
  for (int i = 0; i < 4; ++i) h(i, i) -= e0;
  CMat g = matrix_exp_hermitian(h, -b);
  const double z = trace(g).real();
  g *= cplx(1.0 / z, 0.0);
  return DensityMatrix(g);
}

DensityMatrix ground_state(const ModelParams& p) {
  const double d = p.delta();
  const Spectrum s = spectrum(p);
  const CMat psi2 = outer(s.states[1]);
  const CMat psi4 = outer(s.states[3]);
  if (d > p.B + tol::eps_deg) return DensityMatrix(psi2);
  if (d < p.B - tol::eps_deg) return DensityMatrix(psi4);
  return DensityMatrix(0.5 * (psi2 + psi4));
}

CMat sqrt_thermal_state(const ModelParams& p, Formulas formulas) {
  if (p.T <= 0.0)
    throw std::invalid_argument("sqrt_thermal_state: requires T > 0");
  const double b = p.beta();
  const double d = p.delta();
  const double m = std::max(2.0 * b * d, 2.0 * b * std::abs(p.B));
  const double half_m = 0.5 * m;
  const double zs = std::exp(2.0 * b * d - m) + std::exp(-2.0 * b * d - m) +
                    std::exp(2.0 * b * p.B - m) + std::exp(-2.0 * b * p.B - m);
  const double sqrt_zs = std::sqrt(zs);

  const double ed_p = std::exp(b * d - half_m);
  const double ed_m = std::exp(-b * d - half_m);
  double ch = 0.5 * (ed_p + ed_m);  // cosh(bd) e^{-m/2}
  double sh = 0.5 * (ed_p - ed_m);  // sinh(bd) e^{-m/2}
  if (formulas == Formulas::paper_verbatim) {
    // Printed middle-block constants; fails Tr(R^2) = 1 on purpose.
    ch *= 2.0;
    sh *= 2.0;
  }
  const cplx phase = std::polar(1.0, p.theta());

  CMat r(4);
  r(0, 0) = std::exp(-b * p.B - half_m) / sqrt_zs;
  r(1, 1) = ch / sqrt_zs;
  r(2, 2) = ch / sqrt_zs;
  r(3, 3) = std::exp(b * p.B - half_m) / sqrt_zs;
  r(1, 2) = -phase * (sh / sqrt_zs);
  r(2, 1) = std::conj(r(1, 2));
  return r;
}

}  // namespace gqd
