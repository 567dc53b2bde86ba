#include "gqd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gqd/constants.hpp"

namespace gqd {

double off_diagonal_norm(const CMat& h) {
  double s = 0.0;
  const int n = h.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

namespace {

// One complex Jacobi rotation eliminating H(p,q). The phase of the pivot is
// absorbed first so the remaining 2x2 problem is the textbook real-symmetric
// one (Golub & Van Loan sec. 8.4).
void jacobi_rotate(CMat& h, CMat* v, int p, int q) {
  const cplx hpq = h(p, q);
  const double r = std::abs(hpq);
  if (r < 1e-300) {
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    return;
  }
  const cplx phase = hpq / r;
  const double app = h(p, p).real();
  const double aqq = h(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // U has columns (phase*c, -s) and (phase*s, c) in the (p,q) plane.
  const cplx upp = phase * c;
  const cplx upq = phase * s;
  const int n = h.dim();

  for (int k = 0; k < n; ++k) {  // H <- H U
    const cplx hk_p = h(k, p);
    const cplx hk_q = h(k, q);
    h(k, p) = hk_p * upp - hk_q * s;
    h(k, q) = hk_p * upq + hk_q * c;
  }
  for (int k = 0; k < n; ++k) {  // H <- U† H
    const cplx hp_k = h(p, k);
    const cplx hq_k = h(q, k);
    h(p, k) = std::conj(upp) * hp_k - s * hq_k;
    h(q, k) = std::conj(upq) * hp_k + c * hq_k;
  }
  h(p, q) = 0.0;
  h(q, p) = 0.0;
  // Cancellation-free diagonal update (t solves t^2 + 2 tau t - 1 = 0, so
  // these equal the rotated diagonal exactly); keeps tiny eigenvalues of
  // graded matrices at full accuracy.
  h(p, p) = app - t * r;
  h(q, q) = aqq + t * r;

  if (v) {
    for (int k = 0; k < n; ++k) {
      const cplx vk_p = (*v)(k, p);
      const cplx vk_q = (*v)(k, q);
      (*v)(k, p) = vk_p * upp - vk_q * s;
      (*v)(k, q) = vk_p * upq + vk_q * c;
    }
  }
}

// Runs the cyclic sweeps; diag entries end up as the eigenvalues.
void jacobi_diagonalize(CMat& h, CMat* v) {
  const int n = h.dim();
  for (int sweep = 0; sweep < tol::jacobi_max_sweeps; ++sweep) {
    if (off_diagonal_norm(h) < tol::jacobi_off_tol) return;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(h, v, p, q);
  }
  const double residual = off_diagonal_norm(h);
  if (residual >= tol::jacobi_off_tol)
    throw std::runtime_error("hermitian_eig: Jacobi did not converge, off-diagonal residual " +
                             std::to_string(residual));
}

}  // namespace

EigenSystem hermitian_eig(const CMat& h_in) {
  CMat h = hermitize(h_in);
  const int n = h.dim();
  CMat v = CMat::identity(n);
  jacobi_diagonalize(h, &v);

  std::array<int, 4> order{};
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int a, int b) { return h(a, a).real() > h(b, b).real(); });

  EigenSystem es;
  es.n = n;
  es.vectors = CMat(n);
  for (int i = 0; i < n; ++i) {
    es.values[i] = h(order[i], order[i]).real();
    for (int k = 0; k < n; ++k) es.vectors(k, i) = v(k, order[i]);
  }
  return es;
}

std::array<double, 4> hermitian_eigenvalues(const CMat& h_in) {
  CMat h = hermitize(h_in);
  const int n = h.dim();
  jacobi_diagonalize(h, nullptr);
  std::array<double, 4> w{};
  for (int i = 0; i < n; ++i) w[i] = h(i, i).real();
  std::sort(w.begin(), w.begin() + n, std::greater<double>());
  return w;
}

CMat matrix_sqrt_psd(const CMat& m) {
  EigenSystem es = hermitian_eig(m);
  const int n = es.n;
  for (int i = 0; i < n; ++i) {
    if (es.values[i] < -tol::eps_psd)
      throw std::runtime_error("matrix_sqrt_psd: not PSD, eigenvalue " +
                               std::to_string(es.values[i]));
    if (es.values[i] < 0.0) es.values[i] = 0.0;
  }
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += es.vectors(i, k) * std::sqrt(es.values[k]) * std::conj(es.vectors(j, k));
      r(i, j) = s;
    }
  return hermitize(r);
}

CMat matrix_exp_hermitian(const CMat& h, double s) {
  EigenSystem es = hermitian_eig(h);
  const int n = es.n;
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += es.vectors(i, k) * std::exp(s * es.values[k]) * std::conj(es.vectors(j, k));
      r(i, j) = acc;
    }
  return hermitize(r);
}

double trace_norm(const CMat& m) {
  const int n = m.dim();
  if (hermiticity_defect(m) <= tol::eps_eq) {
    const auto w = hermitian_eigenvalues(m);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(w[i]);
    return s;
  }
  // General case: singular values are the square roots of eig(M†M).
  const CMat g = adjoint(m) * m;
  const auto w = hermitian_eigenvalues(g);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::sqrt(std::max(0.0, w[i]));
  return s;
}

}  // namespace gqd
