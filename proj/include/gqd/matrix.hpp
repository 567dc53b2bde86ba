#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace gqd {

using cplx = std::complex<double>;
using Vec4 = std::array<cplx, 4>;

// Dense complex matrix at two-qubit scale (dim 2 or 4), row-major storage.
// All arithmetic is by value; nothing here mutates shared state.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int n) : n_(n) {
    if (n != 2 && n != 4) throw std::invalid_argument("CMat: dim must be 2 or 4");
  }

  static CMat identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }

  cplx& operator()(int r, int c) { return a_[r * n_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * n_ + c]; }

  CMat& operator+=(const CMat& o) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMat& operator*=(cplx s) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] *= s;
    return *this;
  }

 private:
  int n_ = 0;
  std::array<cplx, 16> a_{};
};

inline CMat operator+(CMat a, const CMat& b) { return a += b; }
inline CMat operator-(CMat a, const CMat& b) { return a -= b; }
inline CMat operator*(CMat a, cplx s) { return a *= s; }
inline CMat operator*(cplx s, CMat a) { return a *= s; }
inline CMat operator*(CMat a, double s) { return a *= cplx(s, 0.0); }
inline CMat operator*(double s, CMat a) { return a *= cplx(s, 0.0); }

inline CMat operator*(const CMat& a, const CMat& b) {
  const int n = a.dim();
  CMat c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline CMat adjoint(const CMat& m) {
  const int n = m.dim();
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

inline cplx trace(const CMat& m) {
  cplx t = 0.0;
  for (int i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

// (M + M†)/2
inline CMat hermitize(const CMat& m) {
  const int n = m.dim();
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return r;
}

inline double hs_norm(const CMat& m) {
  double s = 0.0;
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
  double d = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

inline bool approx_equal(const CMat& a, const CMat& b, double tolerance) {
  return a.dim() == b.dim() && max_abs_diff(a, b) <= tolerance;
}

inline double hermiticity_defect(const CMat& m) {
  double d = 0.0;
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

// Tensor product, qubit A = left factor. Basis order |00>,|01>,|10>,|11>.
inline CMat kron(const CMat& a, const CMat& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw std::invalid_argument("kron: operands must be 2x2");
  CMat r(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

// Pauli matrices with sigma_z|0> = +|0>.
inline CMat pauli_x() {
  CMat m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}
inline CMat pauli_y() {
  CMat m(2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}
inline CMat pauli_z() {
  CMat m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
inline CMat pauli(int i) {
  switch (i) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    case 2: return pauli_z();
  }
  throw std::invalid_argument("pauli: index must be 0, 1, or 2");
}

// u . sigma for a real 3-vector u (not necessarily unit).
inline CMat u_dot_sigma(const std::array<double, 3>& u) {
  CMat m(2);
  m(0, 0) = u[2];
  m(0, 1) = cplx(u[0], -u[1]);
  m(1, 0) = cplx(u[0], u[1]);
  m(1, 1) = -u[2];
  return m;
}

inline CMat outer(const Vec4& v) {
  CMat m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

}  // namespace gqd
