#pragma once

#include <array>

#include "gqd/matrix.hpp"

namespace gqd {

// Eigenvalues sorted non-increasing; i-th column of `vectors` pairs with
// values[i]. Only the first `n` entries of `values` are meaningful.
struct EigenSystem {
  int n = 0;
  std::array<double, 4> values{};
  CMat vectors;
};

// Cyclic Jacobi for complex Hermitian matrices. The input is symmetrized as
// (H+H†)/2 before solving; throws after the sweep budget if the off-diagonal
// norm has not dropped below the convergence target.
EigenSystem hermitian_eig(const CMat& h);

// Same elimination, skipping the eigenvector accumulation.
std::array<double, 4> hermitian_eigenvalues(const CMat& h);

// Spectral square root; eigenvalues in [-eps_psd, 0) are clamped to zero,
// anything below -eps_psd throws "not PSD".
CMat matrix_sqrt_psd(const CMat& m);

// V exp(s Lambda) V† of a Hermitian matrix.
CMat matrix_exp_hermitian(const CMat& h, double s);

// Sum of singular values; for Hermitian input the sum of |eigenvalues|.
double trace_norm(const CMat& m);

double off_diagonal_norm(const CMat& h);

}  // namespace gqd
