#pragma once

#include <array>
#include <string>
#include <vector>

#include "gqd/model.hpp"

namespace gqd {

enum class Measure { trace, hellinger, bures };
enum class Method { closed_form, definitional, oracle };

const char* to_string(Measure m);
const char* to_string(Method m);

// Optimizer / branch bookkeeping attached to a result. Which fields are
// meaningful depends on the measure and method.
struct Diagnostics {
  int branch = -1;       // hellinger: 0 = transverse (lambda1), 1 = longitudinal (lambda2)
                         // trace: 1 = degenerate-denominator limit taken
  double lambda1 = 0.0;  // hellinger branch values
  double lambda2 = 0.0;
  std::array<double, 3> argmax_u{};        // bures: winning measurement axis
  std::vector<double> refinement_values;   // bures: coarse grid + per-round best
  double max_fidelity = 0.0;               // bures: max over u of the fidelity maximand
  long evaluations = 0;
  double final_step = 0.0;
  int best_start = -1;       // trace oracle: which multi-start won
  double clamp_adjustment = 0.0;
  bool warning = false;
  std::string note;
};

struct MeasureResult {
  double value = 0.0;
  Measure measure = Measure::trace;
  Method method = Method::closed_form;
  Diagnostics diag;
};

// X-state invariants gamma_1,2 = 2(|rho_23| +- |rho_14|),
// gamma_3 = 1 - 2(rho_22 + rho_33), x_3 = 2(rho_11 + rho_22) - 1.
struct XStateParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double x3 = 0.0;
};

// Throws for non-X input (off-X entries above 1e-10); such states must go
// through the oracle path.
XStateParams x_state_params(const DensityMatrix& rho);

// Analytic trace-distance GQD for X states. The degenerate-denominator
// regime (which forces gamma1 = gamma2) limits to gamma1.
MeasureResult trace_gqd_xstate(const DensityMatrix& rho);

// 2 sinh(2 beta delta)/Z for T > 0; the zero-temperature trichotomy below.
MeasureResult trace_gqd_model(const ModelParams& p);

// 3x3 Gram matrix W_ij = Tr[sqrt(rho) (sigma_i x I) sqrt(rho) (sigma_j x I)],
// both Paulis on subsystem A.
struct CorrelationMatrixW {
  std::array<double, 9> w{};
  double operator()(int i, int j) const { return w[3 * i + j]; }
  double& operator()(int i, int j) { return w[3 * i + j]; }
};

CorrelationMatrixW correlation_matrix_w(const DensityMatrix& rho);

// Same Gram matrix built from a caller-supplied square root. A density
// matrix stored in doubles cannot represent Gibbs weights below ~1e-16 of
// the leading one, so thermal evaluations deep in that regime should pass
// the analytic square root here instead of re-deriving it numerically.
CorrelationMatrixW correlation_matrix_w_from_sqrt(const CMat& sqrt_rho);

// Eigenvalues of a real symmetric 3x3, non-increasing.
std::array<double, 3> sym3_eigenvalues(const CorrelationMatrixW& w);

// 1 - lambda_max(W).
MeasureResult hellinger_gqd(const DensityMatrix& rho);
MeasureResult hellinger_from_sqrt(const CMat& sqrt_rho);

// Closed form 1 - max(lambda1, lambda2) with the corrected constants
// lambda1 = (4/Z) cosh(bd) cosh(bB), lambda2 = (2 + 2 cosh 2bB)/Z.
// paper_verbatim evaluates the printed (8/Z, (8 + 2 cosh 2bB)/Z) constants
// and returns the raw, unclamped value.
MeasureResult hellinger_gqd_model(const ModelParams& p,
                                  Formulas formulas = Formulas::corrected);

// Bures GQD via the sphere maximization of the fidelity maximand
// f(u) = (1 - tr L + 2(l1 + l2))/2, L = sqrt(rho)(u.sigma x I)sqrt(rho):
// coarse 33x64 grid, then three deterministic compass-refinement rounds.
MeasureResult bures_gqd(const DensityMatrix& rho);

// sqrt((2 + sqrt 2)(1 - sqrt(max_f))), clamped at the tiny-overshoot level.
double bures_value_from_max_fidelity(double max_f);

// F(rho, chi) = [Tr (sqrt(rho) chi sqrt(rho))^{1/2}]^2.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& chi);

// Sphere point from polar/azimuth angles.
std::array<double, 3> sphere_point(double phi, double lam);

}  // namespace gqd
