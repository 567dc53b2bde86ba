#pragma once

#include <array>
#include <random>

#include "gqd/model.hpp"

namespace gqd {

// Measurement axis on the Bloch sphere; projectors (I +- u.sigma)/2.
struct BlochMeasurement {
  std::array<double, 3> u{0.0, 0.0, 1.0};

  static BlochMeasurement from_angles(double phi, double lam);
  double norm() const { return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]); }
};

// Projector pair of the measurement, 2x2 each.
std::array<CMat, 2> bloch_projectors(const BlochMeasurement& m);

// rho_CQ = p P1 x rho(b1) + (1-p) P2 x rho(b2): the 9-parameter
// classical-quantum family the trace oracle searches over.
struct CQState {
  double p = 0.5;
  BlochMeasurement measurement;
  std::array<double, 3> b1{};  // Bloch vector of the first B-side state
  std::array<double, 3> b2{};
};

DensityMatrix cq_assemble(const CQState& s);

// Pinching on A: sum_k (P_k x I) M (P_k x I).
CMat projective_measure_A(const CMat& m, const BlochMeasurement& u);

struct OracleDiag {
  long evaluations = 0;
  double final_step = 0.0;
  int best_start = -1;
  int grid_level = 0;
};

// 2 inf_u ||sqrt(rho) - Pi_u(sqrt(rho))||_2^2 over a spherical grid with
// compass refinement. Upper bound on the true infimum.
double hellinger_gqd_bruteforce(const DensityMatrix& rho, int grid_level,
                                OracleDiag* diag = nullptr);

struct TraceSearchBudget {
  int starts = 5;
  int iterations = 400;
  double initial_step = 0.25;
  double step_floor = 1e-9;
  unsigned seed = 0;  // 0 = deterministic Halton starts; otherwise random starts
};

// min over the CQ family of ||rho - rho_CQ||_1 via multi-start compass
// search. Upper bound; expected within 2e-4 of the analytic value at the
// default budget.
double trace_gqd_bruteforce(const DensityMatrix& rho,
                            const TraceSearchBudget& budget = {},
                            OracleDiag* diag = nullptr);

// Dense-grid (no refinement) evaluation of the Bures fidelity maximand at
// resolution 2^level x 2^{level+1}; returns max F.
double bures_maxfid_grid(const DensityMatrix& rho, int grid_level,
                         OracleDiag* diag = nullptr);

// Random CQ state with u uniform on the sphere and b1, b2 uniform in the
// Bloch ball; used by the certification suites.
CQState random_cq_state(std::mt19937_64& rng);

}  // namespace gqd
