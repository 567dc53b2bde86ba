#pragma once

#include <array>

#include "gqd/linalg.hpp"
#include "gqd/matrix.hpp"

namespace gqd {

// Physical knobs of the XX + DM chain, k_B = 1 and hbar = 1. Temperature
// T = 0 is legal for ground_state but not for the thermal maps.
struct ModelParams {
  double J = 0.0;  // exchange coupling
  double B = 0.0;  // magnetic field along z
  double D = 0.0;  // DM interaction along z
  double T = 0.0;  // temperature (units of k_B)

  double delta() const { return std::hypot(J, D); }
  // atan2(D, J); the J = D = 0 corner takes the value 0 by convention.
  double theta() const { return std::atan2(D, J); }
  double beta() const;
  // Z = 2(cosh 2bd + cosh 2bB). Direct form; overflows for very small T,
  // the measure formulas use internally rescaled variants instead.
  double partition() const;
};

// Exact eigensystem: energies (+2d, -2d, +2B, -2B) and the paired states.
struct Spectrum {
  std::array<double, 4> energies{};
  std::array<Vec4, 4> states{};
  bool theta_convention_used = false;  // J = D = 0 hit the atan2(0,0) := 0 convention
};

// 4x4 state of the pair: Hermitian, unit trace, PSD (all within tolerance,
// checked on construction).
struct DensityMatrix {
  CMat mat;
  explicit DensityMatrix(const CMat& m);
};

enum class Formulas {
  corrected,       // library default
  paper_verbatim,  // documentation mode, excluded from invariant suites
};

CMat hamiltonian(const ModelParams& p);
Spectrum spectrum(const ModelParams& p);

// Closed-form Gibbs state; requires T > 0 (use ground_state at T = 0).
DensityMatrix thermal_state(const ModelParams& p);

// exp(-beta H)/Tr[exp(-beta H)] through the eigendecomposition path.
DensityMatrix thermal_state_numeric(const ModelParams& p);

// Zero-temperature state with the delta = B degeneracy handled as an
// equal mixture (split tolerance tol::eps_deg).
DensityMatrix ground_state(const ModelParams& p);

// Closed-form square root of the Gibbs state. The corrected mode satisfies
// Tr(R^2) = 1; paper_verbatim reproduces the printed middle-block constants
// (2cosh, 2sinh), which do not.
CMat sqrt_thermal_state(const ModelParams& p, Formulas formulas = Formulas::corrected);

}  // namespace gqd
