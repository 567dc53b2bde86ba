#pragma once

// Central tolerance record. Library code and tests read the same values so
// that an invariant checked in a test is the invariant enforced here.
namespace gqd::tol {

inline constexpr double eps_eq = 1e-12;     // entrywise matrix equality
inline constexpr double eps_psd = 1e-12;    // eigenvalue floor before "not PSD"
inline constexpr double eps_recon = 1e-10;  // eigendecomposition residual per unit dim
inline constexpr double eps_deg = 1e-12;    // delta == B degeneracy split
inline constexpr double eps_den = 1e-12;    // degenerate denominator in the X-state trace formula
inline constexpr double eps_clamp = 1e-8;   // [0,1] violations beyond this raise

inline constexpr double jacobi_off_tol = 1e-13;  // off-diagonal HS norm target
inline constexpr int jacobi_max_sweeps = 100;

}  // namespace gqd::tol
