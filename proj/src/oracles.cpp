#include "gqd/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gqd/constants.hpp"
#include "gqd/linalg.hpp"
#include "gqd/pattern_search.hpp"

namespace gqd {

namespace {

const double kPi = std::acos(-1.0);

// (I + b.sigma)/2 for a Bloch vector with ||b|| <= 1.
CMat qubit_state(const std::array<double, 3>& b) {
  CMat m = u_dot_sigma(b);
  m *= cplx(0.5, 0.0);
  m(0, 0) += 0.5;
  m(1, 1) += 0.5;
  return m;
}

CMat cq_assemble_raw(const CQState& s) {
  const auto proj = bloch_projectors(s.measurement);
  CMat rho = s.p * kron(proj[0], qubit_state(s.b1));
  rho += (1.0 - s.p) * kron(proj[1], qubit_state(s.b2));
  return rho;
}

std::array<double, 3> clamp_ball(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n <= 1.0) return {x, y, z};
  return {x / n, y / n, z / n};
}

double re_tr_prod(const CMat& a, const CMat& b) {
  cplx t = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  return t.real();
}

// Partial trace over A: b(i,j) = sum_k rho(2k+i, 2k+j).
CMat trace_out_A(const CMat& rho) {
  CMat b(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b(i, j) = rho(i, j) + rho(2 + i, 2 + j);
  return b;
}

std::array<double, 3> bloch_of(const CMat& q) {
  return {re_tr_prod(q, pauli_x()), re_tr_prod(q, pauli_y()), re_tr_prod(q, pauli_z())};
}

// Normalized search coordinates of the state pinched along `axis`: the
// pinched state is itself classical-quantum and usually sits at or near the
// optimum, so it makes a strong deterministic start.
std::vector<double> pinched_start(const CMat& rho, std::array<double, 3> axis) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (n < 1e-12) axis = {0.0, 0.0, 1.0};
  else for (double& a : axis) a /= n;

  const double phi = std::acos(std::min(1.0, std::max(-1.0, axis[2])));
  double lam = std::atan2(axis[1], axis[0]);
  if (lam < 0.0) lam += 2.0 * kPi;

  BlochMeasurement meas;
  meas.u = axis;
  const auto proj = bloch_projectors(meas);
  const CMat id = CMat::identity(2);

  std::vector<double> x(9);
  x[0] = phi / kPi;
  x[1] = lam / (2.0 * kPi);
  for (int k = 0; k < 2; ++k) {
    const CMat pk = kron(proj[k], id);
    const CMat cond = trace_out_A(pk * rho * pk);
    const double w = trace(cond).real();
    if (k == 0) x[2] = std::min(1.0, std::max(0.0, w));
    std::array<double, 3> b{0.0, 0.0, 0.0};
    if (w > 1e-12) {
      b = bloch_of(cond);
      for (double& v : b) v /= w;
    }
    const int off = k == 0 ? 3 : 6;
    for (int i = 0; i < 3; ++i) x[off + i] = 0.5 * (std::min(1.0, std::max(-1.0, b[i])) + 1.0);
  }
  return x;
}

// Candidate measurement axes: the Pauli axes, the A-side Bloch vector, and
// the top left-singular direction of the two-point correlation matrix
// T_ij = Tr[rho sigma_i x sigma_j] (for a CQ state, T is rank one with the
// measurement direction as its left vector).
std::vector<std::array<double, 3>> structured_axes(const CMat& rho) {
  std::vector<std::array<double, 3>> axes = {
      {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};

  const std::array<double, 3> ba = bloch_of(
      [&] {  // A-side reduced state
        CMat a(2);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) a(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
        return a;
      }());
  if (std::abs(ba[0]) + std::abs(ba[1]) + std::abs(ba[2]) > 1e-9) axes.push_back(ba);

  double t[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = re_tr_prod(rho, kron(pauli(i), pauli(j)));
  double m[3][3];  // T T^t
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m[i][j] = 0.0;
      for (int k = 0; k < 3; ++k) m[i][j] += t[i][k] * t[j][k];
    }
  std::array<double, 3> v = {1.0, 1.0, 1.0};
  for (int iter = 0; iter < 60; ++iter) {
    std::array<double, 3> nv{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) nv[i] += m[i][j] * v[j];
    const double norm = std::sqrt(nv[0] * nv[0] + nv[1] * nv[1] + nv[2] * nv[2]);
    if (norm < 1e-14) return axes;
    for (int i = 0; i < 3; ++i) v[i] = nv[i] / norm;
  }
  axes.push_back(v);
  return axes;
}

}  // namespace

BlochMeasurement BlochMeasurement::from_angles(double phi, double lam) {
  BlochMeasurement m;
  const double s = std::sin(phi);
  m.u = {s * std::cos(lam), s * std::sin(lam), std::cos(phi)};
  return m;
}

std::array<CMat, 2> bloch_projectors(const BlochMeasurement& m) {
  CMat plus = u_dot_sigma(m.u);
  plus *= cplx(0.5, 0.0);
  plus(0, 0) += 0.5;
  plus(1, 1) += 0.5;
  CMat minus = CMat::identity(2) - plus;
  return {plus, minus};
}

DensityMatrix cq_assemble(const CQState& s) {
  if (s.p < 0.0 || s.p > 1.0)
    throw std::invalid_argument("cq_assemble: p outside [0,1]");
  const double nb1 = std::sqrt(s.b1[0] * s.b1[0] + s.b1[1] * s.b1[1] + s.b1[2] * s.b1[2]);
  const double nb2 = std::sqrt(s.b2[0] * s.b2[0] + s.b2[1] * s.b2[1] + s.b2[2] * s.b2[2]);
  if (nb1 > 1.0 + tol::eps_eq || nb2 > 1.0 + tol::eps_eq)
    throw std::invalid_argument("cq_assemble: Bloch vector norm exceeds 1");
  return DensityMatrix(cq_assemble_raw(s));
}

CMat projective_measure_A(const CMat& m, const BlochMeasurement& u) {
  const auto proj = bloch_projectors(u);
  const CMat id = CMat::identity(2);
  const CMat p0 = kron(proj[0], id);
  const CMat p1 = kron(proj[1], id);
  return p0 * m * p0 + p1 * m * p1;
}

double hellinger_gqd_bruteforce(const DensityMatrix& rho, int grid_level,
                                OracleDiag* diag) {
  const CMat r = matrix_sqrt_psd(rho.mat);
  long evals = 0;
  const auto objective = [&](double phi, double lam) {
    const CMat pinched = projective_measure_A(r, BlochMeasurement::from_angles(phi, lam));
    const double d = hs_norm(r - pinched);
    ++evals;
    return 2.0 * d * d;
  };

  const int rows = 1 << grid_level;
  const int cols = 1 << (grid_level + 1);
  double best = objective(0.0, 0.0);
  double best_phi = 0.0, best_lam = 0.0;
  for (int i = 0; i <= rows; ++i) {
    const double phi = kPi * i / rows;
    for (int j = 0; j < cols; ++j) {
      const double lam = 2.0 * kPi * j / cols;
      const double v = objective(phi, lam);
      if (v < best) {
        best = v;
        best_phi = phi;
        best_lam = lam;
      }
    }
  }

  const std::vector<SearchCoord> coords = {{0.0, kPi, false}, {0.0, 2.0 * kPi, true}};
  CompassOptions opt;
  opt.initial_step = 1.0 / rows;
  opt.step_floor = 1e-8;
  opt.max_iterations = 300;
  auto out = compass_minimize([&](const std::vector<double>& q) {
    return objective(q[0], q[1]);
  }, {best_phi, best_lam}, coords, opt);
  best = std::min(best, out.value);

  if (diag) {
    diag->evaluations = evals;
    diag->final_step = out.final_step;
    diag->grid_level = grid_level;
  }
  return best;
}

double trace_gqd_bruteforce(const DensityMatrix& rho, const TraceSearchBudget& budget,
                            OracleDiag* diag) {
  long evals = 0;
  // Normalized coordinates: (phi, lam, p, b1, b2) with the Bloch cubes
  // projected onto the unit ball.
  const auto objective = [&](const std::vector<double>& q) {
    CQState s;
    s.measurement = BlochMeasurement::from_angles(kPi * q[0], 2.0 * kPi * q[1]);
    s.p = q[2];
    s.b1 = clamp_ball(2.0 * q[3] - 1.0, 2.0 * q[4] - 1.0, 2.0 * q[5] - 1.0);
    s.b2 = clamp_ball(2.0 * q[6] - 1.0, 2.0 * q[7] - 1.0, 2.0 * q[8] - 1.0);
    ++evals;
    return trace_norm(rho.mat - cq_assemble_raw(s));
  };

  std::vector<SearchCoord> coords(9);
  for (auto& c : coords) c = {0.0, 1.0, false};
  coords[1].wrap = true;  // azimuth

  static const unsigned bases[9] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<std::vector<double>> starts;
  for (const auto& axis : structured_axes(rho.mat))
    starts.push_back(pinched_start(rho.mat, axis));
  for (int s = 0; s < budget.starts; ++s) {
    std::vector<double> x(9);
    for (int i = 0; i < 9; ++i)
      x[i] = budget.seed == 0 ? halton(s + 1, bases[i]) : unif(rng);
    starts.push_back(std::move(x));
  }

  double best = 2.0;  // trace distance of two states never exceeds 2
  int best_start = -1;
  double final_step = 0.0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    CompassOptions opt;
    opt.initial_step = budget.initial_step;
    opt.step_floor = budget.step_floor;
    opt.max_iterations = budget.iterations;
    auto out = compass_minimize(objective, std::move(starts[s]), coords, opt);
    if (out.value < best) {
      best = out.value;
      best_start = static_cast<int>(s);
      final_step = out.final_step;
    }
  }
  if (diag) {
    diag->evaluations = evals;
    diag->final_step = final_step;
    diag->best_start = best_start;
  }
  return best;
}

double bures_maxfid_grid(const DensityMatrix& rho, int grid_level, OracleDiag* diag) {
  const CMat r = matrix_sqrt_psd(rho.mat);
  const CMat id = CMat::identity(2);
  long evals = 0;
  const auto maximand = [&](double phi, double lam) {
    const double sp = std::sin(phi);
    const std::array<double, 3> u = {sp * std::cos(lam), sp * std::sin(lam), std::cos(phi)};
    const CMat lambda_op = r * kron(u_dot_sigma(u), id) * r;
    const auto w = hermitian_eigenvalues(lambda_op);
    ++evals;
    return 0.5 * (1.0 - (w[0] + w[1] + w[2] + w[3]) + 2.0 * (w[0] + w[1]));
  };

  const int rows = 1 << grid_level;
  const int cols = 1 << (grid_level + 1);
  double best = maximand(0.0, 0.0);
  for (int i = 0; i <= rows; ++i) {
    const double phi = kPi * i / rows;
    for (int j = 0; j < cols; ++j) best = std::max(best, maximand(phi, 2.0 * kPi * j / cols));
  }
  if (diag) {
    diag->evaluations = evals;
    diag->grid_level = grid_level;
  }
  return best;
}

CQState random_cq_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  CQState s;
  const double z = 2.0 * unif(rng) - 1.0;
  const double lam = 2.0 * kPi * unif(rng);
  const double sp = std::sqrt(std::max(0.0, 1.0 - z * z));
  s.measurement.u = {sp * std::cos(lam), sp * std::sin(lam), z};
  s.p = unif(rng);
  for (auto* b : {&s.b1, &s.b2}) {
    // Uniform in the ball by radius ~ cbrt(U).
    const double bz = 2.0 * unif(rng) - 1.0;
    const double bl = 2.0 * kPi * unif(rng);
    const double br = std::cbrt(unif(rng));
    const double bs = std::sqrt(std::max(0.0, 1.0 - bz * bz));
    (*b) = {br * bs * std::cos(bl), br * bs * std::sin(bl), br * bz};
  }
  return s;
}

}  // namespace gqd
