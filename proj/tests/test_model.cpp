#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gqd/constants.hpp"
#include "gqd/linalg.hpp"
#include "gqd/model.hpp"

using namespace gqd;

namespace {

Vec4 matvec(const CMat& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
  return r;
}

}  // namespace

TEST_CASE("hamiltonian block structure") {
  CHECK(hs_norm(hamiltonian({0, 0, 0, 1})) == doctest::Approx(0.0));

  const CMat h = hamiltonian({1, 0, 0, 1});
  CHECK(h(1, 2).real() == doctest::Approx(2.0));
  CHECK(h(2, 1).real() == doctest::Approx(2.0));
  CHECK(std::abs(h(0, 0)) + std::abs(h(3, 3)) + std::abs(h(0, 3)) < 1e-15);

  const CMat hd = hamiltonian({1.2, 0.8, 0.5, 1});
  CHECK(hd(0, 0).real() == doctest::Approx(1.6));
  CHECK(hd(3, 3).real() == doctest::Approx(-1.6));
  CHECK(hd(1, 2) == cplx(2.4, 1.0));
  CHECK(hd(2, 1) == cplx(2.4, -1.0));
  CHECK(hermiticity_defect(hd) < 1e-15);
}

TEST_CASE("hamiltonian spectrum is {+-2 delta, +-2B} on random draws") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    ModelParams p{u(rng), u(rng), u(rng), 1.0};
    const auto w = hermitian_eigenvalues(hamiltonian(p));
    std::array<double, 4> expect = {2.0 * p.delta(), -2.0 * p.delta(), 2.0 * p.B, -2.0 * p.B};
    std::sort(expect.begin(), expect.end(), std::greater<double>());
    for (int i = 0; i < 4; ++i) CHECK(std::abs(w[i] - expect[i]) <= 1e-10);
  }
}

TEST_CASE("spectrum eigenpairs") {
  const Spectrum s0 = spectrum({1, 0, 0, 1});
  CHECK(s0.theta_convention_used == false);
  // theta = 0: second state is the singlet (|10> - |01>)/sqrt(2)
  CHECK(std::abs(s0.states[1][1] - cplx(-1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK(std::abs(s0.states[1][2] - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);

  ModelParams dm{0, 0, 1, 1};
  CHECK(dm.theta() == doctest::Approx(std::acos(-1.0) / 2.0));
  CHECK(dm.delta() == doctest::Approx(1.0));

  ModelParams both{1, 0, 1, 1};
  CHECK(both.delta() == doctest::Approx(std::sqrt(2.0)));
  CHECK(both.theta() == doctest::Approx(std::acos(-1.0) / 4.0));
  const Spectrum s = spectrum(both);
  const CMat h = hamiltonian(both);
  const Vec4 hv = matvec(h, s.states[1]);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(hv[i] - (-2.0 * std::sqrt(2.0)) * s.states[1][i]) < 1e-12);

  // all eigenpairs, orthonormality
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    ModelParams p{u(rng), u(rng), u(rng), 1.0};
    const Spectrum sp = spectrum(p);
    const CMat hp = hamiltonian(p);
    for (int k = 0; k < 4; ++k) {
      const Vec4 resid = matvec(hp, sp.states[k]);
      for (int i = 0; i < 4; ++i)
        CHECK(std::abs(resid[i] - sp.energies[k] * sp.states[k][i]) <= 1e-12);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        cplx dot = 0.0;
        for (int i = 0; i < 4; ++i) dot += std::conj(sp.states[a][i]) * sp.states[b][i];
        CHECK(std::abs(dot - (a == b ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) <= 1e-12);
      }
  }

  CHECK(spectrum({0, 2, 0, 1}).theta_convention_used == true);
}

TEST_CASE("thermal_state closed form") {
  // infinite-temperature limit
  const DensityMatrix hot = thermal_state({1, 0.5, 0.3, 1e6});
  CHECK(max_abs_diff(hot.mat, 0.25 * CMat::identity(4)) <= 1e-5);

  // zero-field point: Z = 2cosh2 + 2, rho_23 = -sinh2/Z
  const ModelParams p{1, 0, 0, 1};
  const double Z = 2.0 * std::cosh(2.0) + 2.0;
  CHECK(Z == doctest::Approx(9.5244).epsilon(1e-4));
  const DensityMatrix rho = thermal_state(p);
  CHECK(rho.mat(1, 2).real() == doctest::Approx(-std::sinh(2.0) / Z).epsilon(1e-14));
  CHECK(std::abs(rho.mat(1, 2).real() + 0.38081) < 1e-4);
  CHECK(std::abs(rho.mat(1, 2).imag()) < 1e-15);
  CHECK(rho.mat(0, 0).real() == doctest::Approx(1.0 / Z).epsilon(1e-14));

  // against the exponential route
  const ModelParams q{1, 0.5, 1, 0.5};
  CHECK(max_abs_diff(thermal_state(q).mat, thermal_state_numeric(q).mat) <= 1e-10);

  CHECK_THROWS_AS(thermal_state({1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("thermal_state_numeric") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 4.0), temp(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    ModelParams p{u(rng), u(rng), u(rng), temp(rng)};
    const DensityMatrix rho = thermal_state_numeric(p);
    CHECK(std::abs(trace(rho.mat) - cplx(1.0, 0.0)) <= 1e-12);
  }

  // field only: diagonal Gibbs weights
  const ModelParams p{0, 1.2, 0, 0.8};
  const double b = 1.0 / p.T;
  const double Z = 2.0 + 2.0 * std::cosh(2.0 * b * p.B);
  const DensityMatrix rho = thermal_state_numeric(p);
  CHECK(rho.mat(0, 0).real() == doctest::Approx(std::exp(-2.0 * b * p.B) / Z).epsilon(1e-12));
  CHECK(rho.mat(3, 3).real() == doctest::Approx(std::exp(2.0 * b * p.B) / Z).epsilon(1e-12));
  CHECK(std::abs(rho.mat(1, 2)) <= 1e-14);
}

TEST_CASE("gibbs consistency on random draws") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 5.0), temp(0.1, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    ModelParams p{u(rng), u(rng), u(rng), temp(rng)};
    CHECK(max_abs_diff(thermal_state(p).mat, thermal_state_numeric(p).mat) <= 1e-10);
  }
}

TEST_CASE("ground_state cases") {
  // delta > B: singlet-like projector
  const DensityMatrix g1 = ground_state({1, 0, 0, 0});
  Vec4 v{0.0, -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
  CHECK(max_abs_diff(g1.mat, outer(v)) <= 1e-14);

  // delta < B: |11><11|
  const DensityMatrix g2 = ground_state({1, 2, 0, 0});
  CHECK(g2.mat(3, 3).real() == doctest::Approx(1.0));
  CHECK(hs_norm(g2.mat) == doctest::Approx(1.0));

  // delta = B: equal rank-2 mixture with purity 1/2
  const DensityMatrix g3 = ground_state({1, 1.5, std::sqrt(5.0) / 2.0, 0});
  CHECK(trace(g3.mat * g3.mat).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ground-state limit of the thermal state") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  int tested = 0;
  while (tested < 100) {
    ModelParams p{u(rng), u(rng), u(rng), 1e-3};
    if (std::abs(p.delta() - p.B) <= 0.1) continue;
    ++tested;
    CHECK(trace_norm(thermal_state(p).mat - ground_state(p).mat) <= 1e-2);
  }
}

TEST_CASE("sqrt_thermal_state") {
  // beta -> 0: sqrt of the maximally mixed state
  CHECK(max_abs_diff(sqrt_thermal_state({1, 0.4, 0.2, 1e6}), 0.5 * CMat::identity(4)) <= 1e-5);

  // B = 0 makes Z = 4 cosh^2(beta delta), so the middle diagonal is exactly 1/2
  const CMat r = sqrt_thermal_state({1, 0, 0, 1});
  CHECK(r(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r(1, 1).real() ==
        doctest::Approx(std::cosh(1.0) / std::sqrt(2.0 * std::cosh(2.0) + 2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(sqrt_thermal_state({1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("sqrt normalization and reconstruction on random draws") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 4.0), temp(0.1, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    ModelParams p{u(rng), u(rng), u(rng), temp(rng)};
    const CMat r = sqrt_thermal_state(p);
    CHECK(std::abs(trace(r * r).real() - 1.0) <= 1e-12);
    CHECK(max_abs_diff(r * r, thermal_state(p).mat) <= 1e-12);
    // The numeric oracle agrees wherever the stored density matrix still
    // resolves e^{-2 beta delta}/Z; beyond that the root of the destroyed
    // weight (~sqrt(eps)) bounds any eigensolver.
    const double b = 1.0 / p.T;
    const double m = std::max(2 * b * p.delta(), 2 * b * std::abs(p.B));
    const double tolerance = (2 * b * p.delta() + m <= 28.0) ? 1e-10 : 2e-8;
    CHECK(max_abs_diff(r, matrix_sqrt_psd(thermal_state(p).mat)) <= tolerance);
  }
}

TEST_CASE("numeric square root of a thermal state matches the corrected form") {
  const DensityMatrix rho = thermal_state({1, 0, 0, 1});
  const CMat r = matrix_sqrt_psd(rho.mat);
  // middle-block diagonal cosh(bd)/sqrt(Z), not 2cosh(bd)/sqrt(Z)
  CHECK(r(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(trace(r * r).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("printed middle-block constants fail the normalization identity") {
  // The verbatim mode doubles the cosh/sinh entries; Tr(R^2) then overshoots
  // 1 badly. This is the check that motivates the corrected constants.
  const CMat r = sqrt_thermal_state({1, 0.5, 0.8, 1.0}, Formulas::paper_verbatim);
  CHECK(std::abs(trace(r * r).real() - 1.0) > 0.1);
}

TEST_CASE("sign-flip relations of the thermal matrix") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 4.0), temp(0.1, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    ModelParams p{u(rng), u(rng), u(rng), temp(rng)};
    const DensityMatrix rho = thermal_state(p);

    ModelParams pd = p;
    pd.D = -pd.D;  // flipping D conjugates the coherence
    const DensityMatrix rd = thermal_state(pd);
    CHECK(std::abs(rd.mat(1, 2) - std::conj(rho.mat(1, 2))) <= 1e-14);

    ModelParams pb = p;
    pb.B = -pb.B;  // flipping B swaps the corner populations
    const DensityMatrix rb = thermal_state(pb);
    CHECK(std::abs(rb.mat(0, 0) - rho.mat(3, 3)) <= 1e-14);
    CHECK(std::abs(rb.mat(3, 3) - rho.mat(0, 0)) <= 1e-14);
  }
}

TEST_CASE("temperature guards") {
  ModelParams frozen{1, 1, 1, 0};
  CHECK_THROWS_AS(frozen.beta(), std::invalid_argument);
  CHECK_THROWS_AS(frozen.partition(), std::invalid_argument);
  // deep-freeze evaluations stay finite through the rescaled forms
  const CMat r = sqrt_thermal_state({1, 1.5, 3, 1e-3});
  CHECK(std::isfinite(r(1, 1).real()));
  CHECK(std::abs(trace(r * r).real() - 1.0) <= 1e-12);
}

TEST_CASE("density matrix validation") {
  CMat bad = CMat::identity(4);  // trace 4
  CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);

  CMat nonherm(4);
  nonherm(0, 0) = 0.5;
  nonherm(1, 1) = 0.5;
  nonherm(0, 1) = cplx(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{nonherm}, std::invalid_argument);
}
