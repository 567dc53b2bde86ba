#include "gqd/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "gqd/constants.hpp"
#include "gqd/linalg.hpp"
#include "gqd/measures.hpp"
#include "gqd/model.hpp"
#include "gqd/oracles.hpp"

namespace gqd {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Reporter {
  std::ostream& os;
  bool all_ok = true;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    os << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) os << " (" << detail << ")";
    os << '\n';
    all_ok = all_ok && ok;
  }
};

std::vector<ModelParams> random_params(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coupling(0.0, 4.0);
  std::uniform_real_distribution<double> temp(0.1, 5.0);
  std::vector<ModelParams> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back({coupling(rng), coupling(rng), coupling(rng), temp(rng)});
  return out;
}

void oracle_suite(const VerifyOptions& opt, Reporter& rep) {
  std::mt19937_64 rng(opt.seed);
  const auto params = random_params(opt.samples, rng);

  double worst_trace_cf = 0, worst_hell_cf = 0;
  double worst_trace_or = 0, worst_hell_or = 0, worst_bures_or = 0;
  for (const ModelParams& p : params) {
    const DensityMatrix rho = thermal_state(p);
    const double qt_closed = trace_gqd_model(p).value;
    const double qh_closed = hellinger_gqd_model(p).value;
    worst_trace_cf = std::max(worst_trace_cf,
                              std::abs(qt_closed - trace_gqd_xstate(rho).value));
    worst_hell_cf = std::max(worst_hell_cf,
                             std::abs(qh_closed - hellinger_from_sqrt(sqrt_thermal_state(p)).value));
    worst_trace_or = std::max(worst_trace_or,
                              std::abs(qt_closed - trace_gqd_bruteforce(rho)));
    worst_hell_or = std::max(worst_hell_or,
                             std::abs(qh_closed - hellinger_gqd_bruteforce(rho, 3)));
    const MeasureResult qb = bures_gqd(rho);
    worst_bures_or = std::max(
        worst_bures_or, std::abs(qb.diag.max_fidelity - bures_maxfid_grid(rho, 7)));
  }
  rep.check("trace closed form vs X-state formula <= 1e-10", worst_trace_cf <= 1e-10,
            "worst " + sci(worst_trace_cf));
  rep.check("hellinger closed form vs W-matrix path <= 1e-10", worst_hell_cf <= 1e-10,
            "worst " + sci(worst_hell_cf));
  rep.check("trace CQ brute force vs closed form <= 2e-4", worst_trace_or <= 2e-4,
            "worst " + sci(worst_trace_or));
  rep.check("hellinger sphere brute force vs closed form <= 1e-6", worst_hell_or <= 1e-6,
            "worst " + sci(worst_hell_or));
  rep.check("bures grid oracle vs refined optimizer <= 1e-5", worst_bures_or <= 1e-5,
            "worst " + sci(worst_bures_or));

  // Zero-discord certification on random classical-quantum states.
  const int cq_samples = std::max(4, opt.samples / 2);
  double worst_cq_trace = 0, worst_cq_hell = 0, worst_cq_bures = 0;
  for (int i = 0; i < cq_samples; ++i) {
    const DensityMatrix rho = cq_assemble(random_cq_state(rng));
    worst_cq_trace = std::max(worst_cq_trace, trace_gqd_bruteforce(rho));
    worst_cq_hell = std::max(worst_cq_hell, hellinger_gqd_bruteforce(rho, 3));
    worst_cq_bures = std::max(worst_cq_bures, bures_gqd(rho).value);
  }
  rep.check("CQ states: trace brute force < 2e-4", worst_cq_trace < 2e-4,
            "worst " + sci(worst_cq_trace));
  rep.check("CQ states: hellinger brute force < 1e-6", worst_cq_hell < 1e-6,
            "worst " + sci(worst_cq_hell));
  rep.check("CQ states: bures optimizer < 1e-6", worst_cq_bures < 1e-6,
            "worst " + sci(worst_cq_bures));
}

void invariant_suite(const VerifyOptions& opt, Reporter& rep) {
  std::mt19937_64 rng(opt.seed + 1);
  const auto params = random_params(opt.samples, rng);

  double worst_gibbs = 0, worst_norm = 0, worst_spectral = 0;
  double worst_flip_closed = 0, worst_flip_bures = 0;
  double worst_w_min = 0, worst_w_max = 0;
  bool locus_ok = true;
  for (const ModelParams& p : params) {
    worst_gibbs = std::max(worst_gibbs,
                           max_abs_diff(thermal_state(p).mat, thermal_state_numeric(p).mat));
    const CMat r = sqrt_thermal_state(p);
    worst_norm = std::max(worst_norm, std::abs(trace(r * r).real() - 1.0));

    const auto w = hermitian_eigenvalues(hamiltonian(p));
    const double d = p.delta();
    std::array<double, 4> expect = {2.0 * d, 2.0 * p.B, -2.0 * p.B, -2.0 * d};
    std::sort(expect.begin(), expect.end(), std::greater<double>());
    for (int i = 0; i < 4; ++i)
      worst_spectral = std::max(worst_spectral, std::abs(w[i] - expect[i]));

    const double qt = trace_gqd_model(p).value;
    const MeasureResult qh = hellinger_gqd_model(p);
    const double qb = bures_gqd(thermal_state(p)).value;
    for (int mask = 1; mask < 8; ++mask) {
      ModelParams q = p;
      if (mask & 1) q.J = -q.J;
      if (mask & 2) q.B = -q.B;
      if (mask & 4) q.D = -q.D;
      worst_flip_closed = std::max(worst_flip_closed,
                                   std::abs(trace_gqd_model(q).value - qt));
      worst_flip_closed = std::max(worst_flip_closed,
                                   std::abs(hellinger_gqd_model(q).value - qh.value));
      worst_flip_bures = std::max(worst_flip_bures,
                                  std::abs(bures_gqd(thermal_state(q)).value - qb));
    }

    const CorrelationMatrixW wm = correlation_matrix_w(thermal_state(p));
    const auto wev = sym3_eigenvalues(wm);
    worst_w_min = std::min(worst_w_min, wev[2]);
    worst_w_max = std::max(worst_w_max, wev[0]);

    // Corrected constants put the argmax switch exactly on delta = B.
    if (std::abs(d - p.B) > 1e-9) {
      const bool transverse_wins = qh.diag.lambda1 > qh.diag.lambda2;
      locus_ok = locus_ok && (transverse_wins == (d > p.B));
    }
  }
  rep.check("thermal state closed form vs exp(-bH)/Z <= 1e-10", worst_gibbs <= 1e-10,
            "worst " + sci(worst_gibbs));
  rep.check("Tr(sqrt_thermal_state^2) = 1 <= 1e-12", worst_norm <= 1e-12,
            "worst " + sci(worst_norm));
  rep.check("hamiltonian spectrum {+-2d, +-2B} <= 1e-10", worst_spectral <= 1e-10,
            "worst " + sci(worst_spectral));
  rep.check("sign-flip symmetry, closed forms <= 1e-9", worst_flip_closed <= 1e-9,
            "worst " + sci(worst_flip_closed));
  rep.check("sign-flip symmetry, bures <= 1e-6", worst_flip_bures <= 1e-6,
            "worst " + sci(worst_flip_bures));
  rep.check("W matrix PSD and lambda_max <= 1", worst_w_min >= -1e-10 &&
                                                    worst_w_max <= 1.0 + 1e-10,
            "min " + sci(worst_w_min) + ", max " + sci(worst_w_max));
  rep.check("hellinger argmax-switch locus sign(l1-l2) = sign(d-B)", locus_ok);
}

}  // namespace

bool run_verification(const VerifyOptions& opt, std::ostream& os) {
  Reporter rep{os};
  if (opt.suite == "oracle" || opt.suite == "all") {
    os << "== oracle agreement (" << opt.samples << " samples, seed " << opt.seed << ") ==\n";
    oracle_suite(opt, rep);
  }
  if (opt.suite == "invariants" || opt.suite == "all") {
    os << "== invariants (" << opt.samples << " samples, seed " << opt.seed << ") ==\n";
    invariant_suite(opt, rep);
  }
  os << (rep.all_ok ? "verification passed\n" : "verification FAILED\n");
  return rep.all_ok;
}

}  // namespace gqd
