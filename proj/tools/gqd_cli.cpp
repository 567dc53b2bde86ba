#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqd/measures.hpp"
#include "gqd/model.hpp"
#include "gqd/sweep.hpp"
#include "gqd/verify.hpp"

namespace {

using namespace gqd;

Method parse_method(const std::string& s) {
  if (s == "closed" || s == "closed_form") return Method::closed_form;
  if (s == "definitional") return Method::definitional;
  if (s == "oracle") return Method::oracle;
  throw CLI::ValidationError("--method", "must be closed|definitional|oracle");
}

Axis parse_axis(const std::string& s) {
  if (s == "D") return Axis::D;
  if (s == "B") return Axis::B;
  if (s == "T") return Axis::T;
  throw CLI::ValidationError("axis", "must be D|B|T");
}

void select_measures(const std::string& s, bool& t, bool& h, bool& b) {
  t = h = b = false;
  if (s == "all") {
    t = h = b = true;
  } else if (s == "trace") {
    t = true;
  } else if (s == "hellinger") {
    h = true;
  } else if (s == "bures") {
    b = true;
  } else {
    throw CLI::ValidationError("--measure", "must be trace|hellinger|bures|all");
  }
}

int cmd_compute(const ModelParams& p, const std::string& measure_sel,
                const EvalOptions& eval, const std::string& format) {
  bool want_t, want_h, want_b;
  select_measures(measure_sel, want_t, want_h, want_b);

  SweepResult single;
  single.spec.want_trace = want_t;
  single.spec.want_hellinger = want_h;
  single.spec.want_bures = want_b;
  SweepRow row;
  row.J = p.J;
  row.B = p.B;
  row.D = p.D;
  row.T = p.T;
  row.method_label = to_string(eval.method);
  if (eval.formulas == Formulas::paper_verbatim) row.method_label += "(paper-verbatim)";

  std::vector<std::pair<Measure, std::string>> wanted;
  if (want_t) wanted.emplace_back(Measure::trace, "Q_T");
  if (want_h) wanted.emplace_back(Measure::hellinger, "Q_H");
  if (want_b) wanted.emplace_back(Measure::bures, "Q_B");

  for (const auto& [m, label] : wanted) {
    const MeasureResult r = evaluate(p, m, eval);
    if (m == Measure::trace) row.q_trace = r.value;
    if (m == Measure::hellinger) row.q_hellinger = r.value;
    if (m == Measure::bures) row.q_bures = r.value;
    if (format == "text") {
      std::cout << label << " = " << format_double12(r.value) << "  (" << to_string(r.method);
      if (eval.formulas == Formulas::paper_verbatim && m == Measure::hellinger)
        std::cout << ", paper-verbatim";
      std::cout << ")";
      if (!r.diag.note.empty()) std::cout << "  [" << r.diag.note << "]";
      std::cout << '\n';
    }
  }
  single.rows.push_back(row);
  if (format == "csv") write_csv(single, std::cout);
  if (format == "json") write_json(single, std::cout);
  return 0;
}

int cmd_limits(const std::string& scenario, ModelParams p, int samples, unsigned seed,
               Formulas formulas) {
  bool ok = true;
  const auto report = [&](const std::string& what, double value, bool pass) {
    std::cout << (pass ? "ok   " : "FAIL ") << what << " = " << format_double12(value) << '\n';
    ok = ok && pass;
  };

  if (scenario == "zerot" || scenario == "zero-t") {
    struct Case {
      ModelParams params;
      double expect_th, tol_th;    // trace and hellinger
      double expect_b, tol_b;      // bures
      const char* name;
    };
    const Case cases[] = {
        {{1.0, 1.0, 2.0, 0.0}, 1.0, 1e-9, 1.0, 1e-6, "delta>B (J=1,D=2,B=1)"},
        {{1.0, 3.0, 1.0, 0.0}, 0.0, 1e-9, 0.0, 1e-9, "delta<B (J=1,D=1,B=3)"},
        {{1.0, 1.5, std::sqrt(5.0) / 2.0, 0.0}, 0.5, 1e-9, 0.5098, 5e-4,
         "delta=B (J=1,D=sqrt5/2,B=1.5)"},
    };
    for (const Case& c : cases) {
      EvalOptions eval;
      eval.method = Method::definitional;
      const double qt = evaluate(c.params, Measure::trace, eval).value;
      const double qh = evaluate(c.params, Measure::hellinger, eval).value;
      const double qb = evaluate(c.params, Measure::bures, eval).value;
      report(std::string("Q_T at ") + c.name, qt, std::abs(qt - c.expect_th) <= c.tol_th);
      report(std::string("Q_H at ") + c.name, qh, std::abs(qh - c.expect_th) <= c.tol_th);
      report(std::string("Q_B at ") + c.name, qb, std::abs(qb - c.expect_b) <= c.tol_b);
    }
  } else if (scenario == "dinf" || scenario == "d-inf") {
    if (p.T <= 0.0) p.T = 0.5;
    EvalOptions eval;
    const double qt = evaluate(p, Measure::trace, eval).value;
    const double qh = evaluate(p, Measure::hellinger, eval).value;
    const double qb = evaluate(p, Measure::bures, eval).value;
    report("Q_T", qt, qt > 0.999);
    report("Q_H", qh, qh > 0.999);
    report("Q_B", qb, qb > 0.999);
  } else if (scenario == "inft" || scenario == "inf-t") {
    if (p.T <= 0.0) p.T = 1e6;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    EvalOptions eval;
    eval.formulas = formulas;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      ModelParams q{unif(rng), unif(rng), unif(rng), p.T};
      for (Measure m : {Measure::trace, Measure::hellinger, Measure::bures})
        worst = std::max(worst, std::abs(evaluate(q, m, eval).value));
    }
    report("max |Q| over random draws at T = " + format_double12(p.T), worst, worst < 1e-4);
  } else {
    std::cerr << "unknown --case " << scenario << " (use zerot|dinf|inft)\n";
    return 2;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric quantum discords (trace / Hellinger / Bures) of the "
               "thermal two-spin XX chain with DM interaction"};
  app.require_subcommand(1);

  ModelParams params{0.0, 0.0, 0.0, -1.0};
  std::string measure_sel = "all";
  std::string method_str = "closed";
  std::string format = "text";
  bool paper_verbatim = false;
  unsigned seed = 12345;

  auto add_param_flags = [&](CLI::App* cmd) {
    cmd->add_option("--J", params.J, "exchange coupling");
    cmd->add_option("--B", params.B, "magnetic field along z");
    cmd->add_option("--D", params.D, "DM interaction along z");
    cmd->add_option("--T", params.T, "temperature in units of k_B (T = 0 uses the ground state)");
  };

  // compute
  CLI::App* compute = app.add_subcommand("compute", "evaluate the measures at one point");
  add_param_flags(compute);
  compute->add_option("--measure", measure_sel, "trace|hellinger|bures|all");
  compute->add_option("--method", method_str, "closed|definitional|oracle");
  compute->add_flag("--paper-verbatim", paper_verbatim,
                    "evaluate the uncorrected printed formulas (documentation mode)");
  compute->add_option("--format", format, "text|csv|json");
  compute->add_option("--seed", seed, "seed for exploratory oracle restarts (0 = Halton)");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with CSV/JSON output");
  std::string vary_str = "D", family_str, out_path;
  double from = 0.0, to = 1.0;
  int steps = 2;
  std::vector<double> family_values;
  std::string sweep_format = "csv";
  bool detect_changes = false;
  unsigned threads = 0;
  add_param_flags(sweep);
  sweep->add_option("--vary", vary_str, "axis to vary: D|B|T")->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps, "number of grid points (>= 2)")->required();
  sweep->add_option("--family-param", family_str, "second axis producing one series per value");
  sweep->add_option("--family-values", family_values, "comma-separated values")->delimiter(',');
  sweep->add_option("--measure", measure_sel, "trace|hellinger|bures|all");
  sweep->add_option("--method", method_str, "closed|definitional|oracle");
  sweep->add_flag("--paper-verbatim", paper_verbatim);
  sweep->add_option("--out", out_path, "output file (default: stdout)");
  sweep->add_option("--format", sweep_format, "csv|json");
  sweep->add_option("--seed", seed);
  sweep->add_option("--threads", threads, "worker threads (0 = hardware)");
  sweep->add_flag("--detect-changes", detect_changes,
                  "report sudden-change points of the swept series");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run the oracle/invariant suites");
  std::string suite = "all";
  int samples = 20;
  verify->add_option("--suite", suite, "all|oracle|invariants");
  verify->add_option("--samples", samples);
  verify->add_option("--seed", seed);

  // limits
  CLI::App* limits = app.add_subcommand("limits", "evaluate the limiting scenarios");
  std::string scenario;
  int limit_samples = 20;
  add_param_flags(limits);
  limits->add_option("--case", scenario, "zerot|dinf|inft")->required();
  limits->add_option("--samples", limit_samples, "random draws for the inft case");
  limits->add_option("--seed", seed);
  limits->add_flag("--paper-verbatim", paper_verbatim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) {
      if (params.T < 0.0) {
        std::cerr << "compute: --T is required (T = 0 selects the ground state)\n";
        return 2;
      }
      EvalOptions eval;
      eval.method = parse_method(method_str);
      eval.formulas = paper_verbatim ? Formulas::paper_verbatim : Formulas::corrected;
      if (compute->count("--seed") > 0) eval.trace_budget.seed = seed;
      return cmd_compute(params, measure_sel, eval, format);
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      spec.vary = parse_axis(vary_str);
      spec.from = from;
      spec.to = to;
      spec.steps = steps;
      if (params.T < 0.0) params.T = 0.0;
      spec.fixed = params;
      if (!family_str.empty()) {
        spec.family_param = parse_axis(family_str);
        spec.family_values = family_values;
      }
      select_measures(measure_sel, spec.want_trace, spec.want_hellinger, spec.want_bures);
      spec.eval.method = parse_method(method_str);
      spec.eval.formulas = paper_verbatim ? Formulas::paper_verbatim : Formulas::corrected;
      spec.threads = threads;

      const SweepResult result = run_sweep(spec);
      if (out_path.empty()) {
        if (sweep_format == "json")
          write_json(result, std::cout);
        else
          write_csv(result, std::cout);
      } else {
        std::ofstream os(out_path);
        if (!os) {
          std::cerr << "sweep: cannot open " << out_path << " for writing\n";
          return 1;
        }
        if (sweep_format == "json")
          write_json(result, os);
        else
          write_csv(result, os);
      }

      if (detect_changes) {
        std::ostream& rep = out_path.empty() ? std::cerr : std::cout;
        const int families = spec.family_param ? static_cast<int>(spec.family_values.size()) : 1;
        for (int f = 0; f < families; ++f) {
          for (Measure m : {Measure::trace, Measure::hellinger, Measure::bures}) {
            if (m == Measure::trace && !spec.want_trace) continue;
            if (m == Measure::hellinger && !spec.want_hellinger) continue;
            if (m == Measure::bures && !spec.want_bures) continue;
            std::string name = to_string(m);
            if (spec.family_param)
              name += std::string(" [") + to_string(*spec.family_param) + "=" +
                      format_double12(spec.family_values[f]) + "]";
            const auto kinks = detect_sudden_change(series_from_rows(result, m, f),
                                                    series_evaluator(spec, m, f), name);
            for (const auto& k : kinks)
              rep << "# sudden-change " << k.series << ": " << to_string(k.kind) << " at "
                  << to_string(spec.vary) << " = " << format_double12(k.location) << '\n';
          }
        }
      }
      return 0;
    }

    if (verify->parsed()) {
      VerifyOptions opt;
      opt.suite = suite;
      opt.samples = samples;
      opt.seed = seed;
      return run_verification(opt, std::cout) ? 0 : 1;
    }

    if (limits->parsed()) {
      return cmd_limits(scenario, params, limit_samples, seed,
                        paper_verbatim ? Formulas::paper_verbatim : Formulas::corrected);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
