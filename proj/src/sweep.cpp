#include "gqd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace gqd {

const char* to_string(Axis a) {
  switch (a) {
    case Axis::D: return "D";
    case Axis::B: return "B";
    case Axis::T: return "T";
  }
  return "?";
}

const char* to_string(KinkKind k) {
  return k == KinkKind::argmax_switch ? "argmax-switch" : "non-smooth-kink";
}

namespace {

void set_axis(ModelParams& p, Axis a, double v) {
  switch (a) {
    case Axis::D: p.D = v; break;
    case Axis::B: p.B = v; break;
    case Axis::T: p.T = v; break;
  }
}

double get_axis(const ModelParams& p, Axis a) {
  switch (a) {
    case Axis::D: return p.D;
    case Axis::B: return p.B;
    case Axis::T: return p.T;
  }
  return 0.0;
}

std::string method_label(const EvalOptions& opt) {
  std::string s = to_string(opt.method);
  if (opt.formulas == Formulas::paper_verbatim) s += "(paper-verbatim)";
  return s;
}

}  // namespace

MeasureResult evaluate(const ModelParams& p, Measure measure, const EvalOptions& opt) {
  const bool zero_t = p.T <= 0.0;

  if (opt.method == Method::closed_form) {
    if (measure == Measure::trace) return trace_gqd_model(p);
    if (measure == Measure::hellinger) return hellinger_gqd_model(p, opt.formulas);
    // Bures has no closed form; fall through to the definitional optimizer.
  }

  const DensityMatrix rho = zero_t ? ground_state(p) : thermal_state(p);

  if (opt.method == Method::oracle) {
    MeasureResult res;
    res.measure = measure;
    res.method = Method::oracle;
    OracleDiag od;
    switch (measure) {
      case Measure::trace: {
        TraceSearchBudget b = opt.trace_budget;
        res.value = trace_gqd_bruteforce(rho, b, &od);
        break;
      }
      case Measure::hellinger:
        res.value = hellinger_gqd_bruteforce(rho, opt.hellinger_grid_level, &od);
        break;
      case Measure::bures: {
        const double max_f = bures_maxfid_grid(rho, opt.bures_grid_level, &od);
        res.diag.max_fidelity = max_f;
        res.value = bures_value_from_max_fidelity(max_f);
        break;
      }
    }
    res.diag.evaluations = od.evaluations;
    res.diag.final_step = od.final_step;
    res.diag.best_start = od.best_start;
    return res;
  }

  switch (measure) {
    case Measure::trace: return trace_gqd_xstate(rho);
    case Measure::hellinger:
      // For thermal states use the analytic square root: the numeric one
      // cannot resolve Gibbs weights below the double-precision floor.
      return zero_t ? hellinger_gqd(rho)
                    : hellinger_from_sqrt(sqrt_thermal_state(p, opt.formulas));
    case Measure::bures: return bures_gqd(rho);
  }
  throw std::logic_error("evaluate: unreachable");
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.steps < 2) throw std::invalid_argument("run_sweep: steps must be >= 2");
  if (spec.from > spec.to) throw std::invalid_argument("run_sweep: from must be <= to");
  if (spec.family_param && spec.family_values.empty())
    throw std::invalid_argument("run_sweep: family parameter given without values");
  const bool t_varied = spec.vary == Axis::T ||
                        (spec.family_param && *spec.family_param == Axis::T);
  if (!t_varied && spec.fixed.T <= 0.0)
    throw std::invalid_argument("run_sweep: fixed T must be > 0 unless T is swept");
  if (spec.vary == Axis::T && spec.from < 0.0)
    throw std::invalid_argument("run_sweep: negative temperatures are not allowed");

  const int families = spec.family_param ? static_cast<int>(spec.family_values.size()) : 1;
  const int total = families * spec.steps;

  SweepResult result;
  result.spec = spec;
  result.rows.resize(total);

  const auto compute_row = [&](int index) {
    const int fam = index / spec.steps;
    const int i = index % spec.steps;
    ModelParams p = spec.fixed;
    if (spec.family_param) set_axis(p, *spec.family_param, spec.family_values[fam]);
    const double x =
        spec.steps == 1
            ? spec.from
            : spec.from + (spec.to - spec.from) * static_cast<double>(i) / (spec.steps - 1);
    set_axis(p, spec.vary, x);

    SweepRow row;
    row.J = p.J;
    row.B = p.B;
    row.D = p.D;
    row.T = p.T;
    row.method_label = method_label(spec.eval);
    if (spec.want_trace) row.q_trace = evaluate(p, Measure::trace, spec.eval).value;
    if (spec.want_hellinger) {
      const MeasureResult r = evaluate(p, Measure::hellinger, spec.eval);
      row.q_hellinger = r.value;
      row.hellinger_branch = r.diag.branch;
    }
    if (spec.want_bures) {
      const MeasureResult r = evaluate(p, Measure::bures, spec.eval);
      row.q_bures = r.value;
      if (r.method == Method::definitional) {
        row.bures_argmax = r.diag.argmax_u;
        row.has_bures_argmax = true;
      }
    }
    return row;
  };

  unsigned nthreads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(total)));

  if (nthreads == 1) {
    for (int i = 0; i < total; ++i) result.rows[i] = compute_row(i);
  } else {
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
          try {
            result.rows[i] = compute_row(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  return result;
}

namespace {

// f(-u) = f(u) for the Bures maximand, so the polar angle folded to
// [0, pi/2] is the meaningful coordinate of an argmax.
double folded_polar(const std::array<double, 3>& u) {
  const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  if (n == 0.0) return 0.0;
  return std::acos(std::min(1.0, std::abs(u[2]) / n));
}

}  // namespace

std::vector<SuddenChangePoint> detect_sudden_change(
    const std::vector<SeriesSample>& series,
    const std::function<SeriesSample(double)>& eval, const std::string& series_name) {
  std::vector<SuddenChangePoint> out;
  const int n = static_cast<int>(series.size());
  if (n < 2) return out;

  constexpr double kArgmaxJump = 0.3;  // radians of folded polar movement
  bool any_tags = false;

  for (int i = 0; i + 1 < n; ++i) {
    const SeriesSample& a = series[i];
    const SeriesSample& b = series[i + 1];
    const bool have_branch = a.branch >= 0 && b.branch >= 0;
    const bool have_argmax = a.has_argmax && b.has_argmax;
    any_tags = any_tags || have_branch || have_argmax;

    if (have_branch && a.branch != b.branch) {
      double lo = a.x, hi = b.x;
      const int lo_branch = a.branch;
      for (int k = 0; k < 8; ++k) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid).branch == lo_branch ? lo : hi) = mid;
      }
      out.push_back({0.5 * (lo + hi), KinkKind::argmax_switch, series_name});
      continue;
    }
    if (have_argmax) {
      double pa = folded_polar(a.argmax);
      double pb = folded_polar(b.argmax);
      if (std::abs(pa - pb) > kArgmaxJump) {
        double lo = a.x, hi = b.x;
        for (int k = 0; k < 8; ++k) {
          const double mid = 0.5 * (lo + hi);
          const double pm = folded_polar(eval(mid).argmax);
          if (std::abs(pm - pa) <= std::abs(pm - pb)) {
            lo = mid;
            pa = pm;
          } else {
            hi = mid;
            pb = pm;
          }
        }
        out.push_back({0.5 * (lo + hi), KinkKind::argmax_switch, series_name});
      }
    }
  }

  // Interior turning points of optimizer-backed (argmax-tagged) series: the
  // active fidelity branch can peak smoothly, reversing the curve without
  // any measurement-axis jump. Suppressed near already-detected switches.
  const bool argmax_series = n > 2 && series.front().has_argmax && series.back().has_argmax;
  if (argmax_series) {
    const double step = std::abs(series[1].x - series[0].x);
    constexpr double kSlopeFloor = 1e-7;
    for (int i = 1; i + 1 < n; ++i) {
      const double s_prev = series[i].value - series[i - 1].value;
      const double s_next = series[i + 1].value - series[i].value;
      const bool is_min = s_prev < -kSlopeFloor && s_next > kSlopeFloor;
      const bool is_max = s_prev > kSlopeFloor && s_next < -kSlopeFloor;
      if (!is_min && !is_max) continue;
      bool near_switch = false;
      for (const auto& k : out)
        near_switch = near_switch || std::abs(k.location - series[i].x) <= 2.0 * step;
      if (near_switch) continue;
      // Ternary refinement of the extremum through `eval`.
      double lo = series[i - 1].x, hi = series[i + 1].x;
      for (int it = 0; it < 20; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        const double v1 = eval(m1).value, v2 = eval(m2).value;
        if (is_min ? (v1 < v2) : (v1 > v2))
          hi = m2;
        else
          lo = m1;
      }
      out.push_back({0.5 * (lo + hi), KinkKind::non_smooth_kink, series_name});
    }
  }

  if (!any_tags) {
    // Conservative curvature probe: a second difference has to tower over
    // the local background to count as a kink.
    for (int i = 1; i + 1 < n; ++i) {
      const double d2 =
          series[i + 1].value - 2.0 * series[i].value + series[i - 1].value;
      double background = 0.0;
      for (int j = std::max(1, i - 6); j + 1 < n && j <= i + 6; ++j) {
        if (std::abs(j - i) <= 1) continue;
        background = std::max(
            background,
            std::abs(series[j + 1].value - 2.0 * series[j].value + series[j - 1].value));
      }
      if (std::abs(d2) > 1e-7 && std::abs(d2) > 100.0 * background)
        out.push_back({series[i].x, KinkKind::non_smooth_kink, series_name});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SuddenChangePoint& a, const SuddenChangePoint& b) {
              return a.location < b.location;
            });
  return out;
}

std::vector<SeriesSample> series_from_rows(const SweepResult& result, Measure m,
                                           int family_index) {
  const int steps = result.spec.steps;
  std::vector<SeriesSample> s;
  s.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const SweepRow& row = result.rows[family_index * steps + i];
    SeriesSample pt;
    ModelParams p;
    p.J = row.J;
    p.B = row.B;
    p.D = row.D;
    p.T = row.T;
    pt.x = get_axis(p, result.spec.vary);
    switch (m) {
      case Measure::trace:
        pt.value = row.q_trace.value_or(0.0);
        break;
      case Measure::hellinger:
        pt.value = row.q_hellinger.value_or(0.0);
        pt.branch = row.hellinger_branch;
        break;
      case Measure::bures:
        pt.value = row.q_bures.value_or(0.0);
        pt.argmax = row.bures_argmax;
        pt.has_argmax = row.has_bures_argmax;
        break;
    }
    s.push_back(pt);
  }
  return s;
}

std::function<SeriesSample(double)> series_evaluator(const SweepSpec& spec, Measure m,
                                                     int family_index) {
  ModelParams base = spec.fixed;
  if (spec.family_param) set_axis(base, *spec.family_param, spec.family_values[family_index]);
  const Axis vary = spec.vary;
  const EvalOptions eval = spec.eval;
  return [base, vary, m, eval](double x) {
    ModelParams p = base;
    set_axis(p, vary, x);
    const MeasureResult r = evaluate(p, m, eval);
    SeriesSample pt;
    pt.x = x;
    pt.value = r.value;
    pt.branch = r.diag.branch;
    if (m == Measure::bures && r.method == Method::definitional) {
      pt.argmax = r.diag.argmax_u;
      pt.has_argmax = true;
    }
    return pt;
  };
}

std::string format_double12(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "J,B,D,T,Q_T,Q_H,Q_B,method\n";
  for (const SweepRow& r : result.rows) {
    os << format_double12(r.J) << ',' << format_double12(r.B) << ','
       << format_double12(r.D) << ',' << format_double12(r.T) << ',';
    if (r.q_trace) os << format_double12(*r.q_trace);
    os << ',';
    if (r.q_hellinger) os << format_double12(*r.q_hellinger);
    os << ',';
    if (r.q_bures) os << format_double12(*r.q_bures);
    os << ',' << r.method_label << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& r : result.rows) {
    nlohmann::ordered_json o;
    o["J"] = r.J;
    o["B"] = r.B;
    o["D"] = r.D;
    o["T"] = r.T;
    o["Q_T"] = r.q_trace ? nlohmann::ordered_json(*r.q_trace) : nlohmann::ordered_json(nullptr);
    o["Q_H"] =
        r.q_hellinger ? nlohmann::ordered_json(*r.q_hellinger) : nlohmann::ordered_json(nullptr);
    o["Q_B"] = r.q_bures ? nlohmann::ordered_json(*r.q_bures) : nlohmann::ordered_json(nullptr);
    o["method"] = r.method_label;
    rows.push_back(std::move(o));
  }
  os << rows.dump(2) << '\n';
}

}  // namespace gqd
