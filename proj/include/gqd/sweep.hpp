#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gqd/measures.hpp"
#include "gqd/oracles.hpp"

namespace gqd {

enum class Axis { D, B, T };
const char* to_string(Axis a);

struct EvalOptions {
  Method method = Method::closed_form;
  Formulas formulas = Formulas::corrected;
  TraceSearchBudget trace_budget{};
  int hellinger_grid_level = 3;
  int bures_grid_level = 7;
};

// Routes one (params, measure) request. closed_form falls back to the
// definitional optimizer for Bures (no closed form exists); T = 0 routes to
// the ground state instead of beta = infinity arithmetic.
MeasureResult evaluate(const ModelParams& p, Measure measure, const EvalOptions& opt = {});

// Declarative description of one figure-style sweep.
struct SweepSpec {
  Axis vary = Axis::D;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;      // number of grid points, >= 2
  ModelParams fixed;  // the varied axis value inside is ignored
  std::optional<Axis> family_param;
  std::vector<double> family_values;  // one output series each, in this order
  bool want_trace = true;
  bool want_hellinger = true;
  bool want_bures = true;
  EvalOptions eval;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  double J = 0, B = 0, D = 0, T = 0;
  std::optional<double> q_trace, q_hellinger, q_bures;
  std::string method_label;
  // branch/argmax tags feeding the sudden-change detector
  int hellinger_branch = -1;
  std::array<double, 3> bures_argmax{};
  bool has_bures_argmax = false;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // family-major, then grid order
};

// Grid points are evaluated in parallel; row order is restored by index, so
// two runs of the same spec produce identical output.
SweepResult run_sweep(const SweepSpec& spec);

enum class KinkKind { argmax_switch, non_smooth_kink };
const char* to_string(KinkKind k);

struct SuddenChangePoint {
  double location = 0.0;
  KinkKind kind = KinkKind::argmax_switch;
  std::string series;
};

struct SeriesSample {
  double x = 0.0;
  double value = 0.0;
  int branch = -1;
  std::array<double, 3> argmax{};
  bool has_argmax = false;
};

// Branch switches are located by tag change between adjacent grid points and
// refined by 8 bisection steps through `eval` (location accurate to
// grid-step/2^8). Series without any tags fall back to a conservative
// curvature test.
std::vector<SuddenChangePoint> detect_sudden_change(
    const std::vector<SeriesSample>& series,
    const std::function<SeriesSample(double)>& eval, const std::string& series_name);

// One family member's series for one measure, extracted from sweep rows.
std::vector<SeriesSample> series_from_rows(const SweepResult& result, Measure m,
                                           int family_index);

// Point evaluator along the vary-axis of `spec`, for bisection refinement.
std::function<SeriesSample(double)> series_evaluator(const SweepSpec& spec, Measure m,
                                                     int family_index);

// 12 significant digits, locale-independent (std::to_chars).
std::string format_double12(double v);

// Schema: header J,B,D,T,Q_T,Q_H,Q_B,method; unrequested measures are empty
// cells; floats at 12 significant digits.
void write_csv(const SweepResult& result, std::ostream& os);

// Same rows as an array of objects with identical keys.
void write_json(const SweepResult& result, std::ostream& os);

}  // namespace gqd
