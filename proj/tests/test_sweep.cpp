#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gqd/sweep.hpp"

using namespace gqd;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.vary = Axis::D;
  spec.from = 0.0;
  spec.to = 6.0;
  spec.steps = 25;
  spec.fixed = {1.0, 0.0, 0.0, 0.5};
  spec.family_param = Axis::B;
  spec.family_values = {0.0, 1.0, 3.0};
  spec.want_bures = false;  // keep the unit test quick
  return spec;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("evaluate routes on method and temperature") {
  const ModelParams p{1, 0, 0, 1};
  EvalOptions closed, def, oracle;
  def.method = Method::definitional;
  oracle.method = Method::oracle;
  const double qt = evaluate(p, Measure::trace, closed).value;
  CHECK(std::abs(evaluate(p, Measure::trace, def).value - qt) <= 1e-10);
  CHECK(std::abs(evaluate(p, Measure::trace, oracle).value - qt) <= 2e-4);

  // T = 0 goes through the ground state
  CHECK(evaluate({1, 1, 2, 0}, Measure::trace, def).value == doctest::Approx(1.0));
  CHECK(evaluate({1, 3, 1, 0}, Measure::hellinger, def).value == doctest::Approx(0.0));
  CHECK(evaluate({1, 3, 1, 0}, Measure::bures, def).value == doctest::Approx(0.0));

  // closed-form policy silently uses the optimizer for bures
  const MeasureResult qb = evaluate(p, Measure::bures, closed);
  CHECK(qb.method == Method::definitional);
  CHECK(qb.value > 0.0);
}

TEST_CASE("run_sweep shape and ordering") {
  const SweepResult r = run_sweep(small_spec());
  REQUIRE(static_cast<int>(r.rows.size()) == 3 * 25);

  // family-major ordering in the given value order
  CHECK(r.rows[0].B == doctest::Approx(0.0));
  CHECK(r.rows[25].B == doctest::Approx(1.0));
  CHECK(r.rows[50].B == doctest::Approx(3.0));
  CHECK(r.rows[0].D == doctest::Approx(0.0));
  CHECK(r.rows[24].D == doctest::Approx(6.0));

  // trace series rises with D within each family
  for (int fam = 0; fam < 3; ++fam)
    for (int i = 1; i < 25; ++i)
      CHECK(*r.rows[fam * 25 + i].q_trace >= *r.rows[fam * 25 + i - 1].q_trace);

  // unrequested measure left empty
  CHECK(!r.rows[0].q_bures.has_value());
}

TEST_CASE("degenerate two-point sweep repeats the row") {
  SweepSpec spec;
  spec.vary = Axis::D;
  spec.from = 1.0;
  spec.to = 1.0;
  spec.steps = 2;
  spec.fixed = {1.0, 0.5, 0.0, 1.0};
  spec.want_bures = false;
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 2);
  CHECK(*r.rows[0].q_trace == *r.rows[1].q_trace);
  CHECK(*r.rows[0].q_hellinger == *r.rows[1].q_hellinger);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec = small_spec();
  spec.steps = 1;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_spec();
  spec.from = 2.0;
  spec.to = 1.0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_spec();
  spec.fixed.T = 0.0;  // T fixed at zero while sweeping D
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_spec();
  spec.family_param = Axis::B;
  spec.family_values.clear();
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("csv output round-trips at full printed precision") {
  const SweepResult r = run_sweep(small_spec());
  std::ostringstream os;
  write_csv(r, os);
  const std::string text = os.str();

  const auto lines = split_lines(text);
  REQUIRE(lines.size() == 1 + r.rows.size());
  CHECK(lines[0] == "J,B,D,T,Q_T,Q_H,Q_B,method");

  // parse every numeric cell, re-print, compare byte for byte
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(lines[li]);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    for (int c = 0; c < 7; ++c) {
      if (cells[c].empty()) continue;
      CHECK(format_double12(std::stod(cells[c])) == cells[c]);
    }
    CHECK(cells[6].empty());  // bures not requested
    CHECK(cells[7] == "closed_form");
  }
}

TEST_CASE("sweeps are deterministic across runs and thread counts") {
  SweepSpec spec = small_spec();
  std::ostringstream a, b, c;
  write_csv(run_sweep(spec), a);
  write_csv(run_sweep(spec), b);
  spec.threads = 1;
  write_csv(run_sweep(spec), c);
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
}

TEST_CASE("json output mirrors the csv schema") {
  SweepSpec spec = small_spec();
  spec.steps = 3;
  spec.family_param.reset();
  spec.family_values.clear();
  const SweepResult r = run_sweep(spec);
  std::ostringstream os;
  write_json(r, os);
  const auto j = nlohmann::json::parse(os.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  for (const auto& row : j) {
    for (const char* key : {"J", "B", "D", "T", "Q_T", "Q_H", "Q_B", "method"})
      CHECK(row.contains(key));
    CHECK(row["Q_B"].is_null());
    CHECK(row["Q_T"].is_number());
    CHECK(row["method"] == "closed_form");
  }
}

TEST_CASE("hellinger switch detection lands on the analytic locus") {
  SweepSpec spec;
  spec.vary = Axis::D;
  spec.from = 0.0;
  spec.to = 6.0;
  spec.steps = 601;
  spec.fixed = {1.0, 1.5, 0.0, 0.5};
  spec.want_trace = false;
  spec.want_bures = false;
  const SweepResult r = run_sweep(spec);

  const auto kinks = detect_sudden_change(series_from_rows(r, Measure::hellinger, 0),
                                          series_evaluator(spec, Measure::hellinger, 0),
                                          "hellinger");
  REQUIRE(kinks.size() == 1);
  CHECK(kinks[0].kind == KinkKind::argmax_switch);
  // switch where delta = B, i.e. D = sqrt(B^2 - J^2)
  CHECK(std::abs(kinks[0].location - std::sqrt(1.25)) <= 1e-3);
}

TEST_CASE("trace sweeps report no sudden changes") {
  SweepSpec spec;
  spec.vary = Axis::D;
  spec.from = 0.0;
  spec.to = 6.0;
  spec.steps = 601;
  spec.fixed = {1.0, 3.0, 0.0, 0.5};
  spec.want_hellinger = false;
  spec.want_bures = false;
  const SweepResult r = run_sweep(spec);
  const auto kinks = detect_sudden_change(series_from_rows(r, Measure::trace, 0),
                                          series_evaluator(spec, Measure::trace, 0), "trace");
  CHECK(kinks.empty());

  // a non-monotone but smooth temperature profile must stay silent too
  SweepSpec tspec;
  tspec.vary = Axis::T;
  tspec.from = 0.05;
  tspec.to = 5.0;
  tspec.steps = 300;
  tspec.fixed = {1.0, 1.5, 0.0, 1.0};
  tspec.want_hellinger = false;
  tspec.want_bures = false;
  const SweepResult rt = run_sweep(tspec);
  CHECK(detect_sudden_change(series_from_rows(rt, Measure::trace, 0),
                             series_evaluator(tspec, Measure::trace, 0), "trace")
            .empty());
}

TEST_CASE("temperature sweep may start at zero") {
  SweepSpec spec;
  spec.vary = Axis::T;
  spec.from = 0.0;
  spec.to = 1.0;
  spec.steps = 3;
  spec.fixed = {1.0, 0.0, 2.0, 0.0};  // delta > B
  spec.want_bures = false;
  const SweepResult r = run_sweep(spec);
  // first grid point is the ground state: maximal discord
  CHECK(*r.rows[0].q_trace == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*r.rows[0].q_hellinger == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*r.rows[2].q_trace < 1.0);
}

TEST_CASE("format_double12") {
  CHECK(format_double12(0.5) == "0.5");
  CHECK(format_double12(1.0) == "1");
  CHECK(format_double12(0.761594155956) == "0.761594155956");
  CHECK(format_double12(1e6) == "1000000");
}
