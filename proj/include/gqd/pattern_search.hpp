#pragma once

#include <cmath>
#include <vector>

namespace gqd {

// Coordinate domain for the compass searches: hard clamp or periodic wrap
// over [lo, hi].
struct SearchCoord {
  double lo = 0.0;
  double hi = 1.0;
  bool wrap = false;
};

struct CompassOptions {
  double initial_step = 0.25;  // fraction of each coordinate's span
  double step_floor = 1e-9;
  int max_iterations = 400;
};

struct CompassOutcome {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  double final_step = 0.0;
};

inline double apply_domain(double v, const SearchCoord& c) {
  const double span = c.hi - c.lo;
  if (c.wrap) {
    double t = std::fmod(v - c.lo, span);
    if (t < 0.0) t += span;
    return c.lo + t;
  }
  if (v < c.lo) return c.lo;
  if (v > c.hi) return c.hi;
  return v;
}

// Greedy compass search: polls +-step along every coordinate, moves to the
// best improving poll, halves the step when none improves. Derivative-free,
// fully deterministic.
template <typename F>
CompassOutcome compass_minimize(F&& f, std::vector<double> x,
                                const std::vector<SearchCoord>& coords,
                                const CompassOptions& opt) {
  const int n = static_cast<int>(x.size());
  CompassOutcome out;
  out.value = f(x);
  out.evaluations = 1;
  double step = opt.initial_step;

  for (int iter = 0; iter < opt.max_iterations && step >= opt.step_floor; ++iter) {
    double best = out.value;
    int best_coord = -1;
    double best_pos = 0.0;
    for (int i = 0; i < n; ++i) {
      const double span = coords[i].hi - coords[i].lo;
      for (double sign : {+1.0, -1.0}) {
        const double xi = apply_domain(x[i] + sign * step * span, coords[i]);
        if (xi == x[i]) continue;
        const double saved = x[i];
        x[i] = xi;
        const double v = f(x);
        ++out.evaluations;
        x[i] = saved;
        if (v < best) {
          best = v;
          best_coord = i;
          best_pos = xi;
        }
      }
    }
    if (best_coord >= 0) {
      x[best_coord] = best_pos;
      out.value = best;
    } else {
      step *= 0.5;
    }
  }
  out.x = std::move(x);
  out.final_step = step;
  return out;
}

// Radical-inverse Halton point, used for the deterministic multi-starts.
inline double halton(unsigned long long index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace gqd
