#pragma once

#include <cmath>
#include <stdexcept>

namespace ecdim {

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Finds a root of f in the bracket [lo, hi] (f(lo) and f(hi) of opposite
/// sign). Bisection keeps the bracket valid; a secant candidate is taken
/// whenever it falls safely inside.
template <class F>
RootResult solve_bracketed(F&& f, double lo, double hi, double flo, double fhi,
                           double xtol_rel = 1e-14, int max_iter = 200) {
  if (flo == 0.0) return {lo, 0.0, 0, true};
  if (fhi == 0.0) return {hi, 0.0, 0, true};
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("solve_bracketed: endpoints do not bracket a root");

  double a = lo, b = hi, fa = flo, fb = fhi;
  double x = 0.5 * (a + b), fx = 0.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    // secant candidate, safeguarded to the middle half of the bracket
    double xs = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    const double quarter = 0.25 * (b - a);
    if (!std::isfinite(xs) || xs < a + 0.1 * quarter || xs > b - 0.1 * quarter) xs = mid;
    x = xs;
    fx = f(x);
    if (fx == 0.0) return {x, 0.0, it + 1, true};
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (b - a <= xtol_rel * (std::fabs(a) + std::fabs(b) + 1e-300)) break;
  }
  return {x, fx, it, it < max_iter};
}

}  // namespace ecdim
