#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ecdim {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the minimum of f on [lo, hi].
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi,
                                      double rel_tol = 1e-12, int max_iter = 200) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_minimize: empty interval");
  constexpr double invphi = 0.6180339887498949;
  constexpr double invphi2 = 0.3819660112501051;
  double a = lo, b = hi;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter; ++i) {
    if (h <= rel_tol * (std::fabs(c) + std::fabs(d) + 1e-300)) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
  }
  return fc < fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

/// Minimizes f over (lo, hi]: seeds with a logarithmically spaced grid, then
/// refines with golden-section search between the bracketing neighbours of
/// the best grid point. Requires lo > 0.
template <class F>
ScalarMinimum log_grid_minimize(F&& f, double lo, double hi, int points = 64,
                                double rel_tol = 1e-12) {
  if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("log_grid_minimize: bad interval");
  if (points < 3) points = 3;
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double ratio = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  xs.back() = hi;

  int best = 0;
  double fbest = f(xs[0]);
  for (int i = 1; i < points; ++i) {
    const double fi = f(xs[static_cast<std::size_t>(i)]);
    if (fi < fbest) {
      fbest = fi;
      best = i;
    }
  }
  const double a = xs[static_cast<std::size_t>(std::max(0, best - 1))];
  const double b = xs[static_cast<std::size_t>(std::min(points - 1, best + 1))];
  ScalarMinimum refined = golden_section_minimize(f, a, b, rel_tol);
  if (refined.value < fbest) return refined;
  return ScalarMinimum{xs[static_cast<std::size_t>(best)], fbest};
}

}  // namespace ecdim
