#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecdim {

/// Logarithm base for reported entropic quantities. All internal arithmetic
/// is carried out in natural log; the conversion factor is applied once at
/// the API boundary.
enum class LogBase { Natural, Two };

inline double log_unit(LogBase base) {
  return base == LogBase::Two ? std::numbers::ln2 : 1.0;
}

inline double from_nats(double nats, LogBase base) { return nats / log_unit(base); }
inline double to_nats(double value, LogBase base) { return value * log_unit(base); }

/// eta(x) = -x log x for x > 0, eta(0) = 0.
inline double eta(double x, LogBase base = LogBase::Natural) {
  if (x < 0.0) throw std::domain_error("eta: argument must be nonnegative");
  if (x < 1e-300) return 0.0;  // deep-underflow region contributes nothing
  return from_nats(-x * std::log(x), base);
}

/// Binary entropy h2(p) = eta(p) + eta(1-p) on [0, 1].
inline double binary_entropy(double p, LogBase base = LogBase::Natural) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p outside [0,1]");
  double nats = 0.0;
  if (p > 1e-300) nats += -p * std::log(p);
  if (1.0 - p > 1e-300) nats += -(1.0 - p) * std::log1p(-p);
  return from_nats(nats, base);
}

/// g(x) = (x+1) log(x+1) - x log x, the entropy of a geometric (thermal)
/// occupation with mean x. Strictly increasing, concave, g(0) = 0, and
/// g(x) <= log(x+1) + 1 in natural log for x > 0.
inline double g_func(double x, LogBase base = LogBase::Natural) {
  if (x < 0.0) throw std::domain_error("g_func: argument must be nonnegative");
  if (x < 1e-300) return 0.0;
  return from_nats(std::log1p(x) + x * std::log1p(1.0 / x), base);
}

}  // namespace ecdim
