#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <ecdim/entropy_functions.hpp>
#include <ecdim/max_entropy.hpp>
#include <ecdim/minimize.hpp>
#include <ecdim/spectrum.hpp>

namespace ecdim {

/// The five energy-constrained capacities the bounds apply to.
enum class CapacityKind { Chi, Classical, Ea, Quantum, Private };

inline const char* to_string(CapacityKind k) {
  switch (k) {
    case CapacityKind::Chi: return "chi";
    case CapacityKind::Classical: return "c";
    case CapacityKind::Ea: return "ea";
    case CapacityKind::Quantum: return "q";
    case CapacityKind::Private: return "cp";
  }
  return "?";
}

inline CapacityKind capacity_from_string(std::string_view s) {
  if (s == "chi") return CapacityKind::Chi;
  if (s == "c") return CapacityKind::Classical;
  if (s == "ea") return CapacityKind::Ea;
  if (s == "q") return CapacityKind::Quantum;
  if (s == "cp") return CapacityKind::Private;
  throw std::invalid_argument("unknown capacity '" + std::string(s) +
                              "' (expected chi|c|ea|q|cp)");
}

/// Output-energy limitation Tr H_B Phi(rho) <= alpha Tr H_A rho + ec.
struct EnergyLimitParams {
  double alpha = 1.0;
  double ec = 0.0;
};

/// Threshold specification: absolute (in the configured log base) or a
/// fraction of the maximal input entropy F(E).
struct Epsilon {
  double value = 0.0;
  bool fraction = false;
  static Epsilon absolute(double v) { return {v, false}; }
  static Epsilon fraction_of_fmax(double v) { return {v, true}; }
};

/// A bound value together with the witnesses of its inner optimization.
struct BoundEvaluation {
  double value = 0.0;
  LogBase base = LogBase::Natural;
  bool feasible = true;
  std::optional<double> t;
  std::optional<double> p;
  std::optional<std::uint64_t> m;
};

struct SearchOptions {
  LogBase base = LogBase::Natural;
  FSource f_source = FSource::Exact;
  std::uint64_t m_cap = 0;  // 0 = auto: 1e18 single-mode, spectrum limit otherwise
  double solver_tol = 1e-12;  // relative tolerance of the inner minimizations

  void validate() const {
    if (!(solver_tol > 0.0)) throw std::invalid_argument("SearchOptions: tolerance must be positive");
  }
};

class search_cap_error : public std::runtime_error {
 public:
  search_cap_error(const std::string& what, BoundEvaluation incumbent)
      : std::runtime_error(what), incumbent(incumbent) {}
  BoundEvaluation incumbent;
};

/// Input energy bound with its grounded form Ebar = E - E0.
struct EnergyBudget {
  double total = 0.0;
  double ground = 0.0;
  double grounded() const { return total - ground; }
};

inline EnergyBudget energy_budget(const SpectrumModel& spec, double E) {
  const double e0 = spec.ground_energy();
  if (E < e0 - 1e-12 * std::max(1.0, std::fabs(e0)))
    throw std::domain_error("energy_budget: E below ground energy");
  return {std::max(E, e0), e0};
}

namespace detail {

// Cached eigenvalue access; multi-mode spectra extend a lazy enumeration.
class EigenvalueAccessor {
 public:
  explicit EigenvalueAccessor(const SpectrumModel& spec) : spec_(spec) {
    if (spec.is_oscillator() && !spec.is_single_mode()) enum_.emplace(spec);
  }
  double operator()(std::uint64_t k) {
    if (!enum_) return spec_.eigenvalue(k);
    while (cache_.size() <= k) cache_.push_back(enum_->next());
    return cache_[static_cast<std::size_t>(k)];
  }

 private:
  const SpectrumModel& spec_;
  std::optional<LevelEnumerator> enum_;
  std::vector<double> cache_;
};

inline double s_of_ratio(double r) { return r + std::sqrt(r); }

// f_{C_chi}(E, m) = 2 sqrt(2s) Fbar(Ebar/s) + g(sqrt(2s)),  s = r + sqrt(r)
inline double loss_chi_nats(double ebar, double ebarm, const EntropyFn& fb) {
  if (ebar <= 0.0) return 0.0;
  const double s = s_of_ratio(ebar / ebarm);
  return 2.0 * std::sqrt(2.0 * s) * fb(ebar / s) + g_func(std::sqrt(2.0 * s));
}

// f_C(E, m) = 4 (Ebar/Ebar_m)^(1/4) Fbar(sqrt(Ebar Ebar_m)/2) + g(2 (Ebar/Ebar_m)^(1/4))
inline double loss_classical_nats(double ebar, double ebarm, const EntropyFn& fb) {
  if (ebar <= 0.0) return 0.0;
  const double q = std::pow(ebar / ebarm, 0.25);
  return 4.0 * q * fb(0.5 * std::sqrt(ebar * ebarm)) + g_func(2.0 * q);
}

// f_{C_ea}(E, m) = 2s Fbar(2 Ebar / s^2) + 2 g(s)
inline double loss_ea_nats(double ebar, double ebarm, const EntropyFn& fb) {
  if (ebar <= 0.0) return 0.0;
  const double s = s_of_ratio(ebar / ebarm);
  return 2.0 * s * fb(2.0 * ebar / (s * s)) + 2.0 * g_func(s);
}

// f_Q = f_C + (32 Ebar / Ebar_m) Fbar(Ebar_m / 16);  f_{C_p} = 2 f_Q
inline double loss_quantum_nats(double ebar, double ebarm, const EntropyFn& fb) {
  if (ebar <= 0.0) return 0.0;
  return loss_classical_nats(ebar, ebarm, fb) +
         (32.0 * ebar / ebarm) * fb(ebarm / 16.0);
}

inline double restriction_loss_nats(CapacityKind kind, double ebar, double ebarm,
                                    const EntropyFn& fb) {
  switch (kind) {
    case CapacityKind::Chi: return loss_chi_nats(ebar, ebarm, fb);
    case CapacityKind::Classical: return loss_classical_nats(ebar, ebarm, fb);
    case CapacityKind::Ea: return loss_ea_nats(ebar, ebarm, fb);
    case CapacityKind::Quantum: return loss_quantum_nats(ebar, ebarm, fb);
    case CapacityKind::Private: return 2.0 * loss_quantum_nats(ebar, ebarm, fb);
  }
  throw std::invalid_argument("restriction_loss: bad capacity kind");
}

// Minimal m in [from, cap] with f(m) <= eps, assuming f is eventually
// nonincreasing in m. Doubling brackets the transition and binary search
// localizes it; a 64-candidate downward scan then validates minimality.
// A candidate below the boundary counts as a violation only when it beats
// eps by more than the evaluation noise (f at huge m is flat to double
// resolution, and the inner minimizers carry ~1e-12 relative noise); on a
// material violation the search falls back to a bounded linear scan from
// `from`.
template <class FNats>
std::optional<std::uint64_t> minimal_m_satisfying(FNats&& f, double eps,
                                                  std::uint64_t from, std::uint64_t cap) {
  auto pred = [&](std::uint64_t m) { return f(m) <= eps; };
  if (from > cap) return std::nullopt;
  if (pred(from)) return from;
  std::uint64_t lo = from;  // pred(lo) is false
  std::uint64_t hi = from;
  bool found = false;
  while (hi < cap) {
    hi = hi > cap / 2 ? cap : hi * 2;
    if (pred(hi)) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found) return std::nullopt;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  // validate: the 64 candidates below the boundary must not materially beat eps
  bool violated = false;
  for (std::uint64_t j = hi; j-- > from && hi - j <= 64;) {
    const double fj = f(j);
    const double noise = 1e-11 * std::max(std::fabs(eps), std::fabs(fj));
    if (fj <= eps - noise) {
      violated = true;
      break;
    }
  }
  if (!violated) return hi;
  constexpr std::uint64_t kScanBudget = 100'000'000;
  const std::uint64_t stop = from + std::min(cap - from, kScanBudget);
  for (std::uint64_t m = from; m <= stop; ++m)
    if (pred(m)) return m;
  throw std::runtime_error("m-search: linear validation scan budget exceeded");
}

inline std::uint64_t auto_cap(const SpectrumModel& spec, std::uint64_t requested) {
  std::uint64_t cap = spec.kind() == SpectrumKind::Explicit
                          ? spec.levels().size() - 1
                          : (spec.is_single_mode() ? 1'000'000'000'000'000'000ull
                                                   : SpectrumModel::kEnumerationCap - 1);
  if (requested != 0) cap = std::min(cap, requested);
  return cap;
}

// Minimal m with Ebar_m >= 16 Ebar (the domain constraint of the
// dimension-sufficiency search).
inline std::optional<std::uint64_t> constraint_floor(EigenvalueAccessor& ev, double e0,
                                                     double ebar, std::uint64_t cap) {
  auto ok = [&](std::uint64_t m) { return ev(m) - e0 >= 16.0 * ebar; };
  if (ebar <= 0.0) return 1;
  std::uint64_t lo = 1, hi = 1;
  if (ok(1)) return 1;
  bool found = false;
  while (hi < cap) {
    hi = hi > cap / 2 ? cap : hi * 2;
    if (ok(hi)) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found) return std::nullopt;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline double epsilon_nats(const Epsilon& eps, const SpectrumModel& spec, double E,
                           LogBase base) {
  if (!(eps.value > 0.0)) throw std::domain_error("epsilon must be positive");
  if (eps.fraction) return eps.value * gibbs_entropy(spec, E).entropy;
  return to_nats(eps.value, base);
}

}  // namespace detail

/// Capacity-loss bound under restriction of channel inputs to the span of
/// the m lowest-energy eigenvectors, uniform over all channels from A.
inline BoundEvaluation restriction_loss_bound(CapacityKind kind, const SpectrumModel& specA,
                                              double E, std::uint64_t m,
                                              const SearchOptions& opts = {}) {
  if (m == 0) throw std::invalid_argument("restriction_loss_bound: m must be positive");
  opts.validate();
  const EnergyBudget budget = energy_budget(specA, E);
  detail::EigenvalueAccessor ev(specA);
  const double ebarm = ev(m) - budget.ground;
  if (!(ebarm > 0.0))
    throw std::domain_error("restriction_loss_bound: degenerate grounded gap (E_m = E_0)");
  const EntropyFn fb = grounded_entropy_bound(specA, opts.f_source);
  const double nats = detail::restriction_loss_nats(kind, budget.grounded(), ebarm, fb);
  BoundEvaluation out;
  out.value = from_nats(nats, opts.base);
  out.base = opts.base;
  out.m = m;
  return out;
}

/// Minimal m such that the restriction loss is at most eps and
/// Ebar_m >= 16 Ebar (the epsilon-sufficient input dimension).
inline BoundEvaluation sufficient_input_dimension(CapacityKind kind,
                                                  const SpectrumModel& specA, double E,
                                                  const Epsilon& eps,
                                                  const SearchOptions& opts = {}) {
  opts.validate();
  const EnergyBudget budget = energy_budget(specA, E);
  const double ebar = budget.grounded();
  const double eps_nats = detail::epsilon_nats(eps, specA, E, opts.base);
  const std::uint64_t cap = detail::auto_cap(specA, opts.m_cap);
  detail::EigenvalueAccessor ev(specA);
  const EntropyFn fb = grounded_entropy_bound(specA, opts.f_source);

  auto f_nats = [&](std::uint64_t m) {
    const double ebarm = ev(m) - budget.ground;
    if (!(ebarm > 0.0)) return std::numeric_limits<double>::infinity();
    return detail::restriction_loss_nats(kind, ebar, ebarm, fb);
  };
  auto make_eval = [&](std::uint64_t m, bool feasible) {
    BoundEvaluation b;
    b.value = from_nats(f_nats(m), opts.base);
    b.base = opts.base;
    b.m = m;
    b.feasible = feasible;
    return b;
  };

  const auto floor = detail::constraint_floor(ev, budget.ground, ebar, cap);
  if (!floor)
    throw search_cap_error("sufficient_input_dimension: Ebar_m >= 16 Ebar has no solution "
                           "within the search cap",
                           make_eval(cap, false));
  const auto m_star = detail::minimal_m_satisfying(f_nats, eps_nats, *floor, cap);
  if (!m_star)
    throw search_cap_error("sufficient_input_dimension: no feasible m within the search cap",
                           make_eval(cap, false));
  return make_eval(*m_star, true);
}

/// Energy-limited loss bound at explicit inner witnesses (t, and p for the
/// quantum capacity). E is the input energy bound; fB must be an upper bound
/// of the output max-entropy function on [0, +inf). Value in nats.
inline double energy_limited_loss_at(CapacityKind kind, double ebar, double ebarm,
                                     const EntropyFn& fB, const EnergyLimitParams& params,
                                     double E, double t, double p = 0.0) {
  if (!(t > 0.0 && t <= 0.5))
    throw std::domain_error("energy_limited_loss_at: t outside (0, 1/2]");
  const double r0 = ebar / ebarm + std::sqrt(ebar / ebarm);
  const double s = (r0 + 0.5 * t) / (1.0 - t);
  switch (kind) {
    case CapacityKind::Chi:
      return (2.0 * t + s) * fB((params.alpha * E + params.ec) / t) + 2.0 * g_func(s) +
             2.0 * binary_entropy(t);
    case CapacityKind::Classical:
    case CapacityKind::Ea:
      return (4.0 * t + 2.0 * s) * fB((params.alpha * E + params.ec) / t) +
             2.0 * g_func(s) + 4.0 * binary_entropy(t);
    case CapacityKind::Quantum: {
      if (!(p > 1.0)) throw std::domain_error("energy_limited_loss_at: p must exceed 1");
      const double ep = params.alpha * p * E + params.ec;
      return (4.0 * t + 2.0 * s) * fB(ep / t) + 2.0 * g_func(s) +
             4.0 * binary_entropy(t) + (2.0 / p) * fB(ep);
    }
    case CapacityKind::Private:
      throw std::invalid_argument("energy-limited bounds are not defined for cp");
  }
  throw std::invalid_argument("energy_limited_loss_at: bad capacity kind");
}

namespace detail {

struct ElMinimum {
  double value;
  double t;
  double p;  // 0 when not applicable
};

inline ElMinimum energy_limited_min_nats(CapacityKind kind, double ebar, double ebarm,
                                         const EntropyFn& fB,
                                         const EnergyLimitParams& params, double E,
                                         double tol = 1e-12) {
  constexpr double t_lo = 1e-9;
  if (kind != CapacityKind::Quantum) {
    auto obj = [&](double t) {
      return energy_limited_loss_at(kind, ebar, ebarm, fB, params, E, t);
    };
    const ScalarMinimum m = log_grid_minimize(obj, t_lo, 0.5, 64, tol);
    return {m.value, m.x, 0.0};
  }
  double best_t = 0.25;
  auto inner = [&](double p) {
    auto obj = [&](double t) {
      return energy_limited_loss_at(kind, ebar, ebarm, fB, params, E, t, p);
    };
    const ScalarMinimum m = log_grid_minimize(obj, t_lo, 0.5, 64, tol);
    best_t = m.x;
    return m.value;
  };
  auto outer = [&](double logp) { return inner(std::exp(logp)); };
  const ScalarMinimum m =
      log_grid_minimize(outer, std::log(1.0 + 1e-9), std::log(1e6), 64, tol);
  const double p_star = std::exp(m.x);
  const double value = inner(p_star);  // refresh best_t for the winning p
  return {value, best_t, p_star};
}

}  // namespace detail

/// Energy-limited loss bound, minimized over the admissible inner witnesses:
/// t in (0, 1/2] (golden-section over a log-grid seed) and, for the quantum
/// capacity, p > 1 (outer golden-section on log p).
inline BoundEvaluation energy_limited_loss_bound(CapacityKind kind, const SpectrumModel& specA,
                                                 const EntropyFn& fB,
                                                 const EnergyLimitParams& params, double E,
                                                 std::uint64_t m,
                                                 const SearchOptions& opts = {}) {
  if (kind == CapacityKind::Private)
    throw std::invalid_argument("energy-limited bounds are not defined for cp");
  if (!(params.alpha > 0.0))
    throw std::domain_error("energy_limited_loss_bound: alpha must be positive");
  if (params.ec < 0.0)
    throw std::domain_error("energy_limited_loss_bound: ec must be nonnegative");
  if (m == 0) throw std::invalid_argument("energy_limited_loss_bound: m must be positive");
  opts.validate();
  const EnergyBudget budget = energy_budget(specA, E);
  detail::EigenvalueAccessor ev(specA);
  const double ebarm = ev(m) - budget.ground;
  if (!(ebarm > 0.0))
    throw std::domain_error("energy_limited_loss_bound: degenerate grounded gap");
  const detail::ElMinimum best =
      detail::energy_limited_min_nats(kind, budget.grounded(), ebarm, fB, params, E,
                                      opts.solver_tol);
  BoundEvaluation out;
  out.value = from_nats(best.value, opts.base);
  out.base = opts.base;
  out.m = m;
  out.t = best.t;
  if (kind == CapacityKind::Quantum) out.p = best.p;
  return out;
}

/// Minimal m for which the (t,p)-minimized energy-limited bound drops to eps.
inline BoundEvaluation energy_limited_sufficient_dimension(
    CapacityKind kind, const SpectrumModel& specA, const EntropyFn& fB,
    const EnergyLimitParams& params, double E, const Epsilon& eps,
    const SearchOptions& opts = {}) {
  if (kind == CapacityKind::Private)
    throw std::invalid_argument("energy-limited bounds are not defined for cp");
  if (!(params.alpha > 0.0))
    throw std::domain_error("energy_limited_sufficient_dimension: alpha must be positive");
  opts.validate();
  const EnergyBudget budget = energy_budget(specA, E);
  const double ebar = budget.grounded();
  const double eps_nats = detail::epsilon_nats(eps, specA, E, opts.base);
  const std::uint64_t cap = detail::auto_cap(specA, opts.m_cap);
  detail::EigenvalueAccessor ev(specA);

  auto minimized = [&](std::uint64_t m) -> detail::ElMinimum {
    const double ebarm = ev(m) - budget.ground;
    if (!(ebarm > 0.0)) return {std::numeric_limits<double>::infinity(), 0.25, 0.0};
    return detail::energy_limited_min_nats(kind, ebar, ebarm, fB, params, E, opts.solver_tol);
  };
  auto minimized_value = [&](std::uint64_t m) { return minimized(m).value; };
  auto make_eval = [&](std::uint64_t m, bool feasible) {
    const detail::ElMinimum b = minimized(m);
    BoundEvaluation out;
    out.value = from_nats(b.value, opts.base);
    out.base = opts.base;
    out.m = m;
    out.t = b.t;
    if (kind == CapacityKind::Quantum) out.p = b.p;
    out.feasible = feasible;
    return out;
  };

  const auto m_star = detail::minimal_m_satisfying(minimized_value, eps_nats, 1, cap);
  if (!m_star)
    throw search_cap_error("energy_limited_sufficient_dimension: no feasible m within "
                           "the search cap",
                           make_eval(cap, false));
  return make_eval(*m_star, true);
}

}  // namespace ecdim
