#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <ecdim/dimension_bounds.hpp>

namespace ecdim {

/// Variants of the energy-constrained QCMI continuity bound. The equal-BC
/// variant applies when the two states share the BC marginal; the pure
/// variants substitute eps -> eps^2/2 before evaluation.
enum class QcmiBoundVariant { General, EqualMarginalBC, Pure, PureEqualMarginalBC };

/// Continuity bound for the conditional mutual information between two
/// states at trace distance eps whose AD marginals have energy at most E
/// under a positive operator with grounded max-entropy function f_star:
///   2 sqrt(2e) F(E/e) + c g(sqrt(2e)),
/// with e the (possibly substituted) eps and c = 2 (1 for equal marginals).
inline double qcmi_continuity_bound(double eps, double E, const EntropyFn& f_star,
                                    QcmiBoundVariant variant = QcmiBoundVariant::General,
                                    LogBase base = LogBase::Natural) {
  if (eps < 0.0) throw std::domain_error("qcmi_continuity_bound: negative eps");
  if (E < 0.0) throw std::domain_error("qcmi_continuity_bound: negative energy");
  if (eps == 0.0) return 0.0;
  const bool pure = variant == QcmiBoundVariant::Pure ||
                    variant == QcmiBoundVariant::PureEqualMarginalBC;
  const bool equal_bc = variant == QcmiBoundVariant::EqualMarginalBC ||
                        variant == QcmiBoundVariant::PureEqualMarginalBC;
  const double e = pure ? 0.5 * eps * eps : eps;
  if (!(e < 0.5))
    throw std::domain_error("qcmi_continuity_bound: eps out of range after substitution");
  const double root = std::sqrt(2.0 * e);
  const double nats =
      2.0 * root * f_star(E / e) + (equal_bc ? 1.0 : 2.0) * g_func(root);
  return from_nats(nats, base);
}

/// Variants of the mutual-information truncation bound f(E, m). General is
/// the n-copy bound; PerCopyEnergy drops the tail term (requires
/// Ebar < Ebar_m / 16); SingleCopy is the sharper n = 1 bound (requires
/// s = Ebar/Ebar_m + sqrt(Ebar/Ebar_m) < 1/2).
enum class TruncationBoundVariant { General, PerCopyEnergy, SingleCopy };

inline double truncation_mi_bound(const SpectrumModel& specA, double E, std::uint64_t m,
                                  TruncationBoundVariant variant,
                                  const SearchOptions& opts = {}) {
  if (m == 0) throw std::invalid_argument("truncation_mi_bound: m must be positive");
  const EnergyBudget budget = energy_budget(specA, E);
  const double ebar = budget.grounded();
  const double ebarm = specA.eigenvalue(m) - budget.ground;
  if (!(ebarm > 0.0)) throw std::domain_error("truncation_mi_bound: degenerate grounded gap");
  const EntropyFn fb = grounded_entropy_bound(specA, opts.f_source);
  double nats = 0.0;
  switch (variant) {
    case TruncationBoundVariant::General:
      nats = detail::loss_quantum_nats(ebar, ebarm, fb);
      break;
    case TruncationBoundVariant::PerCopyEnergy:
      if (!(ebar < ebarm / 16.0))
        throw std::domain_error("truncation_mi_bound: PerCopyEnergy requires Ebar < Ebar_m/16");
      nats = detail::loss_classical_nats(ebar, ebarm, fb);
      break;
    case TruncationBoundVariant::SingleCopy: {
      if (ebar > 0.0 && !(detail::s_of_ratio(ebar / ebarm) < 0.5))
        throw std::domain_error("truncation_mi_bound: SingleCopy requires s < 1/2");
      nats = detail::loss_chi_nats(ebar, ebarm, fb);
      break;
    }
  }
  return from_nats(nats, opts.base);
}

/// Per-copy QCMI continuity bound between the outputs of two energy-limited
/// channels at energy-constrained-diamond-norm distance 2*eps:
///   (4t + 2r) Fhat(Ep/t) + 2 g(r) + 4 h2(t) + (2/p) Fhat(Ep),
/// with Ep = alpha p E + ec and r = (eps + t/2)/(1 - t). The per-copy flag
/// fixes p = 1 and drops the last term (valid when every single-copy input
/// marginal satisfies the energy bound). Zero eps does not short-circuit:
/// the bound stays positive at fixed t.
inline double energy_limited_qcmi_bound(double eps, double E,
                                        const EnergyLimitParams& params,
                                        const EntropyFn& fB, double p, double t,
                                        bool per_copy = false,
                                        LogBase base = LogBase::Natural) {
  if (eps < 0.0) throw std::domain_error("energy_limited_qcmi_bound: negative eps");
  if (!(t > 0.0 && t <= 0.5))
    throw std::domain_error("energy_limited_qcmi_bound: t outside (0, 1/2]");
  if (per_copy)
    p = 1.0;
  else if (!(p > 1.0))
    throw std::domain_error("energy_limited_qcmi_bound: p must exceed 1");
  const double ep = params.alpha * p * E + params.ec;
  const double r = (eps + 0.5 * t) / (1.0 - t);
  double nats = (4.0 * t + 2.0 * r) * fB(ep / t) + 2.0 * g_func(r) +
                4.0 * binary_entropy(t);
  if (!per_copy) nats += (2.0 / p) * fB(ep);
  return from_nats(nats, base);
}

namespace detail {

struct ContinuityCoeffs {
  double c1;
  double c2;
};

inline ContinuityCoeffs continuity_coeffs(CapacityKind kind) {
  switch (kind) {
    case CapacityKind::Chi: return {1.0, 2.0};
    case CapacityKind::Classical:
    case CapacityKind::Quantum: return {2.0, 2.0};
    case CapacityKind::Private: return {4.0, 4.0};
    case CapacityKind::Ea:
      throw std::invalid_argument("capacity continuity bound: ea is out of scope here");
  }
  throw std::invalid_argument("capacity continuity bound: bad kind");
}

}  // namespace detail

/// Continuity bound v(eps, E) for a capacity as a function of the channel:
/// if two channels are eps-close in the energy-constrained diamond norm
/// (halved), their capacities differ by at most
///   min over m with Ebar_m >= 16 Ebar of
///     c1 sqrt(k(m) eps) log(2m) + c2 g(sqrt(k(m) eps)) + 2 f_kind(E, m),
/// k(m) = 2 Ebar_m / Ebar. The minimum over the unbounded index set is
/// localized by doubling until the objective has risen past the incumbent
/// for 8 consecutive doublings, then refined by integer ternary search and
/// a local scan; the result is locally minimal on the integer grid.
inline BoundEvaluation capacity_continuity_bound(CapacityKind kind,
                                                 const SpectrumModel& specA, double E,
                                                 double eps,
                                                 const SearchOptions& opts = {}) {
  const auto coeffs = detail::continuity_coeffs(kind);
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::domain_error("capacity_continuity_bound: eps outside (0, 1]");
  const EnergyBudget budget = energy_budget(specA, E);
  const double ebar = budget.grounded();
  if (!(ebar > 0.0)) throw std::domain_error("capacity_continuity_bound: E must exceed E0");

  detail::EigenvalueAccessor ev(specA);
  const EntropyFn fb = grounded_entropy_bound(specA, opts.f_source);
  const std::uint64_t cap = detail::auto_cap(specA, opts.m_cap);

  auto objective = [&](std::uint64_t m) {
    const double ebarm = ev(m) - budget.ground;
    const double k = 2.0 * ebarm / ebar;
    const double root = std::sqrt(k * eps);
    return coeffs.c1 * root * std::log(2.0 * static_cast<double>(m)) +
           coeffs.c2 * g_func(root) +
           2.0 * detail::restriction_loss_nats(kind, ebar, ebarm, fb);
  };

  const auto floor = detail::constraint_floor(ev, budget.ground, ebar, cap);
  if (!floor) {
    BoundEvaluation inc;
    inc.base = opts.base;
    inc.feasible = false;
    throw search_cap_error("capacity_continuity_bound: Ebar_m >= 16 Ebar has no solution "
                           "within the search cap",
                           inc);
  }

  // doubling scan for the incumbent: stop once the objective has stayed
  // above the incumbent for 8 consecutive doublings
  std::vector<std::uint64_t> grid{*floor};
  std::vector<double> vals{objective(*floor)};
  std::size_t best_i = 0;
  int rising = 0;
  while (grid.back() < cap && rising < 8) {
    const std::uint64_t next = grid.back() > cap / 2 ? cap : grid.back() * 2;
    grid.push_back(next);
    vals.push_back(objective(next));
    if (vals.back() < vals[best_i]) {
      best_i = vals.size() - 1;
      rising = 0;
    } else {
      ++rising;
    }
  }
  std::uint64_t best_m = grid[best_i];
  double best_v = vals[best_i];

  // integer ternary refinement between the doubling neighbours of the incumbent
  std::uint64_t lo = best_i > 0 ? grid[best_i - 1] : *floor;
  std::uint64_t hi = best_i + 1 < grid.size() ? grid[best_i + 1] : grid.back();
  while (hi - lo > 48) {
    const std::uint64_t m1 = lo + (hi - lo) / 3;
    const std::uint64_t m2 = hi - (hi - lo) / 3;
    if (objective(m1) < objective(m2))
      hi = m2;
    else
      lo = m1;
  }
  for (std::uint64_t j = lo; j <= hi; ++j) {
    const double v = objective(j);
    if (v < best_v) {
      best_v = v;
      best_m = j;
    }
  }
  // slide to a local minimum on the integer grid
  while (best_m > *floor && objective(best_m - 1) < best_v) {
    --best_m;
    best_v = objective(best_m);
  }
  while (best_m < cap && objective(best_m + 1) < best_v) {
    ++best_m;
    best_v = objective(best_m);
  }

  BoundEvaluation out;
  out.value = from_nats(best_v, opts.base);
  out.base = opts.base;
  out.m = best_m;
  return out;
}

}  // namespace ecdim
