#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include <ecdim/continuity_bounds.hpp>
#include <ecdim/max_entropy.hpp>
#include <ecdim/parallel.hpp>
#include <ecdim/quantum/entropy.hpp>
#include <ecdim/quantum/random.hpp>
#include <ecdim/spectrum.hpp>

namespace ecdim::quantum {

/// Outcome of one randomized verification suite. An assertion lhs <= rhs is
/// recorded as a violation when lhs exceeds rhs by more than the documented
/// numerical slack; `max_margin_used` is the largest lhs - rhs observed
/// (negative values mean the inequality held with room to spare).
struct CheckReport {
  std::string check;
  std::uint64_t trials = 0;
  std::vector<int> dims;
  std::uint64_t seed = 0;
  std::uint64_t skipped = 0;
  std::string note;

  struct Violation {
    std::uint64_t trial = 0;
    std::string what;
    double lhs = 0.0;
    double rhs = 0.0;
    double excess = 0.0;
  };
  std::vector<Violation> violations;
  double max_margin_used = -std::numeric_limits<double>::infinity();

  bool pass() const { return violations.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json jv = nlohmann::json::array();
    for (const Violation& v : violations)
      jv.push_back({{"trial", v.trial},
                    {"what", v.what},
                    {"lhs", v.lhs},
                    {"rhs", v.rhs},
                    {"excess", v.excess}});
    nlohmann::json j{{"check", check},       {"trials", trials},
                     {"dims", dims},         {"seed", seed},
                     {"skipped", skipped},   {"violations", jv},
                     {"max_margin_used", max_margin_used},
                     {"pass", pass()}};
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

namespace detail {

struct TrialLog {
  bool skipped = false;
  double margin = -std::numeric_limits<double>::infinity();
  std::vector<CheckReport::Violation> violations;

  void expect(std::uint64_t trial, const char* what, double lhs, double rhs,
              double slack) {
    const double used = lhs - rhs;
    if (used > margin) margin = used;
    if (used > slack) violations.push_back({trial, what, lhs, rhs, used - slack});
  }
};

template <class TrialFn>
CheckReport run_trials(std::string name, std::vector<int> dims, std::uint64_t trials,
                       std::uint64_t seed, TrialFn&& fn) {
  std::vector<TrialLog> logs(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::uint64_t i) {
    RngStream rng(seed, i);
    fn(i, rng, logs[static_cast<std::size_t>(i)]);
  });
  CheckReport rep;
  rep.check = std::move(name);
  rep.dims = std::move(dims);
  rep.trials = trials;
  rep.seed = seed;
  for (const TrialLog& log : logs) {
    if (log.skipped) ++rep.skipped;
    if (log.margin > rep.max_margin_used) rep.max_margin_used = log.margin;
    rep.violations.insert(rep.violations.end(), log.violations.begin(),
                          log.violations.end());
  }
  return rep;
}

inline double diag_energy(const std::vector<double>& levels, const Matrix& rho) {
  double e = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k)
    e += levels[k] * rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
  return e;
}

}  // namespace detail

/// ||(I-P) rho P||_1 <= sqrt(Tr (I-P) rho) for random states and projectors.
inline CheckReport check_gentle(std::uint64_t trials, std::uint64_t seed,
                                int max_dim = 6) {
  return detail::run_trials("gentle", {max_dim}, trials, seed,
                            [=](std::uint64_t i, RngStream& rng, detail::TrialLog& log) {
    const int d = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_dim - 1)));
    const int rank = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d)));
    const Matrix rho = random_state(d, rng, rank);
    const int pr = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d + 1)));
    const Matrix p = random_projector(d, pr, rng);
    const Matrix q = Matrix::Identity(d, d) - p;
    const double lhs = trace_norm(q * rho * p);
    const double rhs = std::sqrt(std::max(0.0, (q * rho).trace().real()));
    log.expect(i, "gentle", lhs, rhs, 1e-9);
  });
}

/// ||omega - Pi (x) id(omega)||_1 <= 2 Tr (I-P) omega_A + 2 sqrt(Tr (I-P) omega_A)
/// for the projective pinching channel Pi(rho) = P rho P + Tr((I-P) rho) tau.
inline CheckReport check_pinching(std::uint64_t trials, std::uint64_t seed, int dim_a = 4,
                                  int dim_b = 4) {
  return detail::run_trials("pinching", {dim_a, dim_b}, trials, seed,
                            [=](std::uint64_t i, RngStream& rng, detail::TrialLog& log) {
    const int da = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(dim_a - 1)));
    const int db = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(dim_b - 1)));
    const Matrix omega = random_state(da * db, rng);
    const int pr = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(da + 1)));
    const Matrix p = random_projector(da, pr, rng);
    const Matrix tau = random_state(da, rng);
    const Matrix q = Matrix::Identity(da, da) - p;
    const Matrix p_lift = kron(p, Matrix::Identity(db, db));
    const Matrix q_lift = kron(q, Matrix::Identity(db, db));
    const Matrix dumped = partial_trace(q_lift * omega, {da, db}, {1});
    const Matrix pinched = p_lift * omega * p_lift + kron(tau, dumped);
    const double w = std::max(0.0, (q_lift * omega).trace().real());
    const double lhs = trace_norm_hermitian(omega - pinched);
    const double rhs = 2.0 * w + 2.0 * std::sqrt(w);
    log.expect(i, "pinching", lhs, rhs, 1e-9);
  });
}

/// Tr (I - P_m) rho <= (Tr H rho - E0) / (E_m - E0) for explicit spectra.
inline CheckReport check_tail_bound(std::uint64_t trials, std::uint64_t seed,
                                    int max_dim = 12) {
  return detail::run_trials("tail", {max_dim}, trials, seed,
                            [=](std::uint64_t i, RngStream& rng, detail::TrialLog& log) {
    const int d = 3 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_dim - 2)));
    std::vector<double> levels(static_cast<std::size_t>(d));
    for (double& e : levels) e = rng.uniform(0.0, 10.0);
    std::sort(levels.begin(), levels.end());
    const int m = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d - 1)));
    if (!(levels[static_cast<std::size_t>(m)] > levels[0])) {
      log.skipped = true;  // degenerate grounded gap (measure zero)
      return;
    }
    const Matrix rho = random_state(d, rng);
    const double e_mean = detail::diag_energy(levels, rho);
    double tail = 0.0;
    for (int k = m; k < d; ++k) tail += rho(k, k).real();
    const double rhs = (e_mean - levels[0]) /
                       (levels[static_cast<std::size_t>(m)] - levels[0]);
    log.expect(i, "tail", tail, rhs, 1e-12);
  });
}

/// Entropy and (conditional) mutual-information inequalities on random
/// tripartite states: I(A:B) <= 2 min(H(A), H(B)); mixing bounds with h2(p)
/// for the entropy, the QCMI and the conditional entropy; concavity lower
/// bounds for the entropy and the conditional entropy.
inline CheckReport check_misc_inequalities(std::uint64_t trials, std::uint64_t seed,
                                           int max_factor = 3) {
  return detail::run_trials("misc", {max_factor, max_factor, max_factor}, trials, seed,
                            [=](std::uint64_t i, RngStream& rng, detail::TrialLog& log) {
    std::vector<int> dims(3);
    for (int& d : dims)
      d = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_factor - 1)));
    const int dtot = total_dim(dims);
    const Matrix rho = random_state(dtot, rng);
    const Matrix sigma = random_state(dtot, rng);
    const double p = rng.uniform(0.01, 0.99);
    const Matrix mix = p * rho + (1.0 - p) * sigma;
    const double h2p = binary_entropy(p);

    const Matrix rho_ab = partial_trace(rho, dims, {0, 1});
    const std::vector<int> dims_ab{dims[0], dims[1]};
    const double mi = mutual_information(rho_ab, dims_ab);
    const double ha = von_neumann_entropy(partial_trace(rho_ab, dims_ab, {0}));
    const double hb = von_neumann_entropy(partial_trace(rho_ab, dims_ab, {1}));
    log.expect(i, "mi-upper-bound", mi, 2.0 * std::min(ha, hb), 1e-9);

    const double h_mix = von_neumann_entropy(mix);
    const double h_avg = p * von_neumann_entropy(rho) + (1.0 - p) * von_neumann_entropy(sigma);
    log.expect(i, "entropy-mixing-upper", h_mix, h_avg + h2p, 1e-9);
    log.expect(i, "entropy-concavity", h_avg, h_mix, 1e-9);

    const double q_rho = qcmi(rho, dims, {0}, {1}, {2});
    const double q_sigma = qcmi(sigma, dims, {0}, {1}, {2});
    const double q_mix = qcmi(mix, dims, {0}, {1}, {2});
    log.expect(i, "qcmi-almost-affine",
               std::fabs(p * q_rho + (1.0 - p) * q_sigma - q_mix), h2p, 1e-9);

    const Matrix sigma_ab = partial_trace(sigma, dims, {0, 1});
    const Matrix mix_ab = partial_trace(mix, dims, {0, 1});
    const double ce_rho = conditional_entropy(rho_ab, dims_ab);
    const double ce_sigma = conditional_entropy(sigma_ab, dims_ab);
    const double ce_mix = conditional_entropy(mix_ab, dims_ab);
    const double ce_avg = p * ce_rho + (1.0 - p) * ce_sigma;
    log.expect(i, "cond-entropy-mixing-upper", ce_mix, ce_avg + h2p, 1e-9);
    log.expect(i, "cond-entropy-concavity", ce_avg, ce_mix, 1e-9);
  });
}

/// Continuity bound for the QCMI under an energy constraint on the AD
/// marginal, exercised on random four-factor states: the general bound, the
/// equal-BC-marginal refinement and the pure-state substitution.
inline CheckReport check_qcmi_continuity(std::uint64_t trials, std::uint64_t seed) {
  CheckReport rep = detail::run_trials("qcmi", {3, 3, 3, 3}, trials, seed,
                            [](std::uint64_t i, RngStream& rng, detail::TrialLog& log) {
    std::vector<int> dims(4);
    for (int& d : dims) d = 2 + static_cast<int>(rng.uniform_index(2));
    const int dtot = total_dim(dims);
    const int d_ad = dims[0] * dims[3];

    std::vector<double> levels(static_cast<std::size_t>(d_ad));
    for (double& e : levels) e = rng.uniform(0.0, 3.0);
    std::sort(levels.begin(), levels.end());
    const SpectrumModel h_star = SpectrumModel::explicit_levels(levels);

    auto ad_energy = [&](const Matrix& state) {
      return detail::diag_energy(levels, partial_trace(state, dims, {0, 3}));
    };
    auto bound = [&](double eps, double energy, double g_coeff) {
      const double f = gibbs_entropy(h_star, energy / eps).entropy;
      const double root = std::sqrt(2.0 * eps);
      return 2.0 * root * f + g_coeff * g_func(root);
    };
    auto delta_qcmi = [&](const Matrix& a, const Matrix& b) {
      return std::fabs(qcmi(a, dims, {0}, {1}, {2}) - qcmi(b, dims, {0}, {1}, {2}));
    };

    // general pair at a prescribed trace distance
    {
      const StatePair pr = pair_at_trace_distance(dtot, rng.uniform(0.02, 0.45), rng);
      if (pr.eps <= 1e-12 || pr.eps >= 0.5) {
        log.skipped = true;
      } else {
        const double energy = std::max(ad_energy(pr.rho), ad_energy(pr.sigma));
        log.expect(i, "qcmi-general", delta_qcmi(pr.rho, pr.sigma),
                   bound(pr.eps, energy, 2.0), 1e-6);
      }
    }

    // equal BC marginal: mix toward tau_AD (x) rho_BC
    {
      const Matrix rho = random_state(dtot, rng);
      const Matrix tau_ad = random_state(d_ad, rng);
      const Matrix rho_bc = partial_trace(rho, dims, {1, 2});
      const Matrix other = grouped_product(tau_ad, {0, 3}, rho_bc, {1, 2}, dims);
      const double full = trace_distance(rho, other);
      const double target = rng.uniform(0.02, 0.45);
      const double x = full > target ? target / full : 1.0;
      const Matrix sigma = (1.0 - x) * rho + x * other;
      const double eps = x * full;
      if (eps > 1e-12 && eps < 0.5) {
        // the construction must hit the marginal exactly
        const Matrix sigma_bc = partial_trace(sigma, dims, {1, 2});
        log.expect(i, "equal-bc-construction",
                   (sigma_bc - rho_bc).cwiseAbs().maxCoeff(), 0.0, 1e-12);
        const double energy = std::max(ad_energy(rho), ad_energy(sigma));
        log.expect(i, "qcmi-equal-bc", delta_qcmi(rho, sigma),
                   bound(eps, energy, 1.0), 1e-6);
      }
    }

    // pure states: eps -> eps^2/2
    {
      const Vector psi = random_pure(dtot, rng);
      const Vector phi1 = random_pure(dtot, rng);
      auto dist = [&](double x) {
        Vector v = (1.0 - x) * psi + x * phi1;
        v.normalize();
        const double ov = std::norm(psi.dot(v));
        return std::sqrt(std::max(0.0, 1.0 - ov));
      };
      const double target = rng.uniform(0.1, 0.9);
      double x_hi = 1.0;
      if (dist(1.0) > target) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (dist(mid) < target ? lo : hi) = mid;
        }
        x_hi = hi;
      }
      Vector phi = (1.0 - x_hi) * psi + x_hi * phi1;
      phi.normalize();
      const Matrix rho = psi * psi.adjoint();
      const Matrix sigma = phi * phi.adjoint();
      const double eps = trace_distance(rho, sigma);
      const double sub = 0.5 * eps * eps;
      if (eps > 1e-12 && sub < 0.5) {
        const double energy = std::max(ad_energy(rho), ad_energy(sigma));
        log.expect(i, "qcmi-pure", delta_qcmi(rho, sigma), bound(sub, energy, 2.0),
                   1e-6);
      }
    }
  });
  rep.note = "the energy operator acts on the full AD factor, a strictly larger "
             "subspace than the supports require";
  return rep;
}

/// Holevo-quantity stability under the low-energy truncation channel:
/// |chi(Phi(rho_i)) - chi(Phi(Pi_m(rho_i)))| <= f_chi(E, m) for random
/// channels and ensembles of average energy E, whenever s < 1/2.
inline CheckReport check_chi_truncation(std::uint64_t trials, std::uint64_t seed,
                                        int d_a = 8, int d_b = 4, int m = 6) {
  return detail::run_trials("chi-trunc", {d_a, d_b, m}, trials, seed,
                            [=](std::uint64_t i, RngStream& rng, detail::TrialLog& log) {
    std::vector<double> levels(static_cast<std::size_t>(d_a));
    for (int k = 0; k < d_a; ++k) levels[static_cast<std::size_t>(k)] = k;
    const SpectrumModel spec = SpectrumModel::explicit_levels(levels);

    const int d_e = std::max(2, (d_a + d_b - 1) / d_b);
    const ChannelRep channel = random_channel(d_a, d_b, d_e, rng);

    const int n_states = 4;
    Ensemble ens;
    ens.probs.resize(n_states);
    double psum = 0.0;
    for (double& p : ens.probs) {
      p = rng.uniform(0.05, 1.0);
      psum += p;
    }
    for (double& p : ens.probs) p /= psum;
    for (int k = 0; k < n_states; ++k) ens.states.push_back(random_state(d_a, rng));

    // steer the average energy to a level where the single-copy bound applies
    const double e_target = rng.uniform(0.1, 0.75);
    double e_avg = 0.0;
    for (int k = 0; k < n_states; ++k)
      e_avg += ens.probs[static_cast<std::size_t>(k)] *
               detail::diag_energy(levels, ens.states[static_cast<std::size_t>(k)]);
    if (e_avg > e_target) {
      const double c = 1.0 - e_target / e_avg;
      Matrix ground = Matrix::Zero(d_a, d_a);
      ground(0, 0) = 1.0;
      for (Matrix& s : ens.states) s = (1.0 - c) * s + c * ground;
      e_avg = e_target;
    }

    const double ebar = e_avg - levels[0];
    const double ebarm = levels[static_cast<std::size_t>(m)] - levels[0];
    const double s = ebar / ebarm + std::sqrt(ebar / ebarm);
    if (!(s < 0.5)) {
      log.skipped = true;
      return;
    }

    Ensemble out_full, out_trunc;
    out_full.probs = out_trunc.probs = ens.probs;
    for (const Matrix& state : ens.states) {
      out_full.states.push_back(channel.apply(state));
      out_trunc.states.push_back(channel.apply(truncate_to_lowest(state, m)));
    }
    const double lhs = std::fabs(holevo_quantity(out_full) - holevo_quantity(out_trunc));
    const double rhs = truncation_mi_bound(spec, e_avg, static_cast<std::uint64_t>(m),
                                           TruncationBoundVariant::SingleCopy);
    log.expect(i, "chi-trunc", lhs, rhs, 1e-6);
  });
}

}  // namespace ecdim::quantum
