#pragma once

#include <Eigen/Dense>

#include <algorithm>

#include <ecdim/entropy_functions.hpp>
#include <ecdim/quantum/states.hpp>

namespace ecdim::quantum {

/// Von Neumann entropy H(rho) = sum eta(lambda_i) over the eigenvalues;
/// eigenvalues below 1e-14 are clamped to zero.
inline double von_neumann_entropy(const Matrix& rho, LogBase base = LogBase::Natural) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("von_neumann_entropy: eigendecomposition failed");
  double nats = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 1e-14) nats -= lam * std::log(lam);
  }
  return from_nats(nats, base);
}

/// I(A:B) = H(A) + H(B) - H(AB) of a bipartite state.
inline double mutual_information(const Matrix& rho_ab, const std::vector<int>& dims,
                                 LogBase base = LogBase::Natural) {
  if (dims.size() != 2) throw std::invalid_argument("mutual_information: need two factors");
  const double ha = von_neumann_entropy(partial_trace(rho_ab, dims, {0}));
  const double hb = von_neumann_entropy(partial_trace(rho_ab, dims, {1}));
  const double hab = von_neumann_entropy(rho_ab);
  return from_nats(ha + hb - hab, base);
}

/// Conditional mutual information I(A:B|C) = H(AC) + H(BC) - H(ABC) - H(C)
/// for a state on the factors listed in `dims`. The groups name factor
/// indices; factors outside all groups are traced out first.
inline double qcmi(const Matrix& rho, const std::vector<int>& dims,
                   const std::vector<int>& group_a, const std::vector<int>& group_b,
                   const std::vector<int>& group_c, LogBase base = LogBase::Natural) {
  auto join = [](std::vector<int> u, const std::vector<int>& v) {
    u.insert(u.end(), v.begin(), v.end());
    std::sort(u.begin(), u.end());
    return u;
  };
  const auto ac = join(group_a, group_c);
  const auto bc = join(group_b, group_c);
  const auto abc = join(join(group_a, group_b), group_c);
  const double h_ac = von_neumann_entropy(partial_trace(rho, dims, ac));
  const double h_bc = von_neumann_entropy(partial_trace(rho, dims, bc));
  const double h_abc = von_neumann_entropy(partial_trace(rho, dims, abc));
  const double h_c = group_c.empty()
                         ? 0.0
                         : von_neumann_entropy(partial_trace(rho, dims, group_c));
  return from_nats(h_ac + h_bc - h_abc - h_c, base);
}

/// Conditional entropy H(A|B) = H(AB) - H(B) of a bipartite state.
inline double conditional_entropy(const Matrix& rho_ab, const std::vector<int>& dims,
                                  LogBase base = LogBase::Natural) {
  if (dims.size() != 2) throw std::invalid_argument("conditional_entropy: need two factors");
  const double hab = von_neumann_entropy(rho_ab);
  const double hb = von_neumann_entropy(partial_trace(rho_ab, dims, {1}));
  return from_nats(hab - hb, base);
}

/// Holevo quantity chi = H(avg) - sum p_i H(rho_i).
inline double holevo_quantity(const Ensemble& ens, LogBase base = LogBase::Natural) {
  ens.validate();
  double nats = von_neumann_entropy(ens.average());
  for (std::size_t i = 0; i < ens.probs.size(); ++i)
    nats -= ens.probs[i] * von_neumann_entropy(ens.states[i]);
  return from_nats(nats, base);
}

/// Classical-quantum state sum_i p_i rho_i (x) |i><i| whose mutual
/// information equals the Holevo quantity of the ensemble.
inline Matrix cq_state(const Ensemble& ens) {
  ens.validate();
  const int d = static_cast<int>(ens.states.front().rows());
  const int n = static_cast<int>(ens.probs.size());
  Matrix out = Matrix::Zero(d * n, d * n);
  for (int i = 0; i < n; ++i) {
    Matrix flag = Matrix::Zero(n, n);
    flag(i, i) = 1.0;
    out += ens.probs[static_cast<std::size_t>(i)] *
           kron(ens.states[static_cast<std::size_t>(i)], flag);
  }
  return out;
}

}  // namespace ecdim::quantum
