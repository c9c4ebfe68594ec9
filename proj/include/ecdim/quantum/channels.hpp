#pragma once

#include <stdexcept>

#include <ecdim/quantum/states.hpp>

namespace ecdim::quantum {

/// Channel in Stinespring form: an isometry V from the input space (dim dA)
/// into output x environment (dB * dE). The channel is rho -> Tr_E V rho V*;
/// tracing out B instead gives the complementary channel.
struct ChannelRep {
  int dA = 0, dB = 0, dE = 0;
  Matrix V;  // (dB*dE) x dA, V* V = I

  static ChannelRep checked(int dA, int dB, int dE, Matrix v) {
    if (dA < 1 || dB < 1 || dE < 1) throw std::invalid_argument("ChannelRep: bad dims");
    if (v.rows() != static_cast<Eigen::Index>(dB) * dE || v.cols() != dA)
      throw std::invalid_argument("ChannelRep: isometry shape mismatch");
    const Matrix gram = v.adjoint() * v;
    if ((gram - Matrix::Identity(dA, dA)).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("ChannelRep: V*V deviates from identity");
    return ChannelRep{dA, dB, dE, std::move(v)};
  }

  Matrix apply(const Matrix& rho) const {
    const Matrix big = V * rho * V.adjoint();
    return partial_trace(big, {dB, dE}, {0});
  }

  Matrix complementary(const Matrix& rho) const {
    const Matrix big = V * rho * V.adjoint();
    return partial_trace(big, {dB, dE}, {1});
  }
};

}  // namespace ecdim::quantum
