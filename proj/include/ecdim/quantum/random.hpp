#pragma once

#include <cstdint>
#include <random>

#include <ecdim/quantum/states.hpp>
#include <ecdim/quantum/channels.hpp>

namespace ecdim::quantum {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Per-trial random stream derived from (seed, stream index), so trials are
/// reproducible independently of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701))) {}

  double normal() { return normal_(eng_); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01_(eng_);
  }
  std::uint64_t uniform_index(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform01_{0.0, 1.0};
};

/// Complex Ginibre matrix: independent standard complex Gaussian entries.
inline Matrix ginibre(int rows, int cols, RngStream& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = std::complex<double>(rng.normal(), rng.normal());
  return g;
}

/// Random state GG*/Tr(GG*) with G a dim x rank Ginibre block.
inline Matrix random_state(int dim, RngStream& rng, int rank = 0) {
  if (rank <= 0 || rank > dim) rank = dim;
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline Vector random_pure(int dim, RngStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(rng.normal(), rng.normal());
  v.normalize();
  return v;
}

/// Random rank-r orthogonal projector from the QR frame of a Ginibre block.
inline Matrix random_projector(int dim, int rank, RngStream& rng) {
  if (rank <= 0) return Matrix::Zero(dim, dim);
  if (rank >= dim) return Matrix::Identity(dim, dim);
  const Matrix g = ginibre(dim, rank, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim, rank);
  return q * q.adjoint();
}

/// Random channel from the QR orthonormalization of a (dB*dE) x dA Ginibre
/// block; requires dB*dE >= dA.
inline ChannelRep random_channel(int dA, int dB, int dE, RngStream& rng) {
  if (dB * dE < dA) throw std::invalid_argument("random_channel: dB*dE must cover dA");
  const Matrix g = ginibre(dB * dE, dA, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix v = qr.householderQ() * Matrix::Identity(dB * dE, dA);
  return ChannelRep::checked(dA, dB, dE, v);
}

/// Pair (rho, sigma) at trace distance `eps` (or less, when eps is not
/// reachable along the mixing family): sigma = (1-x) rho + x rho', for which
/// the distance is exactly x * D(rho, rho'). Returns the achieved distance.
struct StatePair {
  Matrix rho;
  Matrix sigma;
  double eps;
};

inline StatePair pair_at_trace_distance(int dim, double eps, RngStream& rng) {
  const Matrix rho = random_state(dim, rng);
  const Matrix other = random_state(dim, rng);
  const double full = trace_distance(rho, other);
  const double x = full > eps ? eps / full : 1.0;
  const Matrix sigma = (1.0 - x) * rho + x * other;
  return {rho, sigma, x * full};
}

}  // namespace ecdim::quantum
