#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ecdim::quantum {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline int total_dim(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) {
    if (x < 1) throw std::invalid_argument("total_dim: factor dimensions must be positive");
    d *= x;
  }
  return d;
}

/// Validated density matrix: Hermitian to 1e-12, eigenvalues >= -1e-12,
/// unit trace to 1e-12.
struct DensityMatrix {
  Matrix rho;
  int dim() const { return static_cast<int>(rho.rows()); }

  static DensityMatrix checked(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("DensityMatrix: not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12)
      throw std::invalid_argument("DensityMatrix: trace not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
      throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    return DensityMatrix{std::move(m)};
  }
};

/// Ensemble {p_i, rho_i} of states on a common dimension.
struct Ensemble {
  std::vector<double> probs;
  std::vector<Matrix> states;

  void validate() const {
    if (probs.size() != states.size() || probs.empty())
      throw std::invalid_argument("Ensemble: size mismatch");
    double sum = 0.0;
    for (double p : probs) {
      if (p < 0.0) throw std::invalid_argument("Ensemble: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
    for (const Matrix& s : states)
      if (s.rows() != states.front().rows())
        throw std::invalid_argument("Ensemble: dimension mismatch");
  }

  Matrix average() const {
    Matrix avg = Matrix::Zero(states.front().rows(), states.front().cols());
    for (std::size_t i = 0; i < probs.size(); ++i) avg += probs[i] * states[i];
    return avg;
  }
};

/// Partial trace over the factors NOT listed in `keep`. Kept factors stay in
/// their original relative order.
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  const int d = total_dim(dims);
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: bad factor index");
    kept[static_cast<std::size_t>(k)] = true;
  }
  int dk = 1, dt = 1;
  for (int i = 0; i < n; ++i) (kept[static_cast<std::size_t>(i)] ? dk : dt) *= dims[static_cast<std::size_t>(i)];

  // strides of each factor in the full index
  std::vector<int> stride(static_cast<std::size_t>(n), 1);
  for (int i = n - 2; i >= 0; --i)
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] * dims[static_cast<std::size_t>(i + 1)];

  // enumerate kept / traced multi-indices as offsets into the full index
  auto offsets = [&](bool want_kept) {
    std::vector<int> offs{0};
    for (int i = 0; i < n; ++i) {
      if (kept[static_cast<std::size_t>(i)] != want_kept) continue;
      std::vector<int> next;
      next.reserve(offs.size() * static_cast<std::size_t>(dims[static_cast<std::size_t>(i)]));
      for (int o : offs)
        for (int v = 0; v < dims[static_cast<std::size_t>(i)]; ++v)
          next.push_back(o + v * stride[static_cast<std::size_t>(i)]);
      offs = std::move(next);
    }
    return offs;
  };
  const std::vector<int> keep_offs = offsets(true);
  const std::vector<int> trace_offs = offsets(false);

  Matrix out = Matrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      std::complex<double> acc = 0.0;
      for (int t = 0; t < dt; ++t)
        acc += rho(keep_offs[static_cast<std::size_t>(a)] + trace_offs[static_cast<std::size_t>(t)],
                   keep_offs[static_cast<std::size_t>(b)] + trace_offs[static_cast<std::size_t>(t)]);
      out(a, b) = acc;
    }
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Product operator X (on the factors in `groupX`) tensor Y (on the rest),
/// laid out in the interleaved factor order given by `dims`.
inline Matrix grouped_product(const Matrix& x, const std::vector<int>& group_x,
                              const Matrix& y, const std::vector<int>& group_y,
                              const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  const int d = total_dim(dims);
  std::vector<int> pos(static_cast<std::size_t>(n), -1);  // 0 => in x, 1 => in y
  for (int k : group_x) pos.at(static_cast<std::size_t>(k)) = 0;
  for (int k : group_y) {
    if (pos.at(static_cast<std::size_t>(k)) == 0)
      throw std::invalid_argument("grouped_product: overlapping groups");
    pos[static_cast<std::size_t>(k)] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (pos[static_cast<std::size_t>(i)] < 0)
      throw std::invalid_argument("grouped_product: factor not covered");

  // For every full index, its index within the x-group and y-group subspaces
  // (factors in original relative order within each group).
  std::vector<int> xi(static_cast<std::size_t>(d)), yi(static_cast<std::size_t>(d));
  for (int full = 0; full < d; ++full) {
    int rem = full, ix = 0, iy = 0;
    for (int i = 0; i < n; ++i) {
      int blk = 1;
      for (int j = i + 1; j < n; ++j) blk *= dims[static_cast<std::size_t>(j)];
      const int v = (rem / blk) % dims[static_cast<std::size_t>(i)];
      rem %= blk;
      if (pos[static_cast<std::size_t>(i)] == 0)
        ix = ix * dims[static_cast<std::size_t>(i)] + v;
      else
        iy = iy * dims[static_cast<std::size_t>(i)] + v;
    }
    xi[static_cast<std::size_t>(full)] = ix;
    yi[static_cast<std::size_t>(full)] = iy;
  }
  Matrix out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      out(r, c) = x(xi[static_cast<std::size_t>(r)], xi[static_cast<std::size_t>(c)]) *
                  y(yi[static_cast<std::size_t>(r)], yi[static_cast<std::size_t>(c)]);
  return out;
}

/// Trace norm of a Hermitian operator via its eigenvalues.
inline double trace_norm_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Trace norm of a general operator via its singular values.
inline double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

/// Trace distance (1/2)||rho - sigma||_1 between two states.
inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm_hermitian(rho - sigma);
}

/// Truncation channel: project onto the first m basis states and dump the
/// remaining weight onto the ground basis state.
inline Matrix truncate_to_lowest(const Matrix& rho, int m) {
  const int d = static_cast<int>(rho.rows());
  if (m < 1 || m > d) throw std::invalid_argument("truncate_to_lowest: bad m");
  Matrix out = Matrix::Zero(d, d);
  out.topLeftCorner(m, m) = rho.topLeftCorner(m, m);
  std::complex<double> tail = 0.0;
  for (int k = m; k < d; ++k) tail += rho(k, k);
  out(0, 0) += tail;
  return out;
}

}  // namespace ecdim::quantum
