#pragma once

// Lowest eigenpairs of a large real symmetric operator: block Lanczos with
// full reorthogonalisation and thick restarts. The projected matrix is formed
// explicitly (V^T A V), so restarts only need an orthonormal basis. The block
// size must be at least the largest degeneracy among the wanted eigenvalues.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "threebody/errors.hpp"

namespace threebody {

/// Applies the operator to every column of `in`, writing `out` (same shape).
using BlockOperator = std::function<void(const Eigen::MatrixXd& in, Eigen::MatrixXd& out)>;

struct EigenSolverOptions {
  int block_size = 6;
  int max_basis = 0;  // 0: chosen from k and block_size
  /// Converged when ||A x - theta x|| <= tolerance * max(1, |theta|).
  double tolerance = 1e-9;
  int max_matvecs = 400000;
  std::uint64_t seed = 0x5eedULL;
};

struct EigenResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd residuals;
  long matvecs = 0;
  int restarts = 0;
};

namespace detail {

/// splitmix64: portable, deterministic start vectors.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  double uniform() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }

 private:
  std::uint64_t state_;
};

inline void fill_random(Eigen::Ref<Eigen::VectorXd> v, SplitMix& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform();
}

/// Orthonormalises the columns of `x` against basis.leftCols(cols) and among
/// themselves; rank-deficient columns are replaced by random directions.
inline void orthonormalize_block(const Eigen::MatrixXd& basis, Eigen::Index cols, Eigen::MatrixXd& x, SplitMix& rng) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      auto v = x.col(j);
      const double before = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        if (cols > 0) v.noalias() -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * v);
        for (Eigen::Index i = 0; i < j; ++i) v -= x.col(i).dot(v) * x.col(i);
      }
      const double after = v.norm();
      if (after > 1e-8 * before && after > 0.0) {
        v /= after;
        break;
      }
      fill_random(v, rng);
    }
  }
}

}  // namespace detail

inline EigenResult lowest_eigenpairs(const BlockOperator& op, Eigen::Index n, int k, EigenSolverOptions options = {}) {
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "lowest_eigenpairs: k out of range");
  const Eigen::Index b = std::min<Eigen::Index>(std::max(1, options.block_size), n);
  Eigen::Index m = options.max_basis > 0 ? options.max_basis : std::max<Eigen::Index>(3 * k + 4 * b, 8 * b);
  m = std::min(m, n);
  detail::SplitMix rng(options.seed);

  // Small problems: dense diagonalisation through the operator.
  if (n <= std::max<Eigen::Index>(200, m)) {
    Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n), dense(n, n);
    op(identity, dense);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (dense + dense.transpose()));
    EigenResult r;
    r.values = es.eigenvalues().head(k);
    r.vectors = es.eigenvectors().leftCols(k);
    r.residuals = Eigen::VectorXd::Zero(k);
    r.matvecs = n;
    return r;
  }

  Eigen::MatrixXd basis(n, m), image(n, m);
  Eigen::Index cols = 0;
  Eigen::MatrixXd block(n, b), applied(n, b);
  for (Eigen::Index j = 0; j < b; ++j) detail::fill_random(block.col(j), rng);

  EigenResult result;
  for (;;) {
    while (cols + b <= m) {
      detail::orthonormalize_block(basis, cols, block, rng);
      op(block, applied);
      result.matvecs += b;
      basis.middleCols(cols, b) = block;
      image.middleCols(cols, b) = applied;
      cols += b;
      block = applied;
    }

    Eigen::MatrixXd projected = basis.leftCols(cols).transpose() * image.leftCols(cols);
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected);
    const Eigen::VectorXd& theta = es.eigenvalues();
    const Eigen::MatrixXd& y = es.eigenvectors();

    const Eigen::Index keep_wanted = std::min<Eigen::Index>(k + b, cols);
    Eigen::MatrixXd ritz = basis.leftCols(cols) * y.leftCols(keep_wanted);
    Eigen::MatrixXd ritz_image = image.leftCols(cols) * y.leftCols(keep_wanted);
    Eigen::MatrixXd residual = ritz_image - ritz * theta.head(keep_wanted).asDiagonal();
    Eigen::VectorXd norms = residual.colwise().norm();

    bool converged = true;
    for (int i = 0; i < k; ++i)
      if (norms[i] > options.tolerance * std::max(1.0, std::abs(theta[i]))) converged = false;
    if (converged || result.matvecs >= options.max_matvecs) {
      if (!converged)
        throw Error(ErrorKind::NotConverged, "lowest_eigenpairs: no convergence after " +
                                                 std::to_string(result.matvecs) + " operator applications");
      result.values = theta.head(k);
      result.vectors = ritz.leftCols(k);
      result.residuals = norms.head(k);
      return result;
    }

    // Thick restart: keep the wanted Ritz vectors plus a buffer, continue from
    // the residuals of the leading unconverged ones (they span the Krylov continuation).
    const Eigen::Index keep = std::min<Eigen::Index>(std::max<Eigen::Index>(keep_wanted, cols / 2), cols - b);
    Eigen::MatrixXd kept = basis.leftCols(cols) * y.leftCols(keep);
    Eigen::MatrixXd kept_image = image.leftCols(cols) * y.leftCols(keep);
    basis.leftCols(keep) = kept;
    image.leftCols(keep) = kept_image;
    cols = keep;
    Eigen::Index filled = 0;
    for (Eigen::Index i = 0; i < keep_wanted && filled < b; ++i) {
      if (norms[i] > options.tolerance * std::max(1.0, std::abs(theta[i]))) block.col(filled++) = residual.col(i);
    }
    for (; filled < b; ++filled) detail::fill_random(block.col(filled), rng);
    ++result.restarts;
  }
}

}  // namespace threebody
