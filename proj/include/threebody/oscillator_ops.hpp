#pragma once

// Truncated harmonic-oscillator matrices and Kronecker-product assembly for
// the operator-algebra checks. Basis |0>..|N-1> of an oscillator with
// frequency w; truncation only corrupts the top rows/columns.

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace threebody {

using Complex = std::complex<double>;
using SparseComplex = Eigen::SparseMatrix<Complex>;

struct OscillatorUnits {
  double omega = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
};

/// Annihilation operator a|n> = sqrt(n)|n-1>.
inline Eigen::MatrixXcd lowering(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

/// X = sqrt(hbar / 2 m w) (a + a^dagger)
inline Eigen::MatrixXcd position(int n, const OscillatorUnits& u = {}) {
  const Eigen::MatrixXcd a = lowering(n);
  return std::sqrt(u.hbar / (2.0 * u.mass * u.omega)) * (a + a.adjoint());
}

/// P = i sqrt(hbar m w / 2) (a^dagger - a)
inline Eigen::MatrixXcd momentum(int n, const OscillatorUnits& u = {}) {
  const Eigen::MatrixXcd a = lowering(n);
  return Complex(0.0, std::sqrt(u.hbar * u.mass * u.omega / 2.0)) * (a.adjoint() - a);
}

/// Interior block: basis indices whose quantum numbers are all <= cutoff.
inline Eigen::MatrixXcd interior_block(const Eigen::MatrixXcd& m, const std::vector<int>& indices) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(indices.size()), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t c = 0; c < indices.size(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(indices[r], indices[c]);
  return out;
}

inline SparseComplex to_sparse(const Eigen::MatrixXcd& m) { return m.sparseView(0.0, 0.0); }

inline SparseComplex kron(const SparseComplex& a, const SparseComplex& b) {
  SparseComplex out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseComplex::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseComplex::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()), static_cast<int>(ia.col() * b.cols() + ib.col()),
                         ia.value() * ib.value());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

inline Eigen::MatrixXd dense_kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline SparseComplex sparse_identity(int n) {
  SparseComplex i(n, n);
  i.setIdentity();
  return i;
}

/// Embeds a single-mode operator as factor `slot` of a three-mode product (slot 0 slowest).
inline SparseComplex embed(const Eigen::MatrixXcd& op, int slot, int n) {
  const SparseComplex s = to_sparse(op), id = sparse_identity(n);
  switch (slot) {
    case 0: return kron(kron(s, id), id);
    case 1: return kron(kron(id, s), id);
    default: return kron(kron(id, id), s);
  }
}

/// Product-basis indices with every mode quantum number <= n - 1 - exclusion.
inline std::vector<int> interior_indices_3(int n, int exclusion) {
  std::vector<int> idx;
  const int top = n - 1 - exclusion;
  for (int i = 0; i <= top; ++i)
    for (int j = 0; j <= top; ++j)
      for (int k = 0; k <= top; ++k) idx.push_back((i * n + j) * n + k);
  return idx;
}

inline double interior_norm(const SparseComplex& m, const std::vector<int>& indices, int total) {
  std::vector<char> keep(static_cast<std::size_t>(total), 0);
  for (int i : indices) keep[static_cast<std::size_t>(i)] = 1;
  double sum = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseComplex::InnerIterator it(m, k); it; ++it)
      if (keep[static_cast<std::size_t>(it.row())] && keep[static_cast<std::size_t>(it.col())]) sum += std::norm(it.value());
  return std::sqrt(sum);
}

}  // namespace threebody
