#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for selected
// eigenvalues and inverse iteration for their eigenvectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "threebody/errors.hpp"

namespace threebody {

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // size n-1

  std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below `sigma` (Sylvester inertia of T - sigma).
inline int count_below(const SymTridiagonal& t, double sigma) {
  const std::size_t n = t.size();
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = t.diag[0] - sigma;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = t.diag[i + 1] - sigma - t.off[i] * t.off[i] / q;
  }
  return count;
}

/// The k lowest eigenvalues, ascending, to full double precision.
inline std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int k) {
  const std::size_t n = t.size();
  if (k < 0 || static_cast<std::size_t>(k) > n) throw Error(ErrorKind::InvalidArgument, "eigenvalue count out of range");
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> values(static_cast<std::size_t>(k));
  double left = lo;
  for (int j = 0; j < k; ++j) {
    double a = left, b = hi;
    // Invariant: count_below(a) <= j < count_below(b).
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (b - a <= 2.0 * eps * std::max(std::abs(a), std::abs(b)) + std::numeric_limits<double>::min()) break;
      if (mid <= a || mid >= b) break;
      if (count_below(t, mid) > j)
        b = mid;
      else
        a = mid;
    }
    values[static_cast<std::size_t>(j)] = 0.5 * (a + b);
    left = a;
  }
  return values;
}

/// Eigenvector for an (accurate) eigenvalue by inverse iteration with a
/// partially pivoted tridiagonal LU. Normalised to unit Euclidean norm, sign
/// fixed so the first significant component is positive.
inline Eigen::VectorXd tridiagonal_eigenvector(const SymTridiagonal& t, double lambda) {
  const std::size_t n = t.size();
  double scale = 0.0;
  for (double d : t.diag) scale = std::max(scale, std::abs(d));
  for (double e : t.off) scale = std::max(scale, std::abs(e));
  const double shift = lambda + 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0) * 1e-3;

  std::vector<double> dl(t.off), d(n), du(t.off), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<std::size_t> ipiv(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
      ipiv[i] = i;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      ipiv[i] = i + 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  auto solve = [&](Eigen::VectorXd& b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (ipiv[i] == i) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t ii = n; ii-- > 2;) {
      const std::size_t i = ii - 2;
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  };

  Eigen::VectorXd x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  x.normalize();
  for (int it = 0; it < 3; ++it) {
    solve(x);
    x.normalize();
  }
  const double cutoff = 1e-3 * x.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > cutoff) {
      if (x[i] < 0.0) x = -x;
      break;
    }
  }
  return x;
}

}  // namespace threebody
