#pragma once

// Least-squares fits of the solvable-model coefficients to oracle levels.
//
//   harmonic pair interaction: E_rel,k = w_rel o_k with o = 1,2,2,3,3,3,...
//     (2 nu + |mu| + 1 with multiplicity); k_fit = (w_rel^2 - w^2) m / gamma
//   inverse-square, one sector: E_rel,k = A + o_k with o = 0,2,3,4,5,6,...;
//     A = 1 + 3/2 (1 + sqrt(1 + c gamma))  (natural units) gives c

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "threebody/errors.hpp"

namespace threebody {

struct CoefficientFit {
  double scale = 0.0;        // fitted w_rel or offset A
  double coefficient = 0.0;  // k or c
  double residual = 0.0;     // max |E_k - model_k|
};

/// 2 nu + |mu| + 1 for the lowest states of a 2D isotropic oscillator, with multiplicity.
inline std::vector<double> oscillator_2d_occupations(int count) {
  std::vector<double> o;
  for (int n = 1; static_cast<int>(o.size()) < count; ++n)
    for (int c = 0; c < n && static_cast<int>(o.size()) < count; ++c) o.push_back(n);
  return o;
}

/// Relative excitations 2 nu + 3 j of one sector, ascending.
inline std::vector<double> sector_excitations(int count) {
  std::vector<double> o;
  for (int total = 0; static_cast<int>(o.size()) < count; ++total)
    for (int j = 0; 3 * j <= total && static_cast<int>(o.size()) < count; ++j)
      if ((total - 3 * j) % 2 == 0) o.push_back(total);
  return o;
}

inline CoefficientFit fit_harm_harm(const Eigen::VectorXd& relative_levels, double omega, double gamma, double mass = 1.0) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "fit needs gamma > 0");
  const auto o = oscillator_2d_occupations(static_cast<int>(relative_levels.size()));
  double num = 0.0, den = 0.0;
  for (Eigen::Index k = 0; k < relative_levels.size(); ++k) {
    num += relative_levels[k] * o[static_cast<std::size_t>(k)];
    den += o[static_cast<std::size_t>(k)] * o[static_cast<std::size_t>(k)];
  }
  CoefficientFit f;
  f.scale = num / den;
  for (Eigen::Index k = 0; k < relative_levels.size(); ++k)
    f.residual = std::max(f.residual, std::abs(relative_levels[k] - f.scale * o[static_cast<std::size_t>(k)]));
  f.coefficient = (f.scale * f.scale - omega * omega) * mass / gamma;
  return f;
}

/// Natural units, omega = 1; `sector_levels` are relative energies of one sector.
inline CoefficientFit fit_calogero(const Eigen::VectorXd& sector_levels, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "fit needs gamma > 0");
  const auto o = sector_excitations(static_cast<int>(sector_levels.size()));
  CoefficientFit f;
  for (Eigen::Index k = 0; k < sector_levels.size(); ++k) f.scale += sector_levels[k] - o[static_cast<std::size_t>(k)];
  f.scale /= static_cast<double>(sector_levels.size());
  for (Eigen::Index k = 0; k < sector_levels.size(); ++k)
    f.residual = std::max(f.residual, std::abs(sector_levels[k] - f.scale - o[static_cast<std::size_t>(k)]));
  const double root = 2.0 * (f.scale - 1.0) / 3.0 - 1.0;
  f.coefficient = (root * root - 1.0) / gamma;
  return f;
}

}  // namespace threebody
