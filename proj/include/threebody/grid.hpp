#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "threebody/errors.hpp"

namespace threebody {

/// Uniform axis with homogeneous Dirichlet walls at `min` and `max`; the
/// `points` unknowns sit strictly inside.
struct Axis {
  double min = -1.0;
  double max = 1.0;
  int points = 64;

  double spacing() const { return (max - min) / (points + 1); }
  double point(int i) const { return min + (i + 1) * spacing(); }

  friend bool operator==(const Axis&, const Axis&) = default;
};

enum class LatticeKind { Rectangular, Triangular };

/// Discretised wave function on a 1D/2D/3D grid. Rectangular grids are
/// products of Axis objects. Triangular grids (2D relative plane) use oblique
/// lattice coordinates (i, j) with basis vectors a1 = h(cos 30, sin 30) and
/// a2 = h(0, 1); both axes then carry the integer range [-M, M] in `min`/`max`.
/// Norm convention: sum |psi|^2 * cell_volume = 1.
struct WaveFunctionGrid {
  int dimension = 1;
  LatticeKind lattice = LatticeKind::Rectangular;
  std::vector<Axis> axes;
  double lattice_spacing = 0.0;  // triangular only
  std::vector<std::complex<double>> amplitude;

  std::size_t size() const { return amplitude.size(); }

  double cell_volume() const {
    if (lattice == LatticeKind::Triangular) return lattice_spacing * lattice_spacing * std::sqrt(3.0) / 2.0;
    double v = 1.0;
    for (const auto& a : axes) v *= a.spacing();
    return v;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& z : amplitude) s += std::norm(z);
    return std::sqrt(s * cell_volume());
  }

  void normalize() {
    const double n = norm();
    if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalise a zero wave function");
    for (auto& z : amplitude) z /= n;
  }
};

inline bool same_grid(const WaveFunctionGrid& a, const WaveFunctionGrid& b) {
  return a.dimension == b.dimension && a.lattice == b.lattice && a.axes == b.axes &&
         a.lattice_spacing == b.lattice_spacing && a.amplitude.size() == b.amplitude.size();
}

}  // namespace threebody
