#pragma once

// One-particle bound-state spectra: closed forms where they exist, and a
// second-order finite-difference solve (Richardson-extrapolated against the
// half-resolution grid) for everything else.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "threebody/core_model.hpp"
#include "threebody/grid.hpp"
#include "threebody/tridiagonal.hpp"

namespace threebody {

enum class SpectrumSource { Analytic, Grid };

constexpr std::string_view to_string(SpectrumSource s) { return s == SpectrumSource::Analytic ? "analytic" : "grid"; }

struct OneBodySpectrum {
  std::vector<double> energies;   // ascending, size n_max + 1
  std::vector<double> est_error;  // zero for analytic spectra
  SpectrumSource source = SpectrumSource::Analytic;

  int n_max() const { return static_cast<int>(energies.size()) - 1; }
  double max_error() const {
    double e = 0.0;
    for (double x : est_error) e = std::max(e, x);
    return e;
  }
};

/// Closed forms: harmonic hbar w (n + 1/2); hard-wall box (n+1)^2 pi^2 hbar^2 / (2 m L^2).
/// Quadratic traps are harmonic after completing the square.
inline OneBodySpectrum analytic_spectrum(const Trap& trap, int n_max, double mass = 1.0, double hbar = 1.0) {
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 0");
  OneBodySpectrum out;
  out.source = SpectrumSource::Analytic;
  out.energies.resize(static_cast<std::size_t>(n_max) + 1);
  out.est_error.assign(out.energies.size(), 0.0);
  if (const auto* w = std::get_if<InfiniteWell>(&trap)) {
    const double unit = std::numbers::pi * std::numbers::pi * hbar * hbar / (2.0 * mass * w->length * w->length);
    for (int n = 0; n <= n_max; ++n) out.energies[static_cast<std::size_t>(n)] = (n + 1.0) * (n + 1.0) * unit;
    return out;
  }
  if (const auto view = harmonic_view(trap, mass)) {
    for (int n = 0; n <= n_max; ++n)
      out.energies[static_cast<std::size_t>(n)] = hbar * view->omega * (n + 0.5) + view->offset;
    return out;
  }
  throw Error(ErrorKind::UnsupportedTrap, "no closed-form spectrum for trap '" + trap_name(trap) + "'");
}

/// Finite-difference Hamiltonian -hbar^2/2m d^2/dx^2 + V on the interior points of `axis`.
inline SymTridiagonal finite_difference_hamiltonian(const std::function<double(double)>& potential, const Axis& axis,
                                                    double mass = 1.0, double hbar = 1.0) {
  const double h = axis.spacing();
  const double t = hbar * hbar / (2.0 * mass * h * h);
  SymTridiagonal m;
  m.diag.resize(static_cast<std::size_t>(axis.points));
  m.off.assign(static_cast<std::size_t>(axis.points) - 1, -t);
  for (int i = 0; i < axis.points; ++i) m.diag[static_cast<std::size_t>(i)] = 2.0 * t + potential(axis.point(i));
  return m;
}

/// Eigenstates of the raw (non-extrapolated) finite-difference Hamiltonian on
/// exactly the points of `axis`. Columns of `vectors` satisfy sum psi^2 h = 1.
struct OneBodyStates {
  Axis axis;
  std::vector<double> energies;
  Eigen::MatrixXd vectors;
};

inline OneBodyStates grid_states(const std::function<double(double)>& potential, const Axis& axis, int count,
                                 double mass = 1.0, double hbar = 1.0) {
  if (axis.points < 2 || count < 1 || count > axis.points)
    throw Error(ErrorKind::InvalidArgument, "grid_states: bad axis or state count");
  const SymTridiagonal m = finite_difference_hamiltonian(potential, axis, mass, hbar);
  OneBodyStates out{axis, lowest_eigenvalues(m, count), Eigen::MatrixXd(axis.points, count)};
  const double inv_sqrt_h = 1.0 / std::sqrt(axis.spacing());
  for (int k = 0; k < count; ++k)
    out.vectors.col(k) = tridiagonal_eigenvector(m, out.energies[static_cast<std::size_t>(k)]) * inv_sqrt_h;
  return out;
}

/// Grid for a trap: infinite wells always use the well itself as the box.
inline Axis trap_axis(const Trap& trap, const Axis& requested) {
  if (const auto* w = std::get_if<InfiniteWell>(&trap)) return Axis{-0.5 * w->length, 0.5 * w->length, requested.points};
  return requested;
}

inline std::function<double(double)> trap_function(const Trap& trap, double mass = 1.0) {
  if (std::holds_alternative<InfiniteWell>(trap)) return [](double) { return 0.0; };
  return [trap, mass](double x) { return trap_potential(trap, x, mass); };
}

inline OneBodyStates grid_states(const Trap& trap, const Axis& axis, int count, double mass = 1.0,
                                 double hbar = 1.0) {
  return grid_states(trap_function(trap, mass), trap_axis(trap, axis), count, mass, hbar);
}

struct GridSpectrumOptions {
  /// Reject states whose amplitude at the box edge exceeds this fraction of the maximum.
  double edge_tolerance = 1e-8;
  bool check_edges = true;
};

/// Lowest n_max + 1 levels of the finite-difference problem on `axis`. The
/// spectrum is Richardson-extrapolated from the fine grid and the grid with
/// half as many intervals; est_error holds the size of that correction.
inline OneBodySpectrum grid_spectrum_1d(const std::function<double(double)>& potential, const Axis& axis, int n_max,
                                        double mass = 1.0, double hbar = 1.0, GridSpectrumOptions options = {}) {
  if (axis.points < 64) throw Error(ErrorKind::TooFewPoints, "grid_spectrum_1d needs at least 64 points");
  if (n_max < 0 || n_max + 1 > axis.points / 4) throw Error(ErrorKind::InvalidArgument, "n_max out of range");

  const OneBodyStates fine = grid_states(potential, axis, n_max + 1, mass, hbar);
  if (options.check_edges) {
    for (int k = 0; k <= n_max; ++k) {
      const auto col = fine.vectors.col(k);
      const double peak = col.cwiseAbs().maxCoeff();
      const double edge = std::max(std::abs(col[0]), std::abs(col[col.size() - 1]));
      if (edge > options.edge_tolerance * peak)
        throw Error(ErrorKind::BoxTooSmall, "state " + std::to_string(k) + " has edge amplitude " +
                                                std::to_string(edge / peak) + " of its maximum");
    }
  }

  const int fine_intervals = axis.points + 1;
  const Axis coarse{axis.min, axis.max, fine_intervals / 2 - 1};
  const SymTridiagonal coarse_h = finite_difference_hamiltonian(potential, coarse, mass, hbar);
  const std::vector<double> coarse_e = lowest_eigenvalues(coarse_h, n_max + 1);

  const double hf2 = axis.spacing() * axis.spacing();
  const double hc2 = coarse.spacing() * coarse.spacing();
  OneBodySpectrum out;
  out.source = SpectrumSource::Grid;
  for (int k = 0; k <= n_max; ++k) {
    const double ef = fine.energies[static_cast<std::size_t>(k)];
    const double ec = coarse_e[static_cast<std::size_t>(k)];
    const double extrapolated = (hc2 * ef - hf2 * ec) / (hc2 - hf2);
    out.energies.push_back(extrapolated);
    out.est_error.push_back(std::abs(extrapolated - ef));
  }
  return out;
}

inline OneBodySpectrum grid_spectrum_1d(const Trap& trap, const Axis& axis, int n_max, double mass = 1.0,
                                        double hbar = 1.0, GridSpectrumOptions options = {}) {
  if (std::holds_alternative<InfiniteWell>(trap)) options.check_edges = false;  // walls are physical
  return grid_spectrum_1d(trap_function(trap, mass), trap_axis(trap, axis), n_max, mass, hbar, options);
}

/// Analytic spectrum when available, otherwise the grid spectrum on `axis`.
inline OneBodySpectrum one_body_spectrum(const Trap& trap, int n_max, const Axis& axis, double mass = 1.0,
                                         double hbar = 1.0) {
  try {
    return analytic_spectrum(trap, n_max, mass, hbar);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedTrap) throw;
  }
  return grid_spectrum_1d(trap, axis, n_max, mass, hbar);
}

}  // namespace threebody
