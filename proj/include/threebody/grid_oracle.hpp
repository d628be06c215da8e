#pragma once

// Brute-force ground truth: finite-difference Hamiltonians on grids and their
// lowest eigenvalues.
//
//  * Relative plane (harmonic-like traps, centre of mass separated): a
//    triangular lattice in (q2, q3). Its lattice lines run along the three
//    coincidence lines x_i = x_j, so hard walls for unitary contact and the
//    inverse-square model are exact, and P3 (plus relative parity) maps the
//    lattice onto itself. Laplacian: (2 / 3h^2) sum over the six neighbours.
//  * Full configuration space: cubic grid, identical axes, 7-point stencil.
//
// Both report Richardson-extrapolated eigenvalues from the grid and the grid
// with doubled spacing.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "threebody/core_model.hpp"
#include "threebody/eigensolver.hpp"
#include "threebody/grid.hpp"
#include "threebody/jacobi.hpp"
#include "threebody/one_body.hpp"

namespace threebody {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Interactions whose eigenfunctions vanish on the coincidence planes.
inline bool has_coincidence_walls(const Interaction& interaction) {
  return std::holds_alternative<UnitaryContact>(interaction) ||
         std::holds_alternative<InverseSquareInteraction>(interaction);
}

/// Pair potential V2(r) in natural units. Finite contact is represented by a
/// normalised Gaussian of width two grid cells (approximate by construction).
inline double pair_potential(const Interaction& interaction, double r, double grid_spacing) {
  return std::visit(overloaded{
                        [](const NoInteraction&) { return 0.0; },
                        [&](const HarmonicInteraction& h) { return h.gamma * r * r; },
                        [&](const InverseSquareInteraction& h) { return 4.0 * h.gamma / (r * r); },
                        [&](const ContactInteraction& c) {
                          const double w = 2.0 * grid_spacing;
                          return c.gamma * std::exp(-0.5 * r * r / (w * w)) / (std::sqrt(2.0 * std::numbers::pi) * w);
                        },
                        [](const UnitaryContact&) { return 0.0; },
                        [&](const TabulatedInteraction& t) { return interpolate_linear(t.r, t.v, r); },
                    },
                    interaction);
}

/// The three pair separations |x1-x2|, |x2-x3|, |x3-x1| at relative-plane point (q2, q3).
inline std::array<double, 3> pair_distances(double q2, double q3) {
  const double s2 = std::sqrt(2.0);
  const double c = std::cos(2.0 * std::numbers::pi / 3.0), s = std::sin(2.0 * std::numbers::pi / 3.0);
  return {s2 * std::abs(q2), s2 * std::abs(c * q2 + s * q3), s2 * std::abs(c * q2 - s * q3)};
}

/// Relative-plane potential for a harmonic-like trap (natural units, m = 1).
inline double relative_potential(const ModelSpec& natural, double q2, double q3, double grid_spacing) {
  const auto view = harmonic_view(natural.trap, natural.mass);
  const double rho2 = q2 * q2 + q3 * q3;
  double v = 0.5 * natural.mass * view->omega * view->omega * rho2;
  for (double d : pair_distances(q2, q3)) v += pair_potential(natural.interaction, d, grid_spacing);
  return v;
}

// ------------------------------------------------------------ discrete H

/// A discretised Hamiltonian over the active sites of a grid layout. Pinned
/// sites (hard walls) carry zero amplitude and are absent from `matrix`.
struct DiscreteHamiltonian {
  WaveFunctionGrid layout;                 // metadata; amplitude left empty
  std::size_t full_size = 0;
  std::vector<Eigen::Index> active;        // full-layout index of each active site
  std::vector<Eigen::Index> compact;       // full -> compact, -1 when pinned
  std::vector<char> touches_box;           // active site next to the outer box
  SparseMatrix matrix;
  double energy_offset = 0.0;              // added to every eigenvalue
  double spacing = 0.0;                    // grid spacing (lattice constant in 2D)

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(active.size()); }

  Eigen::VectorXcd to_compact(const WaveFunctionGrid& psi) const {
    Eigen::VectorXcd v(dimension());
    for (std::size_t a = 0; a < active.size(); ++a) v[static_cast<Eigen::Index>(a)] = psi.amplitude[static_cast<std::size_t>(active[a])];
    return v;
  }

  WaveFunctionGrid to_grid(const Eigen::Ref<const Eigen::VectorXcd>& v) const {
    WaveFunctionGrid g = layout;
    g.amplitude.assign(full_size, {0.0, 0.0});
    for (std::size_t a = 0; a < active.size(); ++a) g.amplitude[static_cast<std::size_t>(active[a])] = v[static_cast<Eigen::Index>(a)];
    return g;
  }
};

// ------------------------------------------------------ triangular lattice

struct RelativeGrid {
  double radius = 7.0;
  double spacing = 0.1;
};

struct TriangularSite {
  int i;
  int j;
};

inline Eigen::Vector2d lattice_position(double h, int i, int j) {
  return {h * i * std::sqrt(3.0) / 2.0, h * (0.5 * i + j)};
}

inline constexpr std::array<std::array<int, 2>, 6> kTriangularNeighbours = {
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

/// Relative-motion Hamiltonian on the triangular lattice. With
/// `sector_only` only the wedge x1 > x2 > x3 (i > 0, j > 0) is kept.
inline DiscreteHamiltonian relative_hamiltonian(const ModelSpec& natural, const RelativeGrid& grid,
                                                bool sector_only = false) {
  const auto view = harmonic_view(natural.trap, natural.mass);
  if (!view) throw Error(ErrorKind::UnsupportedTrap, "relative-plane oracle needs a harmonic-like trap");
  if (!(grid.spacing > 0.0) || !(grid.radius > 4.0 * grid.spacing))
    throw Error(ErrorKind::InvalidArgument, "relative grid: need radius > 4 spacing > 0");
  const bool walls = has_coincidence_walls(natural.interaction) || sector_only;
  const double h = grid.spacing;
  const int reach = static_cast<int>(std::ceil(2.0 * grid.radius / (std::sqrt(3.0) * h))) + 2;
  const int width = 2 * reach + 1;

  DiscreteHamiltonian out;
  out.layout.dimension = 2;
  out.layout.lattice = LatticeKind::Triangular;
  out.layout.lattice_spacing = h;
  out.layout.axes = {Axis{-grid.radius, grid.radius, width}, Axis{-grid.radius, grid.radius, width}};
  out.full_size = static_cast<std::size_t>(width) * static_cast<std::size_t>(width);
  out.compact.assign(out.full_size, -1);
  out.spacing = h;

  auto full_index = [&](int i, int j) { return static_cast<Eigen::Index>(i + reach) * width + (j + reach); };
  auto inside = [&](int i, int j) {
    if (std::abs(i) > reach || std::abs(j) > reach) return false;
    if (lattice_position(h, i, j).norm() > grid.radius) return false;
    if (walls && (i == 0 || j == 0 || i + j == 0)) return false;
    if (sector_only && !(i > 0 && j > 0)) return false;
    return true;
  };
  auto on_wall = [&](int i, int j) { return walls && (i == 0 || j == 0 || i + j == 0); };

  std::vector<TriangularSite> sites;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j)
      if (inside(i, j)) {
        out.compact[static_cast<std::size_t>(full_index(i, j))] = static_cast<Eigen::Index>(sites.size());
        out.active.push_back(full_index(i, j));
        sites.push_back({i, j});
      }

  const double kinetic = natural.hbar * natural.hbar / (2.0 * natural.mass) * 2.0 / (3.0 * h * h);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sites.size() * 7);
  out.touches_box.assign(sites.size(), 0);
  for (std::size_t a = 0; a < sites.size(); ++a) {
    const auto [i, j] = sites[a];
    const Eigen::Vector2d r = lattice_position(h, i, j);
    const double v = relative_potential(natural, r[0], r[1], h);
    triplets.emplace_back(static_cast<int>(a), static_cast<int>(a), 6.0 * kinetic + v);
    for (const auto& d : kTriangularNeighbours) {
      const int ni = i + d[0], nj = j + d[1];
      if (inside(ni, nj)) {
        triplets.emplace_back(static_cast<int>(a), static_cast<int>(out.compact[static_cast<std::size_t>(full_index(ni, nj))]),
                              -kinetic);
      } else if (!on_wall(ni, nj) && !(sector_only && (ni <= 0 || nj <= 0))) {
        out.touches_box[a] = 1;
      }
    }
  }
  out.matrix.resize(static_cast<Eigen::Index>(sites.size()), static_cast<Eigen::Index>(sites.size()));
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// ------------------------------------------------------------ cubic grid

/// Full three-particle Hamiltonian on the cube axis^3 (x1 slowest index).
/// Coincidence planes are pinned for unitary contact and inverse-square models.
inline DiscreteHamiltonian full_hamiltonian_3d(const ModelSpec& natural, const Axis& requested_axis) {
  const Axis axis = trap_axis(natural.trap, requested_axis);
  const int n = axis.points;
  const double h = axis.spacing();
  const bool walls = has_coincidence_walls(natural.interaction);
  const auto trap_v = trap_function(natural.trap, natural.mass);

  DiscreteHamiltonian out;
  out.layout.dimension = 3;
  out.layout.lattice = LatticeKind::Rectangular;
  out.layout.axes = {axis, axis, axis};
  out.full_size = static_cast<std::size_t>(n) * n * n;
  out.compact.assign(out.full_size, -1);
  out.spacing = h;

  std::vector<double> v1(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v1[static_cast<std::size_t>(i)] = trap_v(axis.point(i));
  auto full_index = [&](int i, int j, int k) { return (static_cast<Eigen::Index>(i) * n + j) * n + k; };
  auto active = [&](int i, int j, int k) { return !walls || (i != j && j != k && i != k); };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (active(i, j, k)) {
          out.compact[static_cast<std::size_t>(full_index(i, j, k))] = static_cast<Eigen::Index>(out.active.size());
          out.active.push_back(full_index(i, j, k));
        }

  const double kinetic = natural.hbar * natural.hbar / (2.0 * natural.mass * h * h);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(out.active.size() * 7);
  out.touches_box.assign(out.active.size(), 0);
  for (std::size_t a = 0; a < out.active.size(); ++a) {
    const Eigen::Index f = out.active[a];
    const int i = static_cast<int>(f / (static_cast<Eigen::Index>(n) * n));
    const int j = static_cast<int>((f / n) % n);
    const int k = static_cast<int>(f % n);
    const std::array<int, 3> idx = {i, j, k};
    double v = v1[static_cast<std::size_t>(i)] + v1[static_cast<std::size_t>(j)] + v1[static_cast<std::size_t>(k)];
    const double x1 = axis.point(i), x2 = axis.point(j), x3 = axis.point(k);
    if (!std::holds_alternative<UnitaryContact>(natural.interaction)) {
      v += pair_potential(natural.interaction, std::abs(x1 - x2), h) +
           pair_potential(natural.interaction, std::abs(x2 - x3), h) +
           pair_potential(natural.interaction, std::abs(x3 - x1), h);
    }
    triplets.emplace_back(static_cast<int>(a), static_cast<int>(a), 6.0 * kinetic + v);
    for (int axis_id = 0; axis_id < 3; ++axis_id) {
      for (int step : {-1, 1}) {
        auto nb = idx;
        nb[static_cast<std::size_t>(axis_id)] += step;
        const int c = nb[static_cast<std::size_t>(axis_id)];
        if (c < 0 || c >= n) {
          out.touches_box[a] = 1;
          continue;
        }
        const Eigen::Index nf = full_index(nb[0], nb[1], nb[2]);
        const Eigen::Index nc = out.compact[static_cast<std::size_t>(nf)];
        if (nc >= 0) triplets.emplace_back(static_cast<int>(a), static_cast<int>(nc), -kinetic);
      }
    }
  }
  out.matrix.resize(out.dimension(), out.dimension());
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// ----------------------------------------------------- symmetry on grids

/// Index map realising (U(O) psi)(x) = psi(O^{-1} x) for an orthogonal O that
/// maps the grid onto itself: result[f] is the full-layout source index of f.
/// For the relative lattice O acts through its restriction to the (q2, q3) plane.
inline std::vector<Eigen::Index> grid_symmetry_map(const WaveFunctionGrid& layout, const Eigen::Matrix3d& o) {
  const Eigen::Matrix3d inv = o.transpose();
  std::vector<Eigen::Index> map;
  if (layout.dimension == 3) {
    const Axis& axis = layout.axes[0];
    const int n = axis.points;
    const double center = 0.5 * (axis.min + axis.max);
    map.resize(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Eigen::Vector3d x(i, j, k);
          const Eigen::Vector3d c = Eigen::Vector3d::Constant(0.5 * (n - 1));
          const Eigen::Vector3d src = inv * (x - c) + c;
          std::array<int, 3> s{};
          for (int d = 0; d < 3; ++d) {
            s[static_cast<std::size_t>(d)] = static_cast<int>(std::lround(src[d]));
            if (std::abs(src[d] - s[static_cast<std::size_t>(d)]) > 1e-9 || s[static_cast<std::size_t>(d)] < 0 ||
                s[static_cast<std::size_t>(d)] >= n)
              throw Error(ErrorKind::GridMismatch, "operation is not a symmetry of the grid");
          }
          (void)center;
          map[static_cast<std::size_t>((static_cast<Eigen::Index>(i) * n + j) * n + k)] =
              (static_cast<Eigen::Index>(s[0]) * n + s[1]) * n + s[2];
        }
    return map;
  }
  if (layout.dimension == 2 && layout.lattice == LatticeKind::Triangular) {
    const Eigen::Matrix<double, 2, 3> e = jacobi_matrix().bottomRows<2>();
    const Eigen::Matrix2d r_inv = e * inv * e.transpose();
    Eigen::Matrix2d basis;
    basis << std::sqrt(3.0) / 2.0, 0.0, 0.5, 1.0;
    const Eigen::Matrix2d lattice_op = basis.inverse() * r_inv * basis;
    const int width = layout.axes[0].points;
    const int reach = (width - 1) / 2;
    map.assign(static_cast<std::size_t>(width) * width, -1);
    for (int i = -reach; i <= reach; ++i)
      for (int j = -reach; j <= reach; ++j) {
        const Eigen::Vector2d src = lattice_op * Eigen::Vector2d(i, j);
        const int si = static_cast<int>(std::lround(src[0])), sj = static_cast<int>(std::lround(src[1]));
        if (std::abs(src[0] - si) > 1e-9 || std::abs(src[1] - sj) > 1e-9)
          throw Error(ErrorKind::GridMismatch, "operation is not a lattice symmetry");
        if (std::abs(si) > reach || std::abs(sj) > reach) continue;
        map[static_cast<std::size_t>((i + reach) * width + (j + reach))] =
            static_cast<Eigen::Index>(si + reach) * width + (sj + reach);
      }
    return map;
  }
  throw Error(ErrorKind::GridMismatch, "grid symmetry map: unsupported layout");
}

/// Applies a grid symmetry map to a compact vector of `hamiltonian`'s active sites.
inline Eigen::VectorXd apply_symmetry_compact(const DiscreteHamiltonian& hamiltonian,
                                              const std::vector<Eigen::Index>& map, const Eigen::VectorXd& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (std::size_t a = 0; a < hamiltonian.active.size(); ++a) {
    const Eigen::Index src = map[static_cast<std::size_t>(hamiltonian.active[a])];
    if (src < 0) continue;
    const Eigen::Index c = hamiltonian.compact[static_cast<std::size_t>(src)];
    if (c >= 0) out[static_cast<Eigen::Index>(a)] = v[c];
  }
  return out;
}

// -------------------------------------------------------------- solving

struct OracleOptions {
  bool richardson = true;
  bool want_vectors = false;
  bool check_box = true;
  double box_tolerance = 1e-6;
  /// Relative grid-halving change above which singular models are rejected.
  double singular_tolerance = 1e-3;
  /// Sparse Cholesky shift-invert (fast in 2D); plain block Lanczos otherwise.
  bool shift_invert = true;
  EigenSolverOptions solver{};
};

struct OracleResult {
  Eigen::VectorXd eigenvalues;   // extrapolated when richardson, else raw
  Eigen::VectorXd raw;           // finest grid
  Eigen::VectorXd coarse;        // doubled spacing (empty without richardson)
  Eigen::VectorXd convergence;   // |extrapolated - raw|
  std::vector<WaveFunctionGrid> eigenvectors;
  double max_residual = 0.0;     // relative ||H psi - E psi|| / ||psi|| on the finest grid
  double wall_time = 0.0;        // seconds
};

namespace detail {

/// Shift-invert: Lanczos on -(H - sigma)^{-1} with sigma below the spectrum
/// (Gershgorin bound), then Rayleigh quotients and residuals in H itself.
inline EigenResult solve_discrete(const DiscreteHamiltonian& h, int k, const EigenSolverOptions& options,
                                  bool shift_invert) {
  const SparseMatrix& m = h.matrix;
  if (!shift_invert) {
    BlockOperator op = [&m](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) { out.noalias() = m * in; };
    return lowest_eigenpairs(op, h.dimension(), k, options);
  }
  double sigma = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    double centre = 0.0, radius = 0.0;
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.col() == r) centre = it.value();
      else radius += std::abs(it.value());
    }
    sigma = std::min(sigma, centre - radius);
  }
  sigma -= 1.0;
  Eigen::SparseMatrix<double> shifted = m;
  for (Eigen::Index r = 0; r < shifted.rows(); ++r) shifted.coeffRef(r, r) -= sigma;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> factor(shifted);
  if (factor.info() != Eigen::Success) throw Error(ErrorKind::NotConverged, "shift-invert factorisation failed");
  BlockOperator op = [&factor](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) { out = -factor.solve(in); };
  EigenSolverOptions inner = options;
  inner.tolerance = std::min(options.tolerance, 1e-12);
  EigenResult r = lowest_eigenpairs(op, h.dimension(), k, inner);
  const Eigen::MatrixXd hv = m * r.vectors;
  for (Eigen::Index c = 0; c < r.vectors.cols(); ++c) {
    r.values[c] = r.vectors.col(c).dot(hv.col(c));
    r.residuals[c] = (hv.col(c) - r.values[c] * r.vectors.col(c)).norm();
  }
  return r;
}

inline void check_box(const DiscreteHamiltonian& h, const EigenResult& r, double tolerance) {
  for (Eigen::Index c = 0; c < r.vectors.cols(); ++c) {
    const auto v = r.vectors.col(c);
    const double peak = v.cwiseAbs().maxCoeff();
    double edge = 0.0;
    for (std::size_t a = 0; a < h.touches_box.size(); ++a)
      if (h.touches_box[a]) edge = std::max(edge, std::abs(v[static_cast<Eigen::Index>(a)]));
    if (edge > tolerance * peak)
      throw Error(ErrorKind::BoxTooSmall, "eigenvector " + std::to_string(c) + " reaches the box edge (ratio " +
                                              std::to_string(edge / peak) + ")");
  }
}

/// `build(level)` returns the fine (level 0) or coarse (level 1) operator.
template <class Build>
OracleResult run_oracle(Build&& build, int k, const OracleOptions& options, double energy_unit, bool singular) {
  const auto start = std::chrono::steady_clock::now();
  OracleResult result;
  const DiscreteHamiltonian fine = build(0);
  const EigenResult rf = solve_discrete(fine, k, options.solver, options.shift_invert);
  if (options.check_box) check_box(fine, rf, options.box_tolerance);
  result.raw = (rf.values.array() + fine.energy_offset) * energy_unit;
  for (Eigen::Index c = 0; c < rf.values.size(); ++c)
    result.max_residual = std::max(result.max_residual, rf.residuals[c] / std::max(1.0, std::abs(rf.values[c])));

  if (options.richardson) {
    const DiscreteHamiltonian coarse = build(1);
    const EigenResult rc = solve_discrete(coarse, k, options.solver, options.shift_invert);
    result.coarse = (rc.values.array() + coarse.energy_offset) * energy_unit;
    const double hf2 = fine.spacing * fine.spacing, hc2 = coarse.spacing * coarse.spacing;
    result.eigenvalues = (hc2 * result.raw - hf2 * result.coarse) / (hc2 - hf2);
    result.convergence = (result.eigenvalues - result.raw).cwiseAbs();
    if (singular) {
      for (Eigen::Index c = 0; c < result.raw.size(); ++c) {
        const double rel = std::abs(result.raw[c] - result.coarse[c]) / std::abs(result.raw[c]);
        if (rel > options.singular_tolerance)
          throw Error(ErrorKind::SingularPotentialUnresolved,
                      "grid-halving change " + std::to_string(rel) + " exceeds tolerance; refine the grid");
      }
    }
  } else {
    result.eigenvalues = result.raw;
    result.convergence = Eigen::VectorXd::Zero(result.raw.size());
  }

  if (options.want_vectors) {
    const double scale = 1.0 / std::sqrt(fine.layout.cell_volume());
    for (Eigen::Index c = 0; c < rf.vectors.cols(); ++c) {
      Eigen::VectorXcd v = rf.vectors.col(c).cast<std::complex<double>>() * scale;
      result.eigenvectors.push_back(fine.to_grid(v));
    }
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace detail

struct RelativeOracleOptions : OracleOptions {
  bool sector_only = false;
};

/// Lowest k eigenvalues of the relative motion alone (centre of mass
/// separated; add hbar w (eta + 1/2) for total energies). Levels are counted
/// with multiplicity; `sector_only` solves the single wedge x1>x2>x3.
inline OracleResult relative_spectrum_2d(const ModelSpec& spec, const RelativeGrid& grid, int k,
                                         RelativeOracleOptions options = {}) {
  require_valid(spec);
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  const NaturalModel nat = to_natural_units(spec);
  if (!is_harmonic_like(nat.spec.trap))
    throw Error(ErrorKind::UnsupportedTrap, "relative oracle needs a harmonic-like trap");
  const bool singular = has_coincidence_walls(nat.spec.interaction);
  auto build = [&](int level) {
    return relative_hamiltonian(nat.spec, RelativeGrid{grid.radius, grid.spacing * (level + 1)}, options.sector_only);
  };
  return detail::run_oracle(build, k, options, nat.energy_unit, singular);
}

/// Lowest k eigenvalues of the full three-particle problem on a cube.
inline OracleResult full_spectrum_3d(const ModelSpec& spec, const Axis& axis, int k, OracleOptions options = {}) {
  require_valid(spec);
  if (axis.points > 128 || k > 20) throw Error(ErrorKind::ResourceBudgetExceeded, "3D oracle limited to N <= 128, k <= 20");
  if (axis.points < 8 || k < 1) throw Error(ErrorKind::InvalidArgument, "3D oracle needs N >= 8 and k >= 1");
  const NaturalModel nat = to_natural_units(spec);
  if (std::holds_alternative<InfiniteWell>(nat.spec.trap)) options.check_box = false;
  const Axis a = trap_axis(nat.spec.trap, axis);
  auto build = [&](int level) {
    const int intervals = level == 0 ? a.points + 1 : (a.points + 1) / 2;
    return full_hamiltonian_3d(nat.spec, Axis{a.min, a.max, intervals - 1});
  };
  return detail::run_oracle(build, k, options, nat.energy_unit, has_coincidence_walls(nat.spec.interaction));
}

/// H psi with exactly the operator used for diagonalisation. `psi` must live on
/// the layout `full_hamiltonian_3d` / `relative_hamiltonian` (with the same
/// arguments) produce; the result is in the caller's energy units.
inline WaveFunctionGrid apply_hamiltonian(const DiscreteHamiltonian& hamiltonian, const WaveFunctionGrid& psi,
                                          double energy_unit = 1.0) {
  if (!same_grid(hamiltonian.to_grid(Eigen::VectorXcd::Zero(hamiltonian.dimension())), psi))
    throw Error(ErrorKind::GridMismatch, "wave function grid does not match the Hamiltonian");
  const Eigen::VectorXcd v = hamiltonian.to_compact(psi);
  Eigen::VectorXcd hv(v.size());
  hv.real() = hamiltonian.matrix * v.real();
  hv.imag() = hamiltonian.matrix * v.imag();
  hv += hamiltonian.energy_offset * v;
  return hamiltonian.to_grid(hv * energy_unit);
}

inline WaveFunctionGrid apply_hamiltonian(const ModelSpec& spec, const WaveFunctionGrid& psi) {
  const NaturalModel nat = to_natural_units(spec);
  if (psi.dimension == 3 && psi.lattice == LatticeKind::Rectangular && !psi.axes.empty())
    return apply_hamiltonian(full_hamiltonian_3d(nat.spec, psi.axes[0]), psi, nat.energy_unit);
  if (psi.dimension == 2 && psi.lattice == LatticeKind::Triangular && psi.axes.size() == 2)
    return apply_hamiltonian(relative_hamiltonian(nat.spec, RelativeGrid{psi.axes[0].max, psi.lattice_spacing}), psi,
                             nat.energy_unit);
  throw Error(ErrorKind::GridMismatch, "apply_hamiltonian: unsupported grid");
}

}  // namespace threebody
