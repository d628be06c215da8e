#pragma once

// Closed-form spectra of the three solvable interacting models in a harmonic
// trap, and the sector construction for the unitary contact limit.
//
//   harmonic pair interaction:  E = hbar w (eta + 1/2) + hbar w_rel (2 nu + |mu| + 1),
//                               w_rel^2 = w^2 + 6 gamma / m, mu signed
//   inverse-square (4 gamma / r^2 per pair, i.e. 18 gamma / (rho^2 cos^2 3 phi)):
//                               E = hbar w [eta + 2 nu + |mu| + 3/2 (2 + sqrt(1 + 16 m gamma / hbar^2))],
//                               mu = 0, 3, 6, ... ; six sector copies per level
//   unitary contact:            fermionic sums eps_n1 + eps_n2 + eps_n3, n1 < n2 < n3, six copies

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "threebody/grid.hpp"
#include "threebody/jacobi.hpp"
#include "threebody/noninteracting.hpp"
#include "threebody/one_body.hpp"

namespace threebody {

/// Coefficient k in w_rel^2 = w^2 + k gamma / m for the harmonic pair interaction.
inline constexpr double kHarmHarmCoefficient = 6.0;
/// Constant c in sqrt(1 + c m gamma / hbar^2) for the inverse-square model.
inline constexpr double kCalogeroRadicalConstant = 16.0;

struct SilverLevel {
  int eta = 0;
  int nu = 0;
  int mu = 0;
  double energy = 0.0;
  int degeneracy = 1;  // independent states carried by this label
};

inline double harm_harm_relative_frequency(double omega, double gamma, double mass = 1.0) {
  return std::sqrt(omega * omega + kHarmHarmCoefficient * gamma / mass);
}

inline double harm_harm_energy(double omega, double gamma, int eta, int nu, int mu, double mass = 1.0,
                               double hbar = 1.0) {
  return hbar * omega * (eta + 0.5) + hbar * harm_harm_relative_frequency(omega, gamma, mass) * (2 * nu + std::abs(mu) + 1);
}

inline double calogero_energy(double omega, double gamma, int eta, int nu, int mu, double mass = 1.0,
                              double hbar = 1.0) {
  const double root = std::sqrt(1.0 + kCalogeroRadicalConstant * mass * gamma / (hbar * hbar));
  return hbar * omega * (eta + 2 * nu + std::abs(mu) + 1.5 * (2.0 + root));
}

namespace detail {

inline void sort_levels(std::vector<SilverLevel>& levels) {
  std::sort(levels.begin(), levels.end(), [](const SilverLevel& a, const SilverLevel& b) {
    return std::tie(a.energy, a.eta, a.nu, a.mu) < std::tie(b.energy, b.eta, b.nu, b.mu);
  });
}

inline void require_oscillator(double omega, double gamma, double mass, double hbar) {
  if (!(omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "omega must be positive");
  if (!(gamma >= 0.0)) throw Error(ErrorKind::NegativeCoupling, "gamma must be >= 0");
  if (!(mass > 0.0) || !(hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "mass and hbar must be positive");
}

}  // namespace detail

/// Every (eta, nu, mu) with E <= e_max, ascending.
inline std::vector<SilverLevel> harm_harm_spectrum(double omega, double gamma, double e_max, double mass = 1.0,
                                                   double hbar = 1.0) {
  detail::require_oscillator(omega, gamma, mass, hbar);
  const double w_rel = harm_harm_relative_frequency(omega, gamma, mass);
  const double slack = 1e-12 * std::max(1.0, std::abs(e_max));
  std::vector<SilverLevel> levels;
  for (int eta = 0; hbar * omega * (eta + 0.5) + hbar * w_rel <= e_max + slack; ++eta)
    for (int n = 0;; ++n) {  // n = 2 nu + |mu|
      const double e = hbar * omega * (eta + 0.5) + hbar * w_rel * (n + 1);
      if (e > e_max + slack) break;
      for (int nu = 0; 2 * nu <= n; ++nu) {
        const int m = n - 2 * nu;
        levels.push_back({eta, nu, m, e, 1});
        if (m != 0) levels.push_back({eta, nu, -m, e, 1});
      }
    }
  detail::sort_levels(levels);
  return levels;
}

/// Every (eta, nu, mu = 3j) with E <= e_max; each label stands for the six
/// sector copies, so degeneracy = 6.
inline std::vector<SilverLevel> calogero_moser_spectrum(double omega, double gamma, double e_max, double mass = 1.0,
                                                        double hbar = 1.0) {
  detail::require_oscillator(omega, gamma, mass, hbar);
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "inverse-square coupling must be positive");
  const double slack = 1e-12 * std::max(1.0, std::abs(e_max));
  std::vector<SilverLevel> levels;
  for (int eta = 0; calogero_energy(omega, gamma, eta, 0, 0, mass, hbar) <= e_max + slack; ++eta)
    for (int nu = 0; calogero_energy(omega, gamma, eta, nu, 0, mass, hbar) <= e_max + slack; ++nu)
      for (int mu = 0;; mu += 3) {
        const double e = calogero_energy(omega, gamma, eta, nu, mu, mass, hbar);
        if (e > e_max + slack) break;
        levels.push_back({eta, nu, mu, e, 6});
      }
  detail::sort_levels(levels);
  return levels;
}

// ------------------------------------------------------- unitary contact

/// Sector (i j k) holds x_i > x_j > x_k; ordering (123),(132),(213),(231),(312),(321).
inline const std::array<Permutation, 6>& sector_permutations() {
  static const std::array<Permutation, 6> s = {Permutation(1, 2, 3), Permutation(1, 3, 2), Permutation(2, 1, 3),
                                               Permutation(2, 3, 1), Permutation(3, 1, 2), Permutation(3, 2, 1)};
  return s;
}

inline std::string sector_label(int s) {
  const auto& p = sector_permutations()[static_cast<std::size_t>(s)].image();
  return "(" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]) + ")";
}

/// Index of the sector containing a configuration with pairwise distinct coordinates.
inline int sector_of(const std::array<double, 3>& x) {
  std::array<int, 3> order = {1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x[static_cast<std::size_t>(a - 1)] > x[static_cast<std::size_t>(b - 1)]; });
  const auto& s = sector_permutations();
  for (int i = 0; i < 6; ++i)
    if (s[static_cast<std::size_t>(i)].image() == order) return i;
  return -1;
}

/// Sector index reached from sector s by the permutation g.
inline int sector_image(const Permutation& g, int s) {
  const Permutation target = g * sector_permutations()[static_cast<std::size_t>(s)];
  const auto& all = sector_permutations();
  for (int i = 0; i < 6; ++i)
    if (all[static_cast<std::size_t>(i)] == target) return i;
  return -1;
}

/// Permutation matrix of g on the six sector copies.
inline Eigen::MatrixXd sector_representation(const Permutation& g) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
  for (int s = 0; s < 6; ++s) m(sector_image(g, s), s) = 1.0;
  return m;
}

struct SectorState {
  Multiset base{};                 // strictly increasing
  Eigen::Matrix<double, 6, 1> amplitudes = Eigen::Matrix<double, 6, 1>::Zero();
};

inline void validate(const SectorState& s) {
  if (!(s.base[0] >= 0 && s.base[0] < s.base[1] && s.base[1] < s.base[2]))
    throw Error(ErrorKind::InvalidArgument, "sector state base must be strictly increasing");
  if (std::abs(s.amplitudes.norm() - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "sector amplitudes must be normalised");
}

/// Amplitude patterns: sgn(s)/sqrt6 gives the free-fermion state, 1/sqrt6 the Girardeau boson state.
inline SectorState fermionic_sector_state(const Multiset& base) {
  SectorState s{base, {}};
  for (int i = 0; i < 6; ++i) s.amplitudes[i] = sector_permutations()[static_cast<std::size_t>(i)].sign() / std::sqrt(6.0);
  return s;
}

inline SectorState bosonic_sector_state(const Multiset& base) {
  SectorState s{base, {}};
  s.amplitudes.setConstant(1.0 / std::sqrt(6.0));
  return s;
}

struct UnitaryLevel {
  double energy = 0.0;
  Multiset base{};
  int degeneracy = 6;
  std::vector<SectorState> basis;  // one unit vector per sector
};

inline std::vector<UnitaryLevel> unitary_contact_spectrum(const OneBodySpectrum& one_body, double e_max) {
  const auto& eps = one_body.energies;
  if (eps.size() < 3) throw Error(ErrorKind::TruncationRisk, "one-body spectrum needs at least three levels");
  if (!std::is_sorted(eps.begin(), eps.end())) throw Error(ErrorKind::InvalidArgument, "one-body spectrum not sorted");
  if (!(eps[0] + eps[1] + eps.back() > e_max))
    throw Error(ErrorKind::TruncationRisk, "one-body spectrum too short for e_max; extend n_max");
  const double slack = grouping_tolerance(one_body, e_max);
  const int n = static_cast<int>(eps.size());
  std::vector<UnitaryLevel> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const double e = eps[static_cast<std::size_t>(a)] + eps[static_cast<std::size_t>(b)] + eps[static_cast<std::size_t>(c)];
        if (e > e_max + slack) break;
        UnitaryLevel level{e, {a, b, c}, 6, {}};
        for (int s = 0; s < 6; ++s) {
          SectorState st{{a, b, c}, {}};
          st.amplitudes[s] = 1.0;
          level.basis.push_back(st);
        }
        out.push_back(std::move(level));
      }
  std::stable_sort(out.begin(), out.end(), [](const UnitaryLevel& x, const UnitaryLevel& y) {
    return std::tie(x.energy, x.base) < std::tie(y.energy, y.base);
  });
  return out;
}

/// psi = sum_s a_s f_s with f_s = sqrt6 sgn(s) 1_{sector s} A, where A is the
/// normalised Slater determinant of the finite-difference one-body states of
/// `trap` on `axis`. Coincidence points are exactly zero, so psi is an exact
/// eigenvector of the hard-wall grid Hamiltonian built on the same axis.
inline WaveFunctionGrid girardeau_wavefunction(const SectorState& state, const Trap& trap, const Axis& requested_axis,
                                               double mass = 1.0, double hbar = 1.0) {
  validate(state);
  const Axis axis = trap_axis(trap, requested_axis);
  const int top = state.base[2];
  if (axis.points < 4 * (top + 2))
    throw Error(ErrorKind::GridResolutionTooCoarse, "axis too coarse for orbital " + std::to_string(top));
  const OneBodyStates orbitals = grid_states(trap, axis, top + 1, mass, hbar);
  const int n = axis.points;
  const auto phi = [&](int orbital, int i) { return orbitals.vectors(i, orbital); };

  WaveFunctionGrid out;
  out.dimension = 3;
  out.lattice = LatticeKind::Rectangular;
  out.axes = {axis, axis, axis};
  out.amplitude.assign(static_cast<std::size_t>(n) * n * n, {0.0, 0.0});
  const auto& perms = sector_permutations();
  const double norm = 1.0 / std::sqrt(6.0);
  double peak = 0.0, on_planes = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::array<int, 3> idx = {i, j, k};
        Eigen::Matrix3d slater;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) slater(r, c) = phi(state.base[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
        const double a = norm * slater.determinant();
        peak = std::max(peak, std::abs(a));
        if (i == j || j == k || i == k) {
          on_planes = std::max(on_planes, std::abs(a));
          continue;
        }
        const int s = sector_of({static_cast<double>(i), static_cast<double>(j), static_cast<double>(k)});
        const double value = std::sqrt(6.0) * perms[static_cast<std::size_t>(s)].sign() * state.amplitudes[s] * a;
        out.amplitude[static_cast<std::size_t>((i * n + j) * n + k)] = value;
      }
  if (on_planes > 1e-6 * peak)
    throw Error(ErrorKind::GridResolutionTooCoarse, "Slater determinant does not vanish on the coincidence planes");
  out.normalize();
  return out;
}

// --------------------------------------------------------------- export

inline std::string silver_levels_to_csv(const std::string& model, const std::vector<SilverLevel>& levels) {
  std::ostringstream out;
  out << "model,quantum_numbers,energy,degeneracy\n";
  for (const auto& l : levels)
    out << model << ",eta=" << l.eta << " nu=" << l.nu << " mu=" << l.mu << ',' << format_number(l.energy) << ','
        << l.degeneracy << '\n';
  return out.str();
}

inline std::string unitary_levels_to_csv(const std::vector<UnitaryLevel>& levels) {
  std::ostringstream out;
  out << "model,quantum_numbers,energy,degeneracy\n";
  for (const auto& l : levels)
    out << "unitary-contact," << multiset_label(l.base) << ',' << format_number(l.energy) << ',' << l.degeneracy << '\n';
  return out.str();
}

inline nlohmann::json to_json(const SectorState& s) {
  nlohmann::json j;
  j["base"] = {s.base[0], s.base[1], s.base[2]};
  nlohmann::json amps = nlohmann::json::object();
  for (int i = 0; i < 6; ++i) amps[sector_label(i)] = s.amplitudes[i];
  j["amplitudes"] = amps;
  return j;
}

}  // namespace threebody
