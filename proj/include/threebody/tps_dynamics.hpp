#pragma once

// Tensor-product bookkeeping for truncated three-particle states: Schmidt
// decompositions across arbitrary bipartitions, time evolution in labelled
// eigenbases, and operator-algebra checks (oscillator ladder, the nine
// conserved quantities of the free oscillator, locality of H on a gold TPS).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "threebody/core_model.hpp"
#include "threebody/eigensolver.hpp"
#include "threebody/jacobi.hpp"
#include "threebody/oscillator_ops.hpp"
#include "threebody/solvable.hpp"

namespace threebody {

enum class FactorKind { Particle, Spatial, Spin, Gold, Sector, Base };

constexpr std::string_view to_string(FactorKind k) {
  switch (k) {
    case FactorKind::Particle: return "particle";
    case FactorKind::Spatial: return "spatial";
    case FactorKind::Spin: return "spin";
    case FactorKind::Gold: return "gold";
    case FactorKind::Sector: return "sector";
    case FactorKind::Base: return "base";
  }
  return "?";
}

struct Factor {
  FactorKind kind = FactorKind::Spatial;
  int index = 0;  // particle or gold-mode number where relevant
  int dimension = 1;

  std::string label() const { return std::string(to_string(kind)) + (index > 0 ? std::to_string(index) : ""); }
};

/// Coefficients over the product basis of `factors`, first factor slowest.
struct TruncatedState {
  std::vector<Factor> factors;
  Eigen::VectorXcd coefficients;

  Eigen::Index dimension() const {
    Eigen::Index d = 1;
    for (const auto& f : factors) d *= f.dimension;
    return d;
  }
  void normalize() { coefficients /= coefficients.norm(); }
};

inline void validate(const TruncatedState& s) {
  if (s.coefficients.size() != s.dimension())
    throw Error(ErrorKind::DimensionMismatch, "coefficient count does not match the factor dimensions");
  if (std::abs(s.coefficients.norm() - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "state is not normalised");
}

/// Factors (by position in the state's factor list) forming the left side of a cut.
struct TPSBipartition {
  std::vector<int> left;
};

struct SchmidtResult {
  Eigen::VectorXd coefficients;  // descending, sum of squares 1
  Eigen::MatrixXcd left;         // columns: left Schmidt vectors
  Eigen::MatrixXcd right;
  double entropy = 0.0;          // -sum l^2 ln l^2
};

namespace detail {

inline std::vector<Eigen::Index> strides(const std::vector<Factor>& factors) {
  std::vector<Eigen::Index> s(factors.size(), 1);
  for (int k = static_cast<int>(factors.size()) - 2; k >= 0; --k)
    s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k) + 1] * factors[static_cast<std::size_t>(k) + 1].dimension;
  return s;
}

}  // namespace detail

/// Coefficient matrix M(l, r) of the state across the cut.
inline Eigen::MatrixXcd cut_matrix(const TruncatedState& state, const TPSBipartition& cut) {
  validate(state);
  const auto n = state.factors.size();
  std::vector<char> on_left(n, 0);
  for (int f : cut.left) {
    if (f < 0 || static_cast<std::size_t>(f) >= n || on_left[static_cast<std::size_t>(f)])
      throw Error(ErrorKind::DimensionMismatch, "bipartition refers to an invalid or repeated factor");
    on_left[static_cast<std::size_t>(f)] = 1;
  }
  Eigen::Index dl = 1, dr = 1;
  for (std::size_t k = 0; k < n; ++k) (on_left[k] ? dl : dr) *= state.factors[k].dimension;
  const auto stride = detail::strides(state.factors);
  Eigen::MatrixXcd m(dl, dr);
  for (Eigen::Index idx = 0; idx < state.dimension(); ++idx) {
    Eigen::Index l = 0, r = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Eigen::Index digit = (idx / stride[k]) % state.factors[k].dimension;
      if (on_left[k]) l = l * state.factors[k].dimension + digit;
      else r = r * state.factors[k].dimension + digit;
    }
    m(l, r) = state.coefficients[idx];
  }
  return m;
}

inline double entanglement_entropy(const Eigen::VectorXd& lambda) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double p = lambda[i] * lambda[i];
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

inline SchmidtResult schmidt(const TruncatedState& state, const TPSBipartition& cut) {
  const Eigen::MatrixXcd m = cut_matrix(state, cut);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtResult r;
  r.coefficients = svd.singularValues();
  r.left = svd.matrixU();
  r.right = svd.matrixV().conjugate();
  r.entropy = entanglement_entropy(r.coefficients);
  return r;
}

/// max_j |a_j - b_j| between descending Schmidt spectra (shorter one zero-padded).
inline double schmidt_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = std::max(a.size(), b.size());
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) d = std::max(d, std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0)));
  return d;
}

// ---------------------------------------------------------------- evolution

/// c -> c e^{-i E t / hbar}; one energy per basis vector of the state.
inline TruncatedState evolve(const TruncatedState& state, const Eigen::VectorXd& energies, double t, double hbar = 1.0) {
  if (energies.size() != state.coefficients.size())
    throw Error(ErrorKind::MissingEnergyLabel, "need one energy per basis vector (" + std::to_string(state.coefficients.size()) +
                                                   "), got " + std::to_string(energies.size()));
  for (Eigen::Index i = 0; i < energies.size(); ++i)
    if (!std::isfinite(energies[i])) throw Error(ErrorKind::MissingEnergyLabel, "basis vector " + std::to_string(i) + " has no energy");
  TruncatedState out = state;
  for (Eigen::Index i = 0; i < energies.size(); ++i) out.coefficients[i] *= std::polar(1.0, -energies[i] * t / hbar);
  return out;
}

/// Energy labels for a Hamiltonian acting on a single factor (identity elsewhere).
inline Eigen::VectorXd factor_energies(const std::vector<Factor>& factors, int factor, const std::vector<double>& energies) {
  if (static_cast<int>(energies.size()) != factors[static_cast<std::size_t>(factor)].dimension)
    throw Error(ErrorKind::MissingEnergyLabel, "factor energies do not cover the factor basis");
  const auto stride = detail::strides(factors);
  Eigen::Index total = 1;
  for (const auto& f : factors) total *= f.dimension;
  Eigen::VectorXd e(total);
  for (Eigen::Index i = 0; i < total; ++i)
    e[i] = energies[static_cast<std::size_t>((i / stride[static_cast<std::size_t>(factor)]) % factors[static_cast<std::size_t>(factor)].dimension)];
  return e;
}

/// Evolves a state: returns the state at time t.
using Propagator = std::function<TruncatedState(const TruncatedState&, double)>;

inline Propagator eigenbasis_propagator(Eigen::VectorXd energies, double hbar = 1.0) {
  return [energies = std::move(energies), hbar](const TruncatedState& s, double t) { return evolve(s, energies, t, hbar); };
}

/// exp(-i H t / hbar) through a dense eigendecomposition of a Hermitian matrix.
inline Propagator hamiltonian_propagator(const Eigen::MatrixXcd& h, double hbar = 1.0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
  Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::VectorXd e = es.eigenvalues();
  return [v = std::move(v), e = std::move(e), hbar](const TruncatedState& s, double t) {
    if (s.coefficients.size() != v.rows()) throw Error(ErrorKind::DimensionMismatch, "state and Hamiltonian dimensions differ");
    Eigen::VectorXcd c = v.adjoint() * s.coefficients;
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -e[i] * t / hbar);
    TruncatedState out = s;
    out.coefficients = v * c;
    return out;
  };
}

/// max over times of the distance between Schmidt spectra at t and at 0.
inline double schmidt_invariance_check(const TruncatedState& state, const TPSBipartition& cut, const Propagator& propagate,
                                       const std::vector<double>& times) {
  const Eigen::VectorXd initial = schmidt(state, cut).coefficients;
  double worst = 0.0;
  for (double t : times) worst = std::max(worst, schmidt_distance(schmidt(propagate(state, t), cut).coefficients, initial));
  return worst;
}

inline std::vector<double> random_times(int count, double t_max, std::uint64_t seed) {
  detail::SplitMix rng(seed);
  std::vector<double> t;
  for (int i = 0; i < count; ++i) t.push_back(0.5 * (rng.uniform() + 1.0) * t_max);
  return t;
}

inline TruncatedState random_state(std::vector<Factor> factors, std::uint64_t seed) {
  detail::SplitMix rng(seed);
  TruncatedState s{std::move(factors), {}};
  s.coefficients.resize(s.dimension());
  for (Eigen::Index i = 0; i < s.coefficients.size(); ++i) s.coefficients[i] = Complex(rng.uniform(), rng.uniform());
  s.normalize();
  return s;
}

// ------------------------------------------------------------- spin states

/// P3 action on product labels (particle i's label moves to slot g(i)) for
/// three factors of dimension d each: returns the permutation matrix.
inline Eigen::MatrixXd label_permutation_matrix(const Permutation& g, int d) {
  const int n = d * d * d;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const std::array<int, 3> t = {c / (d * d), (c / d) % d, c % d};
    std::array<int, 3> u{};
    for (int i = 1; i <= 3; ++i) u[static_cast<std::size_t>(g(i) - 1)] = t[static_cast<std::size_t>(i - 1)];
    m((u[0] * d + u[1]) * d + u[2], c) = 1.0;
  }
  return m;
}

/// (1/6) sum_g s(g) U_sector(g) (x) U_spin(g) applied to e_sector (x) |spins>, normalised.
/// sign = -1 gives the fermionic (totally antisymmetric) combination, +1 the bosonic one.
inline TruncatedState symmetrized_sector_spin_state(int sector, const std::array<int, 3>& spins, int spin_dim, int sign) {
  std::vector<Factor> factors = {{FactorKind::Sector, 0, 6}, {FactorKind::Spin, 0, spin_dim * spin_dim * spin_dim}};
  Eigen::VectorXcd seed = Eigen::VectorXcd::Zero(6 * factors[1].dimension);
  seed[sector * factors[1].dimension + (spins[0] * spin_dim + spins[1]) * spin_dim + spins[2]] = 1.0;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(seed.size());
  for (const auto& g : Permutation::all()) {
    const Eigen::MatrixXd u = dense_kron(sector_representation(g), label_permutation_matrix(g, spin_dim));
    sum += (sign < 0 ? g.sign() : 1) * (u.cast<Complex>() * seed);
  }
  TruncatedState s{factors, sum};
  if (s.coefficients.norm() < 1e-12) throw Error(ErrorKind::InvalidArgument, "symmetrized state vanishes");
  s.normalize();
  return s;
}

// ---------------------------------------------------------------- reports

struct CheckReport {
  std::string check;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = false;
};

inline CheckReport at_most(std::string name, double residual, double tolerance) {
  return {std::move(name), tolerance, residual, residual <= tolerance};
}

/// Negative controls pass when the residual exceeds the threshold.
inline CheckReport at_least(std::string name, double residual, double threshold) {
  return {std::move(name), threshold, residual, residual > threshold};
}

inline nlohmann::json to_json(const CheckReport& r) {
  return {{"check", r.check}, {"tolerance", r.tolerance}, {"max_residual", r.max_residual}, {"pass", r.pass}};
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

// ------------------------------------------------------------------ ladder

inline constexpr int kEdgeExclusion = 4;

struct LadderOperators {
  Eigen::MatrixXcd x, p, h, w_plus, w_minus;
};

/// W+ = (1 / 4 sqrt2) (P^2 / (m hbar w) - m w X^2 / hbar + i (XP + PX) / hbar), W- = (W+)^dagger.
inline LadderOperators ladder_operators(int n, const OscillatorUnits& u = {}) {
  LadderOperators l;
  l.x = position(n, u);
  l.p = momentum(n, u);
  l.h = l.p * l.p / (2.0 * u.mass) + 0.5 * u.mass * u.omega * u.omega * l.x * l.x;
  const Complex i(0.0, 1.0);
  l.w_plus = (l.p * l.p / (u.mass * u.hbar * u.omega) - u.mass * u.omega / u.hbar * l.x * l.x +
              i / u.hbar * (l.x * l.p + l.p * l.x)) /
             (4.0 * std::sqrt(2.0));
  l.w_minus = l.w_plus.adjoint();
  return l;
}

inline std::vector<CheckReport> ladder_check(int n, const OscillatorUnits& u = {}, double tolerance = 1e-8) {
  if (n < 20) throw Error(ErrorKind::InvalidArgument, "ladder_check needs N >= 20");
  const LadderOperators l = ladder_operators(n, u);
  std::vector<int> interior(static_cast<std::size_t>(n - kEdgeExclusion));
  std::iota(interior.begin(), interior.end(), 0);
  auto block_norm = [&](const Eigen::MatrixXcd& m) { return interior_block(m, interior).norm(); };
  const double two_hw = 2.0 * u.hbar * u.omega;
  return {
      at_most("ladder.[h,W+]-2hwW+", block_norm(l.h * l.w_plus - l.w_plus * l.h - two_hw * l.w_plus), tolerance),
      at_most("ladder.[h,W-]+2hwW-", block_norm(l.h * l.w_minus - l.w_minus * l.h + two_hw * l.w_minus), tolerance),
      at_most("ladder.[W+,W-]+h/2hw", block_norm(l.w_plus * l.w_minus - l.w_minus * l.w_plus + l.h / two_hw), tolerance),
  };
}

// ------------------------------------------------------- superintegrability

/// Quadratic three-mode Hamiltonian sum_k P_k^2 / 2m + Q^T K' Q on a product
/// oscillator basis (n states per mode, basis frequency u.omega), where
/// K' = T K T^T expresses the particle-space potential form K in the modes
/// q = T x.
inline SparseComplex quadratic_hamiltonian(const Eigen::Matrix3d& k, const Eigen::Matrix3d& t, int n, const OscillatorUnits& u) {
  const Eigen::Matrix3d kk = t * k * t.transpose();
  const Eigen::MatrixXcd x = position(n, u), p = momentum(n, u);
  std::array<SparseComplex, 3> q, pk;
  for (int m = 0; m < 3; ++m) {
    q[static_cast<std::size_t>(m)] = embed(x, m, n);
    pk[static_cast<std::size_t>(m)] = embed(p, m, n);
  }
  SparseComplex h(n * n * n, n * n * n);
  for (int a = 0; a < 3; ++a) {
    h += SparseComplex(pk[static_cast<std::size_t>(a)] * pk[static_cast<std::size_t>(a)]) * Complex(1.0 / (2.0 * u.mass));
    for (int b = 0; b < 3; ++b)
      if (kk(a, b) != 0.0) h += SparseComplex(q[static_cast<std::size_t>(a)] * q[static_cast<std::size_t>(b)]) * Complex(kk(a, b));
  }
  h.prune(Complex(0.0, 0.0));
  return h;
}

/// Potential form K of (1/2) m w^2 sum x_i^2 + gamma sum_{i<j} (x_i - x_j)^2.
inline Eigen::Matrix3d harmonic_potential_form(double omega, double gamma, double mass = 1.0) {
  const Eigen::Matrix3d pair = 3.0 * Eigen::Matrix3d::Identity() - Eigen::Matrix3d::Ones();
  return 0.5 * mass * omega * omega * Eigen::Matrix3d::Identity() + gamma * pair;
}

inline std::vector<CheckReport> superintegrability_check(int n, const OscillatorUnits& u = {}, double gamma_control = 0.5,
                                                         double tolerance = 1e-8, double control_threshold = 1e-2) {
  const int dim = n * n * n;
  const auto interior = interior_indices_3(n, kEdgeExclusion);
  const Eigen::MatrixXcd x = position(n, u), p = momentum(n, u);
  std::array<SparseComplex, 3> xs, ps;
  for (int m = 0; m < 3; ++m) {
    xs[static_cast<std::size_t>(m)] = embed(x, m, n);
    ps[static_cast<std::size_t>(m)] = embed(p, m, n);
  }
  const SparseComplex h = quadratic_hamiltonian(harmonic_potential_form(u.omega, 0.0, u.mass), Eigen::Matrix3d::Identity(), n, u);
  auto commutator_norm = [&](const SparseComplex& a, const SparseComplex& b) {
    const SparseComplex c = SparseComplex(a * b) - SparseComplex(b * a);
    return interior_norm(c, interior, dim);
  };

  std::vector<CheckReport> out;
  const double mw2 = u.mass * u.mass * u.omega * u.omega;
  for (int i = 0; i < 3; ++i) {
    const auto si = static_cast<std::size_t>(i);
    const SparseComplex hi = SparseComplex(ps[si] * ps[si]) * Complex(1.0 / (2.0 * u.mass)) +
                             SparseComplex(xs[si] * xs[si]) * Complex(0.5 * u.mass * u.omega * u.omega);
    out.push_back(at_most("superintegrability.h" + std::to_string(i + 1), commutator_norm(h, hi), tolerance));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
      const SparseComplex l = SparseComplex(xs[si] * ps[sj]) - SparseComplex(ps[si] * xs[sj]);
      out.push_back(at_most("superintegrability.L" + std::to_string(i + 1) + std::to_string(j + 1), commutator_norm(h, l), tolerance));
    }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
      const SparseComplex d = SparseComplex(ps[si] * ps[sj]) + SparseComplex(xs[si] * xs[sj]) * Complex(mw2);
      out.push_back(at_most("superintegrability.D" + std::to_string(i + 1) + std::to_string(j + 1), commutator_norm(h, d), tolerance));
    }

  // Interacting harmonic model: relative angular momentum q2 p3 - q3 p2 survives, h1 does not.
  const SparseComplex hi = quadratic_hamiltonian(harmonic_potential_form(u.omega, gamma_control, u.mass), Eigen::Matrix3d::Identity(), n, u);
  const Eigen::Matrix3d e = jacobi_matrix();
  SparseComplex l_rel(dim, dim);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double c = e(1, i) * e(2, j);
      if (c != 0.0)
        l_rel += (SparseComplex(xs[static_cast<std::size_t>(i)] * ps[static_cast<std::size_t>(j)]) -
                  SparseComplex(xs[static_cast<std::size_t>(j)] * ps[static_cast<std::size_t>(i)])) * Complex(c);
    }
  out.push_back(at_most("superintegrability.L_rel(interacting)", commutator_norm(hi, l_rel), tolerance));
  const SparseComplex h1 = SparseComplex(ps[0] * ps[0]) * Complex(1.0 / (2.0 * u.mass)) +
                           SparseComplex(xs[0] * xs[0]) * Complex(0.5 * u.mass * u.omega * u.omega);
  out.push_back(at_least("superintegrability.h1(interacting)_exceeds", commutator_norm(hi, h1), control_threshold));
  return out;
}

// ------------------------------------------------------------ gold locality

/// Part of H expressible as h_A (x) 1 (x) 1 + 1 (x) h_B (x) 1 + 1 (x) 1 (x) h_C
/// (Frobenius-orthogonal projection), for three factors of dimension n.
inline Eigen::MatrixXcd local_part(const Eigen::MatrixXcd& h, int n) {
  const int d = n * n * n;
  std::array<Eigen::MatrixXcd, 3> reduced;
  for (auto& r : reduced) r = Eigen::MatrixXcd::Zero(n, n);
  auto digit = [n](int idx, int slot) { return slot == 0 ? idx / (n * n) : (slot == 1 ? (idx / n) % n : idx % n); };
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (h(r, c) == Complex(0.0, 0.0)) continue;
      for (int slot = 0; slot < 3; ++slot) {
        bool others_equal = true;
        for (int o = 0; o < 3; ++o)
          if (o != slot && digit(r, o) != digit(c, o)) others_equal = false;
        if (others_equal) reduced[static_cast<std::size_t>(slot)](digit(r, slot), digit(c, slot)) += h(r, c);
      }
    }
  for (auto& red : reduced) red /= static_cast<double>(n * n);
  const Complex mean = h.trace() / static_cast<double>(d);
  Eigen::MatrixXcd l = Eigen::MatrixXcd(embed(reduced[0], 0, n)) + Eigen::MatrixXcd(embed(reduced[1], 1, n)) +
                       Eigen::MatrixXcd(embed(reduced[2], 2, n));
  l -= 2.0 * mean * Eigen::MatrixXcd::Identity(d, d);
  return l;
}

inline double locality_residual(const Eigen::MatrixXcd& h, int n) { return (h - local_part(h, n)).norm(); }

enum class ModeBasis { Jacobi, Particle };

/// H of a harmonic-like trap with harmonic (or no) pair interaction in a
/// truncated product oscillator basis of Jacobi or particle modes. The trap's
/// constant offset is dropped and its centre taken as origin (a local shift).
inline Eigen::MatrixXcd mode_hamiltonian(const ModelSpec& spec, int n, ModeBasis basis) {
  const NaturalModel nat = to_natural_units(spec);
  const auto view = harmonic_view(nat.spec.trap, nat.spec.mass);
  if (!view) throw Error(ErrorKind::UnsupportedTrap, "mode Hamiltonians need a harmonic-like trap");
  double gamma = 0.0;
  if (const auto* hi = std::get_if<HarmonicInteraction>(&nat.spec.interaction)) gamma = hi->gamma;
  else if (!std::holds_alternative<NoInteraction>(nat.spec.interaction))
    throw Error(ErrorKind::NotGold, "mode Hamiltonians cover harmonic or absent pair interactions only");
  const OscillatorUnits u{view->omega, nat.spec.mass, nat.spec.hbar};
  const Eigen::Matrix3d t = basis == ModeBasis::Jacobi ? jacobi_matrix() : Eigen::Matrix3d::Identity();
  return Eigen::MatrixXcd(quadratic_hamiltonian(harmonic_potential_form(view->omega, gamma, nat.spec.mass), t, n, u));
}

struct GoldCheckOptions {
  int modes = 8;            // basis states per mode
  int times = 50;
  double t_max = 10.0;
  std::uint64_t seed = 1;
  double locality_tolerance = 1e-8;
  double invariance_tolerance = 1e-10;
};

/// Requires a gold verdict; checks locality of H in Jacobi modes and
/// time-invariance of entanglement across every single-mode cut.
inline std::vector<CheckReport> gold_locality_check(const ModelSpec& spec, const GoldCheckOptions& options = {}) {
  if (classify_separability(spec).grade != SeparabilityGrade::Gold)
    throw Error(ErrorKind::NotGold, "model has no gold separation");
  const int n = options.modes;
  const Eigen::MatrixXcd h = mode_hamiltonian(spec, n, ModeBasis::Jacobi);
  std::vector<CheckReport> out;
  out.push_back(at_most("gold.locality(jacobi)", locality_residual(h, n), options.locality_tolerance));

  const auto propagate = hamiltonian_propagator(h, 1.0);
  const std::vector<Factor> factors = {{FactorKind::Gold, 1, n}, {FactorKind::Gold, 2, n}, {FactorKind::Gold, 3, n}};
  const TruncatedState psi = random_state(factors, options.seed);
  const auto times = random_times(options.times, options.t_max, options.seed + 1);
  double worst = 0.0;
  for (int f = 0; f < 3; ++f) worst = std::max(worst, schmidt_invariance_check(psi, {{f}}, propagate, times));
  out.push_back(at_most("gold.entanglement_invariance", worst, options.invariance_tolerance));
  return out;
}

}  // namespace threebody
