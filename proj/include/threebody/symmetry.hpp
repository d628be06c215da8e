#pragma once

// Finite symmetry groups of the three-particle problem and their
// representations.
//
// Elements are stored as configuration-space matrices O (acting on
// (x1, x2, x3)); a state transforms as (U(O) psi)(x) = psi(O^{-1} x).
//
//   S3  = P3                      order 6, irreps [3], [21], [1^3]
//   D3d = P3 x {1, Pi}            order 12, Pi total parity
//   D6h = P3 x {1, Pi_com} x {1, Pi_rel}   order 24
//
// The [21] irrep is realised by the action of P3 on the relative (q2, q3)
// plane: R(g) = E O(g) E^T with E the two relative Jacobi rows. Irreps of the
// product groups carry parity signs, e.g. "[21]-" (D3d) or "[21]+-" (D6h:
// centre-of-mass sign, then relative sign).

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "threebody/errors.hpp"
#include "threebody/jacobi.hpp"
#include "threebody/noninteracting.hpp"

namespace threebody {

enum class GroupName { S3, D3d, D6h };

constexpr std::string_view to_string(GroupName g) {
  switch (g) {
    case GroupName::S3: return "S3";
    case GroupName::D3d: return "D3d";
    case GroupName::D6h: return "D6h";
  }
  return "?";
}

struct GroupElement {
  std::string label;
  Eigen::Matrix3d matrix;
  Permutation permutation;  // P3 part
  int com_sign = 1;         // action on q1
  int rel_sign = 1;         // -1 when the element contains relative parity
};

struct Irrep {
  std::string label;
  std::string s3_label;                // [3], [21] or [1^3]
  int dimension = 1;
  std::vector<Eigen::MatrixXd> matrices;  // one per group element
};

struct GroupSpec {
  GroupName name = GroupName::S3;
  std::vector<GroupElement> elements;
  std::vector<std::vector<int>> table;    // table[a][b] = index of a * b
  std::vector<std::vector<int>> classes;  // conjugacy classes, ordered by first element
  std::vector<int> class_of;
  std::vector<Irrep> irreps;
  std::vector<std::vector<int>> characters;  // [irrep][class]

  int order() const { return static_cast<int>(elements.size()); }
  int identity() const { return 0; }
  int inverse(int g) const {
    for (int h = 0; h < order(); ++h)
      if (table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] == identity()) return h;
    return -1;
  }
  int character(int irrep, int element) const {
    return characters[static_cast<std::size_t>(irrep)][static_cast<std::size_t>(class_of[static_cast<std::size_t>(element)])];
  }
  int irrep_index(const std::string& label) const {
    for (std::size_t i = 0; i < irreps.size(); ++i)
      if (irreps[i].label == label) return static_cast<int>(i);
    throw Error(ErrorKind::InvalidArgument, "unknown irrep '" + label + "'");
  }
};

namespace detail {

inline Eigen::Matrix2d relative_plane_matrix(const Eigen::Matrix3d& o) {
  const Eigen::Matrix<double, 2, 3> e = jacobi_matrix().bottomRows<2>();
  return e * o * e.transpose();
}

inline Eigen::MatrixXd scalar(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

inline void verify_group(GroupSpec& g) {
  const int n = g.order();
  g.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Eigen::Matrix3d prod = g.elements[static_cast<std::size_t>(a)].matrix * g.elements[static_cast<std::size_t>(b)].matrix;
      for (int c = 0; c < n; ++c)
        if ((g.elements[static_cast<std::size_t>(c)].matrix - prod).cwiseAbs().maxCoeff() < 1e-12)
          g.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = c;
      if (g.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] < 0)
        throw Error(ErrorKind::NotClosed, std::string(to_string(g.name)) + ": multiplication table not closed");
    }

  g.class_of.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (g.class_of[static_cast<std::size_t>(a)] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < n; ++h) {
      const int c = g.table[static_cast<std::size_t>(g.table[static_cast<std::size_t>(h)][static_cast<std::size_t>(a)])]
                           [static_cast<std::size_t>(g.inverse(h))];
      if (std::find(cls.begin(), cls.end(), c) == cls.end()) cls.push_back(c);
    }
    std::sort(cls.begin(), cls.end());
    for (int c : cls) g.class_of[static_cast<std::size_t>(c)] = static_cast<int>(g.classes.size());
    g.classes.push_back(cls);
  }

  int dim_sum = 0;
  g.characters.clear();
  for (const auto& irrep : g.irreps) {
    dim_sum += irrep.dimension * irrep.dimension;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& da = irrep.matrices[static_cast<std::size_t>(a)];
        const auto& db = irrep.matrices[static_cast<std::size_t>(b)];
        const auto& dc = irrep.matrices[static_cast<std::size_t>(g.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])];
        if ((da * db - dc).cwiseAbs().maxCoeff() > 1e-12)
          throw Error(ErrorKind::NotHomomorphism, "irrep " + irrep.label + " is not a homomorphism");
      }
    std::vector<int> row;
    for (const auto& cls : g.classes) {
      const double trace = irrep.matrices[static_cast<std::size_t>(cls.front())].trace();
      row.push_back(static_cast<int>(std::lround(trace)));
    }
    g.characters.push_back(row);
  }
  if (dim_sum != n) throw Error(ErrorKind::InvalidArgument, "sum of squared irrep dimensions differs from |G|");
  for (std::size_t mu = 0; mu < g.irreps.size(); ++mu)
    for (std::size_t nu = 0; nu < g.irreps.size(); ++nu) {
      int sum = 0;
      for (std::size_t c = 0; c < g.classes.size(); ++c)
        sum += static_cast<int>(g.classes[c].size()) * g.characters[mu][c] * g.characters[nu][c];
      if (sum != (mu == nu ? n : 0)) throw Error(ErrorKind::InvalidArgument, "character orthogonality violated");
    }
}

struct S3Irreps {
  Eigen::MatrixXd trivial, standard, sign;
};

inline S3Irreps s3_irrep_matrices(const Permutation& p) {
  const Eigen::Matrix3d o = p.matrix();
  return {scalar(1.0), relative_plane_matrix(o), scalar(p.sign())};
}

inline const std::array<std::string, 3>& s3_labels() {
  static const std::array<std::string, 3> l = {"[3]", "[21]", "[1^3]"};
  return l;
}

}  // namespace detail

/// Builds and verifies S3, D3d or D6h. Element 0 is the identity; the first six
/// elements are P3 in the order e, {213}, {132}, {321}, {231}, {312}.
inline GroupSpec build_group(GroupName name) {
  GroupSpec g;
  g.name = name;
  const auto perms = Permutation::all();

  std::vector<std::pair<int, int>> parities;  // (com sign, rel sign)
  switch (name) {
    case GroupName::S3: parities = {{1, 1}}; break;
    case GroupName::D3d: parities = {{1, 1}, {-1, -1}}; break;
    case GroupName::D6h: parities = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}; break;
  }
  const Eigen::Matrix3d pc = parity_matrix(ParityKind::CenterOfMass);
  const Eigen::Matrix3d pr = parity_matrix(ParityKind::Relative);
  for (const auto& [cs, rs] : parities) {
    Eigen::Matrix3d parity = Eigen::Matrix3d::Identity();
    std::string suffix;
    if (cs < 0 && rs < 0) {
      parity = -Eigen::Matrix3d::Identity();
      suffix = "Pi";
    } else if (cs < 0) {
      parity = pc;
      suffix = "Pi_com";
    } else if (rs < 0) {
      parity = pr;
      suffix = "Pi_rel";
    }
    for (const auto& p : perms) {
      const std::string label = suffix.empty() ? (p.is_identity() ? "e" : p.label())
                                               : (p.is_identity() ? suffix : p.label() + "." + suffix);
      g.elements.push_back({label, p.matrix() * parity, p, cs, rs});
    }
  }

  for (int k = 0; k < 3; ++k) {
    std::vector<std::pair<int, int>> signs;  // which parity characters to attach
    switch (name) {
      case GroupName::S3: signs = {{0, 0}}; break;
      case GroupName::D3d: signs = {{1, 1}, {-1, -1}}; break;  // total-parity sign +/- (stored in both)
      case GroupName::D6h: signs = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; break;
    }
    for (const auto& [a, b] : signs) {
      Irrep irrep;
      irrep.s3_label = detail::s3_labels()[static_cast<std::size_t>(k)];
      irrep.label = irrep.s3_label;
      if (name == GroupName::D3d) irrep.label += a > 0 ? "+" : "-";
      if (name == GroupName::D6h) irrep.label += std::string(a > 0 ? "+" : "-") + (b > 0 ? "+" : "-");
      for (const auto& e : g.elements) {
        const auto s3 = detail::s3_irrep_matrices(e.permutation);
        Eigen::MatrixXd m = k == 0 ? s3.trivial : (k == 1 ? s3.standard : s3.sign);
        double factor = 1.0;
        if (name == GroupName::D3d && e.com_sign < 0) factor = a;
        if (name == GroupName::D6h) factor = (e.com_sign < 0 ? a : 1) * (e.rel_sign < 0 ? b : 1);
        irrep.matrices.push_back(factor * m);
      }
      irrep.dimension = static_cast<int>(irrep.matrices.front().rows());
      g.irreps.push_back(std::move(irrep));
    }
  }
  detail::verify_group(g);
  return g;
}

// --------------------------------------------------------- representations

/// Linear action of group element `g` (index) on a vector of the ambient space.
using GroupAction = std::function<Eigen::VectorXd(int g, const Eigen::VectorXd& v)>;

struct Representation {
  Eigen::MatrixXd basis;                  // ambient coordinates, orthonormal columns
  std::vector<Eigen::MatrixXd> matrices;  // D(g) in that basis
  int dimension() const { return static_cast<int>(basis.cols()); }
};

struct RepresentationTolerances {
  double closure = 1e-8;
  double unitarity = 1e-10;
  double homomorphism = 1e-8;
};

/// Checks a set of matrices: unitarity and D(a) D(b) = D(ab) on all pairs.
inline void verify_representation(const GroupSpec& group, const std::vector<Eigen::MatrixXd>& matrices,
                                  const RepresentationTolerances& tol = {}) {
  if (static_cast<int>(matrices.size()) != group.order())
    throw Error(ErrorKind::DimensionMismatch, "one matrix per group element required");
  for (std::size_t a = 0; a < matrices.size(); ++a) {
    const auto& d = matrices[a];
    const double dev = (d.transpose() * d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
    if (dev > tol.unitarity)
      throw Error(ErrorKind::NotUnitary, "D(" + group.elements[a].label + ") deviates from unitarity by " + std::to_string(dev));
  }
  for (int a = 0; a < group.order(); ++a)
    for (int b = 0; b < group.order(); ++b) {
      const auto& dc = matrices[static_cast<std::size_t>(group.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])];
      const double dev = (matrices[static_cast<std::size_t>(a)] * matrices[static_cast<std::size_t>(b)] - dc).cwiseAbs().maxCoeff();
      if (dev > tol.homomorphism)
        throw Error(ErrorKind::NotHomomorphism, "D(a)D(b) != D(ab) for a=" + group.elements[static_cast<std::size_t>(a)].label +
                                                    ", b=" + group.elements[static_cast<std::size_t>(b)].label);
    }
}

/// Matrices of `action` restricted to span(basis); basis columns must be orthonormal.
inline Representation representation_on_space(const GroupSpec& group, const GroupAction& action,
                                              const Eigen::MatrixXd& basis, const RepresentationTolerances& tol = {}) {
  const Eigen::Index d = basis.cols();
  if ((basis.transpose() * basis - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "representation basis must be orthonormal");
  Representation rep{basis, {}};
  for (int g = 0; g < group.order(); ++g) {
    Eigen::MatrixXd image(basis.rows(), d);
    for (Eigen::Index c = 0; c < d; ++c) image.col(c) = action(g, basis.col(c));
    Eigen::MatrixXd m = basis.transpose() * image;
    const double leak = (image - basis * m).norm() / std::max(1.0, image.norm());
    if (leak > tol.closure)
      throw Error(ErrorKind::NotClosed, "action of " + group.elements[static_cast<std::size_t>(g)].label +
                                            " leaves the span (residual " + std::to_string(leak) + ")");
    rep.matrices.push_back(std::move(m));
  }
  verify_representation(group, rep.matrices, tol);
  return rep;
}

/// P_mu = (d_mu / |G|) sum_g chi_mu(g) D(g)   (characters are real here).
inline Eigen::MatrixXd projector(const GroupSpec& group, int irrep, const std::vector<Eigen::MatrixXd>& matrices) {
  const Eigen::Index n = matrices.front().rows();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int g = 0; g < group.order(); ++g) p += group.character(irrep, g) * matrices[static_cast<std::size_t>(g)];
  return p * (static_cast<double>(group.irreps[static_cast<std::size_t>(irrep)].dimension) / group.order());
}

/// Orthonormal basis (rep coordinates) of P_mu applied to span(subspace).
inline Eigen::MatrixXd project(const GroupSpec& group, int irrep, const std::vector<Eigen::MatrixXd>& matrices,
                               const Eigen::MatrixXd& subspace) {
  const Eigen::MatrixXd image = projector(group, irrep, matrices) * subspace;
  if (image.cols() == 0) return image;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(image, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-8 * std::max(1.0, s[0])) ++rank;
  return svd.matrixU().leftCols(rank);
}

inline Eigen::MatrixXd project(const GroupSpec& group, int irrep, const std::vector<Eigen::MatrixXd>& matrices) {
  const Eigen::Index n = matrices.front().rows();
  return project(group, irrep, matrices, Eigen::MatrixXd::Identity(n, n));
}

struct IrrepDecomposition {
  double energy = 0.0;
  int dimension = 0;
  std::vector<int> multiplicities;    // per irrep of the group
  std::vector<Eigen::MatrixXd> bases; // per irrep, ambient coordinates
};

inline constexpr double kMultiplicityTolerance = 1e-6;

/// m_mu = (1/|G|) sum_g chi_mu(g) tr D(g); non-integers are errors.
inline std::vector<int> irrep_multiplicities(const GroupSpec& group, const std::vector<Eigen::MatrixXd>& matrices) {
  std::vector<int> m;
  for (std::size_t mu = 0; mu < group.irreps.size(); ++mu) {
    double sum = 0.0;
    for (int g = 0; g < group.order(); ++g) sum += group.character(static_cast<int>(mu), g) * matrices[static_cast<std::size_t>(g)].trace();
    sum /= group.order();
    const long rounded = std::lround(sum);
    if (std::abs(sum - static_cast<double>(rounded)) >= kMultiplicityTolerance || rounded < 0)
      throw Error(ErrorKind::NonIntegerMultiplicity,
                  "multiplicity of " + group.irreps[mu].label + " is " + std::to_string(sum));
    m.push_back(static_cast<int>(rounded));
  }
  return m;
}

inline IrrepDecomposition decompose_eigenspace(const GroupSpec& group, const Representation& rep, double energy = 0.0) {
  IrrepDecomposition out;
  out.energy = energy;
  out.dimension = rep.dimension();
  out.multiplicities = irrep_multiplicities(group, rep.matrices);
  int total = 0;
  for (std::size_t mu = 0; mu < group.irreps.size(); ++mu) {
    total += out.multiplicities[mu] * group.irreps[mu].dimension;
    out.bases.push_back(rep.basis * project(group, static_cast<int>(mu), rep.matrices));
  }
  if (total != out.dimension) throw Error(ErrorKind::NonIntegerMultiplicity, "irrep dimensions do not add up");
  return out;
}

/// Builds the representation from an action on an eigenspace basis; a span
/// that is not invariant raises NonInvariantSubspace.
inline IrrepDecomposition decompose_eigenspace(const GroupSpec& group, const GroupAction& action,
                                               const Eigen::MatrixXd& basis, double energy = 0.0) {
  Representation rep;
  try {
    rep = representation_on_space(group, action, basis);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotClosed) throw Error(ErrorKind::NonInvariantSubspace, e.what());
    throw;
  }
  return decompose_eigenspace(group, rep, energy);
}

// ------------------------------------------------------------- towers

struct IrrepTowers {
  std::vector<std::string> labels;
  std::vector<std::string> s3_labels;
  std::vector<std::vector<std::pair<double, int>>> towers;  // per irrep: (E, m) with m > 0

  /// Energies carried by irreps whose P3 part is `s3_label` (each listed once per copy).
  std::vector<double> restricted_spectrum(const std::string& s3_label) const {
    std::vector<double> e;
    for (std::size_t mu = 0; mu < towers.size(); ++mu)
      if (s3_labels[mu] == s3_label)
        for (const auto& [energy, m] : towers[mu])
          for (int c = 0; c < m; ++c) e.push_back(energy);
    std::sort(e.begin(), e.end());
    return e;
  }
  std::vector<double> bosonic() const { return restricted_spectrum("[3]"); }
  std::vector<double> fermionic() const { return restricted_spectrum("[1^3]"); }
};

inline IrrepTowers irrep_towers(const GroupSpec& group, const std::vector<IrrepDecomposition>& levels) {
  IrrepTowers t;
  for (const auto& irrep : group.irreps) {
    t.labels.push_back(irrep.label);
    t.s3_labels.push_back(irrep.s3_label);
  }
  t.towers.resize(group.irreps.size());
  std::vector<IrrepDecomposition> sorted = levels;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  for (const auto& level : sorted)
    for (std::size_t mu = 0; mu < group.irreps.size(); ++mu)
      if (level.multiplicities[mu] > 0) t.towers[mu].push_back({level.energy, level.multiplicities[mu]});
  return t;
}

inline nlohmann::json decomposition_to_json(const GroupSpec& group, const std::vector<IrrepDecomposition>& levels) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& level : levels) {
    nlohmann::json m = nlohmann::json::object();
    for (std::size_t mu = 0; mu < group.irreps.size(); ++mu) m[group.irreps[mu].label] = level.multiplicities[mu];
    out.push_back({{"E", level.energy}, {"multiplicities", m}});
  }
  return out;
}

// ------------------------------------------------- concrete actions

/// Ordered triples (n1, n2, n3) of one-body labels, one per product state
/// phi_n1(x1) phi_n2(x2) phi_n3(x3), generated from a level's multisets.
inline std::vector<std::array<int, 3>> level_product_states(const SpectrumLevel& level) {
  std::vector<std::array<int, 3>> out;
  for (const auto& m : level.constituents) {
    std::array<int, 3> t = m;
    do out.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));
  }
  return out;
}

/// P3 action on product states: U(g) moves particle i's label to slot g(i).
inline Eigen::MatrixXd product_state_permutation(const Permutation& g, const std::vector<std::array<int, 3>>& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    std::array<int, 3> t{};
    for (int i = 1; i <= 3; ++i) t[static_cast<std::size_t>(g(i) - 1)] = states[static_cast<std::size_t>(c)][static_cast<std::size_t>(i - 1)];
    const auto it = std::find(states.begin(), states.end(), t);
    if (it == states.end()) throw Error(ErrorKind::NotClosed, "product-state set not closed under P3");
    m(it - states.begin(), c) = 1.0;
  }
  return m;
}

/// S3 irrep content of a non-interacting level (product-state basis).
inline IrrepDecomposition decompose_level(const GroupSpec& s3, const SpectrumLevel& level) {
  if (s3.name != GroupName::S3) throw Error(ErrorKind::InvalidArgument, "level decomposition uses S3");
  const auto states = level_product_states(level);
  const auto n = static_cast<Eigen::Index>(states.size());
  GroupAction action = [&](int g, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return product_state_permutation(s3.elements[static_cast<std::size_t>(g)].permutation, states) * v;
  };
  return decompose_eigenspace(s3, action, Eigen::MatrixXd::Identity(n, n), level.energy);
}

/// P3 action on the angular pair (cos mu phi, sin mu phi) of the relative
/// plane; mu = 0 is the constant function.
inline Eigen::MatrixXd angular_matrix(const Permutation& g, int mu) {
  if (mu == 0) return Eigen::MatrixXd::Identity(1, 1);
  const double image = permutation_action(g, CylindricalCoords{0.0, 1.0, 0.0}).phi;
  const double a = mu * image;
  Eigen::MatrixXd m(2, 2);
  if (g.sign() > 0) m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  else m << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
  return m;
}

inline Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return m;
}

/// S3 content of a set of relative-plane multiplets e^{+-i mu phi}, one per
/// entry of `mus` (mu >= 0).
inline IrrepDecomposition decompose_angular_level(const GroupSpec& s3, const std::vector<int>& mus, double energy = 0.0) {
  auto rep = [&](const Permutation& g) {
    std::vector<Eigen::MatrixXd> blocks;
    for (int mu : mus) blocks.push_back(angular_matrix(g, mu));
    return block_diagonal(blocks);
  };
  const Eigen::Index n = rep(Permutation::identity()).rows();
  GroupAction action = [&](int g, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return rep(s3.elements[static_cast<std::size_t>(g)].permutation) * v;
  };
  return decompose_eigenspace(s3, action, Eigen::MatrixXd::Identity(n, n), energy);
}

}  // namespace threebody
