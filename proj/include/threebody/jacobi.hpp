#pragma once

// Particle <-> Jacobi coordinates and the geometric action of particle
// permutations and parities.
//
//   q1 = (x1 + x2 + x3)/sqrt(3)     centre of mass
//   q2 = (x1 - x2)/sqrt(2)
//   q3 = (x1 + x2 - 2 x3)/sqrt(6)
//   rho = sqrt(q2^2 + q3^2),  phi = atan2(q3, q2) in [0, 2 pi)
//
// rho here is the distance from the coincidence line x1 = x2 = x3; the sum of
// squared pair separations equals 3 rho^2.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

namespace threebody {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2 pi).
inline double wrap_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

struct ParticleCoords {
  std::array<double, 3> x{};
};

struct CylindricalCoords {
  double q1 = 0.0;
  double rho = 0.0;
  double phi = 0.0;
};

struct JacobiCoords {
  std::array<double, 3> q{};

  double rho() const { return std::hypot(q[1], q[2]); }
  double phi() const { return wrap_angle(std::atan2(q[2], q[1])); }
  CylindricalCoords cylindrical() const { return {q[0], rho(), phi()}; }
};

/// Rows are the orthonormal Jacobi directions e1, e2, e3 in particle space.
inline const Eigen::Matrix3d& jacobi_matrix() {
  static const Eigen::Matrix3d m = [] {
    Eigen::Matrix3d r;
    const double s3 = 1.0 / std::sqrt(3.0), s2 = 1.0 / std::sqrt(2.0), s6 = 1.0 / std::sqrt(6.0);
    r << s3, s3, s3, s2, -s2, 0.0, s6, s6, -2.0 * s6;
    return r;
  }();
  return m;
}

inline JacobiCoords to_jacobi(const ParticleCoords& p) {
  const Eigen::Vector3d q = jacobi_matrix() * Eigen::Vector3d(p.x[0], p.x[1], p.x[2]);
  return {{q[0], q[1], q[2]}};
}

inline ParticleCoords from_jacobi(const JacobiCoords& j) {
  const Eigen::Vector3d x = jacobi_matrix().transpose() * Eigen::Vector3d(j.q[0], j.q[1], j.q[2]);
  return {{x[0], x[1], x[2]}};
}

inline JacobiCoords from_cylindrical(const CylindricalCoords& c) {
  return {{c.q1, c.rho * std::cos(c.phi), c.rho * std::sin(c.phi)}};
}

// ----------------------------------------------------------- permutations

/// Element of P3 in one-line notation: particle i moves to slot image[i]
/// (1-based), so {213} exchanges particles 1 and 2 and {231} is the 3-cycle
/// 1 -> 2 -> 3 -> 1. Acting on coordinates: x'_{image[i]} = x_i.
class Permutation {
 public:
  constexpr Permutation() : image_{1, 2, 3} {}
  constexpr Permutation(int a, int b, int c) : image_{a, b, c} {}

  static constexpr Permutation identity() { return {}; }

  /// Fixed ordering: e, {213}, {132}, {321}, {231}, {312}.
  static constexpr std::array<Permutation, 6> all() {
    return {Permutation(1, 2, 3), Permutation(2, 1, 3), Permutation(1, 3, 2),
            Permutation(3, 2, 1), Permutation(2, 3, 1), Permutation(3, 1, 2)};
  }

  constexpr int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)]; }
  constexpr const std::array<int, 3>& image() const { return image_; }

  /// (p * q)(i) = p(q(i)).
  constexpr Permutation operator*(const Permutation& q) const { return {(*this)(q(1)), (*this)(q(2)), (*this)(q(3))}; }

  constexpr Permutation inverse() const {
    std::array<int, 3> inv{};
    for (int i = 1; i <= 3; ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
    return {inv[0], inv[1], inv[2]};
  }

  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (image_[static_cast<std::size_t>(i)] > image_[static_cast<std::size_t>(j)]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  constexpr bool is_transposition() const { return sign() < 0; }
  constexpr bool is_identity() const { return image_[0] == 1 && image_[1] == 2 && image_[2] == 3; }

  std::string label() const {
    return "{" + std::to_string(image_[0]) + std::to_string(image_[1]) + std::to_string(image_[2]) + "}";
  }

  /// Configuration-space matrix: M[image[i]-1][i-1] = 1.
  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int i = 1; i <= 3; ++i) m((*this)(i) - 1, i - 1) = 1.0;
    return m;
  }

  friend constexpr bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::array<int, 3> image_;
};

inline ParticleCoords permutation_action(const Permutation& p, const ParticleCoords& c) {
  ParticleCoords out;
  for (int i = 1; i <= 3; ++i) out.x[static_cast<std::size_t>(p(i) - 1)] = c.x[static_cast<std::size_t>(i - 1)];
  return out;
}

/// Cylindrical view: q1 and rho are invariant; transpositions reflect phi
/// across the coincidence line they fix, 3-cycles rotate by +-2 pi/3.
inline CylindricalCoords permutation_action(const Permutation& p, const CylindricalCoords& c) {
  using std::numbers::pi;
  CylindricalCoords out = c;
  if (p == Permutation(2, 1, 3)) {
    out.phi = pi - c.phi;  // mirror line phi = pi/2 (x1 = x2)
  } else if (p == Permutation(1, 3, 2)) {
    out.phi = pi / 3.0 - c.phi;  // mirror line phi = pi/6 (x2 = x3)
  } else if (p == Permutation(3, 2, 1)) {
    out.phi = -pi / 3.0 - c.phi;  // mirror line phi = -pi/6 (x1 = x3)
  } else if (p == Permutation(2, 3, 1)) {
    out.phi = c.phi + 2.0 * pi / 3.0;
  } else if (p == Permutation(3, 1, 2)) {
    out.phi = c.phi - 2.0 * pi / 3.0;
  }
  out.phi = wrap_angle(out.phi);
  return out;
}

// ----------------------------------------------------------------- parity

enum class ParityKind { Total, Relative, CenterOfMass };

/// Total: {-q1, rho, phi + pi}; relative: {q1, rho, phi + pi}; centre of mass: {-q1, rho, phi}.
inline CylindricalCoords parity_action(ParityKind kind, const CylindricalCoords& c) {
  using std::numbers::pi;
  switch (kind) {
    case ParityKind::Total: return {-c.q1, c.rho, wrap_angle(c.phi + pi)};
    case ParityKind::Relative: return {c.q1, c.rho, wrap_angle(c.phi + pi)};
    case ParityKind::CenterOfMass: return {-c.q1, c.rho, wrap_angle(c.phi)};
  }
  return c;
}

/// Parity operations as configuration-space matrices (particle coordinates).
inline Eigen::Matrix3d parity_matrix(ParityKind kind) {
  const Eigen::Matrix3d& j = jacobi_matrix();
  const Eigen::Vector3d e1 = j.row(0).transpose();
  switch (kind) {
    case ParityKind::Total: return -Eigen::Matrix3d::Identity();
    case ParityKind::CenterOfMass: return Eigen::Matrix3d::Identity() - 2.0 * e1 * e1.transpose();
    case ParityKind::Relative: return -Eigen::Matrix3d::Identity() + 2.0 * e1 * e1.transpose();
  }
  return Eigen::Matrix3d::Identity();
}

}  // namespace threebody
