#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "threebody/jacobi.hpp"

using namespace threebody;
using std::numbers::pi;

namespace {

ParticleCoords random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  return {{u(rng), u(rng), u(rng)}};
}

void expect_same_cylindrical(const CylindricalCoords& a, const CylindricalCoords& b, double tol) {
  EXPECT_NEAR(a.q1, b.q1, tol);
  EXPECT_NEAR(a.rho, b.rho, tol);
  EXPECT_LT(angle_distance(a.phi, b.phi), tol);
}

}  // namespace

TEST(ToJacobi, CoincidenceLine) {
  const auto j = to_jacobi({{1, 1, 1}});
  EXPECT_NEAR(j.q[0], std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(j.q[1], 0.0, 1e-15);
  EXPECT_NEAR(j.q[2], 0.0, 1e-15);
}

TEST(ToJacobi, SimpleTriple) {
  const auto j = to_jacobi({{1, 0, -1}});
  EXPECT_NEAR(j.q[0], 0.0, 1e-15);
  EXPECT_NEAR(j.q[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(j.q[2], std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(j.rho(), std::sqrt(2.0), 1e-15);
}

TEST(ToJacobi, PairSeparationsAreThreeRhoSquared) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_triple(rng);
    const auto& x = p.x;
    const double pairs = std::pow(x[0] - x[1], 2) + std::pow(x[1] - x[2], 2) + std::pow(x[0] - x[2], 2);
    const double rho = to_jacobi(p).rho();
    EXPECT_NEAR(pairs, 3.0 * rho * rho, 1e-10);
  }
  const auto& x = ParticleCoords{{1, 0, -1}}.x;
  EXPECT_NEAR(std::pow(x[0] - x[1], 2) + std::pow(x[1] - x[2], 2) + std::pow(x[0] - x[2], 2), 6.0, 1e-15);
}

TEST(ToJacobi, Isometry) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_triple(rng);
    const auto j = to_jacobi(p);
    const double a = p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2];
    const double b = j.q[0] * j.q[0] + j.q[1] * j.q[1] + j.q[2] * j.q[2];
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a));
  }
}

TEST(FromJacobi, Inverse) {
  const auto p = from_jacobi({{std::sqrt(3.0), 0, 0}});
  for (double v : p.x) EXPECT_NEAR(v, 1.0, 1e-15);
  const auto q = from_jacobi({{0, 1.0 / std::sqrt(2.0), std::sqrt(1.5)}});
  EXPECT_NEAR(q.x[0], 1.0, 1e-15);
  EXPECT_NEAR(q.x[1], 0.0, 1e-15);
  EXPECT_NEAR(q.x[2], -1.0, 1e-15);
}

TEST(FromJacobi, RoundTrip) {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto p = random_triple(rng);
    const auto r = from_jacobi(to_jacobi(p));
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r.x[static_cast<std::size_t>(i)] - p.x[static_cast<std::size_t>(i)]));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Cylindrical, RangeAndRoundTrip) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto j = to_jacobi(random_triple(rng));
    const auto c = j.cylindrical();
    EXPECT_GE(c.phi, 0.0);
    EXPECT_LT(c.phi, 2.0 * pi);
    const auto back = from_cylindrical(c);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back.q[static_cast<std::size_t>(i)], j.q[static_cast<std::size_t>(i)], 1e-12);
  }
}

TEST(Permutations, ExchangeOnTriple) {
  const auto p = permutation_action(Permutation(2, 1, 3), ParticleCoords{{1, 0, -1}});
  EXPECT_EQ(p.x, (std::array<double, 3>{0, 1, -1}));
  const auto c = to_jacobi({{1, 0, -1}}).cylindrical();
  const auto m = permutation_action(Permutation(2, 1, 3), c);
  EXPECT_LT(angle_distance(m.phi, pi - c.phi), 1e-14);
}

TEST(Permutations, ThreeCycleRotation) {
  const Eigen::Matrix3d m = Permutation(2, 3, 1).matrix();
  EXPECT_NEAR(m.determinant(), 1.0, 1e-15);
  EXPECT_NEAR(m.trace(), 0.0, 1e-15);
  EXPECT_NEAR(std::acos((m.trace() - 1.0) / 2.0), 2.0 * pi / 3.0, 1e-12);
  const auto c = to_jacobi({{0.3, -1.2, 2.0}}).cylindrical();
  EXPECT_LT(angle_distance(permutation_action(Permutation(2, 3, 1), c).phi, wrap_angle(c.phi + 2.0 * pi / 3.0)), 1e-12);
}

TEST(Permutations, IdentityMap) {
  const ParticleCoords p{{0.1, 0.2, 0.3}};
  EXPECT_EQ(permutation_action(Permutation::identity(), p).x, p.x);
  EXPECT_TRUE(Permutation::identity().matrix().isIdentity());
}

TEST(Permutations, ViewsAgree) {
  std::mt19937_64 rng(13);
  for (const auto& g : Permutation::all())
    for (int k = 0; k < 200; ++k) {
      const auto p = random_triple(rng);
      const auto via_particles = to_jacobi(permutation_action(g, p)).cylindrical();
      const auto via_angles = permutation_action(g, to_jacobi(p).cylindrical());
      expect_same_cylindrical(via_particles, via_angles, 1e-10);
      // q1 and rho are invariant
      EXPECT_NEAR(via_angles.q1, to_jacobi(p).q[0], 1e-12);
      EXPECT_NEAR(via_angles.rho, to_jacobi(p).rho(), 1e-12);
    }
}

TEST(Permutations, ClosedGroup) {
  const auto all = Permutation::all();
  for (const auto& a : all)
    for (const auto& b : all) {
      const auto c = a * b;
      EXPECT_NE(std::find(all.begin(), all.end(), c), all.end());
      EXPECT_TRUE(((a.matrix() * b.matrix()) - c.matrix()).isZero(0.0));
      EXPECT_EQ(c.sign(), a.sign() * b.sign());
    }
  for (const auto& a : all) EXPECT_TRUE((a * a.inverse()).is_identity());
  // non-abelian
  EXPECT_NE(all[1] * all[2], all[2] * all[1]);
}

TEST(Parity, TotalOnPoint) {
  const auto r = parity_action(ParityKind::Total, {1.0, std::sqrt(2.0), 0.0});
  EXPECT_DOUBLE_EQ(r.q1, -1.0);
  EXPECT_DOUBLE_EQ(r.rho, std::sqrt(2.0));
  EXPECT_NEAR(r.phi, pi, 1e-15);
}

TEST(Parity, RelativeIsInvolutionAndComposition) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const auto c = to_jacobi(random_triple(rng)).cylindrical();
    expect_same_cylindrical(parity_action(ParityKind::Relative, parity_action(ParityKind::Relative, c)), c, 1e-12);
    expect_same_cylindrical(parity_action(ParityKind::Total, c),
                            parity_action(ParityKind::Relative, parity_action(ParityKind::CenterOfMass, c)), 1e-12);
  }
}

TEST(Parity, MatricesMatchAngles) {
  std::mt19937_64 rng(19);
  for (auto kind : {ParityKind::Total, ParityKind::Relative, ParityKind::CenterOfMass}) {
    const Eigen::Matrix3d m = parity_matrix(kind);
    for (int k = 0; k < 100; ++k) {
      const auto p = random_triple(rng);
      const Eigen::Vector3d y = m * Eigen::Vector3d(p.x[0], p.x[1], p.x[2]);
      expect_same_cylindrical(to_jacobi({{y[0], y[1], y[2]}}).cylindrical(),
                              parity_action(kind, to_jacobi(p).cylindrical()), 1e-10);
    }
  }
}
