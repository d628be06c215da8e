#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "threebody/calibration.hpp"
#include "threebody/grid_oracle.hpp"
#include "threebody/solvable.hpp"

using namespace threebody;

namespace {

ModelSpec harmonic_model(Interaction interaction) {
  ModelSpec s;
  s.trap = HarmonicTrap{1.0};
  s.interaction = std::move(interaction);
  return s;
}

// Relative ground state of the inverse-square problem, from the closed form
// without the centre-of-mass zero point.
double calogero_relative_ground(double gamma) { return calogero_energy(1.0, gamma, 0, 0, 0) - 0.5; }

}  // namespace

TEST(HarmHarm, NoCouplingGround) {
  const auto levels = harm_harm_spectrum(1.0, 0.0, 4.0);
  EXPECT_DOUBLE_EQ(levels.front().energy, 1.5);
}

TEST(HarmHarm, RelativeShellDegeneracy) {
  // 2 nu + |mu| = 2 at eta = 0: (1,0), (0,2), (0,-2)
  int count = 0;
  for (const auto& l : harm_harm_spectrum(1.0, 0.7, 20.0))
    if (l.eta == 0 && 2 * l.nu + std::abs(l.mu) == 2) ++count;
  EXPECT_EQ(count, 3);
}

TEST(HarmHarm, FreeLimitMatchesComposition) {
  const auto silver = harm_harm_spectrum(1.0, 0.0, 7.5);
  std::map<long, int> by_energy;
  for (const auto& l : silver) by_energy[std::lround(l.energy * 2)] += l.degeneracy;
  const auto free = compose_spectrum(analytic_spectrum(HarmonicTrap{1.0}, 12), 7.5);
  ASSERT_EQ(by_energy.size(), free.size());
  for (const auto& level : free) {
    const long key = std::lround(level.energy * 2);
    ASSERT_TRUE(by_energy.count(key));
    EXPECT_NEAR(level.energy, key / 2.0, 1e-12);
    EXPECT_EQ(by_energy[key], level.degeneracy);
  }
}

TEST(HarmHarm, RelativeFrequency) {
  EXPECT_DOUBLE_EQ(harm_harm_relative_frequency(1.0, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(harm_harm_relative_frequency(2.0, 1.0, 2.0), std::sqrt(7.0));
  for (const auto& l : harm_harm_spectrum(1.0, 0.5, 8.0)) {
    EXPECT_GE(l.eta, 0);
    EXPECT_GE(l.nu, 0);
    EXPECT_NEAR(l.energy, harm_harm_energy(1.0, 0.5, l.eta, l.nu, l.mu), 1e-12);
  }
}

TEST(HarmHarm, RejectsNegativeCoupling) { EXPECT_THROW(harm_harm_spectrum(1.0, -0.1, 5.0), Error); }

// Two-dimensional grid oracle; the fitted coefficient selects 6 gamma / m.
TEST(HarmHarm, OracleSelectsCoefficient) {
  const double gamma = 0.5;
  const auto r = relative_spectrum_2d(harmonic_model(HarmonicInteraction{gamma}), RelativeGrid{5.5, 0.07}, 6);
  const auto fit = fit_harm_harm(r.eigenvalues, 1.0, gamma);
  EXPECT_LE(fit.residual, 1e-3);
  EXPECT_NEAR(fit.coefficient, 6.0, 1e-2);
  const double printed = std::sqrt(1.0 + 4.0 * gamma);
  EXPECT_GT(std::abs(fit.scale - printed), 0.1);
  EXPECT_NEAR(r.eigenvalues[0], harm_harm_relative_frequency(1.0, gamma), 1e-4 * 2.0);
}

TEST(Calogero, SpacingAndAngularLadder) {
  const auto levels = calogero_moser_spectrum(1.0, 1.0, 20.0);
  std::set<int> mus;
  for (const auto& l : levels) {
    EXPECT_EQ(l.mu % 3, 0);
    EXPECT_EQ(l.degeneracy, 6);
    mus.insert(std::abs(l.mu));
  }
  ASSERT_GE(mus.size(), 2u);
  EXPECT_EQ(*std::next(mus.begin()), 3);
  EXPECT_DOUBLE_EQ(calogero_energy(1.0, 1.0, 0, 1, 3) - calogero_energy(1.0, 1.0, 0, 0, 3), 2.0);
  EXPECT_DOUBLE_EQ(calogero_energy(1.5, 0.3, 1, 3, 6) - calogero_energy(1.5, 0.3, 1, 2, 6), 3.0);
}

TEST(Calogero, WeakCouplingApproachesFermions) {
  // hard walls at the coincidence planes leave the fermionic ground 9/2
  EXPECT_NEAR(calogero_energy(1.0, 1e-12, 0, 0, 0), 4.5, 1e-10);
}

TEST(Calogero, RequiresPositiveCoupling) { EXPECT_THROW(calogero_moser_spectrum(1.0, 0.0, 10.0), Error); }

TEST(Calogero, SectorOracleGround) {
  RelativeOracleOptions opt;
  opt.sector_only = true;
  const auto r = relative_spectrum_2d(harmonic_model(InverseSquareInteraction{1.0}), RelativeGrid{9.0, 0.035}, 3, opt);
  EXPECT_NEAR(r.eigenvalues[0] / calogero_relative_ground(1.0), 1.0, 1e-3);
  EXPECT_NEAR(r.eigenvalues[1] - r.eigenvalues[0], 2.0, 1e-2);
  const auto fit = fit_calogero(r.eigenvalues, 1.0);
  EXPECT_NEAR(fit.coefficient, kCalogeroRadicalConstant, 0.2);
}

TEST(Unitary, GroundIsFermionicFilling) {
  const auto levels = unitary_contact_spectrum(analytic_spectrum(HarmonicTrap{1.0}, 12), 9.0);
  ASSERT_FALSE(levels.empty());
  EXPECT_DOUBLE_EQ(levels.front().energy, 4.5);
  EXPECT_EQ(levels.front().base, (Multiset{0, 1, 2}));
  for (const auto& l : levels) {
    EXPECT_EQ(l.degeneracy, 6);
    EXPECT_EQ(l.basis.size(), 6u);
    EXPECT_LT(l.base[0], l.base[1]);
    EXPECT_LT(l.base[1], l.base[2]);
  }
}

TEST(Unitary, SubsetOfFreeSpectrum) {
  const auto one = analytic_spectrum(InfiniteWell{2.0}, 14);
  const auto free = compose_spectrum(one, 40.0);
  for (const auto& l : unitary_contact_spectrum(one, 40.0)) {
    bool found = false;
    for (const auto& f : free)
      if (std::abs(f.energy - l.energy) < 1e-9)
        found |= std::find(f.constituents.begin(), f.constituents.end(), l.base) != f.constituents.end();
    EXPECT_TRUE(found);
  }
}

TEST(Unitary, TruncationRisk) {
  EXPECT_THROW(unitary_contact_spectrum(analytic_spectrum(HarmonicTrap{1.0}, 4), 9.0), Error);
}

TEST(Unitary, SectorOracleAgrees) {
  RelativeOracleOptions opt;
  opt.sector_only = true;
  const auto r = relative_spectrum_2d(harmonic_model(UnitaryContact{}), RelativeGrid{9.0, 0.03}, 3, opt);
  // relative energies 4, 6, 7 plus the centre-of-mass 1/2
  EXPECT_NEAR((r.eigenvalues[0] + 0.5) / 4.5, 1.0, 1e-3);
  EXPECT_NEAR(r.eigenvalues[1] + 0.5, 6.5, 6.5e-3);
  EXPECT_NEAR(r.eigenvalues[2] + 0.5, 7.5, 7.5e-3);
}

TEST(Sectors, OrderingAndLookup) {
  EXPECT_EQ(sector_label(0), "(123)");
  EXPECT_EQ(sector_label(5), "(321)");
  EXPECT_EQ(sector_of({3.0, 2.0, 1.0}), 0);
  EXPECT_EQ(sector_of({3.0, 1.0, 2.0}), 1);
  EXPECT_EQ(sector_of({1.0, 2.0, 3.0}), 5);
}

TEST(Sectors, RegularRepresentation) {
  for (const auto& g : Permutation::all()) {
    const Eigen::MatrixXd m = sector_representation(g);
    EXPECT_TRUE((m.transpose() * m).isIdentity(0.0));
    EXPECT_DOUBLE_EQ(m.trace(), g.is_identity() ? 6.0 : 0.0);
  }
  // homomorphism
  for (const auto& a : Permutation::all())
    for (const auto& b : Permutation::all())
      EXPECT_TRUE((sector_representation(a) * sector_representation(b) - sector_representation(a * b)).isZero(0.0));
}

TEST(Sectors, GeometricAction) {
  // permuting a configuration moves it to sector_image
  const std::array<double, 3> x = {0.7, -0.4, 0.1};
  for (const auto& g : Permutation::all()) {
    const auto y = permutation_action(g, ParticleCoords{x}).x;
    EXPECT_EQ(sector_of(y), sector_image(g, sector_of(x)));
  }
}

TEST(SectorStates, Patterns) {
  const auto f = fermionic_sector_state({0, 1, 2});
  const auto b = bosonic_sector_state({0, 1, 2});
  EXPECT_NO_THROW(validate(f));
  EXPECT_NO_THROW(validate(b));
  EXPECT_NEAR(f.amplitudes.norm(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(f.amplitudes[1], -1.0 / std::sqrt(6.0));
  SectorState bad{{0, 0, 2}, b.amplitudes};
  EXPECT_THROW(validate(bad), Error);
  const auto j = to_json(f);
  EXPECT_EQ(j["base"], nlohmann::json({0, 1, 2}));
  EXPECT_EQ(j["amplitudes"].size(), 6u);
}

TEST(Girardeau, FermionPatternIsSlaterDeterminant) {
  const Axis axis{-6, 6, 40};
  const auto psi = girardeau_wavefunction(fermionic_sector_state({0, 1, 2}), HarmonicTrap{1.0}, axis);
  const auto orb = grid_states(HarmonicTrap{1.0}, axis, 3);
  const int n = axis.points;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Eigen::Matrix3d m;
        const int idx[3] = {i, j, k};
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) m(r, c) = orb.vectors(idx[c], r);
        const double det = m.determinant() / std::sqrt(6.0);
        const double v = psi.amplitude[static_cast<std::size_t>((i * n + j) * n + k)].real();
        worst = std::max(worst, std::abs(v - det));
      }
  EXPECT_LE(worst, 1e-10);
}

TEST(Girardeau, BosonPatternIsAbsoluteDeterminant) {
  const Axis axis{-6, 6, 40};
  const auto fermi = girardeau_wavefunction(fermionic_sector_state({0, 1, 2}), HarmonicTrap{1.0}, axis);
  const auto bose = girardeau_wavefunction(bosonic_sector_state({0, 1, 2}), HarmonicTrap{1.0}, axis);
  double worst = 0.0;
  for (std::size_t a = 0; a < fermi.size(); ++a)
    worst = std::max(worst, std::abs(std::abs(bose.amplitude[a]) - std::abs(fermi.amplitude[a])));
  EXPECT_LE(worst, 1e-12);
  // symmetric under every exchange
  const int n = axis.points;
  for (int i = 0; i < n; i += 3)
    for (int j = 0; j < n; j += 5)
      for (int k = 0; k < n; k += 7) {
        const auto at = [&](int a, int b, int c) { return bose.amplitude[static_cast<std::size_t>((a * n + b) * n + c)]; };
        EXPECT_NEAR(std::abs(at(i, j, k) - at(j, i, k)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(at(i, j, k) - at(i, k, j)), 0.0, 1e-12);
      }
  EXPECT_NEAR(bose.norm(), 1.0, 1e-10);
}

TEST(Girardeau, ExactEigenvectorOfHardWallGrid) {
  const Axis axis{-6, 6, 36};
  const auto psi = girardeau_wavefunction(bosonic_sector_state({0, 1, 2}), HarmonicTrap{1.0}, axis);
  const auto orb = grid_states(HarmonicTrap{1.0}, axis, 3);
  const double e = orb.energies[0] + orb.energies[1] + orb.energies[2];
  const auto hpsi = apply_hamiltonian(harmonic_model(UnitaryContact{}), psi);
  double r = 0.0;
  for (std::size_t a = 0; a < psi.size(); ++a) r += std::norm(hpsi.amplitude[a] - e * psi.amplitude[a]);
  EXPECT_LE(std::sqrt(r * psi.cell_volume()), 1e-8);
}

TEST(Girardeau, TooCoarse) {
  EXPECT_THROW(girardeau_wavefunction(fermionic_sector_state({0, 1, 6}), HarmonicTrap{1.0}, Axis{-6, 6, 20}), Error);
}

TEST(Csv, Formats) {
  const auto csv = silver_levels_to_csv("harm-harm", harm_harm_spectrum(1.0, 0.0, 1.5));
  EXPECT_EQ(csv, "model,quantum_numbers,energy,degeneracy\nharm-harm,eta=0 nu=0 mu=0,1.5,1\n");
  const auto u = unitary_levels_to_csv(unitary_contact_spectrum(analytic_spectrum(HarmonicTrap{1.0}, 8), 4.5));
  EXPECT_EQ(u, "model,quantum_numbers,energy,degeneracy\nunitary-contact,{0 1 2},4.5,6\n");
}
