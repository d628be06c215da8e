#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "threebody/noninteracting.hpp"

using namespace threebody;

namespace {

OneBodySpectrum harmonic(int n_max = 12) { return analytic_spectrum(HarmonicTrap{1.0}, n_max); }

// Brute force over ordered triples.
int ordered_triples_below(const std::vector<double>& eps, double e_max) {
  int count = 0;
  for (double a : eps)
    for (double b : eps)
      for (double c : eps)
        if (a + b + c <= e_max + 1e-9) ++count;
  return count;
}

const SpectrumLevel& level_at(const std::vector<SpectrumLevel>& levels, double e) {
  for (const auto& l : levels)
    if (std::abs(l.energy - e) < 1e-9) return l;
  throw std::runtime_error("no level");
}

}  // namespace

TEST(Classes, MultisetRule) {
  EXPECT_EQ(classify_multiset({0, 0, 0}), DegeneracyClass::Nondegenerate);
  EXPECT_EQ(classify_multiset({0, 0, 1}), DegeneracyClass::Threefold);
  EXPECT_EQ(classify_multiset({0, 1, 1}), DegeneracyClass::Threefold);
  EXPECT_EQ(classify_multiset({0, 1, 2}), DegeneracyClass::Sixfold);
}

TEST(Compose, GroundLevel) {
  const auto levels = compose_spectrum(harmonic(), 3.0);
  ASSERT_FALSE(levels.empty());
  EXPECT_DOUBLE_EQ(levels[0].energy, 1.5);
  EXPECT_EQ(levels[0].degeneracy, 1);
  EXPECT_EQ(levels[0].classes, std::vector<DegeneracyClass>{DegeneracyClass::Nondegenerate});
  EXPECT_FALSE(levels[0].accidental);
}

TEST(Compose, FirstExcited) {
  const auto levels = compose_spectrum(harmonic(), 3.0);
  const auto& l = level_at(levels, 2.5);
  EXPECT_EQ(l.degeneracy, 3);
  EXPECT_EQ(l.constituents, (std::vector<Multiset>{{0, 0, 1}}));
}

TEST(Compose, AccidentalAtThreeAndHalf) {
  const auto levels = compose_spectrum(harmonic(), 3.5);
  const auto& l = level_at(levels, 3.5);
  EXPECT_EQ(l.degeneracy, 6);
  EXPECT_EQ(l.constituents, (std::vector<Multiset>{{0, 0, 2}, {0, 1, 1}}));
  EXPECT_EQ(l.classes, (std::vector<DegeneracyClass>{DegeneracyClass::Threefold, DegeneracyClass::Threefold}));
  EXPECT_TRUE(l.accidental);
}

TEST(Compose, OscillatorShellDegeneracy) {
  // 3D isotropic oscillator: (N+1)(N+2)/2 states at E = N + 3/2
  const auto levels = compose_spectrum(harmonic(), 6.5);
  ASSERT_EQ(levels.size(), 6u);
  for (int n = 0; n < 6; ++n) EXPECT_EQ(levels[static_cast<std::size_t>(n)].degeneracy, (n + 1) * (n + 2) / 2);
}

TEST(Compose, CountsMatchOrderedTriples) {
  for (double e_max : {1.5, 3.5, 6.5, 9.5}) {
    const auto s = harmonic(14);
    int total = 0;
    for (const auto& l : compose_spectrum(s, e_max)) total += l.degeneracy;
    EXPECT_EQ(total, ordered_triples_below(s.energies, e_max));
  }
  const auto well = analytic_spectrum(InfiniteWell{std::numbers::pi}, 12);
  int total = 0;
  for (const auto& l : compose_spectrum(well, 60.0)) total += l.degeneracy;
  EXPECT_EQ(total, ordered_triples_below(well.energies, 60.0));
}

TEST(Compose, LevelInvariants) {
  const auto s = harmonic();
  const auto levels = compose_spectrum(s, 8.5);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (k) {
      EXPECT_GT(levels[k].energy, levels[k - 1].energy);
    }
    int d = 0;
    for (const auto& m : levels[k].constituents) {
      d += orbit_size(m);
      EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
      const double e = s.energies[static_cast<std::size_t>(m[0])] + s.energies[static_cast<std::size_t>(m[1])] +
                       s.energies[static_cast<std::size_t>(m[2])];
      EXPECT_NEAR(e, levels[k].energy, 1e-12);
    }
    EXPECT_EQ(d, levels[k].degeneracy);
    EXPECT_TRUE(std::is_sorted(levels[k].constituents.begin(), levels[k].constituents.end()));
  }
}

TEST(Compose, TruncationRisk) {
  try {
    compose_spectrum(harmonic(3), 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationRisk);
  }
}

TEST(Compose, GridSpectrumGroupsWithErrorTolerance) {
  const auto g = grid_spectrum_1d(HarmonicTrap{1.0}, Axis{-9, 9, 1500}, 8);
  const auto levels = compose_spectrum(g, 5.5);
  ASSERT_EQ(levels.size(), 5u);
  EXPECT_EQ(levels[3].degeneracy, 10);
}

TEST(Accidental, HarmonicFlagsEverythingFromThreeAndHalf) {
  const auto report = detect_accidental(compose_spectrum(harmonic(), 6.5));
  ASSERT_EQ(report.size(), 4u);
  EXPECT_DOUBLE_EQ(report.front().energy, 3.5);
  for (const auto& r : report) EXPECT_GT(r.degeneracy, r.largest_class);
}

TEST(Accidental, InfiniteWellCoincidences) {
  // energies (n+1)^2 / 2; coincidences are sums of three squares with two representations
  const auto well = analytic_spectrum(InfiniteWell{std::numbers::pi}, 12);
  const auto levels = compose_spectrum(well, 0.5 * 75.0);
  const auto report = detect_accidental(levels);
  for (const auto& r : report) EXPECT_GE(r.constituents.size(), 2u);
  std::size_t multi = 0;
  for (const auto& l : levels) multi += l.constituents.size() > 1;
  EXPECT_EQ(report.size(), multi);
  // 1+1+36 = 4+9+25 = 38
  bool found = false;
  for (const auto& r : report) found |= std::abs(r.energy - 19.0) < 1e-9;
  EXPECT_TRUE(found);
}

TEST(Accidental, GenericSpectrumHasNone) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 0.1);
  OneBodySpectrum s;
  double e = 0.5;
  for (int n = 0; n < 20; ++n) {
    s.energies.push_back(e);
    s.est_error.push_back(0.0);
    e += 1.0 + std::sqrt(2.0) * u(rng);
  }
  EXPECT_TRUE(detect_accidental(compose_spectrum(s, 8.0)).empty());
}

TEST(Csv, Levels) {
  const auto csv = levels_to_csv(compose_spectrum(harmonic(), 3.5));
  EXPECT_EQ(csv,
            "E,degeneracy,class_list,accidental\n"
            "1.5,1,{0 0 0}:nondegenerate,false\n"
            "2.5,3,{0 0 1}:threefold,false\n"
            "3.5,6,{0 0 2}:threefold;{0 1 1}:threefold,true\n");
}
