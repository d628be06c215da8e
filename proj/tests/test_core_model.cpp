#include <gtest/gtest.h>

#include <cmath>

#include "threebody/config.hpp"
#include "threebody/core_model.hpp"

using namespace threebody;

namespace {

ModelSpec make(Trap trap, Interaction interaction = NoInteraction{}) {
  ModelSpec s;
  s.trap = std::move(trap);
  s.interaction = std::move(interaction);
  return s;
}

ErrorKind first_violation(const ModelSpec& s) {
  const auto r = validate_model(s);
  EXPECT_FALSE(r.ok());
  return r.ok() ? ErrorKind::InvalidArgument : r.violations.front().kind;
}

// Morse-like well: steep on the left, soft on the right.
TabulatedTrap morse_table() {
  TabulatedTrap t;
  for (int k = 0; k <= 80; ++k) {
    const double x = -2.0 + 0.1 * k;
    const double e = 1.0 - std::exp(-0.8 * x);
    t.x.push_back(x);
    t.v.push_back(4.0 * e * e);
  }
  return t;
}

}  // namespace

TEST(Validate, WellFormedHarmonicPasses) {
  const auto r = validate_model(make(HarmonicTrap{1.0}));
  EXPECT_TRUE(r.ok());
}

TEST(Validate, NegativeWellLength) {
  EXPECT_EQ(first_violation(make(InfiniteWell{-1.0})), ErrorKind::NegativeCoupling);
}

TEST(Validate, NegativeCouplings) {
  EXPECT_EQ(first_violation(make(HarmonicTrap{1.0}, HarmonicInteraction{-0.1})), ErrorKind::NegativeCoupling);
  EXPECT_EQ(first_violation(make(HarmonicTrap{1.0}, InverseSquareInteraction{-1.0})), ErrorKind::NegativeCoupling);
  EXPECT_EQ(first_violation(make(HarmonicTrap{0.0})), ErrorKind::NegativeCoupling);
}

TEST(Validate, DecreasingRightEdgeIsNotConfining) {
  TabulatedTrap t{{-2, -1, 0, 1, 2}, {4, 1, 0, 1, 0.5}};
  EXPECT_EQ(first_violation(make(t)), ErrorKind::NonConfiningTrap);
}

TEST(Validate, NoTrapRejected) { EXPECT_EQ(first_violation(make(NoTrap{})), ErrorKind::NonConfiningTrap); }

TEST(Validate, ReportsAllViolations) {
  ModelSpec s = make(HarmonicTrap{-1.0}, ContactInteraction{-2.0});
  EXPECT_EQ(validate_model(s).violations.size(), 2u);
  EXPECT_THROW(require_valid(s), Error);
}

TEST(Units, ExplicitRescaling) {
  ModelSpec s = make(HarmonicTrap{2.0}, HarmonicInteraction{0.3});
  s.units.mode = UnitsMode::Explicit;
  s.mass = 2.0;
  s.hbar = 0.5;
  const auto n = to_natural_units(s);
  EXPECT_EQ(n.spec.mass, 1.0);
  EXPECT_EQ(n.spec.hbar, 1.0);
  // hbar w = energy_unit * w_natural
  EXPECT_NEAR(n.energy_unit * std::get<HarmonicTrap>(n.spec.trap).omega, s.hbar * 2.0, 1e-12);
  // the dimensionless ratio gamma / (m w^2) survives
  const double g = std::get<HarmonicInteraction>(n.spec.interaction).gamma;
  const double w = std::get<HarmonicTrap>(n.spec.trap).omega;
  EXPECT_NEAR(g / (w * w), 0.3 / (2.0 * 4.0), 1e-12);
}

TEST(Units, NaturalModeNeedsUnitConstants) {
  ModelSpec s = make(HarmonicTrap{1.0});
  s.mass = 2.0;
  EXPECT_FALSE(validate_model(s).ok());
}

TEST(Separability, HarmHarmIsGold) {
  const auto v = classify_separability(make(HarmonicTrap{1.0}, HarmonicInteraction{0.5}));
  EXPECT_EQ(v.grade, SeparabilityGrade::Gold);
  EXPECT_TRUE(v.is_separable(CoordinateSystem::Rectangular));
  EXPECT_TRUE(v.is_separable(CoordinateSystem::Cylindrical));
  EXPECT_TRUE(v.jacobi);
}

TEST(Separability, CalogeroIsSilver) {
  const auto v = classify_separability(make(HarmonicTrap{1.0}, InverseSquareInteraction{1.0}));
  EXPECT_EQ(v.grade, SeparabilityGrade::Silver);
  EXPECT_TRUE(v.is_separable(CoordinateSystem::Cylindrical));
  EXPECT_FALSE(v.is_separable(CoordinateSystem::Rectangular));
}

TEST(Separability, FreeOscillatorEightOfEleven) {
  const auto v = classify_separability(make(HarmonicTrap{1.0}));
  EXPECT_EQ(v.separable_count(), 8);
  EXPECT_EQ(v.grade, SeparabilityGrade::Gold);
  bool bronze = false;
  for (const auto& w : v.witnesses)
    bronze |= w.grade == SeparabilityGrade::Bronze && w.system == CoordinateSystem::Spherical;
  EXPECT_TRUE(bronze);
}

TEST(Separability, QuadraticTrapHarmonicPairIsGold) {
  const auto v = classify_separability(make(QuadraticTrap{0.5, 0.3, 1.0}, HarmonicInteraction{0.2}));
  EXPECT_EQ(v.grade, SeparabilityGrade::Gold);
}

TEST(Separability, UnitaryIsSectorSolvable) {
  const auto v = classify_separability(make(HarmonicTrap{1.0}, UnitaryContact{}));
  EXPECT_TRUE(v.sector_solvable);
  EXPECT_EQ(v.separable_count(), 0);
  EXPECT_EQ(v.grade, SeparabilityGrade::None);
}

TEST(Separability, TabulatedIsNone) {
  EXPECT_EQ(classify_separability(make(morse_table())).grade, SeparabilityGrade::None);
  EXPECT_EQ(classify_separability(make(HarmonicTrap{1.0}, ContactInteraction{2.0})).grade, SeparabilityGrade::None);
}

TEST(Separability, GradeHasSeparableWitness) {
  const std::vector<ModelSpec> specs = {
      make(HarmonicTrap{1.0}),
      make(HarmonicTrap{1.0}, HarmonicInteraction{0.5}),
      make(HarmonicTrap{1.0}, InverseSquareInteraction{0.5}),
      make(InfiniteWell{2.0}),
      make(InfiniteWell{2.0}, ContactInteraction{1.0}),
      make(QuadraticTrap{1.0, 0.0, 0.0}, HarmonicInteraction{0.1}),
  };
  for (const auto& s : specs) {
    const auto v = classify_separability(s);
    if (v.grade == SeparabilityGrade::Gold) {
      EXPECT_TRUE(v.is_separable(CoordinateSystem::Rectangular));
    }
    for (const auto& w : v.witnesses) {
      EXPECT_TRUE(v.is_separable(w.system));
      if (w.grade != SeparabilityGrade::Gold) {
        EXPECT_NE(w.system, CoordinateSystem::Rectangular);
      }
    }
  }
}

TEST(Separability, UnitModeInvariant) {
  ModelSpec s = make(HarmonicTrap{3.0}, InverseSquareInteraction{0.7});
  s.units.mode = UnitsMode::Explicit;
  s.mass = 2.5;
  s.hbar = 0.4;
  const auto a = classify_separability(s);
  const auto b = classify_separability(to_natural_units(s).spec);
  EXPECT_EQ(a.separable, b.separable);
  EXPECT_EQ(a.grade, b.grade);
  EXPECT_EQ(classify_symmetry_group(s).label, classify_symmetry_group(to_natural_units(s).spec).label);
}

TEST(SymmetryGroup, AsymmetricTrapIsP3) {
  const auto g = classify_symmetry_group(make(morse_table(), ContactInteraction{2.0}));
  EXPECT_EQ(g.group, SymmetryGroupKind::P3);
  EXPECT_EQ(g.order, 6);
}

TEST(SymmetryGroup, InfiniteWellIsD3d) {
  const auto g = classify_symmetry_group(make(InfiniteWell{1.0}, ContactInteraction{2.0}));
  EXPECT_EQ(g.group, SymmetryGroupKind::P3xO1);
  EXPECT_EQ(g.point_group, "D3d");
}

TEST(SymmetryGroup, HarmonicIsD6h) {
  for (Interaction i : {Interaction{NoInteraction{}}, Interaction{HarmonicInteraction{0.5}},
                        Interaction{InverseSquareInteraction{1.0}}, Interaction{UnitaryContact{}}}) {
    const auto g = classify_symmetry_group(make(HarmonicTrap{1.0}, i));
    EXPECT_EQ(g.point_group, "D6h");
    EXPECT_EQ(g.order, 24);
    EXPECT_NE(g.phase_space.find("U(1)"), std::string::npos);
  }
}

TEST(SymmetryGroup, MonotoneInTrapSymmetry) {
  // Symmetrising the Morse table never shrinks the group.
  auto asym = morse_table();
  TabulatedTrap sym;
  for (int k = -20; k <= 20; ++k) {
    sym.x.push_back(0.1 * k);
    sym.v.push_back(std::pow(0.1 * k, 4));
  }
  const int a = classify_symmetry_group(make(asym)).order;
  const int b = classify_symmetry_group(make(sym)).order;
  const int c = classify_symmetry_group(make(HarmonicTrap{1.0})).order;
  EXPECT_LE(a, b);
  EXPECT_LE(b, c);
  EXPECT_EQ(b, 12);
}

TEST(Config, ParsesHarmHarm) {
  const auto cfg = parse_config_text("# comment\ntrap.kind = harmonic\ntrap.omega = 1\n\n"
                                     "interaction.kind = harmonic  # trailing\ninteraction.gamma = 0.5\n");
  const auto spec = build_model(cfg);
  EXPECT_EQ(std::get<HarmonicTrap>(spec.trap).omega, 1.0);
  EXPECT_EQ(std::get<HarmonicInteraction>(spec.interaction).gamma, 0.5);
}

TEST(Config, UnitaryKeyword) {
  const auto spec = build_model(parse_config_text("trap.kind=harmonic\ntrap.omega=1\ninteraction.kind=contact\n"
                                                  "interaction.gamma=unitary\n"));
  EXPECT_TRUE(std::holds_alternative<UnitaryContact>(spec.interaction));
}

TEST(Config, UnknownKeyNamesLine) {
  try {
    parse_config_text("trap.kind = harmonic\ntrap.omeg = 1\n", "m.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigSyntax);
    EXPECT_NE(std::string(e.what()).find("m.cfg:2"), std::string::npos);
  }
}

TEST(Config, MissingGammaNamesKey) {
  try {
    build_model(parse_config_text("trap.kind = harmonic\ntrap.omega = 1\n"), std::string("harmonic"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingParameter);
    EXPECT_NE(std::string(e.what()).find("interaction.gamma"), std::string::npos);
  }
}

TEST(Config, BadNumberAndDuplicates) {
  EXPECT_THROW(build_model(parse_config_text("trap.kind = harmonic\ntrap.omega = one\n")), Error);
  EXPECT_THROW(parse_config_text("trap.kind = harmonic\ntrap.kind = harmonic\n"), Error);
  EXPECT_THROW(parse_config_text("trap.kind harmonic\n"), Error);
}

TEST(Config, ReadsTabulatedTrapFromFile) {
  const auto cfg = read_config_file(std::string(THREEBODY_TEST_DATA) + "/cubic_contact.cfg");
  const auto spec = build_model(cfg);
  const auto& t = std::get<TabulatedTrap>(spec.trap);
  EXPECT_GT(t.x.size(), 10u);
  EXPECT_TRUE(validate_model(spec).ok());
  EXPECT_EQ(classify_symmetry_group(spec).group, SymmetryGroupKind::P3);
}
