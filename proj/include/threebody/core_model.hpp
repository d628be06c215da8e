#pragma once

// Model specification for three identical particles on a line:
//   H = sum_i [ p_i^2/2m + V1(x_i) ] + sum_{i<j} V2(|x_i - x_j|)
// plus validation, unit handling, and the rule-table classifiers for
// coordinate separability and configuration-space symmetry.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "threebody/errors.hpp"

namespace threebody {

// ---------------------------------------------------------------- traps

struct HarmonicTrap {
  double omega = 1.0;
};

/// Hard-wall box of width `length`, centred on the origin (walls at +-L/2).
struct InfiniteWell {
  double length = 1.0;
};

/// V1(x) = A x^2 + B x + C.
struct QuadraticTrap {
  double a = 0.5;
  double b = 0.0;
  double c = 0.0;
};

/// Samples (x_k, V_k), x strictly increasing, linearly interpolated.
struct TabulatedTrap {
  std::vector<double> x;
  std::vector<double> v;
};

struct NoTrap {};

using Trap = std::variant<HarmonicTrap, InfiniteWell, QuadraticTrap, TabulatedTrap, NoTrap>;

// ---------------------------------------------------------- interactions

struct NoInteraction {};

/// V2(r) = gamma r^2.
struct HarmonicInteraction {
  double gamma = 0.0;
};

/// Inverse-square (Calogero-Moser) interaction. In Jacobi cylindrical
/// coordinates the total pair potential is 18 gamma / (rho^2 cos^2(3 phi)),
/// i.e. 4 gamma / (x_i - x_j)^2 per pair.
struct InverseSquareInteraction {
  double gamma = 0.0;
};

/// Finite contact interaction gamma * delta(x_i - x_j).
struct ContactInteraction {
  double gamma = 0.0;
};

/// Infinite-strength contact interaction. A distinct variant: never a float infinity.
struct UnitaryContact {};

/// Samples (r_k, V2_k) for r >= 0, linearly interpolated.
struct TabulatedInteraction {
  std::vector<double> r;
  std::vector<double> v;
};

using Interaction = std::variant<NoInteraction, HarmonicInteraction, InverseSquareInteraction,
                                 ContactInteraction, UnitaryContact, TabulatedInteraction>;

enum class UnitsMode { Natural, Explicit };

struct UnitsConvention {
  UnitsMode mode = UnitsMode::Natural;
};

struct ModelSpec {
  Trap trap = HarmonicTrap{};
  Interaction interaction = NoInteraction{};
  double mass = 1.0;
  double hbar = 1.0;
  UnitsConvention units{};
};

// ------------------------------------------------------------- helpers

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string trap_name(const Trap& trap) {
  return std::visit(overloaded{
                        [](const HarmonicTrap&) { return std::string("harmonic"); },
                        [](const InfiniteWell&) { return std::string("infinite_well"); },
                        [](const QuadraticTrap&) { return std::string("quadratic"); },
                        [](const TabulatedTrap&) { return std::string("custom"); },
                        [](const NoTrap&) { return std::string("none"); },
                    },
                    trap);
}

inline std::string interaction_name(const Interaction& interaction) {
  return std::visit(overloaded{
                        [](const NoInteraction&) { return std::string("none"); },
                        [](const HarmonicInteraction&) { return std::string("harmonic"); },
                        [](const InverseSquareInteraction&) { return std::string("inverse_square"); },
                        [](const ContactInteraction&) { return std::string("contact"); },
                        [](const UnitaryContact&) { return std::string("contact(unitary)"); },
                        [](const TabulatedInteraction&) { return std::string("custom"); },
                    },
                    interaction);
}

/// Piecewise-linear interpolation with linear extrapolation from the end segments.
inline double interpolate_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const std::size_t n = xs.size();
  if (n == 1) return ys[0];
  std::size_t hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
  hi = std::clamp<std::size_t>(hi, 1, n - 1);
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

/// Harmonic-equivalent view of a trap: omega and the constant energy offset
/// per particle. Quadratic traps complete the square.
struct HarmonicView {
  double omega;
  double offset;
  double center;
};

inline std::optional<HarmonicView> harmonic_view(const Trap& trap, double mass = 1.0) {
  if (const auto* h = std::get_if<HarmonicTrap>(&trap)) return HarmonicView{h->omega, 0.0, 0.0};
  if (const auto* q = std::get_if<QuadraticTrap>(&trap)) {
    if (q->a <= 0.0) return std::nullopt;
    return HarmonicView{std::sqrt(2.0 * q->a / mass), q->c - q->b * q->b / (4.0 * q->a), -q->b / (2.0 * q->a)};
  }
  return std::nullopt;
}

inline bool is_harmonic_like(const Trap& trap) {
  return std::holds_alternative<HarmonicTrap>(trap) || std::holds_alternative<QuadraticTrap>(trap);
}

/// One-body trap potential. Infinite wells return +inf outside [-L/2, L/2]
/// and 0 inside; callers that need walls should use grid bounds instead.
inline double trap_potential(const Trap& trap, double x, double mass = 1.0) {
  return std::visit(overloaded{
                        [&](const HarmonicTrap& h) { return 0.5 * mass * h.omega * h.omega * x * x; },
                        [&](const InfiniteWell& w) {
                          return std::abs(x) <= 0.5 * w.length ? 0.0 : HUGE_VAL;
                        },
                        [&](const QuadraticTrap& q) { return (q.a * x + q.b) * x + q.c; },
                        [&](const TabulatedTrap& t) { return interpolate_linear(t.x, t.v, x); },
                        [&](const NoTrap&) { return 0.0; },
                    },
                    trap);
}

/// Centre of reflection symmetry of the trap, if the trap is parity symmetric.
inline std::optional<double> trap_parity_center(const Trap& trap) {
  return std::visit(overloaded{
                        [](const HarmonicTrap&) -> std::optional<double> { return 0.0; },
                        [](const InfiniteWell&) -> std::optional<double> { return 0.0; },
                        [](const QuadraticTrap& q) -> std::optional<double> {
                          if (q.a == 0.0) return std::nullopt;
                          return -q.b / (2.0 * q.a);
                        },
                        [](const TabulatedTrap& t) -> std::optional<double> {
                          const std::size_t n = t.x.size();
                          if (n < 2) return std::nullopt;
                          const double center = 0.5 * (t.x.front() + t.x.back());
                          double vmax = 0.0;
                          for (double v : t.v) vmax = std::max(vmax, std::abs(v));
                          const double scale = std::max(1.0, std::abs(t.x.back() - t.x.front()));
                          for (std::size_t k = 0; k < n; ++k) {
                            if (std::abs((t.x[k] - center) + (t.x[n - 1 - k] - center)) > 1e-12 * scale)
                              return std::nullopt;
                            if (std::abs(t.v[k] - t.v[n - 1 - k]) > 1e-12 * std::max(1.0, vmax))
                              return std::nullopt;
                          }
                          return center;
                        },
                        [](const NoTrap&) -> std::optional<double> { return 0.0; },
                    },
                    trap);
}

inline bool parity_symmetric_trap(const ModelSpec& spec) {
  return trap_parity_center(spec.trap).has_value();
}

// ---------------------------------------------------------- validation

struct Violation {
  ErrorKind kind;
  std::string message;
};

struct ValidationReport {
  ModelSpec spec;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

inline bool finite(double x) { return std::isfinite(x); }

inline void check_tabulated_trap(const TabulatedTrap& t, std::vector<Violation>& out) {
  if (t.x.size() < 3 || t.x.size() != t.v.size()) {
    out.push_back({ErrorKind::MissingParameter, "tabulated trap needs >= 3 (x, V) samples of equal length"});
    return;
  }
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    if (!finite(t.x[k]) || !finite(t.v[k])) {
      out.push_back({ErrorKind::InvalidArgument, "tabulated trap contains non-finite samples"});
      return;
    }
    if (k > 0 && !(t.x[k] > t.x[k - 1])) {
      out.push_back({ErrorKind::InvalidArgument, "tabulated trap abscissae must be strictly increasing"});
      return;
    }
  }
  // Confinement: non-decreasing from the minimum outwards, strictly rising at both ends.
  const std::size_t n = t.v.size();
  const std::size_t imin = static_cast<std::size_t>(std::min_element(t.v.begin(), t.v.end()) - t.v.begin());
  bool confining = t.v[0] > t.v[1] && t.v[n - 1] > t.v[n - 2];
  for (std::size_t k = imin; k + 1 < n && confining; ++k) confining = t.v[k + 1] >= t.v[k];
  for (std::size_t k = imin; k > 0 && confining; --k) confining = t.v[k - 1] >= t.v[k];
  if (!confining)
    out.push_back({ErrorKind::NonConfiningTrap, "tabulated trap must increase toward both grid ends"});
}

}  // namespace detail

/// Checks every invariant of the model. Returns the spec unchanged plus all violations found.
inline ValidationReport validate_model(const ModelSpec& spec) {
  ValidationReport report{spec, {}};
  auto& out = report.violations;

  if (!(spec.mass > 0.0) || !detail::finite(spec.mass))
    out.push_back({ErrorKind::NegativeCoupling, "mass must be positive"});
  if (!(spec.hbar > 0.0) || !detail::finite(spec.hbar))
    out.push_back({ErrorKind::NegativeCoupling, "hbar must be positive"});

  std::visit(overloaded{
                 [&](const HarmonicTrap& h) {
                   if (!(h.omega > 0.0) || !detail::finite(h.omega))
                     out.push_back({ErrorKind::NegativeCoupling, "trap.omega must be > 0"});
                 },
                 [&](const InfiniteWell& w) {
                   if (!(w.length > 0.0) || !detail::finite(w.length))
                     out.push_back({ErrorKind::NegativeCoupling, "trap.length must be > 0"});
                 },
                 [&](const QuadraticTrap& q) {
                   if (!detail::finite(q.a) || !detail::finite(q.b) || !detail::finite(q.c))
                     out.push_back({ErrorKind::InvalidArgument, "quadratic trap coefficients must be finite"});
                   else if (!(q.a > 0.0))
                     out.push_back({ErrorKind::NonConfiningTrap, "quadratic trap needs trap.A > 0"});
                 },
                 [&](const TabulatedTrap& t) { detail::check_tabulated_trap(t, out); },
                 [&](const NoTrap&) {
                   out.push_back({ErrorKind::NonConfiningTrap, "a confining trap is required for bound states"});
                 },
             },
             spec.trap);

  auto check_gamma = [&](double g) {
    if (!detail::finite(g) || g < 0.0)
      out.push_back({ErrorKind::NegativeCoupling, "interaction.gamma must be finite and >= 0"});
  };
  std::visit(overloaded{
                 [](const NoInteraction&) {},
                 [&](const HarmonicInteraction& h) { check_gamma(h.gamma); },
                 [&](const InverseSquareInteraction& h) { check_gamma(h.gamma); },
                 [&](const ContactInteraction& h) { check_gamma(h.gamma); },
                 [](const UnitaryContact&) {},
                 [&](const TabulatedInteraction& t) {
                   if (t.r.size() < 2 || t.r.size() != t.v.size()) {
                     out.push_back({ErrorKind::MissingParameter, "tabulated interaction needs >= 2 samples"});
                     return;
                   }
                   for (std::size_t k = 0; k < t.r.size(); ++k) {
                     if (!detail::finite(t.r[k]) || !detail::finite(t.v[k]) || t.r[k] < 0.0 ||
                         (k > 0 && !(t.r[k] > t.r[k - 1]))) {
                       out.push_back({ErrorKind::InvalidArgument,
                                      "tabulated interaction needs finite, increasing r >= 0"});
                       return;
                     }
                   }
                 },
             },
             spec.interaction);

  if (spec.units.mode == UnitsMode::Natural && (spec.mass != 1.0 || spec.hbar != 1.0))
    out.push_back({ErrorKind::InvalidArgument, "natural units require mass = hbar = 1"});
  return report;
}

/// Throws the first violation as an Error.
inline const ModelSpec& require_valid(const ModelSpec& spec) {
  auto report = validate_model(spec);
  if (!report.ok()) throw Error(report.violations.front().kind, report.violations.front().message);
  return spec;
}

// --------------------------------------------------------------- units

/// A model rescaled to hbar = m = 1 (lengths unchanged). Energies computed for
/// `spec` are multiplied by `energy_unit` to return to the caller's units.
struct NaturalModel {
  ModelSpec spec;
  double energy_unit = 1.0;
  double time_unit = 1.0;
};

inline NaturalModel to_natural_units(const ModelSpec& in) {
  NaturalModel out{in, 1.0, 1.0};
  if (in.units.mode == UnitsMode::Natural) return out;
  const double s = in.mass / (in.hbar * in.hbar);  // energy -> natural energy
  out.energy_unit = 1.0 / s;
  out.time_unit = in.hbar / out.energy_unit;
  out.spec.mass = 1.0;
  out.spec.hbar = 1.0;
  out.spec.units.mode = UnitsMode::Natural;
  std::visit(overloaded{
                 [&](HarmonicTrap& h) { h.omega *= in.mass / in.hbar; },
                 [](InfiniteWell&) {},
                 [&](QuadraticTrap& q) {
                   q.a *= s;
                   q.b *= s;
                   q.c *= s;
                 },
                 [&](TabulatedTrap& t) {
                   for (double& v : t.v) v *= s;
                 },
                 [](NoTrap&) {},
             },
             out.spec.trap);
  std::visit(overloaded{
                 [](NoInteraction&) {},
                 [&](HarmonicInteraction& h) { h.gamma *= s; },
                 [&](InverseSquareInteraction& h) { h.gamma *= s; },
                 [&](ContactInteraction& h) { h.gamma *= s; },
                 [](UnitaryContact&) {},
                 [&](TabulatedInteraction& t) {
                   for (double& v : t.v) v *= s;
                 },
             },
             out.spec.interaction);
  return out;
}

// ------------------------------------------------------- separability

/// The eleven coordinate systems in which the 3D Schroedinger equation can separate.
enum class CoordinateSystem {
  Rectangular,
  Cylindrical,
  EllipticCylindrical,
  ParabolicCylindrical,
  Spherical,
  Conical,
  Parabolic,
  ProlateSpheroidal,
  OblateSpheroidal,
  Ellipsoidal,
  Paraboloidal,
};

inline constexpr std::array<CoordinateSystem, 11> kAllCoordinateSystems = {
    CoordinateSystem::Rectangular,       CoordinateSystem::Cylindrical,      CoordinateSystem::EllipticCylindrical,
    CoordinateSystem::ParabolicCylindrical, CoordinateSystem::Spherical,     CoordinateSystem::Conical,
    CoordinateSystem::Parabolic,         CoordinateSystem::ProlateSpheroidal, CoordinateSystem::OblateSpheroidal,
    CoordinateSystem::Ellipsoidal,       CoordinateSystem::Paraboloidal,
};

constexpr std::string_view to_string(CoordinateSystem c) {
  switch (c) {
    case CoordinateSystem::Rectangular: return "rectangular";
    case CoordinateSystem::Cylindrical: return "cylindrical";
    case CoordinateSystem::EllipticCylindrical: return "elliptic_cylindrical";
    case CoordinateSystem::ParabolicCylindrical: return "parabolic_cylindrical";
    case CoordinateSystem::Spherical: return "spherical";
    case CoordinateSystem::Conical: return "conical";
    case CoordinateSystem::Parabolic: return "parabolic";
    case CoordinateSystem::ProlateSpheroidal: return "prolate_spheroidal";
    case CoordinateSystem::OblateSpheroidal: return "oblate_spheroidal";
    case CoordinateSystem::Ellipsoidal: return "ellipsoidal";
    case CoordinateSystem::Paraboloidal: return "paraboloidal";
  }
  return "?";
}

enum class SeparabilityGrade { Gold, Silver, Bronze, None };

constexpr std::string_view to_string(SeparabilityGrade g) {
  switch (g) {
    case SeparabilityGrade::Gold: return "gold";
    case SeparabilityGrade::Silver: return "silver";
    case SeparabilityGrade::Bronze: return "bronze";
    case SeparabilityGrade::None: return "none";
  }
  return "?";
}

struct GradeWitness {
  SeparabilityGrade grade;
  CoordinateSystem system;
};

struct SeparabilityVerdict {
  std::array<bool, 11> separable{};
  SeparabilityGrade grade = SeparabilityGrade::None;
  /// Every (grade, coordinate system) pair the rule table certifies, best first.
  std::vector<GradeWitness> witnesses;
  /// Unitary contact: solvable sector by sector, not by coordinate separation.
  bool sector_solvable = false;
  /// True when separation happens in Jacobi rather than particle coordinates.
  bool jacobi = false;

  bool is_separable(CoordinateSystem c) const { return separable[static_cast<std::size_t>(c)]; }
  int separable_count() const { return static_cast<int>(std::count(separable.begin(), separable.end(), true)); }
};

/// Finite rule table; custom tabulated potentials always classify as none.
inline SeparabilityVerdict classify_separability(const ModelSpec& spec) {
  SeparabilityVerdict v;
  auto mark = [&](CoordinateSystem c) { v.separable[static_cast<std::size_t>(c)] = true; };
  auto witness = [&](SeparabilityGrade g, CoordinateSystem c) {
    v.witnesses.push_back({g, c});
    if (v.grade == SeparabilityGrade::None || static_cast<int>(g) < static_cast<int>(v.grade)) v.grade = g;
  };

  if (std::holds_alternative<UnitaryContact>(spec.interaction)) {
    v.sector_solvable = true;
    return v;
  }
  if (std::holds_alternative<TabulatedTrap>(spec.trap)) return v;

  // A vanishing coupling is the non-interacting model.
  const bool free = std::visit(overloaded{
                                   [](const NoInteraction&) { return true; },
                                   [](const HarmonicInteraction& h) { return h.gamma == 0.0; },
                                   [](const InverseSquareInteraction& h) { return h.gamma == 0.0; },
                                   [](const ContactInteraction& h) { return h.gamma == 0.0; },
                                   [](const auto&) { return false; },
                               },
                               spec.interaction);

  if (is_harmonic_like(spec.trap)) {
    if (free) {
      // Isotropic 3D oscillator: separable in eight of the eleven systems.
      for (auto c : {CoordinateSystem::Rectangular, CoordinateSystem::Cylindrical,
                     CoordinateSystem::EllipticCylindrical, CoordinateSystem::Spherical, CoordinateSystem::Conical,
                     CoordinateSystem::ProlateSpheroidal, CoordinateSystem::OblateSpheroidal,
                     CoordinateSystem::Ellipsoidal})
        mark(c);
      witness(SeparabilityGrade::Gold, CoordinateSystem::Rectangular);
      witness(SeparabilityGrade::Bronze, CoordinateSystem::Spherical);
      return v;
    }
    if (std::holds_alternative<HarmonicInteraction>(spec.interaction)) {
      mark(CoordinateSystem::Rectangular);
      mark(CoordinateSystem::Cylindrical);
      v.jacobi = true;
      witness(SeparabilityGrade::Gold, CoordinateSystem::Rectangular);
      witness(SeparabilityGrade::Silver, CoordinateSystem::Cylindrical);
      return v;
    }
    if (std::holds_alternative<InverseSquareInteraction>(spec.interaction)) {
      mark(CoordinateSystem::Cylindrical);
      v.jacobi = true;
      witness(SeparabilityGrade::Silver, CoordinateSystem::Cylindrical);
      return v;
    }
    return v;
  }

  if (free) {
    // No interactions: particle coordinates already separate.
    mark(CoordinateSystem::Rectangular);
    witness(SeparabilityGrade::Gold, CoordinateSystem::Rectangular);
  }
  return v;
}

// ------------------------------------------------------------ symmetry

enum class SymmetryGroupKind { P3, P3xO1, P3xO1xO1 };

struct SymmetryVerdict {
  SymmetryGroupKind group;
  std::string label;        // e.g. "P3 x O(1) x O(1) ~ D6h"
  std::string point_group;  // C3v, D3d, D6h
  std::string phase_space;  // phase-space extension
  int order;
};

inline SymmetryVerdict classify_symmetry_group(const ModelSpec& spec) {
  if (is_harmonic_like(spec.trap))
    return {SymmetryGroupKind::P3xO1xO1, "P3 x O(1) x O(1) ~ D6h", "D6h", "T_t x P3 x O(1) x U(1)", 24};
  if (parity_symmetric_trap(spec))
    return {SymmetryGroupKind::P3xO1, "P3 x O(1) ~ D3d", "D3d", "T_t x P3 x O(1)", 12};
  return {SymmetryGroupKind::P3, "P3 ~ C3v", "C3v", "T_t x P3", 6};
}

}  // namespace threebody
