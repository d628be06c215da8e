#pragma once

// Three non-interacting particles: the spectrum is every sum of three
// one-body energies. Levels are built from sorted multisets {n1 <= n2 <= n3};
// the number of distinct orderings of a multiset (1, 3 or 6) is its class.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "threebody/one_body.hpp"

namespace threebody {

using Multiset = std::array<int, 3>;  // sorted ascending

enum class DegeneracyClass { Nondegenerate = 1, Threefold = 3, Sixfold = 6 };

constexpr std::string_view to_string(DegeneracyClass c) {
  switch (c) {
    case DegeneracyClass::Nondegenerate: return "nondegenerate";
    case DegeneracyClass::Threefold: return "threefold";
    case DegeneracyClass::Sixfold: return "sixfold";
  }
  return "?";
}

inline DegeneracyClass classify_multiset(const Multiset& m) {
  if (m[0] == m[1] && m[1] == m[2]) return DegeneracyClass::Nondegenerate;
  if (m[0] == m[1] || m[1] == m[2]) return DegeneracyClass::Threefold;
  return DegeneracyClass::Sixfold;
}

inline int orbit_size(const Multiset& m) { return static_cast<int>(classify_multiset(m)); }

struct SpectrumLevel {
  double energy = 0.0;
  int degeneracy = 0;
  std::vector<Multiset> constituents;  // lexicographic order
  std::vector<DegeneracyClass> classes;
  bool accidental = false;
};

/// Grouping tolerance: 1e-9 max(1,|E|) for analytic spectra, ten times the
/// grid error estimate for numerical ones.
inline double grouping_tolerance(const OneBodySpectrum& s, double energy) {
  if (s.source == SpectrumSource::Analytic) return 1e-9 * std::max(1.0, std::abs(energy));
  return std::max(10.0 * s.max_error(), 1e-9 * std::max(1.0, std::abs(energy)));
}

/// Groups (energy, multiset) pairs sorted by energy into levels.
inline std::vector<SpectrumLevel> group_levels(std::vector<std::pair<double, Multiset>> states,
                                               const OneBodySpectrum& one_body) {
  std::sort(states.begin(), states.end());
  std::vector<SpectrumLevel> levels;
  for (const auto& [e, m] : states) {
    if (levels.empty() || e - levels.back().energy > grouping_tolerance(one_body, levels.back().energy)) {
      levels.push_back(SpectrumLevel{e, 0, {}, {}, false});
    }
    auto& level = levels.back();
    level.constituents.push_back(m);
    level.classes.push_back(classify_multiset(m));
    level.degeneracy += orbit_size(m);
  }
  for (auto& level : levels) {
    std::sort(level.constituents.begin(), level.constituents.end());
    level.classes.clear();
    for (const auto& m : level.constituents) level.classes.push_back(classify_multiset(m));
    level.accidental = level.constituents.size() > 1;
  }
  return levels;
}

/// Every multiset with summed energy <= e_max, grouped into levels.
/// Throws TruncationRisk unless 2 eps_0 + eps_{n_max} > e_max.
inline std::vector<SpectrumLevel> compose_spectrum(const OneBodySpectrum& one_body, double e_max) {
  const auto& eps = one_body.energies;
  if (eps.empty()) throw Error(ErrorKind::InvalidArgument, "empty one-body spectrum");
  if (!std::is_sorted(eps.begin(), eps.end())) throw Error(ErrorKind::InvalidArgument, "one-body spectrum not sorted");
  if (e_max < 3.0 * eps[0]) throw Error(ErrorKind::InvalidArgument, "e_max below the three-body ground energy");
  if (!(2.0 * eps[0] + eps.back() > e_max))
    throw Error(ErrorKind::TruncationRisk, "one-body spectrum too short for e_max; extend n_max");

  const double slack = grouping_tolerance(one_body, e_max);
  const int n = static_cast<int>(eps.size());
  std::vector<std::pair<double, Multiset>> states;
  for (int a = 0; a < n && 3.0 * eps[static_cast<std::size_t>(a)] <= e_max + slack; ++a)
    for (int b = a; b < n && eps[static_cast<std::size_t>(a)] + 2.0 * eps[static_cast<std::size_t>(b)] <= e_max + slack;
         ++b)
      for (int c = b; c < n; ++c) {
        const double e = eps[static_cast<std::size_t>(a)] + eps[static_cast<std::size_t>(b)] +
                         eps[static_cast<std::size_t>(c)];
        if (e > e_max + slack) break;
        states.push_back({e, {a, b, c}});
      }
  return group_levels(std::move(states), one_body);
}

struct AccidentalEntry {
  double energy;
  int degeneracy;
  int largest_class;
  std::vector<Multiset> constituents;
};

/// Energies whose degeneracy exceeds the largest single-multiset class.
inline std::vector<AccidentalEntry> detect_accidental(const std::vector<SpectrumLevel>& levels) {
  std::vector<AccidentalEntry> report;
  for (const auto& level : levels) {
    int largest = 0;
    for (auto c : level.classes) largest = std::max(largest, static_cast<int>(c));
    if (level.degeneracy > largest) report.push_back({level.energy, level.degeneracy, largest, level.constituents});
  }
  return report;
}

inline std::string multiset_label(const Multiset& m) {
  return "{" + std::to_string(m[0]) + " " + std::to_string(m[1]) + " " + std::to_string(m[2]) + "}";
}

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// CSV: E,degeneracy,class_list,accidental
inline std::string levels_to_csv(const std::vector<SpectrumLevel>& levels) {
  std::ostringstream out;
  out << "E,degeneracy,class_list,accidental\n";
  for (const auto& level : levels) {
    out << format_number(level.energy) << ',' << level.degeneracy << ',';
    for (std::size_t k = 0; k < level.constituents.size(); ++k) {
      if (k) out << ';';
      out << multiset_label(level.constituents[k]) << ':' << to_string(level.classes[k]);
    }
    out << ',' << (level.accidental ? "true" : "false") << '\n';
  }
  return out.str();
}

/// CSV: n,energy,source,est_error
inline std::string one_body_to_csv(const OneBodySpectrum& s) {
  std::ostringstream out;
  out << "n,energy,source,est_error\n";
  for (std::size_t n = 0; n < s.energies.size(); ++n)
    out << n << ',' << format_number(s.energies[n]) << ',' << to_string(s.source) << ','
        << format_number(s.est_error[n]) << '\n';
  return out.str();
}

}  // namespace threebody
