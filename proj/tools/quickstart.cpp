// Library walk-through: spectra of three particles in a harmonic trap.

#include <iostream>

#include "threebody/threebody.hpp"

using namespace threebody;

int main() {
  ModelSpec spec;
  spec.trap = HarmonicTrap{1.0};
  spec.interaction = HarmonicInteraction{0.5};

  const auto verdict = classify_separability(spec);
  std::cout << "separability: " << to_string(verdict.grade) << ", symmetry: " << classify_symmetry_group(spec).label << "\n";

  // Closed form against the relative-plane grid.
  const auto levels = harm_harm_spectrum(1.0, 0.5, 6.0);
  const OracleResult grid = relative_spectrum_2d(spec, RelativeGrid{6.0, 0.05}, 3);
  std::cout << "ground: formula " << levels.front().energy << ", grid " << grid.eigenvalues[0] + 0.5 << "\n";

  // Non-interacting levels and their S3 content.
  const GroupSpec s3 = build_group(GroupName::S3);
  for (const auto& level : compose_spectrum(analytic_spectrum(HarmonicTrap{1.0}, 6), 4.5)) {
    const auto d = decompose_level(s3, level);
    std::cout << "E=" << level.energy << " deg=" << level.degeneracy << "  [3]:" << d.multiplicities[0]
              << " [21]:" << d.multiplicities[1] << " [1^3]:" << d.multiplicities[2] << "\n";
  }
}
