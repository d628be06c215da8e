// threebody: batch front end.
//
//   threebody spectrum --config m.cfg --model harm-harm --emax 8 --out run/
//   threebody verify   --check oracle --config m.cfg --out run/
//   threebody irreps   --config m.cfg --model unitary-contact --emax 10 --out run/
//   threebody classify --config m.cfg
//
// Exit codes: 0 ok, 1 internal failure, 2 configuration error, 3 check failed.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "threebody/threebody.hpp"

#ifndef THREEBODY_VERSION
#define THREEBODY_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace threebody;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

struct Options {
  std::string config;
  std::string model;
  std::string check;
  std::string out;
  double emax = 0.0;
  std::uint64_t seed = 1;
};

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  std::string stdout_text;
  bool checks_passed = true;
};

bool is_config_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonConfiningTrap:
    case ErrorKind::NegativeCoupling:
    case ErrorKind::MissingParameter:
    case ErrorKind::ConfigSyntax:
    case ErrorKind::UnsupportedTrap:
    case ErrorKind::NotGold: return true;
    default: return false;
  }
}

std::optional<std::string> interaction_hint(const std::string& model) {
  if (model == "harm-harm") return "harmonic";
  if (model == "calogero") return "inverse_square";
  return std::nullopt;
}

ModelSpec load_model(const Options& o) {
  if (o.config.empty()) throw Error(ErrorKind::MissingParameter, "--config is required for this command");
  const ConfigFile cfg = read_config_file(o.config);
  if (o.model == "unitary-contact") {
    if (cfg.has("interaction.kind") && cfg.entries.at("interaction.kind").value != "contact")
      throw Error(ErrorKind::ConfigSyntax, cfg.source + ":" + std::to_string(cfg.entries.at("interaction.kind").line) +
                                               ": interaction.kind conflicts with requested model (contact)");
    if (cfg.has("interaction.gamma") && cfg.entries.at("interaction.gamma").value != "unitary")
      throw Error(ErrorKind::ConfigSyntax, cfg.source + ":" + std::to_string(cfg.entries.at("interaction.gamma").line) +
                                               ": unitary-contact needs interaction.gamma = unitary");
    ConfigFile stripped = cfg;
    stripped.entries.erase("interaction.kind");
    stripped.entries.erase("interaction.gamma");
    ModelSpec spec = build_model(stripped);
    spec.interaction = UnitaryContact{};
    return require_valid(spec);
  }
  if (o.model == "noninteracting") {
    ConfigFile stripped = cfg;
    stripped.entries.erase("interaction.kind");
    stripped.entries.erase("interaction.gamma");
    stripped.entries.erase("interaction.table");
    return require_valid(build_model(stripped));
  }
  return require_valid(build_model(cfg, interaction_hint(o.model)));
}

/// Grid used when a trap has no closed-form spectrum.
Axis default_axis(const Trap& trap) {
  if (const auto* t = std::get_if<TabulatedTrap>(&trap)) return Axis{t->x.front(), t->x.back(), 1999};
  return Axis{-10.0, 10.0, 1999};
}

/// One-body spectrum deep enough for compose/unitary truncation at e_max.
OneBodySpectrum deep_one_body(const ModelSpec& spec, double e_max, int occupied) {
  for (int n_max = 8;; n_max *= 2) {
    const OneBodySpectrum s = one_body_spectrum(spec.trap, n_max, default_axis(spec.trap), spec.mass, spec.hbar);
    double base = 0.0;
    for (int k = 0; k < occupied - 1; ++k) base += s.energies[static_cast<std::size_t>(k)];
    if (base + s.energies.back() > e_max) return s;
    if (n_max > 400) throw Error(ErrorKind::TruncationRisk, "e_max needs more than 400 one-body levels");
  }
}

double oscillator_omega(const ModelSpec& spec) {
  const auto view = harmonic_view(spec.trap, spec.mass);
  if (!view) throw Error(ErrorKind::UnsupportedTrap, "model needs a harmonic-like trap, got '" + trap_name(spec.trap) + "'");
  if (view->offset != 0.0 || view->center != 0.0)
    throw Error(ErrorKind::UnsupportedTrap, "solvable spectra assume a centred trap without offset");
  return view->omega;
}

// ------------------------------------------------------------------ spectrum

Outputs cmd_spectrum(const Options& o) {
  const ModelSpec spec = load_model(o);
  Outputs out;
  if (o.model == "noninteracting") {
    const OneBodySpectrum one = deep_one_body(spec, o.emax, 3);
    out.files.push_back({"spectrum.csv", levels_to_csv(compose_spectrum(one, o.emax))});
    out.files.push_back({"one_body.csv", one_body_to_csv(one)});
  } else if (o.model == "harm-harm") {
    const auto& h = std::get<HarmonicInteraction>(spec.interaction);
    out.files.push_back({"spectrum.csv", silver_levels_to_csv("harm-harm", harm_harm_spectrum(oscillator_omega(spec), h.gamma,
                                                                                               o.emax, spec.mass, spec.hbar))});
  } else if (o.model == "calogero") {
    const auto& h = std::get<InverseSquareInteraction>(spec.interaction);
    out.files.push_back({"spectrum.csv", silver_levels_to_csv("calogero", calogero_moser_spectrum(oscillator_omega(spec), h.gamma,
                                                                                                   o.emax, spec.mass, spec.hbar))});
  } else {
    const OneBodySpectrum one = deep_one_body(spec, o.emax, 3);
    out.files.push_back({"spectrum.csv", unitary_levels_to_csv(unitary_contact_spectrum(one, o.emax))});
  }
  return out;
}

// -------------------------------------------------------------------- irreps

IrrepDecomposition decompose_with(const GroupSpec& s3, const std::function<Eigen::MatrixXd(const Permutation&)>& rep, double energy) {
  const Eigen::Index n = rep(Permutation::identity()).rows();
  GroupAction action = [&](int g, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return rep(s3.elements[static_cast<std::size_t>(g)].permutation) * v;
  };
  return decompose_eigenspace(s3, action, Eigen::MatrixXd::Identity(n, n), energy);
}

Outputs cmd_irreps(const Options& o) {
  const ModelSpec spec = load_model(o);
  const GroupSpec s3 = build_group(GroupName::S3);
  std::vector<IrrepDecomposition> levels;
  if (o.model == "noninteracting") {
    for (const auto& level : compose_spectrum(deep_one_body(spec, o.emax, 3), o.emax)) levels.push_back(decompose_level(s3, level));
  } else if (o.model == "unitary-contact") {
    for (const auto& level : unitary_contact_spectrum(deep_one_body(spec, o.emax, 3), o.emax))
      levels.push_back(decompose_with(s3, sector_representation, level.energy));
  } else if (o.model == "calogero") {
    const auto& h = std::get<InverseSquareInteraction>(spec.interaction);
    for (const auto& level : calogero_moser_spectrum(oscillator_omega(spec), h.gamma, o.emax, spec.mass, spec.hbar))
      levels.push_back(decompose_with(s3, sector_representation, level.energy));
  } else {
    const auto& h = std::get<HarmonicInteraction>(spec.interaction);
    const auto states = harm_harm_spectrum(oscillator_omega(spec), h.gamma, o.emax, spec.mass, spec.hbar);
    for (std::size_t i = 0; i < states.size();) {
      std::vector<int> mus;
      std::size_t j = i;
      for (; j < states.size() && std::abs(states[j].energy - states[i].energy) <= 1e-9 * std::max(1.0, states[i].energy); ++j)
        if (states[j].mu >= 0) mus.push_back(states[j].mu);
      levels.push_back(decompose_angular_level(s3, mus, states[i].energy));
      i = j;
    }
  }
  const IrrepTowers towers = irrep_towers(s3, levels);
  json report;
  report["group"] = "S3";
  report["model"] = o.model;
  report["levels"] = decomposition_to_json(s3, levels);
  report["bosonic"] = towers.bosonic();
  report["fermionic"] = towers.fermionic();
  Outputs out;
  std::ostringstream table;
  table << "E,[3],[21],[1^3]\n";
  for (const auto& l : levels)
    table << format_number(l.energy) << ',' << l.multiplicities[0] << ',' << l.multiplicities[1] << ',' << l.multiplicities[2] << '\n';
  out.files.push_back({"irreps.csv", table.str()});
  out.files.push_back({"irreps.json", report.dump(2) + "\n"});
  return out;
}

// -------------------------------------------------------------------- verify

std::vector<CheckReport> verify_oracle(const ModelSpec& spec) {
  const NaturalModel nat = to_natural_units(spec);
  const double omega = oscillator_omega(nat.spec);
  std::vector<CheckReport> reports;
  RelativeOracleOptions opt;
  const double unit = nat.energy_unit;
  auto relative_error = [](const Eigen::VectorXd& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k)
      worst = std::max(worst, std::abs(a[k] - b[static_cast<std::size_t>(k)]) / std::abs(b[static_cast<std::size_t>(k)]));
    return worst;
  };
  const double radius = 7.0 / std::sqrt(omega);
  if (std::holds_alternative<NoInteraction>(nat.spec.interaction) || std::holds_alternative<HarmonicInteraction>(nat.spec.interaction)) {
    const double gamma = std::holds_alternative<HarmonicInteraction>(nat.spec.interaction)
                             ? std::get<HarmonicInteraction>(nat.spec.interaction).gamma : 0.0;
    const double w_rel = harm_harm_relative_frequency(omega, gamma);
    const OracleResult r = relative_spectrum_2d(spec, RelativeGrid{radius * std::sqrt(omega / w_rel) * 1.1, 0.05 / std::sqrt(w_rel)}, 6, opt);
    std::vector<double> expected;
    for (double occ : oscillator_2d_occupations(6)) expected.push_back(w_rel * occ * unit);
    reports.push_back(at_most("oracle.harm-harm.relative_error", relative_error(r.eigenvalues, expected), 1e-4));
    if (gamma > 0.0) {
      const CoefficientFit fit = fit_harm_harm(r.eigenvalues / unit, omega, gamma);
      reports.push_back(at_most("oracle.harm-harm.fit_residual", fit.residual, 1e-3));
      reports.push_back(at_most("oracle.harm-harm.coefficient_vs_6", std::abs(fit.coefficient - kHarmHarmCoefficient), 1e-2));
    }
  } else if (const auto* cm = std::get_if<InverseSquareInteraction>(&nat.spec.interaction)) {
    opt.sector_only = true;
    const OracleResult r = relative_spectrum_2d(spec, RelativeGrid{9.0 / std::sqrt(omega), 0.035 / std::sqrt(omega)}, 6, opt);
    std::vector<double> expected;
    const double ground = calogero_energy(omega, cm->gamma, 0, 0, 0) - 0.5 * omega;
    for (double o : sector_excitations(6)) expected.push_back((ground + o * omega) * unit);
    reports.push_back(at_most("oracle.calogero.relative_error", relative_error(r.eigenvalues, expected), 1e-3));
    if (omega == 1.0) {
      const CoefficientFit fit = fit_calogero(r.eigenvalues / unit, cm->gamma);
      reports.push_back(at_most("oracle.calogero.fit_residual", fit.residual, 1e-3));
    }
  } else if (std::holds_alternative<UnitaryContact>(nat.spec.interaction)) {
    opt.sector_only = true;
    const OracleResult r = relative_spectrum_2d(spec, RelativeGrid{9.0 / std::sqrt(omega), 0.025 / std::sqrt(omega)}, 6, opt);
    std::vector<double> expected;
    for (double o : sector_excitations(6)) expected.push_back((4.0 + o) * omega * unit);
    reports.push_back(at_most("oracle.unitary.relative_error", relative_error(r.eigenvalues, expected), 1e-3));
  } else {
    throw Error(ErrorKind::UnsupportedTrap, "oracle check covers none, harmonic, inverse_square and unitary contact interactions");
  }
  return reports;
}

std::vector<CheckReport> verify_schmidt(const Options& o) {
  std::vector<CheckReport> reports;
  const int spin_dim = 2;
  const std::vector<Factor> factors = {{FactorKind::Spatial, 0, 10}, {FactorKind::Spin, 0, spin_dim * spin_dim * spin_dim}};
  const auto levels = harm_harm_spectrum(1.0, 0.5, 20.0);
  std::vector<double> spatial;
  for (int k = 0; k < 10; ++k) spatial.push_back(levels[static_cast<std::size_t>(k)].energy);
  const TruncatedState psi = random_state(factors, o.seed);
  const auto times = random_times(50, 20.0, o.seed + 1);
  reports.push_back(at_most("schmidt.spatial_spin_invariance",
                            schmidt_invariance_check(psi, {{0}}, eigenbasis_propagator(factor_energies(factors, 0, spatial)), times),
                            1e-10));

  ModelSpec hh;
  hh.trap = HarmonicTrap{1.0};
  hh.interaction = HarmonicInteraction{0.5};
  const int n = 8;
  const std::vector<Factor> particles = {{FactorKind::Particle, 1, n}, {FactorKind::Particle, 2, n}, {FactorKind::Particle, 3, n}};
  const TruncatedState chi = random_state(particles, o.seed + 2);
  reports.push_back(at_least("schmidt.particle_cut_counterexample_exceeds",
                             schmidt_invariance_check(chi, {{0}}, hamiltonian_propagator(mode_hamiltonian(hh, n, ModeBasis::Particle)), times),
                             1e-3));
  return reports;
}

Outputs cmd_verify(const Options& o) {
  std::vector<CheckReport> reports;
  if (o.check == "oracle") {
    reports = verify_oracle(load_model(o));
  } else if (o.check == "ladder") {
    OscillatorUnits u;
    if (!o.config.empty()) {
      const NaturalModel nat = to_natural_units(load_model(o));
      u.omega = oscillator_omega(nat.spec);
    }
    reports = ladder_check(40, u);
  } else if (o.check == "invariants") {
    reports = superintegrability_check(12);
  } else if (o.check == "schmidt") {
    reports = verify_schmidt(o);
  } else {
    ModelSpec spec;
    if (o.config.empty()) {
      spec.trap = HarmonicTrap{1.0};
      spec.interaction = HarmonicInteraction{0.5};
    } else {
      spec = load_model(o);
    }
    GoldCheckOptions opt;
    opt.seed = o.seed;
    reports = gold_locality_check(spec, opt);
  }
  Outputs out;
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    out.stdout_text += (r.pass ? "PASS " : "FAIL ") + r.check + " residual=" + format_number(r.max_residual) +
                       " tolerance=" + format_number(r.tolerance) + "\n";
  }
  out.files.push_back({"report.json", arr.dump(2) + "\n"});
  out.checks_passed = all_pass(reports);
  return out;
}

// ------------------------------------------------------------------ classify

std::string describe_witness(const GradeWitness& w, bool jacobi) {
  std::string s = std::string(to_string(w.grade)) + " (" + std::string(to_string(w.system));
  if (jacobi && w.system == CoordinateSystem::Rectangular) s += " Jacobi";
  return s + ")";
}

Outputs cmd_classify(const Options& o) {
  const ConfigFile cfg = read_config_file(o.config);
  const ModelSpec spec = require_valid(build_model(cfg));
  const SeparabilityVerdict sep = classify_separability(spec);
  const SymmetryVerdict sym = classify_symmetry_group(spec);
  std::string line;
  for (const auto& w : sep.witnesses) line += (line.empty() ? "" : "; ") + describe_witness(w, sep.jacobi);
  if (line.empty()) line = sep.sector_solvable ? "none (sector-solvable)" : "none";
  line += "; group " + (sym.group == SymmetryGroupKind::P3 ? std::string("P3") : sym.point_group);
  Outputs out;
  out.stdout_text = line + "\n";
  json j;
  j["verdict"] = line;
  j["grade"] = to_string(sep.grade);
  j["symmetry"] = sym.label;
  j["order"] = sym.order;
  json systems = json::array();
  for (auto c : kAllCoordinateSystems)
    if (sep.is_separable(c)) systems.push_back(to_string(c));
  j["separable_systems"] = systems;
  out.files.push_back({"classification.json", j.dump(2) + "\n"});
  return out;
}

// ---------------------------------------------------------------------------

void write_outputs(const std::string& command, const Options& o, const Outputs& out, double wall_time) {
  std::cout << out.stdout_text;
  if (o.out.empty()) {
    if (out.stdout_text.empty() && !out.files.empty()) std::cout << out.files.front().second;
    return;
  }
  fs::create_directories(o.out);
  json manifest;
  manifest["command"] = command;
  manifest["config"] = o.config;
  manifest["output_dir"] = o.out;
  manifest["seed"] = o.seed;
  manifest["tool_version"] = THREEBODY_VERSION;
  manifest["arguments"] = {{"model", o.model}, {"check", o.check}, {"emax", o.emax}};
  json files = json::array();
  for (const auto& [name, text] : out.files) {
    std::ofstream(fs::path(o.out) / name, std::ios::binary) << text;
    files.push_back(name);
  }
  manifest["outputs"] = files;
  manifest["wall_time"] = wall_time;
  std::ofstream(fs::path(o.out) / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three particles in one dimension: spectra, symmetry and checks"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> models = {"noninteracting", "harm-harm", "calogero", "unitary-contact"};

  auto* spectrum = app.add_subcommand("spectrum", "closed-form or composed spectrum as CSV");
  spectrum->add_option("--config", o.config, "model configuration file")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--model", o.model, "model")->required()->check(CLI::IsMember(models));
  spectrum->add_option("--emax", o.emax, "energy cutoff")->required();
  spectrum->add_option("--out", o.out, "output directory");

  auto* verify = app.add_subcommand("verify", "run a check suite and write a JSON report");
  verify->add_option("--check", o.check, "check suite")->required()->check(
      CLI::IsMember({"oracle", "ladder", "invariants", "schmidt", "gold"}));
  verify->add_option("--config", o.config, "model configuration file")->check(CLI::ExistingFile);
  verify->add_option("--out", o.out, "output directory");
  verify->add_option("--seed", o.seed, "seed for random states and times");

  auto* irreps = app.add_subcommand("irreps", "S3 irrep content of every level");
  irreps->add_option("--config", o.config, "model configuration file")->required()->check(CLI::ExistingFile);
  irreps->add_option("--model", o.model, "model")->required()->check(CLI::IsMember(models));
  irreps->add_option("--emax", o.emax, "energy cutoff")->required();
  irreps->add_option("--out", o.out, "output directory");

  auto* classify = app.add_subcommand("classify", "separability and symmetry verdicts");
  classify->add_option("--config", o.config, "model configuration file")->required()->check(CLI::ExistingFile);
  classify->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    std::string command;
    Outputs out;
    if (*spectrum) {
      command = "spectrum";
      out = cmd_spectrum(o);
    } else if (*verify) {
      command = "verify";
      out = cmd_verify(o);
    } else if (*irreps) {
      command = "irreps";
      out = cmd_irreps(o);
    } else {
      command = "classify";
      out = cmd_classify(o);
    }
    write_outputs(command, o, out, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return out.checks_passed ? kExitOk : kExitCheck;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_config_error(e.kind()) ? kExitConfig : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
