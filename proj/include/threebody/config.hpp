#pragma once

// Flat `key = value` model configuration files.
//
//   # comment
//   trap.kind = harmonic          # harmonic | infinite_well | quadratic | custom | none
//   trap.omega = 1
//   interaction.kind = harmonic   # none | harmonic | inverse_square | contact | custom
//   interaction.gamma = 0.5       # contact also accepts "unitary"
//   units.mode = natural          # natural | explicit
//
// Tabulated potentials point at a two-column text file via trap.table /
// interaction.table (relative paths resolve against the config file).

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "threebody/core_model.hpp"

namespace threebody {

struct ConfigEntry {
  std::string value;
  int line = 0;
};

struct ConfigFile {
  std::string source = "<config>";
  std::filesystem::path base_dir;
  std::map<std::string, ConfigEntry> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
};

inline const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "trap.kind", "trap.omega",        "trap.length",       "trap.A",     "trap.B", "trap.C",
      "trap.table", "interaction.kind", "interaction.gamma", "interaction.table", "units.mode",
      "mass",      "hbar"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::string where(const ConfigFile& cfg, int line) { return cfg.source + ":" + std::to_string(line); }

}  // namespace detail

inline ConfigFile parse_config_text(const std::string& text, const std::string& source = "<config>") {
  ConfigFile cfg;
  cfg.source = source;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string stripped = detail::trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigSyntax, detail::where(cfg, line) + ": expected 'key = value'");
    const std::string key = detail::trim(std::string_view(stripped).substr(0, eq));
    const std::string value = detail::trim(std::string_view(stripped).substr(eq + 1));
    const auto& known = known_config_keys();
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorKind::ConfigSyntax, detail::where(cfg, line) + ": unknown key '" + key + "'");
    if (value.empty())
      throw Error(ErrorKind::ConfigSyntax, detail::where(cfg, line) + ": empty value for '" + key + "'");
    if (cfg.entries.count(key))
      throw Error(ErrorKind::ConfigSyntax, detail::where(cfg, line) + ": duplicate key '" + key + "'");
    cfg.entries[key] = {value, line};
  }
  return cfg;
}

inline ConfigFile read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigSyntax, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  ConfigFile cfg = parse_config_text(buffer.str(), path.string());
  cfg.base_dir = path.parent_path();
  return cfg;
}

namespace detail {

inline double number(const ConfigFile& cfg, const std::string& key) {
  const auto it = cfg.entries.find(key);
  if (it == cfg.entries.end())
    throw Error(ErrorKind::MissingParameter, cfg.source + ": missing required key '" + key + "'");
  const std::string& s = it->second.value;
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::ConfigSyntax,
                where(cfg, it->second.line) + ": '" + key + "' is not a number: '" + s + "'");
  return value;
}

inline std::pair<std::vector<double>, std::vector<double>> read_table(const ConfigFile& cfg,
                                                                      const std::string& key) {
  const auto it = cfg.entries.find(key);
  if (it == cfg.entries.end())
    throw Error(ErrorKind::MissingParameter, cfg.source + ": missing required key '" + key + "'");
  std::filesystem::path path(it->second.value);
  if (path.is_relative()) path = cfg.base_dir / path;
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ConfigSyntax, where(cfg, it->second.line) + ": cannot open table '" + path.string() + "'");
  std::vector<double> xs, ys;
  std::string row;
  while (std::getline(in, row)) {
    if (const auto hash = row.find('#'); hash != std::string::npos) row.erase(hash);
    std::istringstream fields(row);
    double x = 0.0, y = 0.0;
    if (!(fields >> x)) continue;
    if (!(fields >> y))
      throw Error(ErrorKind::ConfigSyntax, path.string() + ": rows need two columns");
    xs.push_back(x);
    ys.push_back(y);
  }
  return {xs, ys};
}

inline std::string value_or(const ConfigFile& cfg, const std::string& key, const std::string& fallback) {
  const auto it = cfg.entries.find(key);
  return it == cfg.entries.end() ? fallback : it->second.value;
}

}  // namespace detail

/// Builds a ModelSpec. `interaction_hint` names the interaction kind to assume
/// when interaction.kind is absent; a conflicting explicit kind is an error.
inline ModelSpec build_model(const ConfigFile& cfg, std::optional<std::string> interaction_hint = std::nullopt) {
  ModelSpec spec;

  const std::string mode = detail::value_or(cfg, "units.mode", "natural");
  if (mode == "natural") {
    spec.units.mode = UnitsMode::Natural;
  } else if (mode == "explicit") {
    spec.units.mode = UnitsMode::Explicit;
  } else {
    throw Error(ErrorKind::ConfigSyntax,
                detail::where(cfg, cfg.entries.at("units.mode").line) + ": units.mode must be natural or explicit");
  }
  if (cfg.has("mass")) spec.mass = detail::number(cfg, "mass");
  if (cfg.has("hbar")) spec.hbar = detail::number(cfg, "hbar");

  const std::string trap_kind = detail::value_or(cfg, "trap.kind", "");
  if (trap_kind.empty())
    throw Error(ErrorKind::MissingParameter, cfg.source + ": missing required key 'trap.kind'");
  if (trap_kind == "harmonic") {
    spec.trap = HarmonicTrap{detail::number(cfg, "trap.omega")};
  } else if (trap_kind == "infinite_well") {
    spec.trap = InfiniteWell{detail::number(cfg, "trap.length")};
  } else if (trap_kind == "quadratic") {
    spec.trap = QuadraticTrap{detail::number(cfg, "trap.A"), cfg.has("trap.B") ? detail::number(cfg, "trap.B") : 0.0,
                              cfg.has("trap.C") ? detail::number(cfg, "trap.C") : 0.0};
  } else if (trap_kind == "custom") {
    auto [xs, vs] = detail::read_table(cfg, "trap.table");
    spec.trap = TabulatedTrap{std::move(xs), std::move(vs)};
  } else if (trap_kind == "none") {
    spec.trap = NoTrap{};
  } else {
    throw Error(ErrorKind::ConfigSyntax,
                detail::where(cfg, cfg.entries.at("trap.kind").line) + ": unknown trap.kind '" + trap_kind + "'");
  }

  std::string kind = detail::value_or(cfg, "interaction.kind", "");
  if (interaction_hint) {
    if (kind.empty()) {
      kind = *interaction_hint;
    } else if (kind != *interaction_hint) {
      throw Error(ErrorKind::ConfigSyntax, detail::where(cfg, cfg.entries.at("interaction.kind").line) +
                                               ": interaction.kind '" + kind + "' conflicts with requested model ('" +
                                               *interaction_hint + "')");
    }
  }
  if (kind.empty() || kind == "none") {
    spec.interaction = NoInteraction{};
  } else if (kind == "harmonic") {
    spec.interaction = HarmonicInteraction{detail::number(cfg, "interaction.gamma")};
  } else if (kind == "inverse_square") {
    spec.interaction = InverseSquareInteraction{detail::number(cfg, "interaction.gamma")};
  } else if (kind == "contact") {
    if (detail::value_or(cfg, "interaction.gamma", "") == "unitary")
      spec.interaction = UnitaryContact{};
    else
      spec.interaction = ContactInteraction{detail::number(cfg, "interaction.gamma")};
  } else if (kind == "custom") {
    auto [rs, vs] = detail::read_table(cfg, "interaction.table");
    spec.interaction = TabulatedInteraction{std::move(rs), std::move(vs)};
  } else {
    throw Error(ErrorKind::ConfigSyntax, detail::where(cfg, cfg.entries.at("interaction.kind").line) +
                                             ": unknown interaction.kind '" + kind + "'");
  }
  return spec;
}

}  // namespace threebody
