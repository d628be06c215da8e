#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace threebody {

enum class ErrorKind {
  NonConfiningTrap,
  NegativeCoupling,
  MissingParameter,
  ConfigSyntax,
  UnsupportedTrap,
  BoxTooSmall,
  TooFewPoints,
  TruncationRisk,
  GridResolutionTooCoarse,
  SingularPotentialUnresolved,
  ResourceBudgetExceeded,
  GridMismatch,
  NotClosed,
  NotUnitary,
  NotHomomorphism,
  NonInvariantSubspace,
  NonIntegerMultiplicity,
  DimensionMismatch,
  MissingEnergyLabel,
  NotGold,
  NotConverged,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConfiningTrap: return "NonConfiningTrap";
    case ErrorKind::NegativeCoupling: return "NegativeCoupling";
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::ConfigSyntax: return "ConfigSyntax";
    case ErrorKind::UnsupportedTrap: return "UnsupportedTrap";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::TruncationRisk: return "TruncationRisk";
    case ErrorKind::GridResolutionTooCoarse: return "GridResolutionTooCoarse";
    case ErrorKind::SingularPotentialUnresolved: return "SingularPotentialUnresolved";
    case ErrorKind::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NonInvariantSubspace: return "NonInvariantSubspace";
    case ErrorKind::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MissingEnergyLabel: return "MissingEnergyLabel";
    case ErrorKind::NotGold: return "NotGold";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library-wide exception. Every failure carries an ErrorKind so callers
/// (the CLI in particular) can map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace threebody
