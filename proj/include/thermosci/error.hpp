#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermosci {

enum class ErrorKind {
  InvalidDistribution,
  InvalidLikelihood,
  InvalidJoint,
  DimensionMismatch,
  ZeroEvidence,
  InvalidConfig,
  TreeTooLarge,
  NoWorkSpent,
  IncompleteMapping,
  ZeroBudget,
  MissingPartition,
  NegativeGap,
  ZeroPriorEntropy,
  IndexOutOfRange,
  ZeroMassSubdomain,
  InvalidPartition,
  InvalidScenario,
  NonPositiveOmega,
  NBelowOne,
  InvalidToyParams,
  InvalidAxes,
  MalformedInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidLikelihood: return "InvalidLikelihood";
    case ErrorKind::InvalidJoint: return "InvalidJoint";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroEvidence: return "ZeroEvidence";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::TreeTooLarge: return "TreeTooLarge";
    case ErrorKind::NoWorkSpent: return "NoWorkSpent";
    case ErrorKind::IncompleteMapping: return "IncompleteMapping";
    case ErrorKind::ZeroBudget: return "ZeroBudget";
    case ErrorKind::MissingPartition: return "MissingPartition";
    case ErrorKind::NegativeGap: return "NegativeGap";
    case ErrorKind::ZeroPriorEntropy: return "ZeroPriorEntropy";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroMassSubdomain: return "ZeroMassSubdomain";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::NonPositiveOmega: return "NonPositiveOmega";
    case ErrorKind::NBelowOne: return "NBelowOne";
    case ErrorKind::InvalidToyParams: return "InvalidToyParams";
    case ErrorKind::InvalidAxes: return "InvalidAxes";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable kind, so callers (and the CLI) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thermosci
