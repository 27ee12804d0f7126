#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causet {

enum class ErrorCode {
  UnknownElement,
  ReflexiveRelation,
  CycleCreated,
  TooLarge,
  DegenerateRegion,
  DimensionMismatch,
  NotNormalized,
  NotHermitian,
  InvalidParameter,
  NoCandidates,
  UnknownNode,
  NotExcited,
  MissingPositions,
  CoincidentNodes,
  NoClock,
  ClockNotSpanning,
  Incomparable,
  MissingCoordinates,
  ParseError,
  ValidationFailed,
  InsufficientSamples,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::ReflexiveRelation: return "ReflexiveRelation";
    case ErrorCode::CycleCreated: return "CycleCreated";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NotExcited: return "NotExcited";
    case ErrorCode::MissingPositions: return "MissingPositions";
    case ErrorCode::CoincidentNodes: return "CoincidentNodes";
    case ErrorCode::NoClock: return "NoClock";
    case ErrorCode::ClockNotSpanning: return "ClockNotSpanning";
    case ErrorCode::Incomparable: return "Incomparable";
    case ErrorCode::MissingCoordinates: return "MissingCoordinates";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
  }
  return "Unknown";
}

// Every failure in the library is reported as an Error carrying a code that
// callers (and the CLI exit-code mapping) can switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace causet
