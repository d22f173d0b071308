#pragma once

#include <stdexcept>
#include <string>

namespace dqproj {

enum class ErrorKind {
  DivisionUndefined,
  NotUnit,
  NotRotation,
  CorruptPose,
  DegenerateLeading,
  NonFinite,
  NoFeasibleCandidate,
  EmptyFile,
  InvalidConfig,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionUndefined: return "DivisionUndefined";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::NotRotation: return "NotRotation";
    case ErrorKind::CorruptPose: return "CorruptPose";
    case ErrorKind::DegenerateLeading: return "DegenerateLeading";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoFeasibleCandidate: return "NoFeasibleCandidate";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dqproj
