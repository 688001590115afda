#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skolem {

enum class ErrorKind {
  InvalidModulus,
  NotAUnit,
  NotPrimitiveRoot,
  NotInSubgroup,
  InverseUndefined,
  MalformedStarter,
  HypothesisViolation,
  NoCommonRoot,
  CoverageFailure,
  VerificationFailure,
  BoundExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotPrimitiveRoot: return "NotPrimitiveRoot";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::InverseUndefined: return "InverseUndefined";
    case ErrorKind::MalformedStarter: return "MalformedStarter";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::NoCommonRoot: return "NoCommonRoot";
    case ErrorKind::CoverageFailure: return "CoverageFailure";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
  }
  return "Unknown";
}

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace skolem
