#pragma once

#include <stdexcept>
#include <string>

namespace catcohom {

enum class ErrorKind {
  DegreeOutOfWindow,
  NotAChainMap,
  MissingComposite,
  AssociativityViolation,
  IdentityViolation,
  DanglingEndpoint,
  NotFunctorial,
  PathCapExceeded,
  BaseMismatch,
  HasRetractions,
  TruncationTooShallow,
  NoCanonicalUnit,
  NonFreeValue,
  ShapeMismatch,
  Syntax,
  UnknownName,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeOutOfWindow: return "DegreeOutOfWindow";
    case ErrorKind::NotAChainMap: return "NotAChainMap";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::PathCapExceeded: return "PathCapExceeded";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::HasRetractions: return "HasRetractions";
    case ErrorKind::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorKind::NoCanonicalUnit: return "NoCanonicalUnit";
    case ErrorKind::NonFreeValue: return "NonFreeValue";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace catcohom
