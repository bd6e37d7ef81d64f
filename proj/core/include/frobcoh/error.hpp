#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frobcoh {

enum class ErrorKind {
  NotNested,
  InvalidParams,
  UnsupportedDimension,
  DegreeMismatch,
  SideConditionFailed,
  HypothesisFailed,
  ContainmentFailed,
  UnknownLeaf,
  WindowExceeded,
  InconsistentSequence,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type.
/// The kind decides how callers react (the CLI maps it onto an exit code).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace frobcoh
