#include "frobcoh/error.hpp"

namespace frobcoh {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::SideConditionFailed: return "SideConditionFailed";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::ContainmentFailed: return "ContainmentFailed";
    case ErrorKind::UnknownLeaf: return "UnknownLeaf";
    case ErrorKind::WindowExceeded: return "WindowExceeded";
    case ErrorKind::InconsistentSequence: return "InconsistentSequence";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace frobcoh
