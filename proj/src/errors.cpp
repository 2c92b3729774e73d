#include "cvtele/errors.hpp"

namespace cvtele {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::degenerate_state: return "degenerate_state";
    case ErrorKind::evaluation: return "evaluation";
  }
  return "unknown";
}

}  // namespace cvtele
