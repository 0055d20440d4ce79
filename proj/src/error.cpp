#include "hoed/error.hpp"

namespace hoed {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Duplicate: return "duplicate";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Spacing: return "spacing";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::EmptyPlot: return "empty-plot";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Parameter:
      return 2;
    case ErrorKind::Degenerate:
      return 4;
    default:
      return 3;
  }
}

}  // namespace hoed
