#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoed {

/// Failure classes. The CLI maps each class onto an exit code.
enum class ErrorKind {
  Config,            ///< invalid or contradictory run configuration
  Parameter,         ///< argument outside its admissible range
  Schema,            ///< input lacks mandated columns or is malformed
  Duplicate,         ///< repeated (entity, year) key
  EmptyInput,        ///< no data rows
  Lookup,            ///< unknown variable / column name
  InsufficientData,  ///< series or segment too short for the operation
  Spacing,           ///< non-uniform or gapped time axis
  Shape,             ///< mismatched lengths or dimensions
  Degenerate,        ///< rank deficiency, constant series
  EmptyPlot,         ///< nothing to render
  Io,                ///< file system failure
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process exit code for a failure class: 2 config, 3 data, 4 numeric degeneracy.
int exit_code(ErrorKind kind) noexcept;

}  // namespace hoed
