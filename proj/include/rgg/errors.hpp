#pragma once

#include <stdexcept>
#include <string>

namespace rgg {

// Bad or inconsistent configuration; maps to process exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unusable input data (unreadable files, empty surviving trip set, broken
// graph invariants); maps to process exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural parse failure carrying the offending line number.
struct ParseError : DataError {
  ParseError(const std::string& what, std::size_t line)
      : DataError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
  std::size_t line_number;
};

}  // namespace rgg
