#pragma once

#include <stdexcept>
#include <string>

namespace topgroups {

/// Construction or search was asked for a group beyond the configured cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Subgroup enumeration hit the discovery budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// quotient() was handed a subgroup that is not normal.
struct NotNormal : std::runtime_error {
  explicit NotNormal(const std::string& what) : std::runtime_error(what) {}
};

/// A multiplication table failed validation (non-Latin, non-associative,
/// missing identity, out-of-range entry).
struct InvalidTable : std::runtime_error {
  explicit InvalidTable(const std::string& what) : std::runtime_error(what) {}
};

/// A spec string or group file could not be parsed. `line` is 1-based and
/// 0 when no line applies.
struct ParseError : std::runtime_error {
  int line;
  explicit ParseError(const std::string& what, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what
                                       : what),
        line(line_no) {}
};

}  // namespace topgroups
