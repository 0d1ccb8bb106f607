#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imbeval {

// A cell or row of a prediction file violates the input contract.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column '" + column +
                           "': " + message),
        line_(line),
        column_(std::move(column)) {}

  explicit ParseError(const std::string& message) : std::runtime_error(message) {}

  std::size_t line() const { return line_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::string column_;
};

// The column mapping does not fit the file (or two inputs disagree).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric has no value on this input (empty dataset, single class, ...).
// Degenerate results that stay representable are returned as explicit
// undefined markers instead; this is only for calls whose whole result
// would be meaningless.
class UndefinedMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an API precondition (programming error, not bad data).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A generator spec cannot produce both classes (round(n * prevalence)
// is 0 or n).
class DegenerateSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be opened / written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imbeval
