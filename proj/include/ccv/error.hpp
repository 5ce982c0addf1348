#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccv {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Turtle syntax error. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message), line_(line), column_(column) {}

  /// Message without the position prefix.
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A shapes graph uses a SHACL construct outside the supported core fragment.
class UnsupportedShapeError : public Error {
public:
  using Error::Error;
};

/// Malformed or unsupported repair strategy document.
class StrategyError : public Error {
public:
  using Error::Error;
};

}  // namespace ccv
