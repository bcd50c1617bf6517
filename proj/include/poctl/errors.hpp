#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poctl {

/// Error raised by the formula and model-file parsers. Positions are
/// 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " (line " + std::to_string(line) +
                           (column ? ", column " + std::to_string(column) : "") + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace poctl
