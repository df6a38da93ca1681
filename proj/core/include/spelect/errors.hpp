#pragma once

#include <stdexcept>
#include <string>

namespace spelect {

// Malformed or inconsistent input. The CLI maps this to exit code 1.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or state-space bound was exceeded. CLI exit code 2.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text-format diagnostic carrying a 1-based source position.
class ParseError : public InvalidInput {
 public:
  ParseError(int line, int column, const std::string& message)
      : InvalidInput("line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

inline constexpr const char* kInvalidAxisMessage = "Invalid societal linear order";

}  // namespace spelect
