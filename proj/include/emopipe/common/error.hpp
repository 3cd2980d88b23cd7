#pragma once

#include <stdexcept>
#include <string>

namespace emopipe {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: configs, specs, malformed files. The CLI maps it to exit 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input line that failed to parse; carries its 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Numerical failure: rank deficiency, non-convergence, non-finite loss.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace emopipe
