#pragma once

#include <stdexcept>
#include <string>

namespace gpcode {

/// Bad parameters, malformed files, mismatched fields or geometries.
/// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search would exceed its cost guard and no override was given.
/// The CLI maps this to exit code 3.
class CostGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructed geometry failed its own certification, or an operation that
/// is only sound on certified polygons detected a structural violation.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed gpg interchange file.
class GpgFormatError : public InputError {
 public:
  GpgFormatError(const std::string& msg, std::size_t line)
      : InputError("gpg: line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gpcode
