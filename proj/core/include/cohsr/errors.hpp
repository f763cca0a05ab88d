#pragma once

#include <stdexcept>
#include <string>

namespace cohsr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (bad size, range, shape).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but carries no usable signal (flat image, no edges).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Weights were produced for a different network architecture.
class IncompatibleWeights : public Error {
 public:
  using Error::Error;
};

/// A file or byte stream does not follow its format.
class FormatError : public Error {
 public:
  enum class Kind { bad_magic, truncated, checksum, malformed };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Configuration text rejected; line is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

void require(bool condition, const std::string& message);

}  // namespace cohsr
