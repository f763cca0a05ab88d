#include "cohsr/errors.hpp"

namespace cohsr {

namespace {

std::string with_line(int line, const std::string& what) {
  if (line <= 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : Error(with_line(line, what)), line_(line) {}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidParameter(message);
}

}  // namespace cohsr
