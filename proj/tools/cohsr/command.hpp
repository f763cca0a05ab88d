#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohsr/config.hpp"

namespace cohsr::cli {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kData = 3, kNumerical = 4 };

/// Raised when a computation produced non-finite or otherwise unusable values.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string key;
  std::optional<std::string> default_value;  ///< none: must come from config or flag
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  /// Runs with a fully merged config; all outputs go under `out`.
  std::function<void(const RunConfig& config, const std::filesystem::path& out)> run;
};

/// Keys every subcommand accepts.
std::vector<KeySpec> common_keys();
std::vector<Command> all_commands();

/// "--max-iterations" for "max_iterations", "--phantom-size-px" for "phantom.size_px".
std::string flag_for(const std::string& key);

/// Converts InvalidParameter thrown while reading settings into ConfigError.
template <typename F>
auto settings(F&& f) -> decltype(f());

}  // namespace cohsr::cli

#include "cohsr/errors.hpp"

template <typename F>
auto cohsr::cli::settings(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidParameter& e) {
    throw ConfigError(0, e.what());
  }
}
