#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>

namespace cohsr {

/// Flat `key = value` run configuration. `#` starts a comment, blank lines
/// are ignored, keys are lowercase [a-z0-9_.] with dots standing in for
/// nesting. Errors are ConfigError carrying the 1-based line number.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Overrides or adds a key; later sets win.
  void set(const std::string& key, const std::string& value);

  /// Typed access. A missing key or unparseable value throws ConfigError
  /// naming the key (and its line when it came from text).
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  /// Throws ConfigError at the first key not in `known`.
  void reject_unknown(const std::set<std::string>& known) const;

  /// Every key, sorted, as `key = value` lines; parses back to the same map.
  std::string to_text() const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  int line_of(const std::string& key) const;

  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

}  // namespace cohsr
