#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/parallel.hpp"
#include "command.hpp"

namespace fs = std::filesystem;
using namespace cohsr;
using namespace cohsr::cli;

namespace {

struct Bound {
  const Command* command = nullptr;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> options;
};

// defaults < --config file < flags
RunConfig merge(const Bound& b) {
  std::vector<KeySpec> keys = common_keys();
  keys.insert(keys.end(), b.command->keys.begin(), b.command->keys.end());

  RunConfig config = b.config_path.empty() ? RunConfig{} : RunConfig::load(b.config_path);
  std::set<std::string> known;
  for (const auto& k : keys) known.insert(k.key);
  config.reject_unknown(known);

  for (const auto& k : keys) {
    if (b.options.at(k.key)->count() > 0) config.set(k.key, b.flag_values.at(k.key));
    else if (!config.has(k.key) && k.default_value) config.set(k.key, *k.default_value);
  }
  for (const auto& k : keys)
    if (!config.has(k.key))
      throw ConfigError(0, "missing required key '" + k.key + "' (set it in --config or pass " + flag_for(k.key) + ")");
  return config;
}

int run(const Bound& b) {
  const RunConfig config = merge(b);
  const int threads = config.get_int("threads");
  if (threads < 1) throw ConfigError(0, "key 'threads' must be >= 1");
  config.get_u64("seed");
  set_thread_count(threads);

  const fs::path out = config.get_string("out");
  fs::create_directories(out);
  // `out` is left out so the same run into two directories gives identical files.
  std::string text = "# cohsr " + b.command->name + "\n";
  for (const auto& [key, value] : config.values())
    if (key != "out") text += key + (value.empty() ? " =\n" : " = " + value + "\n");
  write_text(out / "resolved.cfg", text);

  b.command->run(config, out);
  return kOk;
}

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "cohsr: " << kind << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent imaging super-resolution toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::vector<Command> commands = all_commands();
  std::vector<Bound> bound(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    Bound& b = bound[i];
    b.command = &commands[i];
    b.app = app.add_subcommand(commands[i].name, commands[i].help);
    b.app->add_option("--config", b.config_path, "flat key = value config file");
    std::vector<KeySpec> keys = common_keys();
    keys.insert(keys.end(), commands[i].keys.begin(), commands[i].keys.end());
    for (const auto& k : keys) {
      std::string help = k.help;
      if (k.default_value) help += (help.empty() ? "" : " ") + std::string("[default: ") + *k.default_value + "]";
      else help += (help.empty() ? "" : " ") + std::string("[required]");
      b.options[k.key] = b.app->add_option(flag_for(k.key), b.flag_values[k.key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  for (const Bound& b : bound) {
    if (!b.app->parsed()) continue;
    try {
      return run(b);
    } catch (const ConfigError& e) {
      return report("config error", e, kConfig);
    } catch (const FormatError& e) {
      return report("data error", e, kData);
    } catch (const IncompatibleWeights& e) {
      return report("data error", e, kData);
    } catch (const InvalidParameter& e) {
      return report("data error", e, kData);
    } catch (const fs::filesystem_error& e) {
      return report("data error", e, kData);
    } catch (const DegenerateInput& e) {
      return report("numerical failure", e, kNumerical);
    } catch (const NumericalFailure& e) {
      return report("numerical failure", e, kNumerical);
    } catch (const std::exception& e) {
      return report("internal error", e, kInternal);
    }
  }
  return kInternal;
}
