#include "cohsr/config.hpp"
#include "cohsr/errors.hpp"
#include "doctest.h"

using namespace cohsr;

namespace {

int error_line(const std::string& text) {
  try {
    RunConfig::parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = RunConfig::parse(
      "# comment\n"
      "system = pixel-limited\n"
      "\n"
      "recovery.max_iterations = 12   # trailing comment\n"
      "pitch_um=1.12\n"
      "register_pairs = false\n"
      "note =\n");
  CHECK(c.get_string("system") == "pixel-limited");
  CHECK(c.get_int("recovery.max_iterations") == 12);
  CHECK(c.get_double("pitch_um") == 1.12);
  CHECK_FALSE(c.get_bool("register_pairs"));
  CHECK(c.get_string("note").empty());
  CHECK(RunConfig::parse(c.to_text()).values() == c.values());
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_line("a = 1\nno equals sign\n") == 2);
  CHECK(error_line("a = 1\n\nBad-Key = 3\n") == 3);
  CHECK(error_line("a = 1\nb = 2\na = 3\n") == 3);

  const auto c = RunConfig::parse("zeta = 1\nalpha = x\n");
  try {
    c.reject_unknown({"known"});
    FAIL("unknown keys accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("zeta") != std::string::npos);
  }
  try {
    c.get_double("alpha");
    FAIL("non-number accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  try {
    c.get_int("pairs");
    FAIL("missing key accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'pairs'") != std::string::npos);
  }
  CHECK_THROWS_AS(c.get_int("zeta.x"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("n = 1.5\n").get_int("n"), ConfigError);
}

TEST_CASE("overrides") {
  auto c = RunConfig::parse("seed = 1\n");
  c.set("seed", " 7 ");
  CHECK(c.get_u64("seed") == 7);
  CHECK_THROWS_AS(c.set("Seed", "1"), ConfigError);
}
