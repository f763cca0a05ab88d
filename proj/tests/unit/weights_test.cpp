#include <cstring>
#include <filesystem>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/weights.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cohsr;
using namespace cohsr::net;

namespace {

FormatError::Kind load_error(std::span<const std::uint8_t> bytes) {
  try {
    load_weights(bytes);
  } catch (const FormatError& e) {
    return e.kind();
  }
  FAIL("load succeeded");
  return FormatError::Kind::malformed;
}

}  // namespace

TEST_CASE("HSRW1 layout") {
  const NetSpec spec;
  const auto store = random_weights(spec, NetRole::generator, 7);
  const auto bytes = save_weights(store);
  REQUIRE(bytes.size() > 9);
  CHECK(std::string(bytes.begin(), bytes.begin() + 5) == "HSRW1");
  const std::uint32_t manifest_len = load_u32(bytes.data() + 5);
  const std::string manifest(bytes.begin() + 9, bytes.begin() + 9 + manifest_len);
  CHECK(manifest.rfind(spec.fingerprint_hex(NetRole::generator) + "\n", 0) == 0);
  CHECK(manifest.find("g.input.weight 32 2 3 3\n") != std::string::npos);
  CHECK(manifest.find("g.output.bias 2\n") != std::string::npos);

  const std::size_t payload_start = 9 + manifest_len;
  const std::size_t payload_bytes = 4 * build_generator(spec).parameter_count();
  REQUIRE(bytes.size() == payload_start + payload_bytes + 4);
  const std::span<const std::uint8_t> payload(bytes.data() + payload_start, payload_bytes);
  CHECK(load_u32(bytes.data() + payload_start + payload_bytes) == oracle::crc32(payload));
  float first = 0.0f;
  std::memcpy(&first, bytes.data() + payload_start, 4);
  CHECK(first == store.tensors()[0].values[0]);
}

TEST_CASE("HSRW1 round trip") {
  for (auto role : {NetRole::generator, NetRole::discriminator}) {
    const NetSpec spec = NetSpec::na_limited();
    const auto store = random_weights(spec, role, 11);
    const auto bytes = save_weights(store);
    const auto loaded = load_weights(bytes, spec, role);
    CHECK(save_weights(loaded) == bytes);
    const auto enumerated = build_graph(spec, role).tensors();
    REQUIRE(loaded.tensors().size() == enumerated.size());
    for (std::size_t i = 0; i < enumerated.size(); ++i) {
      CHECK(loaded.tensors()[i].name == enumerated[i].name);
      CHECK(loaded.tensors()[i].shape == enumerated[i].shape);
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "cohsr_unit_weights";
  std::filesystem::create_directories(dir);
  const auto store = identity_generator_weights(NetSpec{});
  write_weights(dir / "g.hsrw", store);
  CHECK(save_weights(read_weights(dir / "g.hsrw", NetSpec{}, NetRole::generator)) == save_weights(store));
}

TEST_CASE("HSRW1 rejects damaged files") {
  const auto bytes = save_weights(random_weights(NetSpec{}, NetRole::generator, 1));
  auto bad = bytes;
  bad[1] = 'Z';
  CHECK(load_error(bad) == FormatError::Kind::bad_magic);
  CHECK(load_error(std::span(bytes).first(bytes.size() - 100)) == FormatError::Kind::truncated);
  CHECK(load_error(std::span(bytes).first(7)) == FormatError::Kind::truncated);
  bad = bytes;
  bad[bytes.size() / 2] ^= 0x01;
  CHECK(load_error(bad) == FormatError::Kind::checksum);
  bad = bytes;
  bad.back() ^= 0x80;
  CHECK(load_error(bad) == FormatError::Kind::checksum);
  bad = bytes;
  bad.push_back(0);
  CHECK(load_error(bad) == FormatError::Kind::malformed);
}

TEST_CASE("architecture checks") {
  const auto pixel = save_weights(random_weights(NetSpec::pixel_limited(), NetRole::generator, 1));
  CHECK_THROWS_AS(load_weights(pixel, NetSpec::na_limited(), NetRole::generator), IncompatibleWeights);
  CHECK_THROWS_AS(load_weights(pixel, NetSpec::pixel_limited(), NetRole::discriminator), IncompatibleWeights);
  try {
    load_weights(pixel, NetSpec::na_limited(), NetRole::generator);
  } catch (const IncompatibleWeights& e) {
    CHECK(std::string(e.what()).find("fingerprint") != std::string::npos);
  }
  // Right fingerprint, wrong tensor list.
  auto store = random_weights(NetSpec{}, NetRole::generator, 2);
  store.tensors().pop_back();
  CHECK_THROWS_AS(load_weights(save_weights(store), NetSpec{}, NetRole::generator), IncompatibleWeights);
  CHECK_NOTHROW(load_weights(save_weights(store)));
}

TEST_CASE("fixtures") {
  const auto r1 = random_weights(NetSpec{}, NetRole::generator, 5, 0.05);
  const auto r2 = random_weights(NetSpec{}, NetRole::generator, 5, 0.05);
  CHECK(save_weights(r1) == save_weights(r2));
  for (const auto& t : r1.tensors())
    for (float v : t.values) {
      if (t.name.ends_with(".bias")) CHECK(v == 0.0f);
      else CHECK(std::abs(v) <= 0.1f);
    }
  const auto id = identity_generator_weights(NetSpec{});
  const float u = static_cast<float>(1.0 / 1.1);
  const auto& w = id.tensor("g.up2.conv0.weight");  // 512 -> 256 after concatenation
  CHECK(w.values[(0 * 512 + 0) * 9 + 4] == 0.5f * u);
  CHECK(w.values[(0 * 512 + 1) * 9 + 4] == -0.5f * u);
  CHECK(w.values[(0 * 512 + 256) * 9 + 4] == 0.5f * u);
  CHECK(w.values[(1 * 512 + 256) * 9 + 4] == -0.5f * u);
  CHECK(w.values[(0 * 512 + 2) * 9 + 4] == 0.0f);
  const auto& in = id.tensor("g.input.weight");  // 2 -> 32
  CHECK(in.values[(2 * 2 + 1) * 9 + 4] == 1.0f);
  CHECK(in.values[(3 * 2 + 1) * 9 + 4] == -1.0f);
  CHECK(in.values[(3 * 2 + 0) * 9 + 4] == 0.0f);
  CHECK(in.values[(4 * 2 + 0) * 9 + 4] == 0.0f);
  const auto& out = id.tensor("g.output.weight");  // 32 -> 2, linear
  CHECK(out.values[(1 * 32 + 2) * 9 + 4] == u);
  CHECK(out.values[(1 * 32 + 3) * 9 + 4] == -u);
}
