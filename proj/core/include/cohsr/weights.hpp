#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cohsr/netspec.hpp"

namespace cohsr::net {

struct NamedTensor {
  std::string name;
  std::vector<int> shape;
  std::vector<float> values;
};

/// Ordered parameter tensors of one network plus the fingerprint of the
/// architecture they were trained for.
class WeightStore {
 public:
  WeightStore(std::string fingerprint_hex, std::vector<NamedTensor> tensors);

  /// Zero-filled tensors in the graph's enumeration order.
  static WeightStore zeros(const NetSpec& spec, NetRole role);

  const std::string& fingerprint() const noexcept { return fingerprint_; }
  const std::vector<NamedTensor>& tensors() const noexcept { return tensors_; }
  std::vector<NamedTensor>& tensors() noexcept { return tensors_; }
  const NamedTensor& tensor(const std::string& name) const;
  NamedTensor& tensor(const std::string& name);

  /// Throws IncompatibleWeights unless the fingerprint and the tensor
  /// name/shape list match the spec's enumeration exactly.
  void check_compatible(const NetSpec& spec, NetRole role) const;

 private:
  std::string fingerprint_;
  std::vector<NamedTensor> tensors_;
};

// HSRW1 layout:
//   "HSRW1" | u32 LE manifest length | manifest (UTF-8)
//   | binary32 LE payloads in manifest order | u32 LE CRC-32 of the payload
// The manifest's first line is the architecture fingerprint; each following
// line is `tensor_name dim0 dim1 ...`.

std::vector<std::uint8_t> save_weights(const WeightStore& store);

/// Format-level decoding. Errors: FormatError bad_magic / truncated /
/// checksum / malformed.
WeightStore load_weights(std::span<const std::uint8_t> bytes);

/// Decoding plus an architecture check that runs before the payload is read,
/// so a manifest describing another network fails with IncompatibleWeights.
WeightStore load_weights(std::span<const std::uint8_t> bytes, const NetSpec& spec, NetRole role);

void write_weights(const std::filesystem::path& path, const WeightStore& store);
WeightStore read_weights(const std::filesystem::path& path, const NetSpec& spec, NetRole role);

/// Fixture weights that make the generator reproduce per-channel constant
/// inputs of either sign. Centre taps only, zero biases. The input conv
/// writes each input channel i as the pair (+x, -x) on channels 2i, 2i+1;
/// later convs read x back as (ch 2i - ch 2i+1) / (1 + slope) and re-pair it,
/// averaging the upsampled and skip copies after a concatenation. The linear
/// output conv writes x to channel i. Unused channels stay zero.
WeightStore identity_generator_weights(const NetSpec& spec);

/// Conv/dense weights from a normal distribution with the given standard
/// deviation truncated at two deviations; zero biases. Deterministic in seed.
WeightStore random_weights(const NetSpec& spec, NetRole role, std::uint64_t seed,
                           double stddev = 0.05);

}  // namespace cohsr::net
