#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cohsr::net {

enum class NetRole { generator, discriminator };

/// Architecture hyper-parameters of the U-Net generator and its
/// discriminator.
struct NetSpec {
  int in_channels = 2;  ///< 2: real/imaginary, 1: phase only
  int out_channels = 2;
  int base_channels = 32;
  int depth = 3;        ///< pooling levels of the generator
  int kernel = 3;
  double lrelu_slope = 0.1;
  int discriminator_blocks = 5;

  /// Real/imaginary network for the pixel-limited (lens-free) system.
  static NetSpec pixel_limited();
  /// Phase-only network for the NA-limited (lens-based) system.
  static NetSpec na_limited();

  void validate() const;
  /// Spatial sizes must be multiples of this for the generator.
  int size_multiple() const { return 1 << depth; }

  std::string canonical_string(NetRole role) const;
  std::uint64_t fingerprint(NetRole role) const;
  /// 16 lowercase hex digits of the FNV-1a hash of canonical_string.
  std::string fingerprint_hex(NetRole role) const;
};

std::uint64_t fnv1a64(const std::string& text);

struct TensorSpec {
  std::string name;
  std::vector<int> shape;

  std::size_t element_count() const;
  bool operator==(const TensorSpec&) const = default;
};

enum class OpKind { conv, avg_pool, upsample, push_skip, concat_skip, global_avg_pool, dense, sigmoid };

/// One step of a network in execution order. Convolutions and dense layers
/// own a weight and a bias tensor named `<name>.weight` / `<name>.bias`.
struct Op {
  OpKind kind;
  std::string name;
  int in_channels = 0;
  int out_channels = 0;
  int stride = 1;
  bool lrelu = false;
};

struct LayerGraph {
  NetRole role;
  NetSpec spec;
  std::vector<Op> ops;

  /// Parameter tensors in execution order (weight before bias).
  std::vector<TensorSpec> tensors() const;
  std::size_t parameter_count() const;
  /// Output channels of the input conv and of every channel-changing conv.
  std::vector<int> channel_progression() const;
};

/// Input conv, `depth` down blocks (conv c->c, conv c->2c, then 2x2 average
/// pooling), a bridging conv that keeps the channel count, `depth` up blocks
/// (bilinear 2x upsampling, concatenation with the matching down block
/// output, conv 2c->c, conv c->c/2) and a linear output conv.
LayerGraph build_generator(const NetSpec& spec);

/// Input conv to base channels, discriminator_blocks blocks (conv c->c,
/// stride-2 conv c->2c), global average pooling, dense c->c with LReLU,
/// dense c->1 and a sigmoid.
LayerGraph build_discriminator(const NetSpec& spec);

LayerGraph build_graph(const NetSpec& spec, NetRole role);

}  // namespace cohsr::net
