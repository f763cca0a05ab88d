#pragma once

#include <vector>

#include "cohsr/image.hpp"
#include "cohsr/netspec.hpp"
#include "cohsr/weights.hpp"

namespace cohsr::net {

/// Channel-major float tensor (C x H x W).
struct Tensor3 {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> data;

  Tensor3() = default;
  Tensor3(int c, int h, int w, float fill = 0.0f);

  float& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  std::size_t plane() const noexcept { return static_cast<std::size_t>(height) * width; }
  float* channel(int c) noexcept { return data.data() + c * plane(); }
  const float* channel(int c) const noexcept { return data.data() + c * plane(); }
};

float lrelu(float x, float slope) noexcept;

/// Zero-padded k x k convolution. Stride 2 keeps the kernel centred on even
/// input pixels, giving ceil(n/2) outputs. Weights are [cout, cin, k, k].
Tensor3 conv2d(const Tensor3& in, const NamedTensor& weight, const NamedTensor& bias, int stride);
Tensor3 avg_pool2(const Tensor3& in);
/// Bilinear 2x upsampling with half-pixel centres and clamped borders.
Tensor3 upsample2(const Tensor3& in);
Tensor3 concat(const Tensor3& a, const Tensor3& b);

class Generator {
 public:
  /// Throws IncompatibleWeights when `weights` were made for another spec.
  Generator(NetSpec spec, WeightStore weights);

  /// Height and width must be multiples of spec().size_multiple().
  Tensor3 infer(const Tensor3& input) const;
  const NetSpec& spec() const noexcept { return spec_; }

 private:
  NetSpec spec_;
  LayerGraph graph_;
  WeightStore weights_;
};

class Discriminator {
 public:
  Discriminator(NetSpec spec, WeightStore weights);

  /// Probability that `input` is a high-resolution sample.
  double score(const Tensor3& input) const;

 private:
  NetSpec spec_;
  LayerGraph graph_;
  WeightStore weights_;
};

/// Runs the generator over tiles of `tile` pixels, each extended by `halo`
/// pixels of context, and stitches the tile cores. Tile, halo and image
/// sizes must be multiples of the generator's size multiple.
Tensor3 infer_tiled(const Generator& generator, const Tensor3& input, int tile, int halo);

/// Two channels: real and imaginary parts. One channel: phase.
Tensor3 field_to_tensor(const ComplexField& field, int channels);
/// Inverse of field_to_tensor; a phase-only tensor gives a unit-amplitude
/// field.
ComplexField tensor_to_field(const Tensor3& tensor, double pitch_um, double wavelength_um,
                             double z_um = 0.0);

Tensor3 image_to_tensor(const Image& image);
Image tensor_channel(const Tensor3& tensor, int channel);

}  // namespace cohsr::net
