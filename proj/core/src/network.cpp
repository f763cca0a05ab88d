#include "cohsr/network.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

#include "cohsr/errors.hpp"
#include "cohsr/parallel.hpp"

namespace cohsr::net {

namespace {

using RowMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StridedMap = Eigen::Map<RowMatrix, 0, Eigen::OuterStride<>>;
using ConstMap = Eigen::Map<const RowMatrix>;

// Upper bound on one im2col buffer, in floats.
constexpr std::size_t kColumnBudget = std::size_t{1} << 22;

void apply_lrelu(Tensor3& t, float slope) {
  for (float& v : t.data) v = lrelu(v, slope);
}

Tensor3 dense(const std::vector<float>& in, const NamedTensor& weight, const NamedTensor& bias) {
  const int out = weight.shape[0];
  const int n = weight.shape[1];
  require(static_cast<int>(in.size()) == n, "dense: input size mismatch for " + weight.name);
  Tensor3 result(out, 1, 1);
  for (int o = 0; o < out; ++o) {
    double acc = bias.values[o];
    const float* w = weight.values.data() + static_cast<std::size_t>(o) * n;
    for (int i = 0; i < n; ++i) acc += static_cast<double>(w[i]) * in[i];
    result.data[o] = static_cast<float>(acc);
  }
  return result;
}

}  // namespace

Tensor3::Tensor3(int c, int h, int w, float fill)
    : channels(c), height(h), width(w),
      data(static_cast<std::size_t>(c) * h * w, fill) {
  require(c > 0 && h > 0 && w > 0, "tensor dimensions must be positive");
}

float lrelu(float x, float slope) noexcept { return x >= 0.0f ? x : slope * x; }

Tensor3 conv2d(const Tensor3& in, const NamedTensor& weight, const NamedTensor& bias, int stride) {
  require(weight.shape.size() == 4 && weight.shape[2] == weight.shape[3],
          "conv2d: weight must be [cout, cin, k, k]");
  const int cout = weight.shape[0];
  const int cin = weight.shape[1];
  const int k = weight.shape[2];
  require(cin == in.channels, "conv2d: channel mismatch for " + weight.name);
  require(stride == 1 || stride == 2, "conv2d: stride must be 1 or 2");
  const int pad = k / 2;
  const int oh = (in.height + stride - 1) / stride;
  const int ow = (in.width + stride - 1) / stride;
  Tensor3 out(cout, oh, ow);

  const int rows_k = cin * k * k;
  const int stripe_rows = static_cast<int>(std::clamp<std::size_t>(
      kColumnBudget / (static_cast<std::size_t>(rows_k) * ow), 1, static_cast<std::size_t>(oh)));
  const int stripes = (oh + stripe_rows - 1) / stripe_rows;
  const ConstMap w(weight.values.data(), cout, rows_k);
  const Eigen::Map<const Eigen::VectorXf> b(bias.values.data(), cout);

  parallel_for(0, stripes, [&](int s) {
    const int y0 = s * stripe_rows;
    const int y1 = std::min(oh, y0 + stripe_rows);
    const int npix = (y1 - y0) * ow;
    RowMatrix cols(rows_k, npix);
    for (int ci = 0; ci < cin; ++ci) {
      const float* src = in.channel(ci);
      for (int ky = 0; ky < k; ++ky) {
        for (int kx = 0; kx < k; ++kx) {
          float* dst = cols.data() + static_cast<std::size_t>((ci * k + ky) * k + kx) * npix;
          for (int oy = y0; oy < y1; ++oy) {
            const int iy = oy * stride + ky - pad;
            float* row = dst + static_cast<std::size_t>(oy - y0) * ow;
            if (iy < 0 || iy >= in.height) {
              std::fill(row, row + ow, 0.0f);
              continue;
            }
            const float* srow = src + static_cast<std::size_t>(iy) * in.width;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * stride + kx - pad;
              row[ox] = (ix < 0 || ix >= in.width) ? 0.0f : srow[ix];
            }
          }
        }
      }
    }
    StridedMap dst(out.data.data() + static_cast<std::size_t>(y0) * ow, cout, npix,
                   Eigen::OuterStride<>(static_cast<Eigen::Index>(out.plane())));
    dst.noalias() = w * cols;
    dst.colwise() += b;
  });
  return out;
}

Tensor3 avg_pool2(const Tensor3& in) {
  require(in.height % 2 == 0 && in.width % 2 == 0, "avg_pool2: dimensions must be even");
  Tensor3 out(in.channels, in.height / 2, in.width / 2);
  for (int c = 0; c < in.channels; ++c)
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x)
        out.at(c, y, x) = 0.25f * (in.at(c, 2 * y, 2 * x) + in.at(c, 2 * y, 2 * x + 1) +
                                   in.at(c, 2 * y + 1, 2 * x) + in.at(c, 2 * y + 1, 2 * x + 1));
  return out;
}

Tensor3 upsample2(const Tensor3& in) {
  Tensor3 out(in.channels, in.height * 2, in.width * 2);
  // Output pixel o samples source coordinate (o + 0.5) / 2 - 0.5.
  auto taps = [](int o, int n, int& i0, int& i1, float& t) {
    const double s = std::clamp((o + 0.5) / 2.0 - 0.5, 0.0, static_cast<double>(n - 1));
    i0 = static_cast<int>(std::floor(s));
    i1 = std::min(i0 + 1, n - 1);
    t = static_cast<float>(s - i0);
  };
  std::vector<int> x0(out.width), x1(out.width);
  std::vector<float> tx(out.width);
  for (int x = 0; x < out.width; ++x) taps(x, in.width, x0[x], x1[x], tx[x]);
  for (int c = 0; c < in.channels; ++c) {
    for (int y = 0; y < out.height; ++y) {
      int y0 = 0, y1 = 0;
      float ty = 0.0f;
      taps(y, in.height, y0, y1, ty);
      for (int x = 0; x < out.width; ++x) {
        const float top = in.at(c, y0, x0[x]) * (1 - tx[x]) + in.at(c, y0, x1[x]) * tx[x];
        const float bottom = in.at(c, y1, x0[x]) * (1 - tx[x]) + in.at(c, y1, x1[x]) * tx[x];
        out.at(c, y, x) = top * (1 - ty) + bottom * ty;
      }
    }
  }
  return out;
}

Tensor3 concat(const Tensor3& a, const Tensor3& b) {
  require(a.height == b.height && a.width == b.width, "concat: spatial size mismatch");
  Tensor3 out(a.channels + b.channels, a.height, a.width);
  std::copy(a.data.begin(), a.data.end(), out.data.begin());
  std::copy(b.data.begin(), b.data.end(), out.data.begin() + static_cast<long>(a.data.size()));
  return out;
}

Generator::Generator(NetSpec spec, WeightStore weights)
    : spec_(spec), graph_(build_generator(spec)), weights_(std::move(weights)) {
  weights_.check_compatible(spec_, NetRole::generator);
}

Tensor3 Generator::infer(const Tensor3& input) const {
  const int m = spec_.size_multiple();
  if (input.channels != spec_.in_channels)
    throw InvalidParameter("generator expects " + std::to_string(spec_.in_channels) +
                           " input channels, got " + std::to_string(input.channels));
  if (input.height % m != 0 || input.width % m != 0)
    throw InvalidParameter("generator input size " + std::to_string(input.width) + "x" +
                           std::to_string(input.height) + " is not a multiple of " +
                           std::to_string(m));
  const auto slope = static_cast<float>(spec_.lrelu_slope);
  std::vector<Tensor3> skips;
  Tensor3 x = input;
  for (const auto& op : graph_.ops) {
    switch (op.kind) {
      case OpKind::conv:
        x = conv2d(x, weights_.tensor(op.name + ".weight"), weights_.tensor(op.name + ".bias"),
                   op.stride);
        if (op.lrelu) apply_lrelu(x, slope);
        break;
      case OpKind::push_skip:
        skips.push_back(x);
        break;
      case OpKind::avg_pool:
        x = avg_pool2(x);
        break;
      case OpKind::upsample:
        x = upsample2(x);
        break;
      case OpKind::concat_skip:
        x = concat(x, skips.back());
        skips.pop_back();
        break;
      default:
        throw Error("generator graph contains an unsupported op: " + op.name);
    }
  }
  return x;
}

Discriminator::Discriminator(NetSpec spec, WeightStore weights)
    : spec_(spec), graph_(build_discriminator(spec)), weights_(std::move(weights)) {
  weights_.check_compatible(spec_, NetRole::discriminator);
}

double Discriminator::score(const Tensor3& input) const {
  require(input.channels == spec_.in_channels, "discriminator: channel mismatch");
  const int minimum = 1 << spec_.discriminator_blocks;
  require(input.height >= minimum && input.width >= minimum,
          "discriminator input must be at least " + std::to_string(minimum) + " pixels per side");
  const auto slope = static_cast<float>(spec_.lrelu_slope);
  Tensor3 x = input;
  double probability = 0.0;
  for (const auto& op : graph_.ops) {
    switch (op.kind) {
      case OpKind::conv:
        x = conv2d(x, weights_.tensor(op.name + ".weight"), weights_.tensor(op.name + ".bias"),
                   op.stride);
        if (op.lrelu) apply_lrelu(x, slope);
        break;
      case OpKind::global_avg_pool: {
        Tensor3 pooled(x.channels, 1, 1);
        for (int c = 0; c < x.channels; ++c) {
          double sum = 0.0;
          for (std::size_t i = 0; i < x.plane(); ++i) sum += x.channel(c)[i];
          pooled.data[c] = static_cast<float>(sum / static_cast<double>(x.plane()));
        }
        x = std::move(pooled);
        break;
      }
      case OpKind::dense:
        x = dense(x.data, weights_.tensor(op.name + ".weight"), weights_.tensor(op.name + ".bias"));
        if (op.lrelu) apply_lrelu(x, slope);
        break;
      case OpKind::sigmoid:
        probability = 1.0 / (1.0 + std::exp(-static_cast<double>(x.data[0])));
        break;
      default:
        throw Error("discriminator graph contains an unsupported op: " + op.name);
    }
  }
  return probability;
}

Tensor3 infer_tiled(const Generator& generator, const Tensor3& input, int tile, int halo) {
  const int m = generator.spec().size_multiple();
  require(tile > 0 && tile % m == 0, "infer_tiled: tile must be a positive multiple of " + std::to_string(m));
  require(halo >= 0 && halo % m == 0, "infer_tiled: halo must be a non-negative multiple of " + std::to_string(m));
  require(input.height % m == 0 && input.width % m == 0,
          "infer_tiled: image size must be a multiple of " + std::to_string(m));
  Tensor3 out(generator.spec().out_channels, input.height, input.width);
  for (int ty = 0; ty < input.height; ty += tile) {
    for (int tx = 0; tx < input.width; tx += tile) {
      const int cx0 = tx, cy0 = ty;
      const int cx1 = std::min(input.width, tx + tile);
      const int cy1 = std::min(input.height, ty + tile);
      const int ex0 = std::max(0, cx0 - halo), ey0 = std::max(0, cy0 - halo);
      const int ex1 = std::min(input.width, cx1 + halo), ey1 = std::min(input.height, cy1 + halo);
      Tensor3 patch(input.channels, ey1 - ey0, ex1 - ex0);
      for (int c = 0; c < input.channels; ++c)
        for (int y = ey0; y < ey1; ++y)
          std::copy_n(input.channel(c) + static_cast<std::size_t>(y) * input.width + ex0, ex1 - ex0,
                      &patch.at(c, y - ey0, 0));
      const Tensor3 result = generator.infer(patch);
      for (int c = 0; c < out.channels; ++c)
        for (int y = cy0; y < cy1; ++y)
          std::copy_n(result.channel(c) + static_cast<std::size_t>(y - ey0) * result.width + (cx0 - ex0), cx1 - cx0,
                      out.channel(c) + static_cast<std::size_t>(y) * out.width + cx0);
    }
  }
  return out;
}

Tensor3 field_to_tensor(const ComplexField& field, int channels) {
  require(channels == 1 || channels == 2, "field_to_tensor: channels must be 1 or 2");
  Tensor3 t(channels, field.height(), field.width());
  const auto data = field.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (channels == 2) {
      t.data[i] = static_cast<float>(data[i].real());
      t.data[i + t.plane()] = static_cast<float>(data[i].imag());
    } else {
      t.data[i] = static_cast<float>(std::arg(data[i]));
    }
  }
  return t;
}

ComplexField tensor_to_field(const Tensor3& tensor, double pitch_um, double wavelength_um,
                             double z_um) {
  require(tensor.channels == 1 || tensor.channels == 2, "tensor_to_field: channels must be 1 or 2");
  ComplexField field(tensor.width, tensor.height, pitch_um, wavelength_um, z_um);
  auto data = field.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (tensor.channels == 2)
      data[i] = Complex(tensor.data[i], tensor.data[i + tensor.plane()]);
    else
      data[i] = std::polar(1.0, static_cast<double>(tensor.data[i]));
  }
  return field;
}

Tensor3 image_to_tensor(const Image& image) {
  Tensor3 t(1, image.height(), image.width());
  const auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) t.data[i] = static_cast<float>(px[i]);
  return t;
}

Image tensor_channel(const Tensor3& tensor, int channel) {
  require(channel >= 0 && channel < tensor.channels, "tensor_channel: channel out of range");
  Image img(tensor.width, tensor.height);
  const float* src = tensor.channel(channel);
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = src[i];
  return img;
}

}  // namespace cohsr::net
