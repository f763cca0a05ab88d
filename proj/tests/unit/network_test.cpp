#include <cmath>
#include <random>

#include "cohsr/errors.hpp"
#include "cohsr/network.hpp"
#include "cohsr/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cohsr;
using namespace cohsr::net;

namespace {

Tensor3 random_tensor(int c, int h, int w, std::uint64_t seed, float lo = -1.0f, float hi = 1.0f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(lo, hi);
  Tensor3 t(c, h, w);
  for (float& v : t.data) v = u(rng);
  return t;
}

double max_diff(const Tensor3& a, const Tensor3& b, int margin = 0) {
  double m = 0.0;
  for (int c = 0; c < a.channels; ++c)
    for (int y = margin; y < a.height - margin; ++y)
      for (int x = margin; x < a.width - margin; ++x)
        m = std::max(m, static_cast<double>(std::abs(a.at(c, y, x) - b.at(c, y, x))));
  return m;
}

// Smooth, strictly positive two-channel input.
Tensor3 smooth_positive(int n, std::uint64_t seed) {
  Tensor3 t(2, n, n);
  for (int c = 0; c < 2; ++c) {
    const auto img = oracle::band_limited_image(n, n, 0.02, seed + c, 0.0);
    const double lo = img.min(), hi = img.max();
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) t.at(c, y, x) = static_cast<float>(0.5 + (img(x, y) - lo) / (hi - lo));
  }
  return t;
}

}  // namespace

TEST_CASE("lrelu") {
  CHECK(lrelu(5.0f, 0.1f) == 5.0f);
  CHECK(lrelu(-1.0f, 0.1f) == doctest::Approx(-0.1f));
  CHECK(lrelu(0.0f, 0.1f) == 0.0f);
}

TEST_CASE("conv2d matches direct convolution") {
  for (int stride : {1, 2}) {
    const auto in = random_tensor(3, 9, 11, 1);
    NamedTensor w{"w", {4, 3, 3, 3}, {}}, b{"b", {4}, {}};
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<float> u(-1, 1);
    for (int i = 0; i < 4 * 27; ++i) w.values.push_back(u(rng));
    for (int i = 0; i < 4; ++i) b.values.push_back(u(rng));
    const auto out = conv2d(in, w, b, stride);
    int oh = 0, ow = 0;
    const auto expected = oracle::direct_conv(in.data, 3, 9, 11, w.values, b.values, 4, 3, stride, oh, ow);
    REQUIRE(out.height == oh);
    REQUIRE(out.width == ow);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(out.data[i] == doctest::Approx(expected[i]).epsilon(1e-5));
  }
}

TEST_CASE("pooling, upsampling, concatenation") {
  Tensor3 t(1, 2, 2);
  t.data = {1, 2, 3, 4};
  CHECK(avg_pool2(t).data[0] == 2.5f);
  const auto up = upsample2(t);
  REQUIRE(up.width == 4);
  CHECK(up.at(0, 0, 0) == 1.0f);                    // clamped corner
  CHECK(up.at(0, 0, 1) == doctest::Approx(1.25f));  // 0.75*1 + 0.25*2
  CHECK(up.at(0, 1, 1) == doctest::Approx(1.75f));
  CHECK(up.at(0, 3, 3) == 4.0f);
  const auto cat = concat(t, avg_pool2(up));
  CHECK(cat.channels == 2);
  CHECK(cat.at(1, 1, 0) == doctest::Approx(0.25f * (up.at(0, 2, 0) + up.at(0, 2, 1) + up.at(0, 3, 0) + up.at(0, 3, 1))));
  CHECK_THROWS_AS(avg_pool2(Tensor3(1, 3, 4)), InvalidParameter);
}

TEST_CASE("generator shapes and errors") {
  const Generator g(NetSpec{}, random_weights(NetSpec{}, NetRole::generator, 3));
  const auto in = random_tensor(2, 128, 128, 4);
  const auto out = g.infer(in);
  CHECK(out.channels == 2);
  CHECK(out.height == 128);
  CHECK(out.width == 128);
  for (float v : out.data) CHECK(std::isfinite(v));
  CHECK(g.infer(in).data == out.data);
  CHECK_THROWS_AS(g.infer(random_tensor(2, 124, 128, 1)), InvalidParameter);
  CHECK_THROWS_AS(g.infer(random_tensor(1, 128, 128, 1)), InvalidParameter);
  CHECK_THROWS_AS(Generator(NetSpec::na_limited(), random_weights(NetSpec{}, NetRole::generator, 3)),
                  IncompatibleWeights);
  const auto rect = g.infer(random_tensor(2, 40, 64, 5));
  CHECK(rect.height == 40);
  CHECK(rect.width == 64);
}

TEST_CASE("identity weights reproduce constant inputs") {
  const Generator g(NetSpec{}, identity_generator_weights(NetSpec{}));
  Tensor3 in(2, 128, 128);
  std::fill(in.data.begin(), in.data.begin() + static_cast<long>(in.plane()), 0.8f);
  std::fill(in.data.begin() + static_cast<long>(in.plane()), in.data.end(), -0.3f);
  CHECK(max_diff(g.infer(in), in) < 1e-5);
  const Generator phase(NetSpec::na_limited(), identity_generator_weights(NetSpec::na_limited()));
  const Tensor3 one(1, 64, 64, -1.7f);
  CHECK(max_diff(phase.infer(one), one) < 1e-5);
}

TEST_CASE("tiled inference") {
  SUBCASE("four quadrants agree away from the seams") {
    const Generator g(NetSpec{}, identity_generator_weights(NetSpec{}));
    const auto in = smooth_positive(256, 9);
    const auto whole = g.infer(in);
    const auto quads = infer_tiled(g, in, 128, 0);
    // Compare everything outside a 16 px band around the two seams.
    double worst = 0.0;
    for (int c = 0; c < 2; ++c)
      for (int y = 0; y < 256; ++y)
        for (int x = 0; x < 256; ++x)
          if (std::abs(x - 128) >= 16 && std::abs(y - 128) >= 16 && x >= 16 && y >= 16 && x < 240 && y < 240)
            worst = std::max(worst, static_cast<double>(std::abs(whole.at(c, y, x) - quads.at(c, y, x))));
    CHECK(worst < 1e-4);
  }
  SUBCASE("a halo covering the receptive field matches exactly enough") {
    const Generator g(NetSpec{}, random_weights(NetSpec{}, NetRole::generator, 12));
    const auto in = random_tensor(2, 192, 192, 13);
    CHECK(max_diff(g.infer(in), infer_tiled(g, in, 64, 64)) < 1e-4);
  }
}

TEST_CASE("translation covariance on the interior") {
  const Generator g(NetSpec{}, random_weights(NetSpec{}, NetRole::generator, 21));
  const auto in = random_tensor(2, 192, 192, 22, 0.0f, 1.0f);
  Tensor3 shifted(2, 192, 192);
  for (int c = 0; c < 2; ++c)
    for (int y = 0; y < 192; ++y)
      for (int x = 0; x < 192; ++x) shifted.at(c, y, x) = in.at(c, y, (x + 8) % 192);
  const auto a = g.infer(in);
  const auto b = g.infer(shifted);
  double worst = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int y = 64; y < 128; ++y)
      for (int x = 64; x < 128; ++x)
        worst = std::max(worst, static_cast<double>(std::abs(b.at(c, y, x) - a.at(c, y, x + 8))));
  CHECK(worst < 1e-4);
}

TEST_CASE("discriminator") {
  const NetSpec spec;
  const Discriminator d(spec, random_weights(spec, NetRole::discriminator, 4));
  for (std::uint64_t s = 0; s < 3; ++s) {
    const double p = d.score(random_tensor(2, 64, 64, s));
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }
  CHECK_THROWS_AS(d.score(random_tensor(2, 16, 64, 1)), InvalidParameter);

  // Zero weights with a bias on the last layer give sigmoid(bias).
  auto store = WeightStore::zeros(spec, NetRole::discriminator);
  store.tensor("d.fc1.bias").values[0] = 0.7f;
  CHECK(Discriminator(spec, store).score(random_tensor(2, 32, 32, 2)) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-0.7))));
}

TEST_CASE("field and tensor conversion") {
  ComplexField f(8, 8, 1.12, 0.55);
  for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = std::polar(0.9, 0.01 * static_cast<double>(i));
  const auto t = field_to_tensor(f, 2);
  CHECK(t.at(1, 2, 3) == static_cast<float>(f(3, 2).imag()));
  const auto back = tensor_to_field(t, 1.12, 0.55);
  CHECK(std::abs(back(3, 2) - f(3, 2)) < 1e-6);
  const auto phase = field_to_tensor(f, 1);
  CHECK(phase.at(0, 1, 1) == doctest::Approx(0.09f));
  CHECK(std::abs(tensor_to_field(phase, 1.12, 0.55)(1, 1)) == doctest::Approx(1.0));
}
