#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

std::vector<Complex> dft2(std::span<const Complex> data, int width, int height, bool inverse) {
  const double sign = inverse ? 1.0 : -1.0;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Complex> rows(data.size());
  for (int y = 0; y < height; ++y)
    for (int u = 0; u < width; ++u) {
      Complex acc = 0.0;
      for (int x = 0; x < width; ++x)
        acc += data[static_cast<std::size_t>(y) * width + x] *
               std::polar(1.0, sign * two_pi * u * x / width);
      rows[static_cast<std::size_t>(y) * width + u] = acc;
    }
  std::vector<Complex> out(data.size());
  for (int u = 0; u < width; ++u)
    for (int v = 0; v < height; ++v) {
      Complex acc = 0.0;
      for (int y = 0; y < height; ++y)
        acc += rows[static_cast<std::size_t>(y) * width + u] *
               std::polar(1.0, sign * two_pi * v * y / height);
      out[static_cast<std::size_t>(v) * width + u] = inverse ? acc / double(width * height) : acc;
    }
  return out;
}

namespace {

struct Wave {
  int kx, ky;
  Complex c;
};

std::vector<Wave> random_waves(int width, int height, double fc, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kx_dist(-width / 2, width / 2 - 1);
  std::uniform_int_distribution<int> ky_dist(-height / 2, height / 2 - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Wave> waves;
  int guard = 0;
  while (static_cast<int>(waves.size()) < count && guard++ < 1000000) {
    const int kx = kx_dist(rng), ky = ky_dist(rng);
    if (kx == 0 && ky == 0) continue;
    const double f = std::hypot(static_cast<double>(kx) / width, static_cast<double>(ky) / height);
    if (f >= fc) continue;
    waves.push_back({kx, ky, Complex(normal(rng), normal(rng))});
  }
  return waves;
}

}  // namespace

Image band_limited_image(int width, int height, double fc, std::uint64_t seed, double offset) {
  const auto waves = random_waves(width, height, fc, seed, 120);
  Image img(width, height, offset);
  const double scale = 1.0 / std::sqrt(static_cast<double>(waves.size()));
  for (const auto& w : waves) {
    std::vector<Complex> ex(width), ey(height);
    for (int x = 0; x < width; ++x) ex[x] = std::polar(1.0, 2 * std::numbers::pi * w.kx * x / width);
    for (int y = 0; y < height; ++y) ey[y] = std::polar(1.0, 2 * std::numbers::pi * w.ky * y / height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) img(x, y) += scale * (w.c * ex[x] * ey[y]).real();
  }
  return img;
}

ComplexField band_limited_field(int width, int height, double pitch_um, double wavelength_um,
                                double fc, std::uint64_t seed, Complex dc) {
  const auto waves = random_waves(width, height, fc, seed, 120);
  std::vector<Complex> data(static_cast<std::size_t>(width) * height, dc);
  const double scale = 0.3 / std::sqrt(static_cast<double>(waves.size()));
  for (const auto& w : waves) {
    std::vector<Complex> ex(width), ey(height);
    for (int x = 0; x < width; ++x) ex[x] = std::polar(1.0, 2 * std::numbers::pi * w.kx * x / width);
    for (int y = 0; y < height; ++y) ey[y] = std::polar(1.0, 2 * std::numbers::pi * w.ky * y / height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        data[static_cast<std::size_t>(y) * width + x] += scale * w.c * ex[x] * ey[y];
  }
  return ComplexField(width, height, pitch_um, wavelength_um, 0.0, std::move(data));
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const Image& a, const Image& b, int margin) {
  double m = 0.0;
  for (int y = margin; y < a.height() - margin; ++y)
    for (int x = margin; x < a.width() - margin; ++x) m = std::max(m, std::abs(a(x, y) - b(x, y)));
  return m;
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::uint8_t b : bytes) {
    crc ^= b;
    for (int i = 0; i < 8; ++i) crc = (crc & 1u) ? (crc >> 1) ^ 0xEDB88320u : crc >> 1;
  }
  return crc ^ 0xFFFFFFFFu;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::size_t conv_params(int k, int cin, int cout) {
  return static_cast<std::size_t>(k) * k * cin * cout + cout;
}

std::size_t dense_params(int cin, int cout) { return static_cast<std::size_t>(cin) * cout + cout; }

std::size_t generator_params_by_hand(int in, int out) {
  std::size_t n = conv_params(3, in, 32);
  n += conv_params(3, 32, 32) + conv_params(3, 32, 64);
  n += conv_params(3, 64, 64) + conv_params(3, 64, 128);
  n += conv_params(3, 128, 128) + conv_params(3, 128, 256);
  n += conv_params(3, 256, 256);                             // bridge
  n += conv_params(3, 512, 256) + conv_params(3, 256, 128);  // up, 1/4 scale
  n += conv_params(3, 256, 128) + conv_params(3, 128, 64);   // up, 1/2 scale
  n += conv_params(3, 128, 64) + conv_params(3, 64, 32);     // up, full scale
  n += conv_params(3, 32, out);
  return n;
}

std::size_t discriminator_params_by_hand(int in) {
  std::size_t n = conv_params(3, in, 32);
  for (int c = 32; c <= 512; c *= 2) n += conv_params(3, c, c) + conv_params(3, c, 2 * c);
  return n + dense_params(1024, 1024) + dense_params(1024, 1);
}

std::vector<float> direct_conv(const std::vector<float>& in, int cin, int h, int w,
                               const std::vector<float>& weight, const std::vector<float>& bias,
                               int cout, int k, int stride, int& out_h, int& out_w) {
  out_h = (h + stride - 1) / stride;
  out_w = (w + stride - 1) / stride;
  std::vector<float> out(static_cast<std::size_t>(cout) * out_h * out_w);
  const int pad = k / 2;
  for (int co = 0; co < cout; ++co)
    for (int oy = 0; oy < out_h; ++oy)
      for (int ox = 0; ox < out_w; ++ox) {
        double acc = bias[co];
        for (int ci = 0; ci < cin; ++ci)
          for (int ky = 0; ky < k; ++ky)
            for (int kx = 0; kx < k; ++kx) {
              const int iy = oy * stride + ky - pad, ix = ox * stride + kx - pad;
              if (iy < 0 || iy >= h || ix < 0 || ix >= w) continue;
              acc += static_cast<double>(weight[((static_cast<std::size_t>(co) * cin + ci) * k + ky) * k + kx]) *
                     in[(static_cast<std::size_t>(ci) * h + iy) * w + ix];
            }
        out[(static_cast<std::size_t>(co) * out_h + oy) * out_w + ox] = static_cast<float>(acc);
      }
  return out;
}

double ssim_by_hand(std::span<const double> x, std::span<const double> y, double c1, double c2) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double vx = 0, vy = 0, cxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
    cxy += (x[i] - mx) * (y[i] - my);
  }
  vx /= n;
  vy /= n;
  cxy /= n;
  return (2 * mx * my + c1) * (2 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace oracle
