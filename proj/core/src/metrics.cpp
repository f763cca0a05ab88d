#include "cohsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"
#include "cohsr/field_io.hpp"

namespace cohsr {

SsimConstants SsimConstants::for_label(const Image& label) {
  double range = label.max() - label.min();
  if (!(range > 0.0)) range = 1.0;
  return {std::pow(0.01 * range, 2), std::pow(0.03 * range, 2)};
}

double ssim(const Image& x, const Image& y, double c1, double c2) {
  require(x.same_shape(y), "ssim: shape mismatch");
  require(c1 > 0.0 && c2 > 0.0, "ssim: c1 and c2 must be positive");
  const auto n = static_cast<double>(x.size());
  const double mx = x.mean();
  const double my = y.mean();
  double vx = 0.0;
  double vy = 0.0;
  double cov = 0.0;
  auto px = x.pixels();
  auto py = y.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double dx = px[i] - mx;
    const double dy = py[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cov += dx * dy;
  }
  vx /= n;
  vy /= n;
  cov /= n;
  return ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
         ((mx * mx + my * my + c1) * (vx + vy + c2));
}

double ssim(const Image& x, const Image& y, const SsimConstants& c) { return ssim(x, y, c.c1, c.c2); }

double ssim_windowed(const Image& x, const Image& y, double c1, double c2) {
  require(x.same_shape(y), "ssim_windowed: shape mismatch");
  require(c1 > 0.0 && c2 > 0.0, "ssim_windowed: c1 and c2 must be positive");
  constexpr int kSize = 11;
  constexpr double kSigma = 1.5;
  if (x.width() < kSize || x.height() < kSize) return ssim(x, y, c1, c2);

  double kernel[kSize];
  double ksum = 0.0;
  for (int i = 0; i < kSize; ++i) {
    const double d = i - kSize / 2;
    kernel[i] = std::exp(-0.5 * d * d / (kSigma * kSigma));
    ksum += kernel[i];
  }
  for (double& k : kernel) k /= ksum;

  // Separable 'valid' filtering of x, y, x^2, y^2, xy.
  const int w = x.width();
  const int h = x.height();
  const int ow = w - kSize + 1;
  const int oh = h - kSize + 1;
  auto filter = [&](auto value) {
    Image rows(ow, h);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < ow; ++c) {
        double acc = 0.0;
        for (int i = 0; i < kSize; ++i) acc += kernel[i] * value(c + i, r);
        rows(c, r) = acc;
      }
    Image out(ow, oh);
    for (int r = 0; r < oh; ++r)
      for (int c = 0; c < ow; ++c) {
        double acc = 0.0;
        for (int i = 0; i < kSize; ++i) acc += kernel[i] * rows(c, r + i);
        out(c, r) = acc;
      }
    return out;
  };
  const Image mx = filter([&](int c, int r) { return x(c, r); });
  const Image my = filter([&](int c, int r) { return y(c, r); });
  const Image sxx = filter([&](int c, int r) { return x(c, r) * x(c, r); });
  const Image syy = filter([&](int c, int r) { return y(c, r) * y(c, r); });
  const Image sxy = filter([&](int c, int r) { return x(c, r) * y(c, r); });
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double ux = mx.pixels()[i];
    const double uy = my.pixels()[i];
    const double vx = sxx.pixels()[i] - ux * ux;
    const double vy = syy.pixels()[i] - uy * uy;
    const double cxy = sxy.pixels()[i] - ux * uy;
    total += ((2.0 * ux * uy + c1) * (2.0 * cxy + c2)) / ((ux * ux + uy * uy + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

double l1_mean(std::span<const Image> x, std::span<const Image> y) {
  require(!x.empty() && x.size() == y.size(), "l1_mean: channel count mismatch");
  for (std::size_t c = 0; c < x.size(); ++c)
    require(x[c].same_shape(x[0]) && y[c].same_shape(x[0]), "l1_mean: shape mismatch");
  const std::size_t pixels = x[0].size();
  double total = 0.0;
  for (std::size_t i = 0; i < pixels; ++i) {
    double per_pixel = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c)
      per_pixel += std::abs(x[c].pixels()[i] - y[c].pixels()[i]);
    total += per_pixel / static_cast<double>(x.size());
  }
  return total / static_cast<double>(pixels);
}

double total_variation(const Image& x) {
  double tv = 0.0;
  for (int r = 0; r < x.height(); ++r)
    for (int c = 0; c < x.width(); ++c) {
      if (r + 1 < x.height()) tv += std::abs(x(c, r + 1) - x(c, r));
      if (c + 1 < x.width()) tv += std::abs(x(c + 1, r) - x(c, r));
    }
  return tv;
}

double psnr(const Image& x, const Image& y, double peak) {
  require(x.same_shape(y), "psnr: shape mismatch");
  require(peak > 0.0, "psnr: peak must be positive");
  double mse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x.pixels()[i] - y.pixels()[i];
    mse += d * d;
  }
  mse /= static_cast<double>(x.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

std::string RadialSpectrum::to_csv() const {
  std::string out = "freq_cycles_per_um,mean_log_magnitude\n";
  for (std::size_t i = 0; i < bin_centers.size(); ++i)
    out += format_number(bin_centers[i]) + "," + format_number(mean_log_magnitude[i]) + "\n";
  return out;
}

RadialSpectrum radial_spectrum(const Image& x, int n_bins, double pitch_um) {
  require(n_bins >= 1, "radial_spectrum: n_bins must be positive");
  require(pitch_um > 0.0, "radial_spectrum: pitch must be positive");
  const int w = x.width();
  const int h = x.height();
  const auto spectrum = fft2(x);
  // Largest |f| on the grid, reached at the most negative index on each axis.
  const double fx_max = std::abs(fft_frequency(w / 2, w, pitch_um));
  const double fy_max = std::abs(fft_frequency(h / 2, h, pitch_um));
  const double r_max = std::hypot(fx_max, fy_max);
  const double bin_width = r_max / n_bins;
  std::vector<double> sum_r(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> sum_v(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> count(static_cast<std::size_t>(n_bins), 0.0);
  for (int yy = 0; yy < h; ++yy) {
    const double fy = fft_frequency(yy, h, pitch_um);
    for (int xx = 0; xx < w; ++xx) {
      const double fx = fft_frequency(xx, w, pitch_um);
      const double r = std::hypot(fx, fy);
      const auto b = std::min(static_cast<std::size_t>(r / bin_width), static_cast<std::size_t>(n_bins - 1));
      sum_r[b] += r;
      sum_v[b] += std::log10(1.0 + std::abs(spectrum[static_cast<std::size_t>(yy) * w + xx]));
      count[b] += 1.0;
    }
  }
  RadialSpectrum out;
  for (std::size_t b = 0; b < count.size(); ++b) {
    if (count[b] == 0.0) continue;
    out.bin_centers.push_back(sum_r[b] / count[b]);
    out.mean_log_magnitude.push_back(sum_v[b] / count[b]);
  }
  return out;
}

void write_radial_spectrum(const std::filesystem::path& path, const RadialSpectrum& spectrum) {
  write_text(path, spectrum.to_csv());
}

}  // namespace cohsr
