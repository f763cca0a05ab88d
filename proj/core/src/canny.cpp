#include <algorithm>
#include <cmath>
#include <vector>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"
#include "cohsr/interpolation.hpp"
#include "cohsr/registration.hpp"

namespace cohsr {

namespace {

Image gaussian_blur(const Image& image, double sigma) {
  if (sigma <= 0.0) return image;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * i * i / (sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& v : kernel) v /= sum;
  Image tmp(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[static_cast<std::size_t>(i + radius)] * image.clamped(x + i, y);
      tmp(x, y) = acc;
    }
  Image out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[static_cast<std::size_t>(i + radius)] * tmp.clamped(x, y + i);
      out(x, y) = acc;
    }
  return out;
}

struct Gradient {
  Image magnitude;
  Image gx;
  Image gy;
};

Gradient sobel(const Image& s) {
  Gradient g{Image(s.width(), s.height()), Image(s.width(), s.height()),
             Image(s.width(), s.height())};
  for (int y = 0; y < s.height(); ++y)
    for (int x = 0; x < s.width(); ++x) {
      const double gx = (s.clamped(x + 1, y - 1) + 2.0 * s.clamped(x + 1, y) + s.clamped(x + 1, y + 1)) -
                        (s.clamped(x - 1, y - 1) + 2.0 * s.clamped(x - 1, y) + s.clamped(x - 1, y + 1));
      const double gy = (s.clamped(x - 1, y + 1) + 2.0 * s.clamped(x, y + 1) + s.clamped(x + 1, y + 1)) -
                        (s.clamped(x - 1, y - 1) + 2.0 * s.clamped(x, y - 1) + s.clamped(x + 1, y - 1));
      g.gx(x, y) = gx;
      g.gy(x, y) = gy;
      g.magnitude(x, y) = std::hypot(gx, gy);
    }
  return g;
}

CannyEdges canny_with(const Gradient& g, double low, double high) {
  const int w = g.magnitude.width();
  const int h = g.magnitude.height();
  CannyEdges out{Image(w, h), Image(w, h), Image(w, h), g.magnitude.max()};
  Image suppressed(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double m = g.magnitude(x, y);
      if (m == 0.0) continue;
      // Quantize the gradient direction to 0, 45, 90 or 135 degrees.
      double angle = std::atan2(g.gy(x, y), g.gx(x, y)) * 180.0 / 3.14159265358979323846;
      if (angle < 0.0) angle += 180.0;
      int dx = 1;
      int dy = 0;
      if (angle >= 22.5 && angle < 67.5) {
        dx = 1;
        dy = 1;
      } else if (angle >= 67.5 && angle < 112.5) {
        dx = 0;
        dy = 1;
      } else if (angle >= 112.5 && angle < 157.5) {
        dx = -1;
        dy = 1;
      }
      const double a = g.magnitude.clamped(x + dx, y + dy);
      const double b = g.magnitude.clamped(x - dx, y - dy);
      if (m >= a && m > b) suppressed(x, y) = m;
    }

  std::vector<int> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double m = suppressed(x, y);
      if (m >= high && m > 0.0) {
        out.strong(x, y) = 1.0;
        out.edges(x, y) = 1.0;
        stack.push_back(y * w + x);
      } else if (m >= low && m > 0.0) {
        out.weak(x, y) = 1.0;
      }
    }
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const int x = idx % w;
    const int y = idx / w;
    for (int j = -1; j <= 1; ++j)
      for (int i = -1; i <= 1; ++i) {
        const int xx = x + i;
        const int yy = y + j;
        if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
        if (out.weak(xx, yy) != 0.0 && out.edges(xx, yy) == 0.0) {
          out.edges(xx, yy) = 1.0;
          stack.push_back(yy * w + xx);
        }
      }
  }
  return out;
}

}  // namespace

CannyEdges canny(const Image& image, double low, double high, double sigma) {
  require(low >= 0.0 && high >= low, "canny: thresholds must satisfy 0 <= low <= high");
  return canny_with(sobel(gaussian_blur(image, sigma)), low, high);
}

CannyEdges canny_relative(const Image& image, double low_fraction, double high_fraction,
                          double sigma) {
  require(low_fraction >= 0.0 && high_fraction >= low_fraction && high_fraction <= 1.0,
          "canny: threshold fractions must satisfy 0 <= low <= high <= 1");
  const Gradient g = sobel(gaussian_blur(image, sigma));
  const double peak = g.magnitude.max();
  return canny_with(g, low_fraction * peak, high_fraction * peak);
}

FovMatch match_fov(const Image& lowres_phase, const Image& stitched_phase, int upsample_factor,
                   double canny_low, double canny_high) {
  require(upsample_factor >= 1, "match_fov: upsample factor must be >= 1");
  const Image query = upsample_bicubic(lowres_phase, upsample_factor);
  const int qw = query.width();
  const int qh = query.height();
  const int sw = stitched_phase.width();
  const int sh = stitched_phase.height();
  require(sw >= qw && sh >= qh, "match_fov: stitched image is smaller than the upsampled query");

  const Image eq = canny_relative(query, canny_low, canny_high).edges;
  const Image es = canny_relative(stitched_phase, canny_low, canny_high).edges;
  double query_edges = 0.0;
  for (double v : eq.pixels()) query_edges += v;
  double stitched_edges = 0.0;
  for (double v : es.pixels()) stitched_edges += v;
  if (query_edges == 0.0 || stitched_edges == 0.0)
    throw DegenerateInput("match_fov: no edges found");

  // Overlap counts for every offset via FFT cross-correlation; the query is
  // zero-padded to the stitched size so valid offsets never wrap.
  Image padded(sw, sh);
  for (int y = 0; y < qh; ++y)
    for (int x = 0; x < qw; ++x) padded(x, y) = eq(x, y);
  auto fq = fft2(padded);
  auto fs = fft2(es);
  for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= std::conj(fq[i]);
  const Image overlap = ifft2_real(std::move(fs), sw, sh);

  // Integral image of stitched edge counts for the per-window norm.
  std::vector<double> integral(static_cast<std::size_t>(sw + 1) * (sh + 1), 0.0);
  for (int y = 0; y < sh; ++y)
    for (int x = 0; x < sw; ++x)
      integral[static_cast<std::size_t>(y + 1) * (sw + 1) + x + 1] =
          es(x, y) + integral[static_cast<std::size_t>(y) * (sw + 1) + x + 1] +
          integral[static_cast<std::size_t>(y + 1) * (sw + 1) + x] -
          integral[static_cast<std::size_t>(y) * (sw + 1) + x];
  auto window_sum = [&](int x, int y) {
    auto at = [&](int xx, int yy) { return integral[static_cast<std::size_t>(yy) * (sw + 1) + xx]; };
    return at(x + qw, y + qh) - at(x, y + qh) - at(x + qw, y) + at(x, y);
  };

  FovMatch best{0, 0, qw, qh, -1.0};
  for (int y = 0; y <= sh - qh; ++y)
    for (int x = 0; x <= sw - qw; ++x) {
      const double count = std::round(overlap(x, y));
      const double window = window_sum(x, y);
      if (window <= 0.0) continue;
      const double score = count / std::sqrt(query_edges * window);
      if (score > best.score) best = {x, y, qw, qh, score};
    }
  return best;
}

}  // namespace cohsr
