#include "cohsr/interpolation.hpp"

#include <cmath>

#include "cohsr/errors.hpp"

namespace cohsr {

double cubic_kernel(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

double sample_bilinear(const Image& image, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto x0 = static_cast<int>(fx);
  const auto y0 = static_cast<int>(fy);
  const double tx = x - fx;
  const double ty = y - fy;
  // Exact integer positions must not touch neighbours (keeps integer
  // translations bit-exact at the far border).
  const double v00 = image.clamped(x0, y0);
  const double v10 = tx != 0.0 ? image.clamped(x0 + 1, y0) : 0.0;
  const double v01 = ty != 0.0 ? image.clamped(x0, y0 + 1) : 0.0;
  const double v11 = tx != 0.0 && ty != 0.0 ? image.clamped(x0 + 1, y0 + 1) : 0.0;
  return (1.0 - ty) * ((1.0 - tx) * v00 + tx * v10) + ty * ((1.0 - tx) * v01 + tx * v11);
}

double sample_bicubic(const Image& image, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto x0 = static_cast<int>(fx);
  const auto y0 = static_cast<int>(fy);
  double wx[4];
  double wy[4];
  for (int i = 0; i < 4; ++i) {
    wx[i] = cubic_kernel(x - (fx + i - 1));
    wy[i] = cubic_kernel(y - (fy + i - 1));
  }
  double acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    double row = 0.0;
    for (int i = 0; i < 4; ++i) row += wx[i] * image.clamped(x0 + i - 1, y0 + j - 1);
    acc += wy[j] * row;
  }
  return acc;
}

Image upsample_bicubic(const Image& image, int factor) {
  require(factor >= 1, "upsample_bicubic: factor must be >= 1");
  if (factor == 1) return image;
  const int w = image.width() * factor;
  const int h = image.height() * factor;
  // Separable: rows first, then columns.
  Image rows(w, image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < w; ++x) {
      const double sx = (x + 0.5) / factor - 0.5;
      const double fx = std::floor(sx);
      double acc = 0.0;
      for (int i = -1; i <= 2; ++i)
        acc += cubic_kernel(sx - (fx + i)) * image.clamped(static_cast<int>(fx) + i, y);
      rows(x, y) = acc;
    }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    const double sy = (y + 0.5) / factor - 0.5;
    const double fy = std::floor(sy);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = -1; j <= 2; ++j)
        acc += cubic_kernel(sy - (fy + j)) * rows.clamped(x, static_cast<int>(fy) + j);
      out(x, y) = acc;
    }
  }
  return out;
}

}  // namespace cohsr
