#include "cohsr/phase_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"

namespace cohsr {

namespace {

using CMatrix = std::vector<Complex>;

// Rows of exp(+i 2 pi k s / n) for s in the upsampled window.
CMatrix dft_kernel(int n, double start, double step, int count) {
  CMatrix kernel(static_cast<std::size_t>(count) * n);
  for (int m = 0; m < count; ++m) {
    const double s = start + step * m;
    for (int k = 0; k < n; ++k) {
      const double arg = 2.0 * std::numbers::pi * fft_frequency(k, n) * s;
      kernel[static_cast<std::size_t>(m) * n + k] = Complex{std::cos(arg), std::sin(arg)};
    }
  }
  return kernel;
}

double signed_peak(int index, int n) { return index > n / 2 ? index - n : index; }

}  // namespace

ShiftEstimate estimate_translation(const Image& reference, const Image& target, int upsample) {
  require(reference.same_shape(target), "estimate_translation: shape mismatch");
  require(upsample >= 1, "estimate_translation: upsample must be >= 1");
  const int w = reference.width();
  const int h = reference.height();

  Image ref0 = reference;
  Image tgt0 = target;
  const double mr = ref0.mean();
  const double mt = tgt0.mean();
  for (double& v : ref0.pixels()) v -= mr;
  for (double& v : tgt0.pixels()) v -= mt;
  auto f_ref = fft2(ref0);
  auto f_tgt = fft2(tgt0);
  std::vector<Complex> cross(f_ref.size());
  double e_ref = 0.0;
  double e_tgt = 0.0;
  for (std::size_t i = 0; i < cross.size(); ++i) {
    cross[i] = f_tgt[i] * std::conj(f_ref[i]);
    e_ref += std::norm(f_ref[i]);
    e_tgt += std::norm(f_tgt[i]);
  }
  if (e_ref == 0.0 || e_tgt == 0.0)
    throw DegenerateInput("estimate_translation: image has no variation");
  // Whitened cross-power spectrum. Bins far below the strongest are only
  // scaled down, so interpolation noise there does not swamp the peak.
  double strongest = 0.0;
  for (const auto& c : cross) strongest = std::max(strongest, std::abs(c));
  const double floor = 1e-2 * strongest;
  for (auto& c : cross) c /= std::max(std::abs(c), floor);

  std::vector<Complex> corr = cross;
  fft2(corr, w, h, FftDirection::inverse);
  std::size_t best = 0;
  for (std::size_t i = 1; i < corr.size(); ++i)
    if (corr[i].real() > corr[best].real()) best = i;
  double dx = signed_peak(static_cast<int>(best % static_cast<std::size_t>(w)), w);
  double dy = signed_peak(static_cast<int>(best / static_cast<std::size_t>(w)), h);
  double peak_value = corr[best].real() * static_cast<double>(corr.size());

  if (upsample > 1) {
    const int half = static_cast<int>(std::ceil(1.5 * upsample));
    const int count = 2 * half + 1;
    const double step = 1.0 / upsample;
    const CMatrix kx = dft_kernel(w, dx - half * step, step, count);
    const CMatrix ky = dft_kernel(h, dy - half * step, step, count);
    // tmp = cross * kx^T  (h x count)
    CMatrix tmp(static_cast<std::size_t>(h) * count);
    for (int y = 0; y < h; ++y) {
      const Complex* row = &cross[static_cast<std::size_t>(y) * w];
      for (int m = 0; m < count; ++m) {
        const Complex* kr = &kx[static_cast<std::size_t>(m) * w];
        Complex acc{};
        for (int k = 0; k < w; ++k) acc += row[k] * kr[k];
        tmp[static_cast<std::size_t>(y) * count + m] = acc;
      }
    }
    double best_val = -std::numeric_limits<double>::infinity();
    int best_mx = half;
    int best_my = half;
    for (int my = 0; my < count; ++my) {
      const Complex* kr = &ky[static_cast<std::size_t>(my) * h];
      for (int mx = 0; mx < count; ++mx) {
        Complex acc{};
        for (int y = 0; y < h; ++y) acc += kr[y] * tmp[static_cast<std::size_t>(y) * count + mx];
        if (acc.real() > best_val) {
          best_val = acc.real();
          best_mx = mx;
          best_my = my;
        }
      }
    }
    dx += (best_mx - half) * step;
    dy += (best_my - half) * step;
    peak_value = best_val;
  }
  ShiftEstimate out;
  out.dx = dx;
  out.dy = dy;
  out.peak = peak_value / static_cast<double>(cross.size());
  return out;
}

}  // namespace cohsr
