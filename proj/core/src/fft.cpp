#include "cohsr/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "cohsr/errors.hpp"

namespace cohsr {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int width, int height, FftDirection direction) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(width, height, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    auto* scratch = fftw_alloc_complex(n);
    const int sign = direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft_2d(height, width, scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw Error("fftw: failed to create plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, FftDirection>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft2(std::span<Complex> data, int width, int height, FftDirection direction) {
  require(width > 0 && height > 0, "fft2: dimensions must be positive");
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  require(data.size() == n, "fft2: data length does not match dimensions");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_cache().get(width, height, direction), ptr, ptr);
  if (direction == FftDirection::inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= scale;
  }
}

std::vector<Complex> fft2(const Image& image) {
  std::vector<Complex> spectrum(image.size());
  auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) spectrum[i] = Complex{px[i], 0.0};
  fft2(spectrum, image.width(), image.height(), FftDirection::forward);
  return spectrum;
}

Image ifft2_real(std::vector<Complex> spectrum, int width, int height) {
  fft2(spectrum, width, height, FftDirection::inverse);
  Image out(width, height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = spectrum[i].real();
  return out;
}

double fft_frequency(int index, int n, double spacing) {
  const int k = index < (n + 1) / 2 ? index : index - n;
  return static_cast<double>(k) / (static_cast<double>(n) * spacing);
}

Image fourier_shift(const Image& image, double dx, double dy) {
  const int w = image.width();
  const int h = image.height();
  auto spectrum = fft2(image);
  for (int y = 0; y < h; ++y) {
    const double fy = fft_frequency(y, h);
    for (int x = 0; x < w; ++x) {
      const double fx = fft_frequency(x, w);
      const double arg = -2.0 * std::numbers::pi * (fx * dx + fy * dy);
      spectrum[static_cast<std::size_t>(y) * w + x] *= Complex{std::cos(arg), std::sin(arg)};
    }
  }
  return ifft2_real(std::move(spectrum), w, h);
}

}  // namespace cohsr
