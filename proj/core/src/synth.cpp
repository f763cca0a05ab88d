#include "cohsr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"
#include "cohsr/propagation.hpp"

namespace cohsr {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Feature masks: `mask` in [0, 1] drives the amplitude dip, `sign` in
// [-1, 1] the phase.
struct FeatureMaps {
  Image mask;
  Image phase;
};

void paint_disks(FeatureMaps& maps, Rng& rng) {
  const int w = maps.mask.width(), h = maps.mask.height();
  const int count = std::max(4, w * h / 1500);
  for (int i = 0; i < count; ++i) {
    const double cx = uniform(rng, 0, w), cy = uniform(rng, 0, h);
    const double r = uniform(rng, 3.0, 12.0);
    const double strength = uniform(rng, 0.3, 1.0);
    const double phase = uniform(rng, -1.0, 1.0);
    for (int y = std::max(0, int(cy - r)); y <= std::min(h - 1, int(cy + r) + 1); ++y)
      for (int x = std::max(0, int(cx - r)); x <= std::min(w - 1, int(cx + r) + 1); ++x)
        if (std::hypot(x - cx, y - cy) <= r) {
          maps.mask(x, y) = strength;
          maps.phase(x, y) = phase;
        }
  }
}

void paint_segment(FeatureMaps& maps, double x0, double y0, double x1, double y1, double half_width,
                   double strength, double phase) {
  const int w = maps.mask.width(), h = maps.mask.height();
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = std::max(dx * dx + dy * dy, 1e-12);
  const int xa = std::max(0, int(std::min(x0, x1) - half_width - 1));
  const int xb = std::min(w - 1, int(std::max(x0, x1) + half_width + 1));
  const int ya = std::max(0, int(std::min(y0, y1) - half_width - 1));
  const int yb = std::min(h - 1, int(std::max(y0, y1) + half_width + 1));
  for (int y = ya; y <= yb; ++y)
    for (int x = xa; x <= xb; ++x) {
      const double t = std::clamp(((x - x0) * dx + (y - y0) * dy) / len2, 0.0, 1.0);
      if (std::hypot(x - (x0 + t * dx), y - (y0 + t * dy)) <= half_width) {
        maps.mask(x, y) = strength;
        maps.phase(x, y) = phase;
      }
    }
}

void paint_bars(FeatureMaps& maps, Rng& rng) {
  const int w = maps.mask.width(), h = maps.mask.height();
  const int count = std::max(3, w * h / 4000);
  for (int i = 0; i < count; ++i) {
    const double cx = uniform(rng, 0, w), cy = uniform(rng, 0, h);
    const double angle = uniform(rng, 0, std::numbers::pi);
    const double len = uniform(rng, 15.0, 50.0);
    const double half_width = uniform(rng, 1.5, 5.0);
    const double ux = std::cos(angle) * len / 2, uy = std::sin(angle) * len / 2;
    paint_segment(maps, cx - ux, cy - uy, cx + ux, cy + uy, half_width, uniform(rng, 0.3, 1.0),
                  uniform(rng, -1.0, 1.0));
  }
}

void paint_strokes(FeatureMaps& maps, Rng& rng) {
  const int w = maps.mask.width(), h = maps.mask.height();
  const int count = std::max(3, w * h / 5000);
  for (int i = 0; i < count; ++i) {
    double x = uniform(rng, 0, w), y = uniform(rng, 0, h);
    double heading = uniform(rng, 0, 2 * std::numbers::pi);
    const double strength = uniform(rng, 0.3, 1.0);
    const double phase = uniform(rng, -1.0, 1.0);
    const int segments = 3 + static_cast<int>(uniform(rng, 0, 4));
    for (int s = 0; s < segments; ++s) {
      heading += uniform(rng, -1.2, 1.2);
      const double len = uniform(rng, 6.0, 14.0);
      const double nx = x + std::cos(heading) * len, ny = y + std::sin(heading) * len;
      paint_segment(maps, x, y, nx, ny, 1.2, strength, phase);
      x = nx;
      y = ny;
    }
  }
}

// Gaussian-filtered white noise scaled to [-1, 1].
Image smooth_noise(int w, int h, double correlation_px, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Image noise(w, h);
  for (double& v : noise.pixels()) v = normal(rng);
  auto spectrum = fft2(noise);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double f2 = std::pow(fft_frequency(x, w), 2) + std::pow(fft_frequency(y, h), 2);
      spectrum[static_cast<std::size_t>(y) * w + x] *=
          std::exp(-2.0 * std::pow(std::numbers::pi * correlation_px, 2) * f2);
    }
  Image out = ifft2_real(std::move(spectrum), w, h);
  const double lo = out.min(), hi = out.max();
  const double span = std::max(hi - lo, 1e-300);
  for (double& v : out.pixels()) v = 2.0 * (v - lo) / span - 1.0;
  return out;
}

void paint_smooth(FeatureMaps& maps, Rng& rng) {
  const int w = maps.mask.width(), h = maps.mask.height();
  Image a = smooth_noise(w, h, 4.0, rng);
  for (double& v : a.pixels()) v = 0.5 * (v + 1.0);
  maps.mask = std::move(a);
  maps.phase = smooth_noise(w, h, 4.0, rng);
}

// Raised-cosine radial taper: 1 below 0.5x Nyquist, 0 from 0.8x Nyquist.
double taper(double f_cycles_per_px) {
  constexpr double pass = 0.25, stop = 0.4;
  if (f_cycles_per_px <= pass) return 1.0;
  if (f_cycles_per_px >= stop) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * (f_cycles_per_px - pass) / (stop - pass)));
}

}  // namespace

PhantomKind parse_phantom_kind(const std::string& name) {
  if (name == "disks") return PhantomKind::disks;
  if (name == "bars") return PhantomKind::bars;
  if (name == "strokes") return PhantomKind::strokes;
  if (name == "smooth") return PhantomKind::smooth;
  throw InvalidParameter("unknown phantom kind: " + name);
}

std::string to_string(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::disks: return "disks";
    case PhantomKind::bars: return "bars";
    case PhantomKind::strokes: return "strokes";
    case PhantomKind::smooth: return "smooth";
  }
  return "?";
}

void PhantomSpec::validate() const {
  require(width >= 2 && height >= 2, "phantom: size must be at least 2x2");
  require(pitch_um > 0 && wavelength_um > 0, "phantom: pitch and wavelength must be positive");
  require(amplitude_min > 0 && amplitude_min <= amplitude_max && amplitude_max <= 1.0,
          "phantom: amplitude range must satisfy 0 < min <= max <= 1");
  require(phase_max_rad >= 0 && phase_max_rad <= std::numbers::pi,
          "phantom: phase range must lie in [0, pi]");
}

ComplexField generate_phantom(const PhantomSpec& spec) {
  spec.validate();
  const int w = spec.width, h = spec.height;
  Rng rng(spec.seed);
  FeatureMaps maps{Image(w, h), Image(w, h)};
  switch (spec.kind) {
    case PhantomKind::disks: paint_disks(maps, rng); break;
    case PhantomKind::bars: paint_bars(maps, rng); break;
    case PhantomKind::strokes: paint_strokes(maps, rng); break;
    case PhantomKind::smooth: paint_smooth(maps, rng); break;
  }

  ComplexField field(w, h, spec.pitch_um, spec.wavelength_um, 0.0);
  auto data = field.data();
  const auto mask = maps.mask.pixels();
  const auto phase = maps.phase.pixels();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double a = spec.amplitude_max - (spec.amplitude_max - spec.amplitude_min) * mask[i];
    data[i] = std::polar(a, spec.phase_max_rad * phase[i]);
  }

  fft2(data, w, h, FftDirection::forward);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double f = std::hypot(fft_frequency(x, w), fft_frequency(y, h));
      data[static_cast<std::size_t>(y) * w + x] *= taper(f);
    }
  fft2(data, w, h, FftDirection::inverse);

  double peak = 0.0;
  for (const auto& v : data) peak = std::max(peak, std::abs(v));
  if (peak > 1.0)
    for (auto& v : data) v /= peak;
  return field;
}

Image simulate_inline_hologram(const ComplexField& object, double z2_um, double noise_sigma,
                               std::uint64_t seed) {
  require(z2_um > 0, "simulate_inline_hologram: z2 must be positive");
  require(noise_sigma >= 0, "simulate_inline_hologram: noise_sigma must be non-negative");
  Image intensity = propagate(object, z2_um).intensity();
  if (noise_sigma > 0) {
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, noise_sigma * intensity.mean());
    for (double& v : intensity.pixels()) v = std::max(0.0, v + normal(rng));
  }
  return intensity;
}

std::vector<double> default_heights(int count, double first_um, double spacing_um) {
  require(count >= 1 && first_um > 0 && spacing_um > 0, "default_heights: invalid schedule");
  std::vector<double> heights;
  for (int k = 0; k < count; ++k) heights.push_back(first_um + k * spacing_um);
  return heights;
}

HologramStack simulate_stack(const ComplexField& object, const std::vector<double>& heights_um,
                             double noise_sigma, std::uint64_t seed) {
  HologramStack stack;
  stack.pitch_um = object.pitch_um();
  stack.wavelength_um = object.wavelength_um();
  stack.heights_um = heights_um;
  std::uint64_t state = seed;
  for (double z : heights_um)
    stack.frames.push_back(simulate_inline_hologram(object, z, noise_sigma, splitmix64(state)));
  stack.validate();
  return stack;
}

PixelLimitedFrames simulate_pixel_limited(const Image& intensity, double pitch_um, int factor,
                                          const ShiftTable& shifts) {
  require(factor >= 1, "simulate_pixel_limited: factor must be >= 1");
  require(pitch_um > 0, "simulate_pixel_limited: pitch must be positive");
  shifts.validate();
  PixelLimitedFrames out{{}, pitch_um * factor};
  for (const auto& e : shifts.entries())
    out.frames.push_back(decimate(intensity, factor, e.dx_px * factor, e.dy_px * factor));
  return out;
}

ComplexField simulate_na_limited(const ComplexField& field, double na_cutoff, double wavelength_um) {
  require(na_cutoff > 0 && na_cutoff <= 1, "simulate_na_limited: NA must lie in (0, 1]");
  require(wavelength_um > 0, "simulate_na_limited: wavelength must be positive");
  const double cutoff = na_cutoff / wavelength_um;
  const int w = field.width(), h = field.height();
  std::vector<Complex> data(field.data().begin(), field.data().end());
  fft2(data, w, h, FftDirection::forward);
  for (int y = 0; y < h; ++y) {
    const double fy = fft_frequency(y, h, field.pitch_um());
    for (int x = 0; x < w; ++x) {
      const double fx = fft_frequency(x, w, field.pitch_um());
      if (std::hypot(fx, fy) > cutoff) data[static_cast<std::size_t>(y) * w + x] = 0.0;
    }
  }
  fft2(data, w, h, FftDirection::inverse);
  return field.with_data(std::move(data));
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace cohsr
