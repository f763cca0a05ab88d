#include "cohsr/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cohsr/errors.hpp"

namespace cohsr {

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
  require(width > 0 && height > 0, "image dimensions must be positive");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  require(width > 0 && height > 0, "image dimensions must be positive");
  require(data_.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
          "image data length does not match its dimensions");
}

double Image::clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

double Image::mean() const {
  if (data_.empty()) return 0.0;
  return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

double Image::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Image::max() const { return *std::max_element(data_.begin(), data_.end()); }

namespace {

void validate_field(int width, int height, double pitch_um, double wavelength_um) {
  require(width >= 2 && height >= 2, "field must be at least 2x2");
  require(pitch_um > 0.0 && std::isfinite(pitch_um), "pitch_um must be positive");
  require(wavelength_um > 0.0 && std::isfinite(wavelength_um),
          "wavelength_um must be positive");
}

}  // namespace

ComplexField::ComplexField(int width, int height, double pitch_um, double wavelength_um,
                           double z_um)
    : width_(width), height_(height), pitch_um_(pitch_um), wavelength_um_(wavelength_um),
      z_um_(z_um) {
  validate_field(width, height, pitch_um, wavelength_um);
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), Complex{});
}

ComplexField::ComplexField(int width, int height, double pitch_um, double wavelength_um,
                           double z_um, std::vector<Complex> data)
    : width_(width), height_(height), pitch_um_(pitch_um), wavelength_um_(wavelength_um),
      z_um_(z_um), data_(std::move(data)) {
  validate_field(width, height, pitch_um, wavelength_um);
  require(data_.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
          "field data length does not match its dimensions");
}

ComplexField ComplexField::from_amplitude(const Image& amplitude, double pitch_um,
                                          double wavelength_um, double z_um) {
  std::vector<Complex> data(amplitude.size());
  std::transform(amplitude.pixels().begin(), amplitude.pixels().end(), data.begin(),
                 [](double a) { return Complex{a, 0.0}; });
  return ComplexField(amplitude.width(), amplitude.height(), pitch_um, wavelength_um, z_um,
                      std::move(data));
}

namespace {

template <typename Fn>
Image map_field(const ComplexField& f, Fn fn) {
  Image out(f.width(), f.height());
  auto src = f.data();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = fn(src[i]);
  return out;
}

}  // namespace

Image ComplexField::amplitude() const { return map_field(*this, [](Complex c) { return std::abs(c); }); }
Image ComplexField::phase() const { return map_field(*this, [](Complex c) { return std::arg(c); }); }
Image ComplexField::intensity() const { return map_field(*this, [](Complex c) { return std::norm(c); }); }
Image ComplexField::real() const { return map_field(*this, [](Complex c) { return c.real(); }); }
Image ComplexField::imag() const { return map_field(*this, [](Complex c) { return c.imag(); }); }

double ComplexField::energy() const {
  double e = 0.0;
  for (const auto& c : data_) e += std::norm(c);
  return e;
}

bool ComplexField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

ComplexField ComplexField::with_data(std::vector<Complex> data) const {
  return ComplexField(width_, height_, pitch_um_, wavelength_um_, z_um_, std::move(data));
}

void SystemParams::validate() const {
  require(wavelength_um > 0.0, "wavelength_um must be positive");
  require(bandwidth_um > 0.0, "bandwidth_um must be positive");
  require(bandwidth_um < wavelength_um, "bandwidth_um must be smaller than wavelength_um");
  require(refractive_index >= 1.0, "refractive_index must be >= 1");
  require(z1_um > 0.0 && z2_um > 0.0, "z1_um and z2_um must be positive");
  require(sensor_pitch_um > 0.0, "sensor_pitch_um must be positive");
}

double complex_correlation(std::span<const Complex> a, std::span<const Complex> b) {
  require(a.size() == b.size(), "complex_correlation: size mismatch");
  Complex inner{};
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inner += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(inner) / std::sqrt(na * nb);
}

double pearson_correlation(const Image& a, const Image& b) {
  require(a.same_shape(b), "pearson_correlation: shape mismatch");
  const double ma = a.mean();
  const double mb = b.mean();
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double da = pa[i] - ma;
    const double db = pb[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace cohsr
