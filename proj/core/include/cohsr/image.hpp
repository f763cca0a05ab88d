#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cohsr {

using Complex = std::complex<double>;

/// Row-major real image. Pixel (x, y) is column x of row y.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0);
  Image(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(int x, int y) { return data_[index(x, y)]; }
  double operator()(int x, int y) const { return data_[index(x, y)]; }

  /// Border-replicated read.
  double clamped(int x, int y) const;

  std::span<double> pixels() noexcept { return data_; }
  std::span<const double> pixels() const noexcept { return data_; }
  std::vector<double>& storage() noexcept { return data_; }

  double mean() const;
  double min() const;
  double max() const;
  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// 2-D complex amplitude sampled on a regular grid, with its physical
/// sampling metadata. Lengths are in micrometres.
class ComplexField {
 public:
  ComplexField(int width, int height, double pitch_um, double wavelength_um,
               double z_um = 0.0);
  ComplexField(int width, int height, double pitch_um, double wavelength_um,
               double z_um, std::vector<Complex> data);

  /// Zero-phase field whose modulus is `amplitude`.
  static ComplexField from_amplitude(const Image& amplitude, double pitch_um,
                                     double wavelength_um, double z_um = 0.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double pitch_um() const noexcept { return pitch_um_; }
  double wavelength_um() const noexcept { return wavelength_um_; }
  double z_um() const noexcept { return z_um_; }
  void set_z_um(double z_um) noexcept { z_um_ = z_um; }

  std::size_t size() const noexcept { return data_.size(); }
  Complex& operator()(int x, int y) { return data_[index(x, y)]; }
  const Complex& operator()(int x, int y) const { return data_[index(x, y)]; }
  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Image amplitude() const;
  Image phase() const;
  Image intensity() const;
  Image real() const;
  Image imag() const;

  double energy() const;
  bool all_finite() const;

  /// Same metadata and shape, different samples.
  ComplexField with_data(std::vector<Complex> data) const;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  double pitch_um_;
  double wavelength_um_;
  double z_um_;
  std::vector<Complex> data_;
};

/// Illumination and geometry of an on-chip holographic set-up.
struct SystemParams {
  double wavelength_um = 0.55;
  double bandwidth_um = 0.002;
  double refractive_index = 1.0;
  double z1_um = 5.0e4;
  double z2_um = 300.0;
  double sensor_pitch_um = 1.12;

  void validate() const;
};

/// Normalized complex inner-product magnitude |<a, b>| / (|a| |b|).
double complex_correlation(std::span<const Complex> a, std::span<const Complex> b);

/// Pearson correlation of two equally sized images.
double pearson_correlation(const Image& a, const Image& b);

}  // namespace cohsr
