#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

struct SsimConstants {
  double c1;
  double c2;

  /// (0.01 L)^2 and (0.03 L)^2 with L the dynamic range of `label`
  /// (L = 1 for a constant label).
  static SsimConstants for_label(const Image& label);
};

/// SSIM from whole-image means, variances and covariance.
double ssim(const Image& x, const Image& y, double c1, double c2);
double ssim(const Image& x, const Image& y, const SsimConstants& c);

/// Mean of local SSIM values under an 11x11 Gaussian window (sigma 1.5) over
/// every fully contained window position. Images smaller than the window fall
/// back to the global form.
double ssim_windowed(const Image& x, const Image& y, double c1, double c2);

/// Mean over pixels of the mean over channels of |x - y|.
double l1_mean(std::span<const Image> x, std::span<const Image> y);

/// Anisotropic total variation, sum of |x[i+1,j] - x[i,j]| + |x[i,j+1] - x[i,j]|
/// over valid index pairs (no wrap-around).
double total_variation(const Image& x);

/// 10 log10(peak^2 / MSE); +infinity when the images are identical.
double psnr(const Image& x, const Image& y, double peak);

struct RadialSpectrum {
  std::vector<double> bin_centers;        ///< mean radial frequency in the bin, cycles/um
  std::vector<double> mean_log_magnitude; ///< mean of log10(1 + |F|) in the bin

  std::string to_csv() const;
};

/// Radially averaged log-magnitude spectrum. Radii run over physical
/// frequency sqrt(fx^2 + fy^2) from 0 to the corner frequency, split into
/// n_bins equal-width annuli; bin 0 contains DC. Empty annuli are omitted.
RadialSpectrum radial_spectrum(const Image& x, int n_bins, double pitch_um = 1.0);

void write_radial_spectrum(const std::filesystem::path& path, const RadialSpectrum& spectrum);

}  // namespace cohsr
