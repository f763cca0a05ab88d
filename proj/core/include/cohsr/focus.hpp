#pragma once

#include <span>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

/// Edge-sparsity focus score sqrt(std(g) / mean(g)) of the gradient magnitude
/// g, using central differences with replicated borders. Zero when the image
/// has no gradient at all. Requires at least 3x3 pixels.
double tamura_of_gradient(const Image& amplitude);

struct FocusSearch {
  double z_min_um = 200.0;
  double z_max_um = 400.0;
  double coarse_step_um = 10.0;
  double refine_tolerance_um = 0.5;

  void validate() const;
  std::vector<double> grid() const;
};

struct AutofocusResult {
  double z_um = 0.0;                ///< refined maximizer
  std::vector<double> coarse_z_um;  ///< coarse grid actually scanned
  std::vector<double> coarse_scores;
  std::size_t coarse_index = 0;     ///< argmax on the coarse grid
  int evaluations = 0;              ///< number of propagate+score calls
};

/// Back-propagates the hologram to every coarse grid height, scores the
/// amplitude with tamura_of_gradient, then golden-section refines around the
/// coarse maximizer (one grid step each side, clipped to the interval) until
/// the bracket is narrower than refine_tolerance_um. A grid of a single point
/// is returned as is.
AutofocusResult autofocus(const ComplexField& hologram, const FocusSearch& search);

/// Convenience overload for a measured intensity frame.
AutofocusResult autofocus(const Image& intensity, double pitch_um, double wavelength_um,
                          const FocusSearch& search);

struct BackgroundSubtraction {
  std::vector<Image> residuals;
  std::vector<Image> removed_components;  ///< unit-norm right singular vectors
  std::vector<double> singular_values;    ///< all of them, descending
};

/// Treats each of the K frames as a row of a K x P matrix and subtracts its
/// best rank-`rank` approximation. rank 0 returns the input unchanged.
BackgroundSubtraction svd_background_subtract(std::span<const Image> stack, int rank = 1);

}  // namespace cohsr
