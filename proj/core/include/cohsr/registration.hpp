#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

/// 2x3 matrix [a b tx; c d ty] mapping output (fixed-frame) pixel coordinates
/// to input (moving-frame) coordinates. Pixel centres sit on integers.
class AffineTransform {
 public:
  AffineTransform();  // identity
  explicit AffineTransform(const std::array<double, 6>& m);

  /// Rotation by angle_deg about `centre` followed by a translation:
  /// p -> R(angle)(p - centre) + centre + (tx, ty).
  static AffineTransform rigid(double angle_deg, double tx, double ty, double centre_x,
                               double centre_y);
  static AffineTransform translation(double tx, double ty);

  std::array<double, 2> apply(double x, double y) const;
  AffineTransform inverse() const;
  double determinant() const;
  double rotation_deg() const;
  double tx() const { return m_[2]; }
  double ty() const { return m_[5]; }
  const std::array<double, 6>& matrix() const { return m_; }

  std::string to_text() const;
  static AffineTransform from_text(const std::string& text);

 private:
  std::array<double, 6> m_;
};

/// outer(inner(p)).
AffineTransform compose(const AffineTransform& outer, const AffineTransform& inner);

AffineTransform read_affine(const std::filesystem::path& path);
void write_affine(const std::filesystem::path& path, const AffineTransform& t);

enum class Interpolation { bilinear, bicubic };

/// out(p) = image(t(p)), border-replicated.
Image warp_affine(const Image& image, const AffineTransform& t,
                  Interpolation interpolation = Interpolation::bilinear);

/// Bilinear warp followed by removal of border_px from every side.
Image apply_affine_and_crop(const Image& image, const AffineTransform& t, int border_px = 50);

Image crop(const Image& image, int x, int y, int width, int height);

struct RegistrationOptions {
  double max_rotation_deg = 5.0;
  double coarse_rotation_step_deg = 0.5;
  double rotation_tolerance_deg = 0.01;
};

/// Rigid registration of two phase images. Translation comes from phase
/// correlation; rotation is found by maximizing the normalized
/// cross-correlation over +-max_rotation_deg (coarse scan, then golden-section
/// refinement), re-estimating the translation at every trial angle. The
/// result maps fixed-frame coordinates into the moving image, so
/// warp_affine(moving, t) lines up with `fixed`.
AffineTransform register_affine(const Image& moving, const Image& fixed,
                                const RegistrationOptions& options = {});

/// Normalized cross-correlation over the pixels of `a` and `b` that lie at
/// least `margin` px from every edge.
double normalized_cross_correlation(const Image& a, const Image& b, int margin = 0);

struct CannyEdges {
  Image edges;  ///< hysteresis result, 0/1
  Image strong; ///< above the high threshold after non-maximum suppression
  Image weak;   ///< between the thresholds after non-maximum suppression
  double max_gradient = 0.0;
};

/// Canny detector: Gaussian smoothing, Sobel gradient, non-maximum
/// suppression, double threshold and 8-connected hysteresis. Thresholds are
/// absolute gradient magnitudes.
CannyEdges canny(const Image& image, double low, double high, double sigma = 1.4);

/// Thresholds given as fractions of the maximum gradient magnitude.
CannyEdges canny_relative(const Image& image, double low_fraction = 0.1,
                          double high_fraction = 0.3, double sigma = 1.4);

struct FovMatch {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  double score = 0.0;
};

/// Locates a low-resolution phase image inside a larger stitched
/// high-resolution phase image. The low-resolution image is bicubically
/// upsampled by `upsample_factor`; Canny edge maps of both images are
/// correlated at every offset and the best-scoring rectangle is returned
/// (ties go to the lowest row, then column).
FovMatch match_fov(const Image& lowres_phase, const Image& stitched_phase, int upsample_factor,
                   double canny_low = 0.1, double canny_high = 0.3);

struct Tile {
  Image image;
  int x = 0;  ///< nominal top-left position in the mosaic
  int y = 0;
};

struct StitchResult {
  Image image;
  std::vector<std::array<int, 2>> positions;  ///< refined, relative to the mosaic origin
};

/// Refines nominal tile positions by cross-correlating pairwise overlaps
/// (integer pixels, breadth-first from tile 0) and blends overlaps with
/// linear feathering. Every tile must overlap some neighbour by at least
/// min_overlap_px in both directions.
StitchResult stitch(std::span<const Tile> tiles, int min_overlap_px = 16);

}  // namespace cohsr
