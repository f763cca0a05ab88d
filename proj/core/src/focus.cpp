#include "cohsr/focus.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "cohsr/errors.hpp"
#include "cohsr/parallel.hpp"
#include "cohsr/propagation.hpp"

namespace cohsr {

double tamura_of_gradient(const Image& amplitude) {
  require(amplitude.width() >= 3 && amplitude.height() >= 3,
          "tamura_of_gradient: image must be at least 3x3");
  const int w = amplitude.width();
  const int h = amplitude.height();
  const auto n = static_cast<double>(amplitude.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = 0.5 * (amplitude.clamped(x + 1, y) - amplitude.clamped(x - 1, y));
      const double gy = 0.5 * (amplitude.clamped(x, y + 1) - amplitude.clamped(x, y - 1));
      const double g = std::sqrt(gx * gx + gy * gy);
      sum += g;
      sum_sq += g * g;
    }
  }
  const double mean = sum / n;
  if (mean <= 0.0) return 0.0;
  const double variance = std::max(sum_sq / n - mean * mean, 0.0);
  return std::sqrt(std::sqrt(variance) / mean);
}

void FocusSearch::validate() const {
  require(z_min_um < z_max_um, "focus search: z_min_um must be below z_max_um");
  require(coarse_step_um > 0.0, "focus search: coarse_step_um must be positive");
  require(refine_tolerance_um > 0.0, "focus search: refine_tolerance_um must be positive");
}

std::vector<double> FocusSearch::grid() const {
  validate();
  std::vector<double> z;
  const auto count = static_cast<int>(std::floor((z_max_um - z_min_um) / coarse_step_um + 1e-9));
  for (int i = 0; i <= count; ++i) z.push_back(z_min_um + coarse_step_um * i);
  return z;
}

namespace {

double focus_score(const ComplexField& hologram, double z_um) {
  return tamura_of_gradient(propagate(hologram, -z_um).amplitude());
}

}  // namespace

AutofocusResult autofocus(const ComplexField& hologram, const FocusSearch& search) {
  AutofocusResult result;
  result.coarse_z_um = search.grid();
  const auto n = static_cast<int>(result.coarse_z_um.size());
  result.coarse_scores.assign(result.coarse_z_um.size(), 0.0);
  parallel_for(0, n, [&](int i) {
    result.coarse_scores[static_cast<std::size_t>(i)] =
        focus_score(hologram, result.coarse_z_um[static_cast<std::size_t>(i)]);
  });
  result.evaluations = n;
  // First maximum wins ties, matching a serial left-to-right scan.
  result.coarse_index = static_cast<std::size_t>(
      std::max_element(result.coarse_scores.begin(), result.coarse_scores.end()) -
      result.coarse_scores.begin());
  const double zc = result.coarse_z_um[result.coarse_index];
  if (n == 1) {
    result.z_um = zc;
    return result;
  }

  double lo = std::max(search.z_min_um, zc - search.coarse_step_um);
  double hi = std::min(search.z_max_um, zc + search.coarse_step_um);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = focus_score(hologram, a);
  double fb = focus_score(hologram, b);
  result.evaluations += 2;
  while (hi - lo > search.refine_tolerance_um) {
    if (fa >= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = focus_score(hologram, a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = focus_score(hologram, b);
    }
    ++result.evaluations;
  }
  result.z_um = 0.5 * (lo + hi);
  return result;
}

AutofocusResult autofocus(const Image& intensity, double pitch_um, double wavelength_um,
                          const FocusSearch& search) {
  Image amplitude(intensity.width(), intensity.height());
  auto src = intensity.pixels();
  auto dst = amplitude.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    require(src[i] >= 0.0, "autofocus: intensity must be non-negative");
    dst[i] = std::sqrt(src[i]);
  }
  return autofocus(ComplexField::from_amplitude(amplitude, pitch_um, wavelength_um), search);
}

BackgroundSubtraction svd_background_subtract(std::span<const Image> stack, int rank) {
  const auto k = static_cast<int>(stack.size());
  require(k >= 2, "svd_background_subtract: need at least two frames");
  require(rank >= 0, "svd_background_subtract: rank must be non-negative");
  require(rank < k, "svd_background_subtract: rank must be smaller than the frame count");
  for (const auto& frame : stack)
    require(frame.same_shape(stack.front()), "svd_background_subtract: frame shape mismatch");

  const auto p = static_cast<Eigen::Index>(stack.front().size());
  Eigen::MatrixXd rows(k, p);
  for (int i = 0; i < k; ++i)
    rows.row(i) = Eigen::Map<const Eigen::RowVectorXd>(stack[static_cast<std::size_t>(i)].pixels().data(), p);

  BackgroundSubtraction result;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  result.singular_values.assign(sigma.data(), sigma.data() + sigma.size());

  Eigen::MatrixXd residual = rows;
  if (rank > 0) {
    const auto& u = svd.matrixU();
    const auto& v = svd.matrixV();
    residual -= u.leftCols(rank) * sigma.head(rank).asDiagonal() * v.leftCols(rank).transpose();
    // Re-project so the residual is orthogonal to the removed subspace to
    // working precision, not just to the accuracy of the factorization.
    residual -= (residual * v.leftCols(rank)) * v.leftCols(rank).transpose();
    const Image& shape = stack.front();
    for (int r = 0; r < rank; ++r) {
      Image component(shape.width(), shape.height());
      Eigen::Map<Eigen::RowVectorXd>(component.pixels().data(), p) = v.col(r).transpose();
      result.removed_components.push_back(std::move(component));
    }
  }
  for (int i = 0; i < k; ++i) {
    const Image& shape = stack[static_cast<std::size_t>(i)];
    Image out(shape.width(), shape.height());
    Eigen::Map<Eigen::RowVectorXd>(out.pixels().data(), p) = residual.row(i);
    result.residuals.push_back(std::move(out));
  }
  return result;
}

}  // namespace cohsr
