#include "cohsr/registration.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/interpolation.hpp"
#include "cohsr/phase_correlation.hpp"

namespace cohsr {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void check_determinant(const std::array<double, 6>& m) {
  const double det = m[0] * m[4] - m[1] * m[3];
  require(std::isfinite(det) && det >= 0.5 && det <= 2.0,
          "affine transform: determinant of the linear part must lie in [0.5, 2]");
}

}  // namespace

AffineTransform::AffineTransform() : m_{1.0, 0.0, 0.0, 0.0, 1.0, 0.0} {}

AffineTransform::AffineTransform(const std::array<double, 6>& m) : m_(m) {
  check_determinant(m_);
}

AffineTransform AffineTransform::rigid(double angle_deg, double tx, double ty, double centre_x,
                                       double centre_y) {
  const double c = std::cos(angle_deg * kDegToRad);
  const double s = std::sin(angle_deg * kDegToRad);
  return AffineTransform({c, -s, centre_x - c * centre_x + s * centre_y + tx,
                          s, c, centre_y - s * centre_x - c * centre_y + ty});
}

AffineTransform AffineTransform::translation(double tx, double ty) {
  return AffineTransform({1.0, 0.0, tx, 0.0, 1.0, ty});
}

std::array<double, 2> AffineTransform::apply(double x, double y) const {
  return {m_[0] * x + m_[1] * y + m_[2], m_[3] * x + m_[4] * y + m_[5]};
}

double AffineTransform::determinant() const { return m_[0] * m_[4] - m_[1] * m_[3]; }

AffineTransform AffineTransform::inverse() const {
  const double det = determinant();
  const double a = m_[4] / det;
  const double b = -m_[1] / det;
  const double c = -m_[3] / det;
  const double d = m_[0] / det;
  return AffineTransform({a, b, -(a * m_[2] + b * m_[5]), c, d, -(c * m_[2] + d * m_[5])});
}

double AffineTransform::rotation_deg() const { return std::atan2(m_[3], m_[0]) / kDegToRad; }

std::string AffineTransform::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (i) out += ' ';
    out += format_number(m_[i]);
  }
  return out + "\n";
}

AffineTransform AffineTransform::from_text(const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  std::array<double, 6> m{};
  for (auto& v : m)
    if (!(in >> v)) throw FormatError(FormatError::Kind::malformed, "affine: expected 6 numbers");
  std::string extra;
  if (in >> extra) throw FormatError(FormatError::Kind::malformed, "affine: trailing data");
  return AffineTransform(m);
}

AffineTransform compose(const AffineTransform& outer, const AffineTransform& inner) {
  const auto& a = outer.matrix();
  const auto& b = inner.matrix();
  return AffineTransform({a[0] * b[0] + a[1] * b[3], a[0] * b[1] + a[1] * b[4],
                          a[0] * b[2] + a[1] * b[5] + a[2], a[3] * b[0] + a[4] * b[3],
                          a[3] * b[1] + a[4] * b[4], a[3] * b[2] + a[4] * b[5] + a[5]});
}

AffineTransform read_affine(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return AffineTransform::from_text(buf.str());
}

void write_affine(const std::filesystem::path& path, const AffineTransform& t) {
  write_text(path, t.to_text());
}

Image warp_affine(const Image& image, const AffineTransform& t, Interpolation interpolation) {
  Image out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      const auto [sx, sy] = t.apply(x, y);
      out(x, y) = interpolation == Interpolation::bilinear ? sample_bilinear(image, sx, sy)
                                                           : sample_bicubic(image, sx, sy);
    }
  return out;
}

Image crop(const Image& image, int x, int y, int width, int height) {
  require(x >= 0 && y >= 0 && width > 0 && height > 0 && x + width <= image.width() &&
              y + height <= image.height(),
          "crop: rectangle outside the image");
  Image out(width, height);
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i) out(i, j) = image(x + i, y + j);
  return out;
}

Image apply_affine_and_crop(const Image& image, const AffineTransform& t, int border_px) {
  require(border_px >= 0, "apply_affine_and_crop: border must be non-negative");
  require(image.width() > 2 * border_px && image.height() > 2 * border_px,
          "apply_affine_and_crop: image must be larger than twice the border");
  const Image warped = warp_affine(image, t, Interpolation::bilinear);
  return crop(warped, border_px, border_px, image.width() - 2 * border_px,
              image.height() - 2 * border_px);
}

double normalized_cross_correlation(const Image& a, const Image& b, int margin) {
  require(a.same_shape(b), "normalized_cross_correlation: shape mismatch");
  require(a.width() > 2 * margin && a.height() > 2 * margin,
          "normalized_cross_correlation: margin too large");
  double sa = 0.0;
  double sb = 0.0;
  double n = 0.0;
  for (int y = margin; y < a.height() - margin; ++y)
    for (int x = margin; x < a.width() - margin; ++x) {
      sa += a(x, y);
      sb += b(x, y);
      n += 1.0;
    }
  const double ma = sa / n;
  const double mb = sb / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (int y = margin; y < a.height() - margin; ++y)
    for (int x = margin; x < a.width() - margin; ++x) {
      const double da = a(x, y) - ma;
      const double db = b(x, y) - mb;
      sab += da * db;
      saa += da * da;
      sbb += db * db;
    }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

namespace {

double standard_deviation(const Image& image) {
  const double m = image.mean();
  double acc = 0.0;
  for (double v : image.pixels()) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(image.size()));
}

struct RigidCandidate {
  AffineTransform transform;
  double score = -2.0;
};

class RigidSearch {
 public:
  RigidSearch(const Image& moving, const Image& fixed, int margin)
      : moving_(moving), fixed_(fixed), margin_(margin),
        cx_(0.5 * (moving.width() - 1)), cy_(0.5 * (moving.height() - 1)) {}

  // Translation re-estimated on the derotated moving image; see header.
  RigidCandidate evaluate(double angle_deg, int upsample) const {
    const AffineTransform rotation = AffineTransform::rigid(angle_deg, 0.0, 0.0, cx_, cy_);
    const Image derotated = warp_affine(moving_, rotation, Interpolation::bicubic);
    const ShiftEstimate d = estimate_translation(fixed_, derotated, upsample);
    RigidCandidate c{compose(rotation, AffineTransform::translation(d.dx, d.dy)), 0.0};
    const Image aligned = warp_affine(moving_, c.transform, Interpolation::bicubic);
    c.score = normalized_cross_correlation(aligned, fixed_, margin_);
    return c;
  }

 private:
  const Image& moving_;
  const Image& fixed_;
  int margin_;
  double cx_;
  double cy_;
};

}  // namespace

AffineTransform register_affine(const Image& moving, const Image& fixed,
                                const RegistrationOptions& options) {
  require(moving.same_shape(fixed), "register_affine: shape mismatch");
  require(options.max_rotation_deg >= 0.0 && options.coarse_rotation_step_deg > 0.0 &&
              options.rotation_tolerance_deg > 0.0,
          "register_affine: bad rotation search options");
  if (standard_deviation(moving) == 0.0 || standard_deviation(fixed) == 0.0)
    throw DegenerateInput("register_affine: flat image");

  const ShiftEstimate initial = estimate_translation(fixed, moving, 20);
  const double half_diag = 0.5 * std::hypot(moving.width(), moving.height());
  const int margin = static_cast<int>(std::ceil(std::max(std::abs(initial.dx), std::abs(initial.dy)) +
                                                half_diag * std::sin(options.max_rotation_deg * kDegToRad) + 2.0));
  require(moving.width() > 2 * margin + 8 && moving.height() > 2 * margin + 8,
          "register_affine: image too small for the search range");
  const RigidSearch search(moving, fixed, margin);

  // Coarse scan, first maximum wins ties.
  const int steps = static_cast<int>(std::floor(options.max_rotation_deg / options.coarse_rotation_step_deg + 1e-9));
  RigidCandidate best;
  double best_angle = 0.0;
  for (int i = -steps; i <= steps; ++i) {
    const double angle = i * options.coarse_rotation_step_deg;
    const RigidCandidate c = search.evaluate(angle, 20);
    if (c.score > best.score) {
      best = c;
      best_angle = angle;
    }
  }

  if (options.max_rotation_deg > 0.0) {
    double lo = std::max(-options.max_rotation_deg, best_angle - options.coarse_rotation_step_deg);
    double hi = std::min(options.max_rotation_deg, best_angle + options.coarse_rotation_step_deg);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = search.evaluate(a, 20).score;
    double fb = search.evaluate(b, 20).score;
    while (hi - lo > options.rotation_tolerance_deg) {
      if (fa >= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = search.evaluate(a, 20).score;
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = search.evaluate(b, 20).score;
      }
    }
    best_angle = 0.5 * (lo + hi);
  }
  return search.evaluate(best_angle, 100).transform;
}

}  // namespace cohsr
