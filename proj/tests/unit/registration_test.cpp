#include <cmath>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"
#include "cohsr/interpolation.hpp"
#include "cohsr/pixel_sr.hpp"
#include "cohsr/registration.hpp"
#include "cohsr/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cohsr;

namespace {

Image textured(int n, std::uint64_t seed) {
  PhantomSpec spec;
  spec.width = spec.height = n;
  spec.kind = PhantomKind::smooth;
  spec.seed = seed;
  return generate_phantom(spec).phase();
}

Image paste(const std::vector<Image>& tiles, int per_row) {
  const int tw = tiles[0].width(), th = tiles[0].height();
  const int rows = static_cast<int>(tiles.size()) / per_row;
  Image out(tw * per_row, th * rows);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const int ox = static_cast<int>(i) % per_row * tw, oy = static_cast<int>(i) / per_row * th;
    for (int y = 0; y < th; ++y)
      for (int x = 0; x < tw; ++x) out(ox + x, oy + y) = tiles[i](x, y);
  }
  return out;
}

}  // namespace

TEST_CASE("cubic kernel and bicubic upsampling") {
  CHECK(cubic_kernel(0.0) == 1.0);
  CHECK(cubic_kernel(1.0) == 0.0);
  CHECK(cubic_kernel(2.0) == 0.0);
  CHECK(cubic_kernel(0.5) == doctest::Approx(0.5625));  // a = -0.5
  CHECK(cubic_kernel(1.5) == doctest::Approx(-0.0625));

  const auto img = oracle::band_limited_image(12, 10, 0.3, 1);
  CHECK(oracle::max_abs_diff(upsample_bicubic(img, 1), img) == 0.0);
  const auto flat = upsample_bicubic(Image(6, 6, 3.25), 4);
  CHECK(flat.width() == 24);
  CHECK(flat.max() == doctest::Approx(3.25).epsilon(1e-14));
  CHECK(flat.min() == doctest::Approx(3.25).epsilon(1e-14));

  Image ramp(16, 16);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) ramp(x, y) = 0.3 * x - 0.7 * y + 2.0;
  const int f = 3;
  const auto up = upsample_bicubic(ramp, f);
  double worst = 0.0;
  for (int y = 2 * f; y < (16 - 2) * f; ++y)
    for (int x = 2 * f; x < (16 - 2) * f; ++x) {
      const double sx = (x + 0.5) / f - 0.5, sy = (y + 0.5) / f - 0.5;
      worst = std::max(worst, std::abs(up(x, y) - (0.3 * sx - 0.7 * sy + 2.0)));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("affine transform algebra") {
  const auto t = AffineTransform::rigid(2.0, 3.0, -1.0, 10.0, 20.0);
  const auto p = t.apply(10.0, 20.0);
  CHECK(p[0] == doctest::Approx(13.0));
  CHECK(p[1] == doctest::Approx(19.0));
  CHECK(t.rotation_deg() == doctest::Approx(2.0));
  const auto q = compose(t.inverse(), t).apply(4.5, -7.0);
  CHECK(q[0] == doctest::Approx(4.5));
  CHECK(q[1] == doctest::Approx(-7.0));
  const auto text = AffineTransform::from_text(t.to_text());
  for (int i = 0; i < 6; ++i) CHECK(text.matrix()[i] == t.matrix()[i]);
  CHECK_THROWS_AS(AffineTransform({3, 0, 0, 0, 3, 0}), InvalidParameter);
  CHECK_THROWS_AS(AffineTransform({0.1, 0, 0, 0, 1, 0}), InvalidParameter);
  CHECK_THROWS_AS(AffineTransform::from_text("1 0 0 0 1"), FormatError);
}

TEST_CASE("apply_affine_and_crop") {
  const auto img = oracle::band_limited_image(228, 228, 0.2, 6);
  const auto out = apply_affine_and_crop(img, AffineTransform(), 50);
  REQUIRE(out.width() == 128);
  CHECK(oracle::max_abs_diff(out, crop(img, 50, 50, 128, 128)) == 0.0);

  const auto moved = apply_affine_and_crop(img, AffineTransform::translation(7, -4), 50);
  CHECK(oracle::max_abs_diff(moved, crop(img, 57, 46, 128, 128)) == 0.0);

  // Round trip through t and its inverse on a smooth image, interior only.
  const auto smooth = oracle::band_limited_image(228, 228, 0.015, 8);
  const auto t = AffineTransform::rigid(1.5, 2.25, -0.75, 113.5, 113.5);
  const auto back = apply_affine_and_crop(apply_affine_and_crop(smooth, t, 0), t.inverse(), 50);
  CHECK(oracle::max_abs_diff(back, crop(smooth, 50, 50, 128, 128)) < 1e-3 * (smooth.max() - smooth.min()));
  CHECK_THROWS_AS(apply_affine_and_crop(Image(100, 100), AffineTransform(), 50), InvalidParameter);
}

TEST_CASE("register_affine") {
  const auto fixed = textured(192, 4);
  SUBCASE("identity") {
    const auto t = register_affine(fixed, fixed);
    CHECK(std::abs(t.tx()) < 0.05);
    CHECK(std::abs(t.ty()) < 0.05);
    CHECK(std::abs(t.rotation_deg()) < 0.02);
  }
  SUBCASE("translation") {
    const auto t = register_affine(fourier_shift(fixed, 10.5, -3.25), fixed);
    CHECK(std::abs(t.tx() - 10.5) < 0.1);
    CHECK(std::abs(t.ty() + 3.25) < 0.1);
  }
  SUBCASE("rotation") {
    const double c = 95.5;
    const auto rotated = warp_affine(fixed, AffineTransform::rigid(2.0, 0, 0, c, c), Interpolation::bicubic);
    const auto t = register_affine(rotated, fixed);
    // warp_affine(rotated, t) ~ fixed, so t undoes the planted rotation.
    CHECK(std::abs(t.rotation_deg() + 2.0) < 0.05);
    const auto p = t.apply(c, c);
    CHECK(std::abs(p[0] - c) < 0.2);
    CHECK(std::abs(p[1] - c) < 0.2);
  }
  SUBCASE("composition") {
    const auto b = fourier_shift(fixed, 3.4, 1.2);
    const auto c = fourier_shift(fixed, -2.1, 5.5);
    const auto ab = register_affine(fixed, b);  // fixed = A, moving = A
    const auto bc = register_affine(b, c);
    const auto ac = register_affine(fixed, c);
    const auto chained = compose(ab, bc);
    CHECK(std::abs(chained.tx() - ac.tx()) < 0.2);
    CHECK(std::abs(chained.ty() - ac.ty()) < 0.2);
  }
  SUBCASE("flat input") {
    CHECK_THROWS_AS(register_affine(Image(64, 64, 1.0), fixed), InvalidParameter);
    CHECK_THROWS_AS(register_affine(Image(192, 192, 1.0), fixed), DegenerateInput);
  }
}

TEST_CASE("canny") {
  Image square(40, 40, 0.0);
  for (int y = 10; y < 30; ++y)
    for (int x = 10; x < 30; ++x) square(x, y) = 1.0;
  const auto e = canny_relative(square);
  double count = 0.0;
  for (double v : e.edges.pixels()) {
    CHECK((v == 0.0 || v == 1.0));
    count += v;
  }
  CHECK(count > 60);
  CHECK(e.edges(20, 20) == 0.0);
  CHECK(e.edges(2, 2) == 0.0);

  Image scaled = square;
  for (double& v : scaled.pixels()) v *= 4.0;
  const auto a = canny(square, 0.05, 0.15);
  const auto b = canny(scaled, 0.2, 0.6);
  CHECK(oracle::max_abs_diff(a.edges, b.edges) == 0.0);
}

TEST_CASE("match_fov") {
  std::vector<Image> patches;
  for (int i = 0; i < 4; ++i) patches.push_back(textured(96, 50 + i));
  const Image stitched = paste(patches, 2);

  SUBCASE("tiling oracle") {
    const auto query = decimate(patches[2], 2);
    const auto m = match_fov(query, stitched, 2);
    CHECK(m.x == 0);
    CHECK(m.y == 96);
    CHECK(m.width == 96);
    CHECK(m.height == 96);
  }
  SUBCASE("verbatim subregion") {
    const auto query = crop(stitched, 37, 21, 80, 70);
    const auto m = match_fov(query, stitched, 1);
    CHECK(m.x == 37);
    CHECK(m.y == 21);
    CHECK(m.width == 80);
    CHECK(m.height == 70);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(match_fov(patches[0], Image(192, 192, 0.5), 1), DegenerateInput);
    CHECK_THROWS_AS(match_fov(stitched, patches[0], 1), InvalidParameter);
  }
}

TEST_CASE("stitch") {
  const auto source = oracle::band_limited_image(160, 160, 0.2, 77, 1.0);
  SUBCASE("single tile") {
    const std::vector<Tile> tiles{{crop(source, 0, 0, 64, 64), 0, 0}};
    const auto r = stitch(tiles);
    CHECK(oracle::max_abs_diff(r.image, tiles[0].image) < 1e-12);
  }
  SUBCASE("two tiles with wrong nominal offsets") {
    const std::vector<Tile> tiles{{crop(source, 0, 0, 96, 96), 0, 0},
                                  {crop(source, 64, 0, 96, 96), 66, -2}};
    const auto r = stitch(tiles);
    REQUIRE(r.image.width() == 160);
    REQUIRE(r.image.height() == 96);
    CHECK(r.positions[1][0] == 64);
    CHECK(r.positions[1][1] == 0);
    CHECK(oracle::max_abs_diff(r.image, crop(source, 0, 0, 160, 96)) < 1e-3);
  }
  SUBCASE("three tiles in a row") {
    const std::vector<Tile> tiles{{crop(source, 0, 0, 64, 48), 0, 0},
                                  {crop(source, 48, 0, 64, 48), 48, 0},
                                  {crop(source, 96, 0, 64, 48), 96, 0}};
    const auto r = stitch(tiles);
    CHECK(oracle::max_abs_diff(r.image, crop(source, 0, 0, 160, 48)) < 1e-12);
  }
  SUBCASE("disconnected tile") {
    const std::vector<Tile> tiles{{crop(source, 0, 0, 48, 48), 0, 0},
                                  {crop(source, 100, 100, 48, 48), 100, 100}};
    CHECK_THROWS_AS(stitch(tiles), InvalidParameter);
  }
}
