#include <cmath>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"
#include "cohsr/metrics.hpp"
#include "cohsr/phase_correlation.hpp"
#include "cohsr/pixel_sr.hpp"
#include "cohsr/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cohsr;

namespace {

double dynamic_range(const Image& img) { return img.max() - img.min(); }

}  // namespace

TEST_CASE("shift table") {
  const auto t = ShiftTable::canonical(3);
  REQUIRE(t.size() == 9);
  CHECK(t.for_frame(5).dx_px == doctest::Approx(2.0 / 3));
  CHECK(t.for_frame(5).dy_px == doctest::Approx(1.0 / 3));
  const auto back = ShiftTable::from_csv(t.to_csv());
  for (int i = 0; i < 9; ++i) {
    CHECK(back.for_frame(i).dx_px == t.for_frame(i).dx_px);
    CHECK(back.for_frame(i).dy_px == t.for_frame(i).dy_px);
  }
  CHECK(t.to_csv().rfind("frame_index,dx_px,dy_px\n", 0) == 0);
  CHECK_THROWS_AS(ShiftTable({{0, 0.0, 0.0}, {0, 0.5, 0.0}}), InvalidParameter);
  CHECK_THROWS_AS(ShiftTable({{0, 0.1, 0.0}}), InvalidParameter);
  CHECK_THROWS_AS(ShiftTable({{0, 0.0, 0.0}, {1, NAN, 0.0}}), InvalidParameter);
  CHECK_THROWS_AS(ShiftTable::from_csv("frame,dx,dy\n0,0,0\n"), FormatError);
  CHECK_THROWS_AS(ShiftTable::from_csv("frame_index,dx_px,dy_px\n0,0\n"), FormatError);
}

TEST_CASE("translation estimate") {
  const auto ref = oracle::band_limited_image(96, 96, 0.2, 31);
  const auto target = fourier_shift(ref, 0.5, 0.25);
  const auto e = estimate_translation(ref, target);
  CHECK(std::abs(e.dx - 0.5) <= 0.05);
  CHECK(std::abs(e.dy - 0.25) <= 0.05);
  const auto r = estimate_translation(target, ref);
  CHECK(std::abs(r.dx + e.dx) <= 0.05);
  CHECK(std::abs(r.dy + e.dy) <= 0.05);
  const auto big = estimate_translation(ref, fourier_shift(ref, -17.3, 8.6));
  CHECK(std::abs(big.dx + 17.3) <= 0.05);
  CHECK(std::abs(big.dy - 8.6) <= 0.05);
  CHECK_THROWS_AS(estimate_translation(Image(16, 16, 1.0), Image(16, 16, 1.0)), DegenerateInput);
}

TEST_CASE("estimate_shifts") {
  const auto ref = oracle::band_limited_image(64, 64, 0.2, 3);
  const std::vector<Image> same{ref, ref, ref};
  const auto zero = estimate_shifts(same);
  for (const auto& e : zero.entries()) {
    CHECK(std::abs(e.dx_px) < 1e-6);
    CHECK(std::abs(e.dy_px) < 1e-6);
  }
  const std::vector<Image> frames{ref, fourier_shift(ref, 0.5, 0.25), fourier_shift(ref, -0.3, 0.7)};
  const auto t = estimate_shifts(frames);
  CHECK(std::abs(t.for_frame(1).dx_px - 0.5) <= 0.05);
  CHECK(std::abs(t.for_frame(2).dy_px - 0.7) <= 0.05);
  const std::vector<Image> mismatched{ref, Image(32, 64, 0.0)};
  CHECK_THROWS_AS(estimate_shifts(mismatched), InvalidParameter);
}

TEST_CASE("decimate") {
  const auto img = oracle::band_limited_image(60, 60, 0.3, 12, 4.0);
  CHECK(oracle::max_abs_diff(decimate(img, 1), img) == 0.0);
  CHECK(decimate(img, 3).mean() == doctest::Approx(img.mean()).epsilon(1e-9));
  CHECK(decimate(img, 3, 1.0, 2.0).mean() == doctest::Approx(img.mean()).epsilon(1e-9));
  const auto flat = decimate(Image(12, 12, 2.5), 4);
  CHECK(flat.width() == 3);
  CHECK(flat.max() == doctest::Approx(2.5));
  CHECK(flat.min() == doctest::Approx(2.5));
  // Box average by hand.
  const auto d = decimate(img, 2);
  CHECK(d(4, 7) == doctest::Approx(0.25 * (img(8, 14) + img(9, 14) + img(8, 15) + img(9, 15))));
  CHECK_THROWS_AS(decimate(Image(10, 10), 3), InvalidParameter);
}

TEST_CASE("shift and add") {
  SUBCASE("identity") {
    const auto img = oracle::band_limited_image(20, 16, 0.3, 1);
    const std::vector<Image> frames{img};
    CHECK(oracle::max_abs_diff(shift_and_add(frames, ShiftTable({{0, 0, 0}}), 1), img) == 0.0);
    CHECK_THROWS_AS(shift_and_add(frames, ShiftTable({{0, 0, 0}}), 0), InvalidParameter);
  }
  SUBCASE("zero shifts equal nearest-neighbour placement plus fill") {
    const auto a = oracle::band_limited_image(10, 10, 0.3, 2);
    const auto b = oracle::band_limited_image(10, 10, 0.3, 3);
    const std::vector<Image> frames{a, b};
    const int f = 3;
    Image placed(30, 30), visited(30, 30);
    for (int y = 0; y < 10; ++y)
      for (int x = 0; x < 10; ++x) {
        placed(x * f + 1, y * f + 1) = 0.5 * (a(x, y) + b(x, y));
        visited(x * f + 1, y * f + 1) = 1.0;
      }
    const auto expected = fill_unvisited(placed, visited);
    const auto got = shift_and_add(frames, ShiftTable({{0, 0, 0}, {1, 0, 0}}), f);
    CHECK(oracle::max_abs_diff(got, expected) < 1e-15);
  }
  SUBCASE("canonical round trip") {
    for (int f : {2, 3, 6}) {
      const int n = 36 * 4;
      const auto truth = oracle::band_limited_image(n, n, 0.2 / f, 40 + f, 1.0);
      const auto table = ShiftTable::canonical(f);
      const auto lr = simulate_pixel_limited(truth, 0.3733, f, table);
      const auto sr = shift_and_add(lr.frames, table, f);
      CHECK(sr.width() == n);
      CHECK(sr.mean() == doctest::Approx(truth.mean()).epsilon(0.01));
      // Even factors sample the output half a pixel down and to the right.
      const double half = f % 2 == 0 ? 0.5 : 0.0;
      const auto reference = fourier_shift(truth, half, half);
      CHECK(psnr(sr, reference, dynamic_range(truth)) >= 40.0);
    }
  }
  SUBCASE("partial coverage is filled") {
    const auto truth = oracle::band_limited_image(48, 48, 0.05, 9, 1.0);
    const ShiftTable table({{0, 0, 0}, {1, 0.5, 0.5}});
    std::vector<Image> frames;
    for (const auto& e : table.entries()) frames.push_back(decimate(truth, 4, e.dx_px * 4, e.dy_px * 4));
    const auto sr = shift_and_add(frames, table, 4);
    for (double v : sr.pixels()) CHECK(std::isfinite(v));
    CHECK(psnr(sr, truth, dynamic_range(truth)) > 25.0);
  }
}

TEST_CASE("fill_unvisited") {
  Image values(5, 1), visited(5, 1);
  values(0, 0) = 2.0;
  visited(0, 0) = 1.0;
  values(4, 0) = 6.0;
  visited(4, 0) = 1.0;
  const auto out = fill_unvisited(values, visited);
  CHECK(out(0, 0) == 2.0);
  CHECK(out(4, 0) == 6.0);
  CHECK(out(2, 0) == doctest::Approx(4.0));  // equidistant
  CHECK(out(1, 0) == doctest::Approx(2.0));  // only the left cell is within reach at radius 2
  CHECK_THROWS_AS(fill_unvisited(values, Image(5, 1)), InvalidParameter);
}

TEST_CASE("effective pitch") {
  CHECK(super_resolved_pitch(2.24, 2) == doctest::Approx(1.12));
  CHECK(super_resolved_pitch(2.24, 3) == doctest::Approx(0.7467).epsilon(1e-4));
  CHECK(super_resolved_pitch(2.24, 6) == doctest::Approx(0.3733).epsilon(1e-4));
  const auto lr = simulate_pixel_limited(Image(8, 8, 1.0), 1.12, 2, ShiftTable({{0, 0, 0}}));
  CHECK(lr.pitch_um == doctest::Approx(2.24));
  CHECK(lr.frames.size() == 1);
}
