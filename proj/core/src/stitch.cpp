#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "cohsr/errors.hpp"
#include "cohsr/phase_correlation.hpp"
#include "cohsr/registration.hpp"

namespace cohsr {

namespace {

struct Rect {
  int x0, y0, x1, y1;  // half-open
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

Rect intersect(int ax, int ay, const Image& a, int bx, int by, const Image& b) {
  return {std::max(ax, bx), std::max(ay, by), std::min(ax + a.width(), bx + b.width()),
          std::min(ay + a.height(), by + b.height())};
}

// Mean removed before windowing, otherwise the window itself correlates at zero lag.
Image windowed_cut(const Image& tile, int ox, int oy, const Rect& r) {
  double mean = 0.0;
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) mean += tile(r.x0 - ox + x, r.y0 - oy + y);
  mean /= static_cast<double>(r.width()) * r.height();
  Image out(r.width(), r.height());
  for (int y = 0; y < r.height(); ++y) {
    const double wy = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (y + 0.5) / r.height());
    for (int x = 0; x < r.width(); ++x) {
      const double wx = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (x + 0.5) / r.width());
      out(x, y) = wx * wy * (tile(r.x0 - ox + x, r.y0 - oy + y) - mean);
    }
  }
  return out;
}

}  // namespace

StitchResult stitch(std::span<const Tile> tiles, int min_overlap_px) {
  require(!tiles.empty(), "stitch: no tiles");
  require(min_overlap_px >= 1, "stitch: min_overlap_px must be >= 1");
  const std::size_t n = tiles.size();
  std::vector<std::array<int, 2>> pos(n);
  std::vector<bool> placed(n, false);
  pos[0] = {tiles[0].x, tiles[0].y};
  placed[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      if (placed[j]) continue;
      const Rect nominal = intersect(tiles[i].x, tiles[i].y, tiles[i].image, tiles[j].x,
                                     tiles[j].y, tiles[j].image);
      if (nominal.width() < min_overlap_px || nominal.height() < min_overlap_px) continue;
      // Candidate position keeps the nominal offset relative to tile i.
      const int cx = pos[i][0] + tiles[j].x - tiles[i].x;
      const int cy = pos[i][1] + tiles[j].y - tiles[i].y;
      const Rect r = intersect(pos[i][0], pos[i][1], tiles[i].image, cx, cy, tiles[j].image);
      const Image a = windowed_cut(tiles[i].image, pos[i][0], pos[i][1], r);
      const Image b = windowed_cut(tiles[j].image, cx, cy, r);
      ShiftEstimate d{};
      try {
        d = estimate_translation(a, b, 1);
      } catch (const DegenerateInput&) {
        // Featureless overlap: trust the nominal offset.
      }
      pos[j] = {cx - static_cast<int>(std::lround(d.dx)), cy - static_cast<int>(std::lround(d.dy))};
      placed[j] = true;
      queue.push_back(j);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!placed[j])
      throw InvalidParameter("stitch: tile " + std::to_string(j) +
                             " does not overlap any connected neighbour");

  int min_x = std::numeric_limits<int>::max();
  int min_y = std::numeric_limits<int>::max();
  int max_x = std::numeric_limits<int>::min();
  int max_y = std::numeric_limits<int>::min();
  for (std::size_t j = 0; j < n; ++j) {
    min_x = std::min(min_x, pos[j][0]);
    min_y = std::min(min_y, pos[j][1]);
    max_x = std::max(max_x, pos[j][0] + tiles[j].image.width());
    max_y = std::max(max_y, pos[j][1] + tiles[j].image.height());
  }
  const int w = max_x - min_x;
  const int h = max_y - min_y;
  Image sum(w, h);
  Image weight(w, h);
  for (std::size_t j = 0; j < n; ++j) {
    pos[j][0] -= min_x;
    pos[j][1] -= min_y;
    const Image& t = tiles[j].image;
    for (int y = 0; y < t.height(); ++y) {
      const double wy = std::min(y + 1, t.height() - y);
      for (int x = 0; x < t.width(); ++x) {
        const double wt = wy * std::min(x + 1, t.width() - x);
        sum(pos[j][0] + x, pos[j][1] + y) += wt * t(x, y);
        weight(pos[j][0] + x, pos[j][1] + y) += wt;
      }
    }
  }
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (weight.pixels()[i] > 0.0) sum.pixels()[i] /= weight.pixels()[i];
  return {std::move(sum), std::move(pos)};
}

}  // namespace cohsr
