#include "cohsr/pixel_sr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/phase_correlation.hpp"

namespace cohsr {

ShiftTable::ShiftTable(std::vector<ShiftEntry> entries) : entries_(std::move(entries)) {
  validate();
}

ShiftTable ShiftTable::canonical(int factor) {
  require(factor >= 1, "canonical shifts: factor must be >= 1");
  std::vector<ShiftEntry> entries;
  for (int row = 0; row < factor; ++row)
    for (int col = 0; col < factor; ++col)
      entries.push_back({row * factor + col, static_cast<double>(col) / factor,
                         static_cast<double>(row) / factor});
  return ShiftTable(std::move(entries));
}

const ShiftEntry& ShiftTable::for_frame(int frame_index) const {
  for (const auto& e : entries_)
    if (e.frame_index == frame_index) return e;
  throw InvalidParameter("shift table has no entry for frame " + std::to_string(frame_index));
}

void ShiftTable::validate() const {
  require(!entries_.empty(), "shift table is empty");
  std::set<int> seen;
  bool has_reference = false;
  for (const auto& e : entries_) {
    require(e.frame_index >= 0, "shift table: negative frame index");
    require(seen.insert(e.frame_index).second, "shift table: duplicate frame index");
    require(std::isfinite(e.dx_px) && std::isfinite(e.dy_px), "shift table: non-finite shift");
    if (e.dx_px == 0.0 && e.dy_px == 0.0) has_reference = true;
  }
  require(has_reference, "shift table: no (0, 0) reference entry");
}

std::string ShiftTable::to_csv() const {
  std::string out = "frame_index,dx_px,dy_px\n";
  for (const auto& e : entries_)
    out += std::to_string(e.frame_index) + "," + format_number(e.dx_px) + "," +
           format_number(e.dy_px) + "\n";
  return out;
}

ShiftTable ShiftTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  std::string line;
  if (!std::getline(in, line) || line.rfind("frame_index,dx_px,dy_px", 0) != 0)
    throw FormatError(FormatError::Kind::bad_magic, "shift table: missing CSV header");
  std::vector<ShiftEntry> entries;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    ss.imbue(std::locale::classic());
    ShiftEntry e;
    std::string extra;
    if (!(ss >> e.frame_index >> e.dx_px >> e.dy_px) || (ss >> extra))
      throw FormatError(FormatError::Kind::malformed,
                        "shift table: bad row on line " + std::to_string(line_no));
    entries.push_back(e);
  }
  return ShiftTable(std::move(entries));
}

ShiftTable read_shift_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ShiftTable::from_csv(buf.str());
}

void write_shift_table(const std::filesystem::path& path, const ShiftTable& table) {
  write_text(path, table.to_csv());
}

ShiftTable estimate_shifts(std::span<const Image> frames) {
  require(frames.size() >= 2, "estimate_shifts: need at least two frames");
  for (const auto& f : frames)
    require(f.same_shape(frames.front()), "estimate_shifts: frame shape mismatch");
  std::vector<ShiftEntry> entries{{0, 0.0, 0.0}};
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const auto est = estimate_translation(frames.front(), frames[i], 100);
    entries.push_back({static_cast<int>(i), est.dx, est.dy});
  }
  return ShiftTable(std::move(entries));
}

Image fill_unvisited(const Image& values, const Image& visited) {
  require(values.same_shape(visited), "fill_unvisited: shape mismatch");
  const int w = values.width();
  const int h = values.height();
  bool any = false;
  for (double v : visited.pixels()) any = any || v != 0.0;
  require(any, "fill_unvisited: no visited cells");
  Image out = values;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (visited(x, y) != 0.0) continue;
      for (int r = 2;; ++r) {
        double acc = 0.0;
        double wsum = 0.0;
        for (int yy = std::max(0, y - r + 1); yy <= std::min(h - 1, y + r - 1); ++yy) {
          const double wy = 1.0 - std::abs(yy - y) / static_cast<double>(r);
          for (int xx = std::max(0, x - r + 1); xx <= std::min(w - 1, x + r - 1); ++xx) {
            if (visited(xx, yy) == 0.0) continue;
            const double wt = wy * (1.0 - std::abs(xx - x) / static_cast<double>(r));
            acc += wt * values(xx, yy);
            wsum += wt;
          }
        }
        if (wsum > 0.0) {
          out(x, y) = acc / wsum;
          break;
        }
      }
    }
  }
  return out;
}

Image shift_and_add(std::span<const Image> frames, const ShiftTable& table, int factor) {
  require(factor >= 1, "shift_and_add: factor must be >= 1");
  require(!frames.empty(), "shift_and_add: no frames");
  table.validate();
  const int lw = frames.front().width();
  const int lh = frames.front().height();
  const int hw = lw * factor;
  const int hh = lh * factor;
  Image sum(hw, hh);
  Image count(hw, hh);
  const double centre = 0.5 * (factor - 1);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Image& frame = frames[i];
    require(frame.same_shape(frames.front()), "shift_and_add: frame shape mismatch");
    const ShiftEntry& s = table.for_frame(static_cast<int>(i));
    const double ox = centre - s.dx_px * factor;
    const double oy = centre - s.dy_px * factor;
    for (int y = 0; y < lh; ++y) {
      const auto cy = static_cast<int>(std::floor(y * factor + oy + 0.5));
      if (cy < 0 || cy >= hh) continue;
      for (int x = 0; x < lw; ++x) {
        const auto cx = static_cast<int>(std::floor(x * factor + ox + 0.5));
        if (cx < 0 || cx >= hw) continue;
        sum(cx, cy) += frame(x, y);
        count(cx, cy) += 1.0;
      }
    }
  }
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (count.pixels()[i] > 0.0) sum.pixels()[i] /= count.pixels()[i];
  return fill_unvisited(sum, count);
}

Image decimate(const Image& image, int factor, double offset_x_px, double offset_y_px) {
  require(factor >= 1, "decimate: factor must be >= 1");
  require(image.width() % factor == 0 && image.height() % factor == 0,
          "decimate: image dimensions must be divisible by the factor");
  const Image shifted = (offset_x_px == 0.0 && offset_y_px == 0.0)
                            ? image
                            : fourier_shift(image, offset_x_px, offset_y_px);
  if (factor == 1) return shifted;
  const int w = image.width() / factor;
  const int h = image.height() / factor;
  Image out(w, h);
  const double inv = 1.0 / (factor * factor);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = 0; dy < factor; ++dy)
        for (int dx = 0; dx < factor; ++dx) acc += shifted(x * factor + dx, y * factor + dy);
      out(x, y) = acc * inv;
    }
  return out;
}

double super_resolved_pitch(double input_pitch_um, int factor) {
  require(input_pitch_um > 0.0 && factor >= 1, "super_resolved_pitch: bad arguments");
  return input_pitch_um / factor;
}

}  // namespace cohsr
