#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

/// Sub-pixel displacement of one frame, in low-resolution pixels. A frame with
/// shift d shows the reference content moved by +d: frame(x) = ref(x - d).
struct ShiftEntry {
  int frame_index = 0;
  double dx_px = 0.0;
  double dy_px = 0.0;
};

class ShiftTable {
 public:
  ShiftTable() = default;
  explicit ShiftTable(std::vector<ShiftEntry> entries);

  /// The f*f shifts {0, 1/f, ..., (f-1)/f}^2, frame index = row * f + col.
  static ShiftTable canonical(int factor);

  const std::vector<ShiftEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const ShiftEntry& for_frame(int frame_index) const;

  /// Unique indices, finite shifts, and a (0, 0) reference entry.
  void validate() const;

  std::string to_csv() const;
  static ShiftTable from_csv(const std::string& text);

 private:
  std::vector<ShiftEntry> entries_;
};

ShiftTable read_shift_table(const std::filesystem::path& path);
void write_shift_table(const std::filesystem::path& path, const ShiftTable& table);

/// Frame 0 is the reference; every other frame's shift comes from
/// phase correlation with a 1/100 px upsampled-DFT peak refinement.
ShiftTable estimate_shifts(std::span<const Image> frames);

/// Splats each low-resolution pixel onto the high-resolution cell nearest to
/// the centre of its footprint, shifted by (dx, dy) * factor; cells are
/// averaged over their visits and unvisited cells are filled from visited
/// neighbours with a normalized bilinear (tent) kernel. Footprints that land
/// outside the grid are dropped. For even factors a footprint centre falls
/// midway between two cells and rounds up, so the result is sampled half a
/// high-resolution pixel to the right of and below the input grid.
Image shift_and_add(std::span<const Image> frames, const ShiftTable& table, int factor);

/// Fills cells where `visited` is zero with a tent-weighted average of the
/// visited cells, growing the kernel radius until at least one is in reach.
Image fill_unvisited(const Image& values, const Image& visited);

/// Fourier-shifts by offset_px (high-resolution pixels, content moves by
/// +offset) and box-averages factor x factor blocks, modelling pixel
/// integration on a coarser sensor. Dimensions must be divisible by factor.
Image decimate(const Image& image, int factor, double offset_x_px = 0.0, double offset_y_px = 0.0);

/// Effective pitch after pixel super-resolution by `factor`.
double super_resolved_pitch(double input_pitch_um, int factor);

}  // namespace cohsr
