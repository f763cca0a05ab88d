#pragma once

#include <filesystem>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

/// Intensity holograms of one sample recorded at several sample-to-sensor
/// distances.
struct HologramStack {
  std::vector<Image> frames;
  std::vector<double> heights_um;  ///< strictly increasing, one per frame
  double pitch_um = 1.12;
  double wavelength_um = 0.55;

  void validate() const;
};

struct RecoverySettings {
  int max_iterations = 50;
  double stop_rel_residual = 1e-4;
  double amplitude_mix = 0.5;  ///< weight of the measured amplitude

  void validate() const;
};

struct RecoveryResult {
  ComplexField field;              ///< at heights_um[0]
  std::vector<double> residuals;   ///< one entry per executed iteration
};

/// Keeps the phase of every pixel and replaces its amplitude by
/// (1 - mix) |current| + mix sqrt(measured).
ComplexField amplitude_update(const ComplexField& current, const Image& measured_intensity,
                              double mix);

/// || |u| - sqrt(I) || / || sqrt(I) || at a single height.
double relative_amplitude_residual(const ComplexField& field, const Image& measured_intensity);

/// Alternating-projection multi-height recovery. Starts from sqrt(I_1) with
/// zero phase; each iteration walks up through heights 1..K and back down to
/// 1, propagating between consecutive heights and applying amplitude_update
/// at every visit. The residual recorded for an iteration is measured on the
/// upward sweep, just before each height's update.
RecoveryResult multi_height_recover(const HologramStack& stack, const RecoverySettings& settings);

/// Back-propagates a field recorded z2_um above the sample to the sample plane.
ComplexField to_sample_plane(const ComplexField& field, double z2_um);

/// Reads a stack manifest: one `<frame_path> <height_um>` per line, frames in
/// CFLD1 whose real part is the measured intensity. Relative paths resolve
/// against the manifest's directory. '#' starts a comment.
HologramStack read_stack_manifest(const std::filesystem::path& manifest);

/// Writes frames as CFLD1 next to the manifest.
void write_stack_manifest(const std::filesystem::path& manifest, const HologramStack& stack);

}  // namespace cohsr
