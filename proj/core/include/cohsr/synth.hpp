#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cohsr/image.hpp"
#include "cohsr/phase_retrieval.hpp"
#include "cohsr/pixel_sr.hpp"

namespace cohsr {

enum class PhantomKind { disks, bars, strokes, smooth };

PhantomKind parse_phantom_kind(const std::string& name);
std::string to_string(PhantomKind kind);

struct PhantomSpec {
  int width = 256;
  int height = 256;
  double pitch_um = 1.12;
  double wavelength_um = 0.55;
  PhantomKind kind = PhantomKind::disks;
  double amplitude_min = 0.6;
  double amplitude_max = 1.0;
  double phase_max_rad = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Seeded transmission a exp(i phi) at z = 0. The complex field is tapered
/// by a raised cosine that reaches zero at 0.8x Nyquist, then scaled down if
/// needed so the peak amplitude is at most 1.
ComplexField generate_phantom(const PhantomSpec& spec);

/// |propagate(object, z2)|^2 plus Gaussian noise whose deviation is
/// noise_sigma times the mean intensity, clamped at zero.
Image simulate_inline_hologram(const ComplexField& object, double z2_um, double noise_sigma = 0.0,
                               std::uint64_t seed = 0);

/// Heights first_um, first_um + spacing_um, ...
std::vector<double> default_heights(int count = 8, double first_um = 300.0, double spacing_um = 15.0);

/// Holograms of `object` at every height.
HologramStack simulate_stack(const ComplexField& object, const std::vector<double>& heights_um,
                             double noise_sigma = 0.0, std::uint64_t seed = 0);

struct PixelLimitedFrames {
  std::vector<Image> frames;  ///< one per shift table entry, in table order
  double pitch_um;            ///< effective low-resolution pitch
};

/// Stage-shifted low-resolution acquisition: decimates `intensity` once per
/// shift entry, with the entry's offset given in low-resolution pixels.
PixelLimitedFrames simulate_pixel_limited(const Image& intensity, double pitch_um, int factor,
                                          const ShiftTable& shifts);

/// Hard circular low-pass at na_cutoff / wavelength cycles per micrometre.
ComplexField simulate_na_limited(const ComplexField& field, double na_cutoff, double wavelength_um);

/// Successive splitmix64 outputs from `state`.
std::uint64_t splitmix64(std::uint64_t& state);

enum class SystemType { pixel_limited, na_limited };

SystemType parse_system_type(const std::string& name);
std::string to_string(SystemType type);

struct DatasetConfig {
  SystemType system = SystemType::pixel_limited;
  int pairs = 4;
  int phantom_size_px = 356;
  std::vector<PhantomKind> kinds{PhantomKind::disks, PhantomKind::bars, PhantomKind::strokes,
                                 PhantomKind::smooth};
  double amplitude_min = 0.6;
  double amplitude_max = 1.0;
  double phase_max_rad = 1.0;
  double pitch_um = 1.12;       ///< label grid pitch
  double wavelength_um = 0.55;
  int height_count = 8;
  double first_height_um = 300.0;
  double height_spacing_um = 15.0;
  double noise_sigma = 0.0;
  int lr_factor = 2;            ///< label pitch / input pitch
  double na_low = 0.13;         ///< input NA (na-limited only)
  double na_high = 0.30;        ///< label NA (na-limited only)
  int lr_iterations = 20;
  int hr_iterations = 50;
  int patch_size = 128;
  int border_px = 50;
  bool register_pairs = true;
  std::uint64_t seed = 1;

  void validate() const;
  int channels() const { return system == SystemType::pixel_limited ? 2 : 1; }
};

struct PatchPair {
  int pair_id;
  std::vector<float> input;  ///< channels x patch x patch
  std::vector<float> label;
};

/// Simulates, recovers, registers and crops training pairs in memory.
std::vector<PatchPair> make_patch_pairs(const DatasetConfig& config);

/// Writes make_patch_pairs output as a patch archive: `manifest.tsv` plus raw
/// little-endian float32 planar payloads under `pairs/`. Returns the pair
/// count.
int make_dataset(const DatasetConfig& config, const std::filesystem::path& directory);

struct ManifestRow {
  int pair_id;
  std::filesystem::path input_path;
  std::filesystem::path label_path;
  int channels;
  double pitch_um;
};

/// Parses `manifest.tsv`; paths are resolved against its directory.
std::vector<ManifestRow> read_patch_manifest(const std::filesystem::path& manifest);
std::vector<float> read_patch(const std::filesystem::path& path, int channels, int size);

}  // namespace cohsr
