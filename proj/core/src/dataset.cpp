#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/interpolation.hpp"
#include "cohsr/parallel.hpp"
#include "cohsr/phase_retrieval.hpp"
#include "cohsr/pixel_sr.hpp"
#include "cohsr/registration.hpp"
#include "cohsr/synth.hpp"

namespace cohsr {

namespace {

ComplexField recover_to_sample(HologramStack stack, int iterations) {
  RecoverySettings settings;
  settings.max_iterations = iterations;
  const double z2 = stack.heights_um.front();
  return to_sample_plane(multi_height_recover(stack, settings).field, z2);
}

// Pixel-limited label holograms: the sensor is stepped through factor x
// factor sub-pixel positions and the frames are fused by shift-and-add.
HologramStack pixel_sr_stack(const HologramStack& fine, int factor) {
  HologramStack out = fine;
  const ShiftTable table = ShiftTable::canonical(factor);
  for (auto& frame : out.frames) {
    const auto lr = simulate_pixel_limited(frame, fine.pitch_um, factor, table);
    frame = shift_and_add(lr.frames, table, factor);
  }
  return out;
}

HologramStack decimated_stack(const HologramStack& fine, int factor) {
  HologramStack out = fine;
  out.pitch_um = fine.pitch_um * factor;
  for (auto& frame : out.frames) frame = decimate(frame, factor);
  return out;
}

ComplexField upsample_field(const ComplexField& field, int factor) {
  const Image re = upsample_bicubic(field.real(), factor);
  const Image im = upsample_bicubic(field.imag(), factor);
  std::vector<Complex> data(re.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re.pixels()[i], im.pixels()[i]};
  return ComplexField(re.width(), re.height(), field.pitch_um() / factor, field.wavelength_um(),
                      field.z_um(), std::move(data));
}

std::vector<Image> channels_of(const ComplexField& field, SystemType system) {
  if (system == SystemType::pixel_limited) return {field.real(), field.imag()};
  return {field.phase()};
}

struct PhantomPairs {
  std::vector<std::vector<Image>> inputs;
  std::vector<std::vector<Image>> labels;
};

PhantomPairs simulate_phantom(const DatasetConfig& c, int index, std::uint64_t seed) {
  PhantomSpec spec;
  spec.width = spec.height = c.phantom_size_px;
  spec.pitch_um = c.pitch_um;
  spec.wavelength_um = c.wavelength_um;
  spec.kind = c.kinds[static_cast<std::size_t>(index) % c.kinds.size()];
  spec.amplitude_min = c.amplitude_min;
  spec.amplitude_max = c.amplitude_max;
  spec.phase_max_rad = c.phase_max_rad;
  std::uint64_t state = seed;
  spec.seed = splitmix64(state);
  const ComplexField phantom = generate_phantom(spec);
  const auto heights = default_heights(c.height_count, c.first_height_um, c.height_spacing_um);

  std::optional<ComplexField> input, label;
  if (c.system == SystemType::pixel_limited) {
    const HologramStack fine = simulate_stack(phantom, heights, c.noise_sigma, splitmix64(state));
    label = recover_to_sample(pixel_sr_stack(fine, c.lr_factor), c.hr_iterations);
    input = upsample_field(recover_to_sample(decimated_stack(fine, c.lr_factor), c.lr_iterations),
                           c.lr_factor);
  } else {
    const HologramStack hi = simulate_stack(simulate_na_limited(phantom, c.na_high, c.wavelength_um),
                                            heights, c.noise_sigma, splitmix64(state));
    const HologramStack lo = simulate_stack(simulate_na_limited(phantom, c.na_low, c.wavelength_um),
                                            heights, c.noise_sigma, splitmix64(state));
    label = recover_to_sample(hi, c.hr_iterations);
    input = upsample_field(recover_to_sample(decimated_stack(lo, c.lr_factor), c.lr_iterations),
                           c.lr_factor);
  }

  AffineTransform t;
  if (c.register_pairs) {
    try {
      t = register_affine(input->phase(), label->phase());
    } catch (const DegenerateInput&) {
      t = AffineTransform();
    }
  }
  std::vector<Image> in_channels, label_channels;
  for (const auto& ch : channels_of(*input, c.system))
    in_channels.push_back(apply_affine_and_crop(ch, t, c.border_px));
  for (const auto& ch : channels_of(*label, c.system)) {
    const int side = c.phantom_size_px - 2 * c.border_px;
    label_channels.push_back(crop(ch, c.border_px, c.border_px, side, side));
  }

  PhantomPairs out;
  const int side = c.phantom_size_px - 2 * c.border_px;
  const int per_row = side / c.patch_size;
  for (int py = 0; py < per_row; ++py)
    for (int px = 0; px < per_row; ++px) {
      std::vector<Image> in_patch, label_patch;
      for (const auto& ch : in_channels)
        in_patch.push_back(crop(ch, px * c.patch_size, py * c.patch_size, c.patch_size, c.patch_size));
      for (const auto& ch : label_channels)
        label_patch.push_back(
            crop(ch, px * c.patch_size, py * c.patch_size, c.patch_size, c.patch_size));
      out.inputs.push_back(std::move(in_patch));
      out.labels.push_back(std::move(label_patch));
    }
  return out;
}

std::vector<float> flatten(const std::vector<Image>& channels) {
  std::vector<float> out;
  for (const auto& ch : channels)
    for (double v : ch.pixels()) out.push_back(static_cast<float>(v));
  return out;
}

std::string pair_name(int id) {
  std::string digits = std::to_string(id);
  return std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits;
}

}  // namespace

SystemType parse_system_type(const std::string& name) {
  if (name == "pixel-limited") return SystemType::pixel_limited;
  if (name == "na-limited") return SystemType::na_limited;
  throw InvalidParameter("unknown system type: " + name + " (expected pixel-limited or na-limited)");
}

std::string to_string(SystemType type) {
  return type == SystemType::pixel_limited ? "pixel-limited" : "na-limited";
}

void DatasetConfig::validate() const {
  require(pairs >= 1, "dataset: pairs must be >= 1");
  require(!kinds.empty(), "dataset: at least one phantom kind is required");
  require(lr_factor >= 1, "dataset: lr_factor must be >= 1");
  require(patch_size >= 8, "dataset: patch_size must be >= 8");
  require(border_px >= 0, "dataset: border_px must be >= 0");
  require(phantom_size_px % lr_factor == 0, "dataset: phantom_size_px must be divisible by lr_factor");
  require(phantom_size_px - 2 * border_px >= patch_size,
          "dataset: phantom_size_px leaves no room for a patch after cropping the border");
  require(height_count >= 2, "dataset: height_count must be >= 2");
  require(lr_iterations >= 1 && hr_iterations >= 1, "dataset: iteration counts must be >= 1");
  require(na_low > 0 && na_low <= na_high && na_high <= 1, "dataset: need 0 < na_low <= na_high <= 1");
  PhantomSpec probe;
  probe.amplitude_min = amplitude_min;
  probe.amplitude_max = amplitude_max;
  probe.phase_max_rad = phase_max_rad;
  probe.pitch_um = pitch_um;
  probe.wavelength_um = wavelength_um;
  probe.validate();
}

std::vector<PatchPair> make_patch_pairs(const DatasetConfig& config) {
  config.validate();
  const int side = config.phantom_size_px - 2 * config.border_px;
  const int per_phantom = (side / config.patch_size) * (side / config.patch_size);
  const int phantoms = (config.pairs + per_phantom - 1) / per_phantom;

  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(phantoms));
  std::uint64_t state = config.seed;
  for (auto& s : seeds) s = splitmix64(state);

  std::vector<PhantomPairs> results(seeds.size());
  parallel_for(0, phantoms, [&](int i) {
    results[static_cast<std::size_t>(i)] = simulate_phantom(config, i, seeds[static_cast<std::size_t>(i)]);
  });

  std::vector<PatchPair> pairs;
  for (const auto& r : results)
    for (std::size_t k = 0; k < r.inputs.size() && static_cast<int>(pairs.size()) < config.pairs; ++k)
      pairs.push_back({static_cast<int>(pairs.size()), flatten(r.inputs[k]), flatten(r.labels[k])});
  return pairs;
}

int make_dataset(const DatasetConfig& config, const std::filesystem::path& directory) {
  const auto pairs = make_patch_pairs(config);
  std::filesystem::create_directories(directory / "pairs");
  std::ostringstream manifest;
  manifest << "pair_id\tinput_path\tlabel_path\tchannels\tpitch_um\n";
  for (const auto& p : pairs) {
    const std::string stem = "pairs/" + pair_name(p.pair_id);
    for (const auto& [suffix, values] : {std::pair{"_input.f32", &p.input}, std::pair{"_label.f32", &p.label}}) {
      std::vector<std::uint8_t> bytes;
      bytes.reserve(values->size() * 4);
      for (float v : *values) append_f32(bytes, v);
      write_file(directory / (stem + suffix), bytes);
    }
    manifest << p.pair_id << '\t' << stem << "_input.f32\t" << stem << "_label.f32\t"
             << config.channels() << '\t' << format_number(config.pitch_um) << '\n';
  }
  write_text(directory / "manifest.tsv", manifest.str());
  return static_cast<int>(pairs.size());
}

std::vector<ManifestRow> read_patch_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw InvalidParameter("cannot open patch manifest " + manifest.string());
  const auto base = manifest.parent_path();
  std::string line;
  if (!std::getline(in, line) || line != "pair_id\tinput_path\tlabel_path\tchannels\tpitch_um")
    throw FormatError(FormatError::Kind::malformed, "patch manifest: unexpected header");
  std::vector<ManifestRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ManifestRow row{};
    std::string input, label;
    if (!(ls >> row.pair_id >> input >> label >> row.channels >> row.pitch_um))
      throw FormatError(FormatError::Kind::malformed, "patch manifest: bad row: " + line);
    row.input_path = base / input;
    row.label_path = base / label;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<float> read_patch(const std::filesystem::path& path, int channels, int size) {
  const auto bytes = read_file(path);
  const std::size_t n = static_cast<std::size_t>(channels) * size * size;
  if (bytes.size() != n * 4)
    throw FormatError(FormatError::Kind::truncated,
                      "patch " + path.string() + " has " + std::to_string(bytes.size()) +
                          " bytes, expected " + std::to_string(n * 4));
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = load_f32(bytes.data() + 4 * i);
  return out;
}

}  // namespace cohsr
