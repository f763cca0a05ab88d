#include "cohsr/phase_retrieval.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/propagation.hpp"

namespace cohsr {

void HologramStack::validate() const {
  require(frames.size() >= 2, "hologram stack needs at least two frames");
  require(frames.size() == heights_um.size(), "hologram stack: one height per frame");
  require(pitch_um > 0.0 && wavelength_um > 0.0, "hologram stack: bad pitch or wavelength");
  for (std::size_t k = 0; k < frames.size(); ++k) {
    require(frames[k].same_shape(frames.front()), "hologram stack: frame shape mismatch");
    for (double v : frames[k].pixels())
      require(v >= 0.0 && std::isfinite(v), "hologram stack: intensities must be >= 0");
    if (k > 0)
      require(heights_um[k] > heights_um[k - 1], "hologram stack: heights must increase");
  }
}

void RecoverySettings::validate() const {
  require(max_iterations >= 1, "recovery: max_iterations must be >= 1");
  require(amplitude_mix > 0.0 && amplitude_mix <= 1.0, "recovery: amplitude_mix must be in (0, 1]");
  require(stop_rel_residual >= 0.0, "recovery: stop_rel_residual must be >= 0");
}

ComplexField amplitude_update(const ComplexField& current, const Image& measured_intensity,
                              double mix) {
  require(current.width() == measured_intensity.width() &&
              current.height() == measured_intensity.height(),
          "amplitude_update: shape mismatch");
  require(mix >= 0.0 && mix <= 1.0, "amplitude_update: mix must be in [0, 1]");
  std::vector<Complex> out(current.size());
  auto cur = current.data();
  auto meas = measured_intensity.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    require(meas[i] >= 0.0, "amplitude_update: measured intensity must be non-negative");
    const double mag = std::abs(cur[i]);
    const double target = (1.0 - mix) * mag + mix * std::sqrt(meas[i]);
    // Pixels with no phase information keep a zero phase.
    out[i] = mag > 0.0 ? cur[i] * (target / mag) : Complex{target, 0.0};
  }
  return current.with_data(std::move(out));
}

double relative_amplitude_residual(const ComplexField& field, const Image& measured_intensity) {
  auto cur = field.data();
  auto meas = measured_intensity.pixels();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    const double a = std::sqrt(meas[i]);
    const double d = std::abs(cur[i]) - a;
    num += d * d;
    den += a * a;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

RecoveryResult multi_height_recover(const HologramStack& stack, const RecoverySettings& settings) {
  stack.validate();
  settings.validate();
  const auto k = stack.frames.size();
  const auto& first = stack.frames.front();
  Image amplitude(first.width(), first.height());
  for (std::size_t i = 0; i < first.size(); ++i) amplitude.pixels()[i] = std::sqrt(first.pixels()[i]);
  ComplexField u = ComplexField::from_amplitude(amplitude, stack.pitch_um, stack.wavelength_um,
                                                stack.heights_um.front());
  const double mix = settings.amplitude_mix;
  std::vector<double> history;

  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    double residual = 0.0;
    for (std::size_t h = 0; h < k; ++h) {
      if (h > 0) u = propagate(u, stack.heights_um[h] - stack.heights_um[h - 1]);
      residual += relative_amplitude_residual(u, stack.frames[h]);
      u = amplitude_update(u, stack.frames[h], mix);
    }
    for (std::size_t h = k - 1; h-- > 0;) {
      u = propagate(u, stack.heights_um[h] - stack.heights_um[h + 1]);
      u = amplitude_update(u, stack.frames[h], mix);
    }
    residual /= static_cast<double>(k);
    history.push_back(residual);
    if (residual < settings.stop_rel_residual) break;
  }
  // Keep the nominal height exact rather than the accumulated float sum.
  u.set_z_um(stack.heights_um.front());
  return {std::move(u), std::move(history)};
}

ComplexField to_sample_plane(const ComplexField& field, double z2_um) {
  ComplexField out = propagate(field, -z2_um);
  out.set_z_um(0.0);
  return out;
}

HologramStack read_stack_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw InvalidParameter("cannot open stack manifest " + manifest.string());
  HologramStack stack;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    ss.imbue(std::locale::classic());
    std::string path;
    double height = 0.0;
    if (!(ss >> path)) continue;
    if (!(ss >> height))
      throw FormatError(FormatError::Kind::malformed,
                        manifest.string() + ":" + std::to_string(line_no) + ": missing height");
    std::filesystem::path frame_path(path);
    if (frame_path.is_relative()) frame_path = manifest.parent_path() / frame_path;
    const ComplexField frame = read_cfld(frame_path);
    if (first) {
      stack.pitch_um = frame.pitch_um();
      stack.wavelength_um = frame.wavelength_um();
      first = false;
    }
    stack.frames.push_back(frame.real());
    stack.heights_um.push_back(height);
  }
  stack.validate();
  return stack;
}

void write_stack_manifest(const std::filesystem::path& manifest, const HologramStack& stack) {
  stack.validate();
  std::ostringstream text;
  for (std::size_t k = 0; k < stack.frames.size(); ++k) {
    const std::string name = "frame_" + std::to_string(k) + ".cfld";
    write_image(manifest.parent_path() / name, stack.frames[k], stack.pitch_um,
                stack.wavelength_um, stack.heights_um[k]);
    text << name << ' ' << format_number(stack.heights_um[k]) << '\n';
  }
  write_text(manifest, text.str());
}

}  // namespace cohsr
