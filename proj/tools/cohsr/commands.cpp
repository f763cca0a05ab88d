#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"
#include "cohsr/focus.hpp"
#include "cohsr/metrics.hpp"
#include "cohsr/network.hpp"
#include "cohsr/phase_retrieval.hpp"
#include "cohsr/pixel_sr.hpp"
#include "cohsr/registration.hpp"
#include "cohsr/synth.hpp"
#include "cohsr/weights.hpp"
#include "command.hpp"
#include "svg_plot.hpp"

namespace cohsr::cli {

namespace fs = std::filesystem;

namespace {

void require_finite(const Image& image, const std::string& what) {
  for (double v : image.pixels())
    if (!std::isfinite(v)) throw NumericalFailure(what + " contains non-finite values");
}

void require_finite(const ComplexField& field, const std::string& what) {
  if (!field.all_finite()) throw NumericalFailure(what + " contains non-finite values");
}

std::vector<PhantomKind> parse_kinds(const std::string& text) {
  std::vector<PhantomKind> kinds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) continue;
    kinds.push_back(parse_phantom_kind(item.substr(first, last - first + 1)));
  }
  require(!kinds.empty(), "phantom.kinds: at least one kind is needed");
  return kinds;
}

// Paths inside a config are taken as given (relative to the working directory).
fs::path input_path(const RunConfig& c, const std::string& key) {
  const fs::path p = c.get_string(key);
  if (p.empty()) throw ConfigError(0, "key '" + key + "' is empty");
  return p;
}

std::vector<double> iota_from_one(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

// ---------------------------------------------------------------- simulate

PhantomSpec phantom_from(const RunConfig& c) {
  PhantomSpec spec;
  spec.width = spec.height = c.get_int("phantom.size_px");
  spec.kind = parse_kinds(c.get_string("phantom.kinds")).front();
  spec.amplitude_min = c.get_double("phantom.amplitude_min");
  spec.amplitude_max = c.get_double("phantom.amplitude_max");
  spec.phase_max_rad = c.get_double("phantom.phase_max_rad");
  spec.pitch_um = c.get_double("pitch_um");
  spec.wavelength_um = c.get_double("wavelength_um");
  spec.seed = c.get_u64("seed");
  spec.validate();
  return spec;
}

DatasetConfig dataset_from(const RunConfig& c) {
  DatasetConfig d;
  d.system = parse_system_type(c.get_string("system"));
  d.pairs = c.get_int("pairs");
  d.phantom_size_px = c.get_int("phantom.size_px");
  d.kinds = parse_kinds(c.get_string("phantom.kinds"));
  d.amplitude_min = c.get_double("phantom.amplitude_min");
  d.amplitude_max = c.get_double("phantom.amplitude_max");
  d.phase_max_rad = c.get_double("phantom.phase_max_rad");
  d.pitch_um = c.get_double("pitch_um");
  d.wavelength_um = c.get_double("wavelength_um");
  d.height_count = c.get_int("heights.count");
  d.first_height_um = c.get_double("heights.first_um");
  d.height_spacing_um = c.get_double("heights.spacing_um");
  d.noise_sigma = c.get_double("noise_sigma");
  d.lr_factor = c.get_int("lr_factor");
  d.na_low = c.get_double("na_low");
  d.na_high = c.get_double("na_high");
  d.lr_iterations = c.get_int("recovery.lr_iterations");
  d.hr_iterations = c.get_int("recovery.hr_iterations");
  d.patch_size = c.get_int("patch_size");
  d.border_px = c.get_int("border_px");
  d.register_pairs = c.get_bool("register_pairs");
  d.seed = c.get_u64("seed");
  d.validate();
  return d;
}

void run_simulate(const RunConfig& c, const fs::path& out) {
  const std::string mode = c.get_string("mode");
  if (mode == "dataset") {
    if (c.get_string("system").empty()) throw ConfigError(0, "missing required key 'system' (dataset mode)");
    const DatasetConfig d = settings([&] { return dataset_from(c); });
    const int n = make_dataset(d, out);
    std::cout << "pairs = " << n << "\nmanifest = " << (out / "manifest.tsv").string() << "\n";
  } else if (mode == "stack") {
    const PhantomSpec spec = settings([&] { return phantom_from(c); });
    const auto heights = settings([&] {
      return default_heights(c.get_int("heights.count"), c.get_double("heights.first_um"),
                             c.get_double("heights.spacing_um"));
    });
    const double noise = c.get_double("noise_sigma");
    const ComplexField truth = generate_phantom(spec);
    const HologramStack stack = simulate_stack(truth, heights, noise, spec.seed);
    write_stack_manifest(out / "stack.txt", stack);
    write_cfld(out / "truth.cfld", truth);
    std::cout << "frames = " << stack.frames.size() << "\nmanifest = " << (out / "stack.txt").string()
              << "\n";
  } else {
    throw ConfigError(0, "key 'mode': expected dataset or stack, got '" + mode + "'");
  }
}

// ----------------------------------------------------------------- recover

void run_recover(const RunConfig& c, const fs::path& out) {
  const auto rs = settings([&] {
    RecoverySettings s;
    s.max_iterations = c.get_int("max_iterations");
    s.stop_rel_residual = c.get_double("stop_rel_residual");
    s.amplitude_mix = c.get_double("amplitude_mix");
    s.validate();
    return s;
  });
  const bool sample_plane = c.get_bool("sample_plane");
  const std::string truth_path = c.get_string("truth");
  const HologramStack stack = read_stack_manifest(input_path(c, "stack"));

  const RecoveryResult r = multi_height_recover(stack, rs);
  for (double v : r.residuals)
    if (!std::isfinite(v)) throw NumericalFailure("recovery residual is not finite");
  const ComplexField sample = to_sample_plane(r.field, stack.heights_um.front());
  const ComplexField& result = sample_plane ? sample : r.field;
  require_finite(result, "recovered field");
  write_cfld(out / "field.cfld", result);

  std::string csv = "iteration,residual\n";
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    csv += std::to_string(i + 1) + "," + format_number(r.residuals[i]) + "\n";
  write_text(out / "residuals.csv", csv);
  write_svg(out / "residuals.svg",
            {"Multi-height recovery", "iteration", "mean relative amplitude residual", true, "residuals.csv"},
            {{"residual", iota_from_one(r.residuals.size()), r.residuals}});

  std::string report = "iterations = " + std::to_string(r.residuals.size()) + "\n" +
                       "initial_residual = " + format_number(r.residuals.front()) + "\n" +
                       "final_residual = " + format_number(r.residuals.back()) + "\n";
  if (!truth_path.empty()) {
    const ComplexField truth = read_cfld(truth_path);
    require(truth.width() == sample.width() && truth.height() == sample.height(),
            "truth field does not match the stack size");
    report += "correlation = " + format_number(complex_correlation(sample.data(), truth.data())) + "\n";
  }
  write_text(out / "recover.txt", report);
  std::cout << report;
}

// --------------------------------------------------------------- autofocus

void run_autofocus(const RunConfig& c, const fs::path& out) {
  const FocusSearch search = settings([&] {
    FocusSearch s;
    s.z_min_um = c.get_double("z_min_um");
    s.z_max_um = c.get_double("z_max_um");
    s.coarse_step_um = c.get_double("coarse_step_um");
    s.refine_tolerance_um = c.get_double("refine_tolerance_um");
    s.validate();
    return s;
  });
  const ComplexField hologram = read_cfld(input_path(c, "hologram"));
  // A file with no imaginary part is a measured intensity frame.
  const bool intensity = hologram.imag().max() == 0.0 && hologram.imag().min() == 0.0;
  const AutofocusResult r = intensity ? autofocus(hologram.real(), hologram.pitch_um(),
                                                  hologram.wavelength_um(), search)
                                      : autofocus(hologram, search);
  if (!std::isfinite(r.z_um)) throw NumericalFailure("autofocus produced a non-finite height");

  std::string csv = "z_um,tog\n";
  for (std::size_t i = 0; i < r.coarse_z_um.size(); ++i)
    csv += format_number(r.coarse_z_um[i]) + "," + format_number(r.coarse_scores[i]) + "\n";
  write_text(out / "focus.csv", csv);
  write_svg(out / "focus.svg", {"Autofocus (coarse scan)", "z (um)", "Tamura of gradient", false, "focus.csv"},
            {{"ToG", r.coarse_z_um, r.coarse_scores}});
  const std::string report = "z_um = " + format_number(r.z_um) + "\ncoarse_z_um = " +
                             format_number(r.coarse_z_um[r.coarse_index]) + "\nevaluations = " +
                             std::to_string(r.evaluations) + "\n";
  write_text(out / "focus.txt", report);
  std::cout << report;
}

// ----------------------------------------------------------------- pixelsr

std::vector<fs::path> read_frame_list(const fs::path& list) {
  std::ifstream in(list);
  if (!in) throw InvalidParameter("cannot open frame list " + list.string());
  std::vector<fs::path> frames;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    fs::path p = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (p.is_relative()) p = list.parent_path() / p;
    frames.push_back(p);
  }
  return frames;
}

void run_pixelsr(const RunConfig& c, const fs::path& out) {
  const int factor = c.get_int("factor");
  if (factor < 1) throw ConfigError(0, "key 'factor' must be >= 1");
  const std::string shifts_path = c.get_string("shifts");
  const auto paths = read_frame_list(input_path(c, "frames"));
  require(!paths.empty(), "frame list is empty");
  std::vector<Image> frames;
  double pitch = 1.0, wavelength = 1.0, z = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const ComplexField f = read_cfld(paths[i]);
    if (i == 0) pitch = f.pitch_um(), wavelength = f.wavelength_um(), z = f.z_um();
    frames.push_back(f.real());
  }
  ShiftTable table;
  if (!shifts_path.empty()) table = read_shift_table(shifts_path);
  else if (frames.size() == 1) table = ShiftTable(std::vector<ShiftEntry>{ShiftEntry{0, 0.0, 0.0}});
  else table = estimate_shifts(frames);

  const Image sr = shift_and_add(frames, table, factor);
  require_finite(sr, "super-resolved image");
  write_image(out / "sr.cfld", sr, super_resolved_pitch(pitch, factor), wavelength, z);
  write_shift_table(out / "shifts.csv", table);
  std::cout << "frames = " << frames.size() << "\nwidth = " << sr.width() << "\nheight = " << sr.height()
            << "\npitch_um = " << format_number(super_resolved_pitch(pitch, factor)) << "\n";
}

// ---------------------------------------------------------------- register

Image phase_or_real(const ComplexField& f) {
  const Image im = f.imag();
  return im.max() == 0.0 && im.min() == 0.0 ? f.real() : f.phase();
}

void run_register(const RunConfig& c, const fs::path& out) {
  const RegistrationOptions options = settings([&] {
    RegistrationOptions o;
    o.max_rotation_deg = c.get_double("max_rotation_deg");
    o.coarse_rotation_step_deg = c.get_double("coarse_rotation_step_deg");
    o.rotation_tolerance_deg = c.get_double("rotation_tolerance_deg");
    return o;
  });
  const int border = c.get_int("border_px");
  if (border < 0) throw ConfigError(0, "key 'border_px' must be >= 0");
  const ComplexField moving_field = read_cfld(input_path(c, "moving"));
  const ComplexField fixed_field = read_cfld(input_path(c, "fixed"));
  const Image moving = phase_or_real(moving_field);
  const Image fixed = phase_or_real(fixed_field);
  if (!moving.same_shape(fixed)) throw FormatError(FormatError::Kind::malformed, "moving and fixed sizes differ");

  const AffineTransform t = register_affine(moving, fixed, options);
  for (double v : t.matrix())
    if (!std::isfinite(v)) throw NumericalFailure("registration produced a non-finite transform");
  write_affine(out / "transform.txt", t);
  const Image aligned = apply_affine_and_crop(moving, t, border);
  write_image(out / "aligned.cfld", aligned, moving_field.pitch_um(), moving_field.wavelength_um(),
              moving_field.z_um());
  std::cout << "tx = " << format_number(t.tx()) << "\nty = " << format_number(t.ty())
            << "\nrotation_deg = " << format_number(t.rotation_deg()) << "\n";
}

// ------------------------------------------------------------------- infer

net::NetSpec spec_for(const std::string& system) {
  return parse_system_type(system) == SystemType::pixel_limited ? net::NetSpec::pixel_limited()
                                                                 : net::NetSpec::na_limited();
}

void run_infer(const RunConfig& c, const fs::path& out) {
  const net::NetSpec spec = settings([&] { return spec_for(c.get_string("system")); });
  const int tile = c.get_int("tile");
  const int halo = c.get_int("halo");
  if (tile < 0 || halo < 0) throw ConfigError(0, "keys 'tile' and 'halo' must be >= 0");
  const net::WeightStore weights = net::read_weights(input_path(c, "weights"), spec, net::NetRole::generator);
  const ComplexField field = read_cfld(input_path(c, "input"));
  const net::Generator generator(spec, weights);
  const net::Tensor3 input = net::field_to_tensor(field, spec.in_channels);

  const auto start = std::chrono::steady_clock::now();
  const net::Tensor3 output = tile > 0 ? net::infer_tiled(generator, input, tile, halo) : generator.infer(input);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const ComplexField result = net::tensor_to_field(output, field.pitch_um(), field.wavelength_um(), field.z_um());
  require_finite(result, "network output");
  write_cfld(out / "output.cfld", result);
  char line[128];
  std::snprintf(line, sizeof line, "inference_ms = %.1f\nwidth = %d\nheight = %d\n", ms, output.width,
                output.height);
  write_text(out / "infer.txt", line);
  std::cout << line;
}

// ---------------------------------------------------------------- evaluate

struct EvalPair {
  std::string id;
  std::vector<Image> output;
  std::vector<Image> label;
  double pitch_um;
};

std::vector<Image> planes(const std::vector<float>& data, int channels, int size) {
  std::vector<Image> out;
  for (int ch = 0; ch < channels; ++ch) {
    Image img(size, size);
    for (std::size_t i = 0; i < img.size(); ++i)
      img.pixels()[i] = data[static_cast<std::size_t>(ch) * img.size() + i];
    out.push_back(std::move(img));
  }
  return out;
}

std::vector<Image> field_channels(const ComplexField& f, int channels) {
  if (channels == 2) return {f.real(), f.imag()};
  return {f.phase()};
}

std::vector<EvalPair> read_pairs(const fs::path& manifest, int channels) {
  std::ifstream in(manifest);
  if (!in) throw InvalidParameter("cannot open pair list " + manifest.string());
  std::string header;
  std::getline(in, header);
  std::vector<EvalPair> pairs;
  if (header.rfind("pair_id\tinput_path\tlabel_path", 0) == 0) {
    // Patch archive: score the network inputs against their labels.
    for (const auto& row : read_patch_manifest(manifest)) {
      const auto bytes = fs::file_size(row.input_path) / sizeof(float) / static_cast<std::uintmax_t>(row.channels);
      const int size = static_cast<int>(std::lround(std::sqrt(static_cast<double>(bytes))));
      pairs.push_back({std::to_string(row.pair_id),
                       planes(read_patch(row.input_path, row.channels, size), row.channels, size),
                       planes(read_patch(row.label_path, row.channels, size), row.channels, size),
                       row.pitch_um});
    }
    return pairs;
  }
  if (header.rfind("pair_id\toutput_path\tlabel_path", 0) != 0)
    throw FormatError(FormatError::Kind::malformed,
                      manifest.string() + ": expected a 'pair_id<TAB>output_path<TAB>label_path' header");
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string id, a, b;
    if (!std::getline(ss, id, '\t') || !std::getline(ss, a, '\t') || !std::getline(ss, b))
      throw FormatError(FormatError::Kind::malformed, manifest.string() + ":" + std::to_string(line_no) +
                                                         ": expected three tab-separated columns");
    fs::path pa = a, pb = b;
    if (pa.is_relative()) pa = manifest.parent_path() / pa;
    if (pb.is_relative()) pb = manifest.parent_path() / pb;
    const ComplexField fa = read_cfld(pa);
    const ComplexField fb = read_cfld(pb);
    if (fa.width() != fb.width() || fa.height() != fb.height())
      throw FormatError(FormatError::Kind::malformed, "pair " + id + ": output and label sizes differ");
    pairs.push_back({id, field_channels(fa, channels), field_channels(fb, channels), fb.pitch_um()});
  }
  return pairs;
}

void run_evaluate(const RunConfig& c, const fs::path& out) {
  const int channels = settings([&] { return spec_for(c.get_string("system")).in_channels; });
  const int bins = c.get_int("spectrum_bins");
  if (bins < 1) throw ConfigError(0, "key 'spectrum_bins' must be >= 1");
  const auto pairs = read_pairs(input_path(c, "pairs"), channels);
  require(!pairs.empty(), "no pairs to evaluate");
  const int n_channels = static_cast<int>(pairs.front().label.size());
  const char* const names2[] = {"real", "imag"};
  auto channel_name = [&](int ch) { return n_channels == 2 ? std::string(names2[ch]) : std::string("phase"); };

  std::string ssim_csv = "pair_id,channel,ssim_global,ssim_windowed\n";
  std::string spectra_csv = "pair_id,channel,source,freq_cycles_per_um,mean_log_magnitude\n";
  std::vector<double> mean_ssim(n_channels, 0.0);
  std::vector<std::vector<double>> freq(n_channels), out_mean(n_channels), label_mean(n_channels);
  for (const auto& p : pairs) {
    for (int ch = 0; ch < n_channels; ++ch) {
      const Image& x = p.output[ch];
      const Image& y = p.label[ch];
      const auto k = SsimConstants::for_label(y);
      const double g = ssim(x, y, k);
      const double w = ssim_windowed(x, y, k.c1, k.c2);
      if (!std::isfinite(g) || !std::isfinite(w)) throw NumericalFailure("SSIM is not finite for pair " + p.id);
      mean_ssim[ch] += g / static_cast<double>(pairs.size());
      ssim_csv += p.id + "," + channel_name(ch) + "," + format_number(g) + "," + format_number(w) + "\n";
      for (const auto& [source, img] : {std::pair{"output", &x}, std::pair{"label", &y}}) {
        const RadialSpectrum s = radial_spectrum(*img, bins, p.pitch_um);
        for (std::size_t i = 0; i < s.bin_centers.size(); ++i)
          spectra_csv += p.id + "," + channel_name(ch) + "," + source + "," + format_number(s.bin_centers[i]) +
                         "," + format_number(s.mean_log_magnitude[i]) + "\n";
        // Averages for the plot; pairs of one archive share size and pitch.
        auto& acc = std::string(source) == "output" ? out_mean[ch] : label_mean[ch];
        if (acc.size() != s.bin_centers.size()) {
          acc.assign(s.bin_centers.size(), 0.0);
          freq[ch] = s.bin_centers;
        }
        for (std::size_t i = 0; i < s.bin_centers.size(); ++i)
          acc[i] += s.mean_log_magnitude[i] / static_cast<double>(pairs.size());
      }
    }
  }
  write_text(out / "ssim.csv", ssim_csv);
  write_text(out / "spectra.csv", spectra_csv);
  std::string report = "pairs = " + std::to_string(pairs.size()) + "\n";
  for (int ch = 0; ch < n_channels; ++ch) {
    write_svg(out / ("spectrum_" + channel_name(ch) + ".svg"),
              {"Radially averaged spectrum (" + channel_name(ch) + ")", "spatial frequency (cycles/um)",
               "mean log10(1 + |F|)", false, "spectra.csv"},
              {{"output", freq[ch], out_mean[ch]}, {"label", freq[ch], label_mean[ch]}});
    report += "mean_ssim_" + channel_name(ch) + " = " + format_number(mean_ssim[ch]) + "\n";
  }
  write_text(out / "evaluate.txt", report);
  std::cout << report;
}

}  // namespace

std::string flag_for(const std::string& key) {
  std::string f = "--";
  for (char ch : key) f += (ch == '.' || ch == '_') ? '-' : ch;
  return f;
}

std::vector<KeySpec> common_keys() {
  return {{"out", std::nullopt, "output directory"},
          {"seed", "1", "random seed"},
          {"threads", "1", "worker threads (1 is bit-reproducible)"}};
}

std::vector<Command> all_commands() {
  std::vector<Command> c;
  c.push_back({"simulate", "Simulate a training patch archive or a demo hologram stack",
               {{"mode", "dataset", "dataset | stack"},
                {"system", "", "pixel-limited | na-limited (required in dataset mode)"},
                {"pairs", "4", "number of phantoms"},
                {"phantom.size_px", "356", "phantom edge length"},
                {"phantom.kinds", "disks,bars,strokes,smooth", "phantom kinds, cycled (stack mode uses the first)"},
                {"phantom.amplitude_min", "0.6", ""},
                {"phantom.amplitude_max", "1", ""},
                {"phantom.phase_max_rad", "1", ""},
                {"pitch_um", "1.12", "sensor / label pitch"},
                {"wavelength_um", "0.55", ""},
                {"heights.count", "8", ""},
                {"heights.first_um", "300", ""},
                {"heights.spacing_um", "15", ""},
                {"noise_sigma", "0", "Gaussian intensity noise"},
                {"lr_factor", "2", "label pitch / input pitch"},
                {"na_low", "0.13", "input NA (na-limited)"},
                {"na_high", "0.3", "label NA (na-limited)"},
                {"recovery.lr_iterations", "20", ""},
                {"recovery.hr_iterations", "50", ""},
                {"patch_size", "128", ""},
                {"border_px", "50", ""},
                {"register_pairs", "true", ""}},
               run_simulate});
  c.push_back({"recover", "Multi-height phase recovery of a hologram stack",
               {{"stack", std::nullopt, "stack manifest (frame path, height per line)"},
                {"max_iterations", "50", ""},
                {"stop_rel_residual", "0.0001", ""},
                {"amplitude_mix", "0.5", ""},
                {"sample_plane", "true", "back-propagate the result to the sample plane"},
                {"truth", "", "optional ground-truth sample field for a correlation report"}},
               run_recover});
  c.push_back({"autofocus", "Tamura-of-gradient autofocus of one hologram",
               {{"hologram", std::nullopt, "CFLD1 intensity or field"},
                {"z_min_um", "200", ""},
                {"z_max_um", "400", ""},
                {"coarse_step_um", "10", ""},
                {"refine_tolerance_um", "0.5", ""}},
               run_autofocus});
  c.push_back({"pixelsr", "Shift-and-add pixel super-resolution",
               {{"frames", std::nullopt, "text file listing CFLD1 frames, reference first"},
                {"factor", "2", ""},
                {"shifts", "", "shift table CSV; estimated when empty"}},
               run_pixelsr});
  c.push_back({"register", "Rigid registration of two phase images",
               {{"moving", std::nullopt, ""},
                {"fixed", std::nullopt, ""},
                {"max_rotation_deg", "5", ""},
                {"coarse_rotation_step_deg", "0.5", ""},
                {"rotation_tolerance_deg", "0.01", ""},
                {"border_px", "0", "pixels cropped from each side of the aligned image"}},
               run_register});
  c.push_back({"infer", "Run the super-resolution generator on a field",
               {{"weights", std::nullopt, "HSRW1 generator weights"},
                {"input", std::nullopt, "CFLD1 field"},
                {"system", std::nullopt, "pixel-limited | na-limited"},
                {"tile", "0", "tile size (0: whole image)"},
                {"halo", "16", "context pixels around each tile"}},
               run_infer});
  c.push_back({"evaluate", "SSIM table and radial spectra for output/label pairs",
               {{"pairs", std::nullopt, "patch archive manifest or output/label pair list"},
                {"system", "pixel-limited", "channels compared for CFLD1 pairs"},
                {"spectrum_bins", "64", ""}},
               run_evaluate});
  return c;
}

}  // namespace cohsr::cli
