#include "cohsr/weights.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"

namespace cohsr::net {

namespace {

constexpr char kMagic[] = "HSRW1";
constexpr std::size_t kMagicSize = 5;

std::size_t element_count(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - offset, 1u << 30));
    crc = crc32(crc, bytes.data() + offset, chunk);
    offset += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

struct Manifest {
  std::string fingerprint;
  std::vector<TensorSpec> tensors;
};

Manifest parse_manifest(const std::string& text) {
  using Kind = FormatError::Kind;
  std::istringstream in(text);
  Manifest m;
  if (!std::getline(in, m.fingerprint) || m.fingerprint.empty())
    throw FormatError(Kind::malformed, "HSRW1: manifest has no fingerprint line");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    TensorSpec t;
    if (!(ls >> t.name)) throw FormatError(Kind::malformed, "HSRW1: empty manifest entry");
    long long d = 0;
    while (ls >> d) {
      if (d <= 0 || d > (1LL << 24)) throw FormatError(Kind::malformed, "HSRW1: bad dimension in " + t.name);
      t.shape.push_back(static_cast<int>(d));
    }
    if (!ls.eof()) throw FormatError(Kind::malformed, "HSRW1: bad dimension in " + t.name);
    if (t.shape.empty()) throw FormatError(Kind::malformed, "HSRW1: tensor without shape: " + t.name);
    m.tensors.push_back(std::move(t));
  }
  return m;
}

void check_manifest(const std::string& fingerprint, const std::vector<TensorSpec>& tensors,
                    const NetSpec& spec, NetRole role) {
  const std::string expected = spec.fingerprint_hex(role);
  if (fingerprint != expected)
    throw IncompatibleWeights("weights fingerprint mismatch: file has " + fingerprint +
                              ", network expects " + expected + " (" +
                              spec.canonical_string(role) + ")");
  const auto want = build_graph(spec, role).tensors();
  if (tensors.size() != want.size())
    throw IncompatibleWeights("weights fingerprint matches but tensor count differs: file has " +
                              std::to_string(tensors.size()) + ", network expects " +
                              std::to_string(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i)
    if (!(tensors[i] == want[i]))
      throw IncompatibleWeights("weights fingerprint matches but tensor " + std::to_string(i) +
                                " (" + tensors[i].name + ") does not match the architecture (" +
                                want[i].name + ")");
}

struct Header {
  Manifest manifest;
  std::size_t payload_offset;
};

Header read_header(std::span<const std::uint8_t> bytes) {
  using Kind = FormatError::Kind;
  if (bytes.size() < kMagicSize || !std::equal(kMagic, kMagic + kMagicSize, bytes.begin()))
    throw FormatError(Kind::bad_magic, "HSRW1: bad magic");
  if (bytes.size() < kMagicSize + 4) throw FormatError(Kind::truncated, "HSRW1: truncated header");
  const std::uint32_t manifest_len = load_u32(bytes.data() + kMagicSize);
  const std::size_t manifest_end = kMagicSize + 4 + static_cast<std::size_t>(manifest_len);
  if (manifest_end > bytes.size()) throw FormatError(Kind::truncated, "HSRW1: truncated manifest");
  const std::string text(bytes.begin() + kMagicSize + 4, bytes.begin() + static_cast<long>(manifest_end));
  return {parse_manifest(text), manifest_end};
}

WeightStore read_payload(std::span<const std::uint8_t> bytes, Header header) {
  using Kind = FormatError::Kind;
  std::size_t floats = 0;
  for (const auto& t : header.manifest.tensors) floats += element_count(t.shape);
  const std::size_t payload_bytes = floats * 4;
  const std::size_t expected_size = header.payload_offset + payload_bytes + 4;
  if (bytes.size() < expected_size) throw FormatError(Kind::truncated, "HSRW1: truncated payload");
  if (bytes.size() > expected_size) throw FormatError(Kind::malformed, "HSRW1: trailing bytes");
  const auto payload = bytes.subspan(header.payload_offset, payload_bytes);
  const std::uint32_t stored = load_u32(bytes.data() + header.payload_offset + payload_bytes);
  if (crc32_of(payload) != stored) throw FormatError(Kind::checksum, "HSRW1: payload checksum mismatch");

  std::vector<NamedTensor> tensors;
  const std::uint8_t* p = payload.data();
  for (auto& t : header.manifest.tensors) {
    NamedTensor nt{std::move(t.name), std::move(t.shape), {}};
    nt.values.resize(element_count(nt.shape));
    for (float& v : nt.values) {
      v = load_f32(p);
      p += 4;
    }
    tensors.push_back(std::move(nt));
  }
  return WeightStore(std::move(header.manifest.fingerprint), std::move(tensors));
}

}  // namespace

WeightStore::WeightStore(std::string fingerprint_hex, std::vector<NamedTensor> tensors)
    : fingerprint_(std::move(fingerprint_hex)), tensors_(std::move(tensors)) {
  require(!fingerprint_.empty() && fingerprint_.find_first_of(" \n\r\t") == std::string::npos,
          "weight store: fingerprint must be a single token");
  for (const auto& t : tensors_) {
    require(!t.name.empty() && t.name.find_first_of(" \n\r\t") == std::string::npos,
            "weight store: tensor names must be single tokens");
    require(!t.shape.empty() && t.values.size() == element_count(t.shape),
            "weight store: tensor " + t.name + " has inconsistent shape and values");
  }
}

WeightStore WeightStore::zeros(const NetSpec& spec, NetRole role) {
  std::vector<NamedTensor> tensors;
  for (auto& t : build_graph(spec, role).tensors()) {
    const std::size_t n = t.element_count();
    tensors.push_back({std::move(t.name), std::move(t.shape), std::vector<float>(n, 0.0f)});
  }
  return WeightStore(spec.fingerprint_hex(role), std::move(tensors));
}

const NamedTensor& WeightStore::tensor(const std::string& name) const {
  for (const auto& t : tensors_)
    if (t.name == name) return t;
  throw InvalidParameter("weight store has no tensor " + name);
}

NamedTensor& WeightStore::tensor(const std::string& name) {
  return const_cast<NamedTensor&>(std::as_const(*this).tensor(name));
}

void WeightStore::check_compatible(const NetSpec& spec, NetRole role) const {
  std::vector<TensorSpec> specs;
  for (const auto& t : tensors_) specs.push_back({t.name, t.shape});
  check_manifest(fingerprint_, specs, spec, role);
}

std::vector<std::uint8_t> save_weights(const WeightStore& store) {
  std::string manifest = store.fingerprint() + "\n";
  std::size_t floats = 0;
  for (const auto& t : store.tensors()) {
    manifest += t.name;
    for (int d : t.shape) manifest += " " + std::to_string(d);
    manifest += "\n";
    floats += t.values.size();
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + kMagicSize);
  append_u32(out, static_cast<std::uint32_t>(manifest.size()));
  out.insert(out.end(), manifest.begin(), manifest.end());
  const std::size_t payload_start = out.size();
  out.reserve(out.size() + floats * 4 + 4);
  for (const auto& t : store.tensors())
    for (float v : t.values) append_f32(out, v);
  const std::uint32_t crc = crc32_of(std::span(out).subspan(payload_start));
  append_u32(out, crc);
  return out;
}

WeightStore load_weights(std::span<const std::uint8_t> bytes) {
  return read_payload(bytes, read_header(bytes));
}

WeightStore load_weights(std::span<const std::uint8_t> bytes, const NetSpec& spec, NetRole role) {
  Header header = read_header(bytes);
  check_manifest(header.manifest.fingerprint, header.manifest.tensors, spec, role);
  return read_payload(bytes, std::move(header));
}

void write_weights(const std::filesystem::path& path, const WeightStore& store) {
  write_file(path, save_weights(store));
}

WeightStore read_weights(const std::filesystem::path& path, const NetSpec& spec, NetRole role) {
  return load_weights(read_file(path), spec, role);
}

WeightStore identity_generator_weights(const NetSpec& spec) {
  require(spec.in_channels == spec.out_channels,
          "identity weights need as many output channels as input channels");
  require(2 * spec.in_channels <= spec.base_channels, "identity weights: too few base channels");
  const LayerGraph graph = build_generator(spec);
  WeightStore store = WeightStore::zeros(spec, NetRole::generator);
  const int k = spec.kernel;
  const int centre = (k / 2) * k + k / 2;
  const int c = spec.in_channels;
  // lrelu(a) - lrelu(-a) = (1 + slope) a, so a (+a, -a) pair survives any
  // number of activations.
  const auto unpair = static_cast<float>(1.0 / (1.0 + spec.lrelu_slope));
  bool first = true;
  const OpKind* previous = nullptr;
  for (const auto& op : graph.ops) {
    if (op.kind == OpKind::conv) {
      auto& w = store.tensor(op.name + ".weight").values;
      auto at = [&](int co, int ci) -> float& {
        return w[(static_cast<std::size_t>(co) * op.in_channels + ci) * k * k + centre];
      };
      const bool after_concat = previous != nullptr && *previous == OpKind::concat_skip;
      for (int i = 0; i < c; ++i) {
        const int outputs = op.lrelu ? 2 : 1;
        for (int sign = 0; sign < outputs; ++sign) {
          const int co = op.lrelu ? 2 * i + sign : i;
          const float s = sign == 0 ? 1.0f : -1.0f;
          if (first) {
            at(co, i) = s;
          } else if (after_concat) {
            const int half = op.in_channels / 2;
            for (int base : {0, half}) {
              at(co, base + 2 * i) = 0.5f * s * unpair;
              at(co, base + 2 * i + 1) = -0.5f * s * unpair;
            }
          } else {
            at(co, 2 * i) = s * unpair;
            at(co, 2 * i + 1) = -s * unpair;
          }
        }
      }
      first = false;
    }
    previous = &op.kind;
  }
  return store;
}

WeightStore random_weights(const NetSpec& spec, NetRole role, std::uint64_t seed, double stddev) {
  require(stddev > 0.0, "random_weights: stddev must be positive");
  WeightStore store = WeightStore::zeros(spec, role);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, stddev);
  for (auto& t : store.tensors()) {
    if (t.name.ends_with(".bias")) continue;
    for (float& v : t.values) {
      double x = 0.0;
      do {
        x = normal(rng);
      } while (std::abs(x) > 2.0 * stddev);
      v = static_cast<float>(x);
    }
  }
  return store;
}

}  // namespace cohsr::net
