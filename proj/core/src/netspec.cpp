#include "cohsr/netspec.hpp"

#include <cstdio>

#include "cohsr/errors.hpp"
#include "cohsr/field_io.hpp"

namespace cohsr::net {

NetSpec NetSpec::pixel_limited() { return NetSpec{}; }

NetSpec NetSpec::na_limited() {
  NetSpec spec;
  spec.in_channels = 1;
  spec.out_channels = 1;
  return spec;
}

void NetSpec::validate() const {
  require(in_channels >= 1 && out_channels >= 1, "netspec: channel counts must be >= 1");
  require(base_channels >= 1, "netspec: base_channels must be >= 1");
  require(depth >= 1 && depth <= 12, "netspec: depth must be in [1, 12]");
  require(kernel >= 1 && kernel % 2 == 1, "netspec: kernel must be odd");
  require(lrelu_slope >= 0.0 && lrelu_slope < 1.0, "netspec: lrelu_slope must be in [0, 1)");
  require(discriminator_blocks >= 1 && discriminator_blocks <= 12,
          "netspec: discriminator_blocks must be in [1, 12]");
}

std::string NetSpec::canonical_string(NetRole role) const {
  validate();
  std::string s = role == NetRole::generator ? "hsr-unet-generator" : "hsr-discriminator";
  s += ";in=" + std::to_string(in_channels);
  s += ";out=" + std::to_string(out_channels);
  s += ";base=" + std::to_string(base_channels);
  s += ";depth=" + std::to_string(depth);
  s += ";kernel=" + std::to_string(kernel);
  s += ";slope=" + format_number(lrelu_slope);
  s += ";dblocks=" + std::to_string(discriminator_blocks);
  return s;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t NetSpec::fingerprint(NetRole role) const { return fnv1a64(canonical_string(role)); }

std::string NetSpec::fingerprint_hex(NetRole role) const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fingerprint(role)));
  return buf;
}

std::size_t TensorSpec::element_count() const {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

std::vector<TensorSpec> LayerGraph::tensors() const {
  std::vector<TensorSpec> out;
  const int k = spec.kernel;
  for (const auto& op : ops) {
    if (op.kind == OpKind::conv) {
      out.push_back({op.name + ".weight", {op.out_channels, op.in_channels, k, k}});
      out.push_back({op.name + ".bias", {op.out_channels}});
    } else if (op.kind == OpKind::dense) {
      out.push_back({op.name + ".weight", {op.out_channels, op.in_channels}});
      out.push_back({op.name + ".bias", {op.out_channels}});
    }
  }
  return out;
}

std::size_t LayerGraph::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += t.element_count();
  return n;
}

std::vector<int> LayerGraph::channel_progression() const {
  std::vector<int> out;
  for (const auto& op : ops)
    if (op.kind == OpKind::conv && (out.empty() || op.out_channels != op.in_channels))
      out.push_back(op.out_channels);
  return out;
}

LayerGraph build_generator(const NetSpec& spec) {
  spec.validate();
  LayerGraph g{NetRole::generator, spec, {}};
  auto conv = [&](std::string name, int cin, int cout, bool act) {
    g.ops.push_back({OpKind::conv, std::move(name), cin, cout, 1, act});
  };
  int c = spec.base_channels;
  conv("g.input", spec.in_channels, c, true);
  for (int l = 0; l < spec.depth; ++l) {
    const std::string block = "g.down" + std::to_string(l);
    conv(block + ".conv0", c, c, true);
    conv(block + ".conv1", c, 2 * c, true);
    c *= 2;
    g.ops.push_back({OpKind::push_skip, block, c, c});
    g.ops.push_back({OpKind::avg_pool, block + ".pool", c, c});
  }
  conv("g.bridge", c, c, true);
  for (int l = spec.depth - 1; l >= 0; --l) {
    const std::string block = "g.up" + std::to_string(l);
    g.ops.push_back({OpKind::upsample, block + ".upsample", c, c});
    g.ops.push_back({OpKind::concat_skip, block + ".concat", c, 2 * c});
    conv(block + ".conv0", 2 * c, c, true);
    conv(block + ".conv1", c, c / 2, true);
    c /= 2;
  }
  conv("g.output", c, spec.out_channels, false);
  return g;
}

LayerGraph build_discriminator(const NetSpec& spec) {
  spec.validate();
  LayerGraph g{NetRole::discriminator, spec, {}};
  int c = spec.base_channels;
  g.ops.push_back({OpKind::conv, "d.input", spec.in_channels, c, 1, true});
  for (int b = 0; b < spec.discriminator_blocks; ++b) {
    const std::string block = "d.block" + std::to_string(b);
    g.ops.push_back({OpKind::conv, block + ".conv0", c, c, 1, true});
    g.ops.push_back({OpKind::conv, block + ".conv1", c, 2 * c, 2, true});
    c *= 2;
  }
  g.ops.push_back({OpKind::global_avg_pool, "d.pool", c, c});
  g.ops.push_back({OpKind::dense, "d.fc0", c, c, 1, true});
  g.ops.push_back({OpKind::dense, "d.fc1", c, 1, 1, false});
  g.ops.push_back({OpKind::sigmoid, "d.sigmoid", 1, 1});
  return g;
}

LayerGraph build_graph(const NetSpec& spec, NetRole role) {
  return role == NetRole::generator ? build_generator(spec) : build_discriminator(spec);
}

}  // namespace cohsr::net
