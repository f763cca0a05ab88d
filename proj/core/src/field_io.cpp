#include "cohsr/field_io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cohsr/errors.hpp"

namespace cohsr {

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

std::uint32_t load_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void append_f32(std::vector<std::uint8_t>& out, float value) {
  append_u32(out, std::bit_cast<std::uint32_t>(value));
}

float load_f32(const std::uint8_t* p) { return std::bit_cast<float>(load_u32(p)); }

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error("format_number: conversion failed");
  return std::string(buf, end);
}

std::vector<std::uint8_t> encode_cfld(const ComplexField& field) {
  std::string header = "CFLD1 " + std::to_string(field.width()) + " " +
                       std::to_string(field.height()) + " " + format_number(field.pitch_um()) +
                       " " + format_number(field.wavelength_um()) + " " +
                       format_number(field.z_um()) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + field.size() * 8);
  for (const auto& c : field.data()) {
    append_f32(out, static_cast<float>(c.real()));
    append_f32(out, static_cast<float>(c.imag()));
  }
  return out;
}

ComplexField decode_cfld(std::span<const std::uint8_t> bytes) {
  using Kind = FormatError::Kind;
  if (bytes.size() < 6 || std::string(bytes.begin(), bytes.begin() + 6) != "CFLD1 ")
    throw FormatError(Kind::bad_magic, "CFLD1: bad magic");
  std::size_t eol = 0;
  while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
  if (eol == bytes.size()) throw FormatError(Kind::truncated, "CFLD1: header not terminated");
  std::istringstream header(std::string(bytes.begin() + 6, bytes.begin() + static_cast<long>(eol)));
  header.imbue(std::locale::classic());
  long long width = 0;
  long long height = 0;
  double pitch = 0.0;
  double wavelength = 0.0;
  double z = 0.0;
  if (!(header >> width >> height >> pitch >> wavelength >> z))
    throw FormatError(Kind::malformed, "CFLD1: malformed header");
  if (width < 2 || height < 2 || width > (1 << 20) || height > (1 << 20))
    throw FormatError(Kind::malformed, "CFLD1: implausible dimensions");
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t payload = bytes.size() - eol - 1;
  if (payload < n * 8) throw FormatError(Kind::truncated, "CFLD1: payload truncated");
  if (payload > n * 8) throw FormatError(Kind::malformed, "CFLD1: trailing bytes after payload");
  std::vector<Complex> data(n);
  const std::uint8_t* p = bytes.data() + eol + 1;
  for (std::size_t i = 0; i < n; ++i, p += 8)
    data[i] = Complex{load_f32(p), load_f32(p + 4)};
  try {
    return ComplexField(static_cast<int>(width), static_cast<int>(height), pitch, wavelength, z,
                        std::move(data));
  } catch (const InvalidParameter& e) {
    throw FormatError(Kind::malformed, std::string("CFLD1: ") + e.what());
  }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidParameter("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_cfld(const std::filesystem::path& path, const ComplexField& field) {
  write_file(path, encode_cfld(field));
}

ComplexField read_cfld(const std::filesystem::path& path) { return decode_cfld(read_file(path)); }

void write_image(const std::filesystem::path& path, const Image& image, double pitch_um,
                 double wavelength_um, double z_um) {
  write_cfld(path, ComplexField::from_amplitude(image, pitch_um, wavelength_um, z_um));
}

Image read_image(const std::filesystem::path& path) { return read_cfld(path).real(); }

}  // namespace cohsr
