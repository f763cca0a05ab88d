#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

// CFLD1: one ASCII header line
//   CFLD1 <width> <height> <pitch_um> <wavelength_um> <z_um>\n
// then width*height interleaved (re, im) binary32 little-endian pairs,
// row-major. Real images are stored with a zero imaginary part.

std::vector<std::uint8_t> encode_cfld(const ComplexField& field);
ComplexField decode_cfld(std::span<const std::uint8_t> bytes);

void write_cfld(const std::filesystem::path& path, const ComplexField& field);
ComplexField read_cfld(const std::filesystem::path& path);

/// Stores `image` as the real part of a CFLD1 file.
void write_image(const std::filesystem::path& path, const Image& image, double pitch_um = 1.0,
                 double wavelength_um = 1.0, double z_um = 0.0);
/// Real part of a CFLD1 file.
Image read_image(const std::filesystem::path& path);

// Little-endian binary32 helpers shared by the binary formats.
void append_f32(std::vector<std::uint8_t>& out, float value);
float load_f32(const std::uint8_t* p);
void append_u32(std::vector<std::uint8_t>& out, std::uint32_t value);
std::uint32_t load_u32(const std::uint8_t* p);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal text that round-trips the double.
std::string format_number(double value);

}  // namespace cohsr
