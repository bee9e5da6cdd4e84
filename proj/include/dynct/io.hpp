#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynct/geometry.hpp"
#include "dynct/radon.hpp"

namespace dynct {

/// File format: one newline-terminated JSON header line,
///   {"kind":"image","n":<n_pix>}  or  {"kind":"sinogram","p":<p>,"q":<q>},
/// followed by row-major IEEE-754 binary64 little-endian values.
/// Round-trips are bit-exact; reads reject kind mismatches and length
/// mismatches (error messages name expected vs actual byte counts).
void write_image(const std::string& path, const Image& image);
Image read_image(const std::string& path);
void write_sinogram(const std::string& path, const Sinogram& sino);
Sinogram read_sinogram(const std::string& path);

/// Min-max normalization to 8-bit gray; a constant image maps to all zeros.
std::vector<std::uint8_t> normalize_to_gray8(const Image& image);

/// 8-bit grayscale PNG of the min-max normalized image.
void export_png(const Image& image, const std::string& path);

}  // namespace dynct
