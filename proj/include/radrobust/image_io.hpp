#pragma once

#include <filesystem>

#include "radrobust/image.hpp"

namespace radrobust {

enum class PngDepth { Eight = 8, Sixteen = 16 };

// Single-channel 8- or 16-bit grayscale PNG. PNG carries no usable pixel spacing, so the caller
// supplies it.
Image2D read_png(const std::filesystem::path &path, Spacing spacing);

// Intensities are rounded and clamped to the range of the chosen depth.
void write_png(const std::filesystem::path &path, const Image2D &img, PngDepth depth);

// Raw float32 format: the ASCII header line
//   P_RAWF32 <width> <height> <spacing_x> <spacing_y>\n
// followed by width*height little-endian IEEE-754 floats in row-major order.
Image2D read_raw_f32(const std::filesystem::path &path);
void write_raw_f32(const std::filesystem::path &path, const Image2D &img);

// Dispatches on extension: .png -> read_png with `spacing`; anything else is read as raw float32
// and its spacing is replaced by `spacing`.
Image2D load_image(const std::filesystem::path &path, Spacing spacing);

} // namespace radrobust
