#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "radrobust/image.hpp"

namespace radrobust {

inline constexpr int32_t kDefaultBinCount = 32;
inline constexpr double kDefaultBinWidth = 25.0;

// Bin edges derived from the ROI's own extrema ("dynamic" binning).
struct DynamicBins {
    int32_t n_bins = kDefaultBinCount;
    friend bool operator==(const DynamicBins &, const DynamicBins &) = default;
};

// Fixed edges spanning [lo, hi], shared by every ROI.
struct StaticRangeBins {
    int32_t n_bins = kDefaultBinCount;
    double lo = 0.0;
    double hi = 255.0;
    friend bool operator==(const StaticRangeBins &, const StaticRangeBins &) = default;
};

// Fixed-width bins anchored at `origin`.
struct StaticWidthBins {
    double width = kDefaultBinWidth;
    double origin = 0.0;
    friend bool operator==(const StaticWidthBins &, const StaticWidthBins &) = default;
};

using BinningSpec = std::variant<DynamicBins, StaticRangeBins, StaticWidthBins>;

// Throws InvalidSpec if the binning parameters are out of range.
void validate(const BinningSpec &spec);

bool is_dynamic(const BinningSpec &spec);

// Text syntax: `dynamic:N`, `static:LO,HI,N`, `static-width:W[,ORIGIN]`.
BinningSpec parse_binning(std::string_view text);
std::string to_string(const BinningSpec &spec);

// Quantized gray levels. Levels are 1-based inside the ROI; 0 marks pixels outside it.
class LevelImage {
  public:
    LevelImage(int64_t width, int64_t height, std::vector<int32_t> levels, int32_t n_levels);

    int64_t width() const noexcept { return width_; }
    int64_t height() const noexcept { return height_; }
    int32_t n_levels() const noexcept { return n_levels_; }
    std::span<const int32_t> levels() const noexcept { return levels_; }
    int32_t at(int64_t x, int64_t y) const { return levels_[static_cast<size_t>(y * width_ + x)]; }

    friend bool operator==(const LevelImage &, const LevelImage &) = default;

  private:
    int64_t width_;
    int64_t height_;
    std::vector<int32_t> levels_;
    int32_t n_levels_;
};

LevelImage quantize(const Image2D &img, const Mask2D &roi, const BinningSpec &spec);

} // namespace radrobust
