#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace radrobust {

// Physical pixel size in millimetres.
struct Spacing {
    double x = 1.0;
    double y = 1.0;

    friend bool operator==(const Spacing &, const Spacing &) = default;
};

// Real-valued 2-D raster, row-major. Immutable once constructed.
class Image2D {
  public:
    Image2D(int64_t width, int64_t height, Spacing spacing, std::vector<double> pixels);
    Image2D(int64_t width, int64_t height, Spacing spacing, double fill);

    int64_t width() const noexcept { return width_; }
    int64_t height() const noexcept { return height_; }
    Spacing spacing() const noexcept { return spacing_; }
    std::span<const double> pixels() const noexcept { return pixels_; }

    double at(int64_t x, int64_t y) const { return pixels_[static_cast<size_t>(y * width_ + x)]; }

    friend bool operator==(const Image2D &, const Image2D &) = default;

  private:
    int64_t width_;
    int64_t height_;
    Spacing spacing_;
    std::vector<double> pixels_;
};

// Binary region of interest, row-major. Stored as bytes (0/1) rather than vector<bool> so it can be
// viewed as a span.
class Mask2D {
  public:
    Mask2D(int64_t width, int64_t height, bool fill = false);
    Mask2D(int64_t width, int64_t height, std::vector<uint8_t> bits);

    int64_t width() const noexcept { return width_; }
    int64_t height() const noexcept { return height_; }
    std::span<const uint8_t> bits() const noexcept { return bits_; }

    bool at(int64_t x, int64_t y) const { return bits_[static_cast<size_t>(y * width_ + x)] != 0; }
    void set(int64_t x, int64_t y, bool value) { bits_[static_cast<size_t>(y * width_ + x)] = value ? 1 : 0; }

    int64_t area() const noexcept;
    bool empty() const noexcept { return area() == 0; }
    bool same_shape(const Image2D &img) const noexcept {
        return img.width() == width_ && img.height() == height_;
    }

    friend bool operator==(const Mask2D &, const Mask2D &) = default;

  private:
    int64_t width_;
    int64_t height_;
    std::vector<uint8_t> bits_;
};

// Rectangular annotation: top-left pixel index and size in pixels.
struct BBox {
    int64_t x0 = 0;
    int64_t y0 = 0;
    int64_t bw = 1;
    int64_t bh = 1;

    friend bool operator==(const BBox &, const BBox &) = default;
};

enum class Interpolation {
    CubicBSpline,
    Linear, // cross-checking fallback
};

// Rasterizes the part of `bbox` inside a width x height extent. Throws EmptyRegion when nothing is left.
Mask2D bbox_to_mask(const BBox &bbox, int64_t width, int64_t height);

// Output size along one axis for an extent of `n` pixels at `source` mm resampled to `target` mm.
int64_t resampled_extent(int64_t n, double source, double target);

// Resamples onto a grid with pixel centres at (k + 0.5) * target. Samples outside the input clamp
// to the edge. Requesting the input spacing returns an exact copy.
Image2D resample_image(const Image2D &img, Spacing target,
                       Interpolation method = Interpolation::CubicBSpline);

// Nearest-neighbour resampling on the same grid geometry as resample_image.
Mask2D resample_mask(const Mask2D &mask, Spacing source, Spacing target);

// Affine map of [min, max] onto [lo, hi]; constant images map to lo.
Image2D normalize_minmax(const Image2D &img, double lo = 0.0, double hi = 255.0);

// Component-wise median; even counts average the two middle values.
Spacing median_spacing(std::span<const Spacing> spacings);

} // namespace radrobust
