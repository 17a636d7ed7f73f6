#pragma once

#include <cstdint>

#include "radrobust/image.hpp"

namespace radrobust {

// Square footprint with its origin at the centre.
class StructuringElement {
  public:
    explicit StructuringElement(int32_t side = 3);

    int32_t side() const noexcept { return side_; }
    int32_t radius() const noexcept { return side_ / 2; }

  private:
    int32_t side_;
};

// Pixels outside the image count as background, so the image border erodes.
Mask2D erode(const Mask2D &mask, const StructuringElement &se = StructuringElement{});

// Clipped to the image extent.
Mask2D dilate(const Mask2D &mask, const StructuringElement &se = StructuringElement{});

struct PerturbResult {
    Mask2D mask;
    int32_t iterations = 0;
    double achieved_ratio = 1.0; // area after / area before
};

// Erodes (target_ratio < 1) or dilates (target_ratio > 1) one step at a time and returns the first
// mask whose area crosses target_ratio * original area. Throws VanishedMask if erosion empties the
// mask first, SaturatedMask if dilation fills the image without crossing.
PerturbResult perturb_to_area(const Mask2D &mask, double target_ratio,
                              const StructuringElement &se = StructuringElement{});

} // namespace radrobust
