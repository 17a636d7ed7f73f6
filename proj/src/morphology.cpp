#include "radrobust/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "radrobust/error.hpp"

namespace radrobust {

namespace {

// Sliding-window pass along one axis. For erosion a pixel survives when all `side` pixels in its
// window are set (out-of-image counts as unset); for dilation when any is set. Applying the pass
// along x then y gives the square footprint.
std::vector<uint8_t> pass(const std::vector<uint8_t> &in, int64_t w, int64_t h, int32_t r, bool horizontal,
                          bool erode_mode) {
    std::vector<uint8_t> out(in.size(), 0);
    const int64_t len = horizontal ? w : h;
    const int64_t lines = horizontal ? h : w;
    std::vector<int64_t> prefix(static_cast<size_t>(len + 1));
    for (int64_t line = 0; line < lines; ++line) {
        auto index = [&](int64_t k) {
            return static_cast<size_t>(horizontal ? line * w + k : k * w + line);
        };
        prefix[0] = 0;
        for (int64_t k = 0; k < len; ++k) {
            prefix[static_cast<size_t>(k + 1)] = prefix[static_cast<size_t>(k)] + in[index(k)];
        }
        for (int64_t k = 0; k < len; ++k) {
            const int64_t lo = k - r;
            const int64_t hi = k + r;
            const int64_t set =
                prefix[static_cast<size_t>(std::min(hi, len - 1) + 1)] - prefix[static_cast<size_t>(std::max<int64_t>(lo, 0))];
            bool on = false;
            if (erode_mode) {
                on = lo >= 0 && hi < len && set == 2 * r + 1;
            } else {
                on = set > 0;
            }
            out[index(k)] = on ? 1 : 0;
        }
    }
    return out;
}

Mask2D apply(const Mask2D &mask, const StructuringElement &se, bool erode_mode) {
    const int64_t w = mask.width();
    const int64_t h = mask.height();
    std::vector<uint8_t> bits(mask.bits().begin(), mask.bits().end());
    bits = pass(bits, w, h, se.radius(), true, erode_mode);
    bits = pass(bits, w, h, se.radius(), false, erode_mode);
    return Mask2D(w, h, std::move(bits));
}

} // namespace

StructuringElement::StructuringElement(int32_t side) : side_(side) {
    if (side < 3 || side % 2 == 0) {
        throw Error(ErrorKind::InvalidArgument,
                    "structuring element side must be odd and >= 3, got " + std::to_string(side));
    }
}

Mask2D erode(const Mask2D &mask, const StructuringElement &se) { return apply(mask, se, true); }

Mask2D dilate(const Mask2D &mask, const StructuringElement &se) { return apply(mask, se, false); }

PerturbResult perturb_to_area(const Mask2D &mask, double target_ratio, const StructuringElement &se) {
    if (!std::isfinite(target_ratio) || !(target_ratio > 0.0) || target_ratio == 1.0) {
        throw Error(ErrorKind::InvalidArgument, "target area ratio must be positive and different from 1");
    }
    const int64_t original = mask.area();
    if (original == 0) {
        throw Error(ErrorKind::EmptyRoi, "cannot perturb an empty mask");
    }
    const double threshold = target_ratio * static_cast<double>(original);
    const int64_t capacity = mask.width() * mask.height();
    const bool shrinking = target_ratio < 1.0;

    Mask2D current = mask;
    int64_t area = original;
    for (int32_t iteration = 1;; ++iteration) {
        current = shrinking ? erode(current, se) : dilate(current, se);
        const int64_t next = current.area();
        if (shrinking) {
            if (next == 0) {
                throw Error(ErrorKind::VanishedMask, "erosion emptied the mask after " + std::to_string(iteration) +
                                                         " step(s) without reaching the target area");
            }
            if (static_cast<double>(next) <= threshold) {
                return {std::move(current), iteration, static_cast<double>(next) / static_cast<double>(original)};
            }
        } else {
            if (static_cast<double>(next) >= threshold) {
                return {std::move(current), iteration, static_cast<double>(next) / static_cast<double>(original)};
            }
            if (next == capacity || next == area) {
                throw Error(ErrorKind::SaturatedMask, "dilation filled the image after " + std::to_string(iteration) +
                                                          " step(s) without reaching the target area");
            }
        }
        area = next;
    }
}

} // namespace radrobust
