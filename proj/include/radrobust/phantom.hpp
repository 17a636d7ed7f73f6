#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include "radrobust/image.hpp"

namespace radrobust {

// Band-limited noise: white noise convolved with a Gaussian of the given correlation length.
struct SmoothNoise {
    double correlation_length = 4.0;
};

// Smooth noise plus a bright band of rim_width pixels just inside the box border, scaled by rim_gain.
// The intensity window is chosen so the band always holds the ROI maximum.
struct BrightRim {
    double correlation_length = 4.0;
    int32_t rim_width = 2;
    double rim_gain = 2.0;
};

using PhantomTexture = std::variant<SmoothNoise, BrightRim>;

struct PhantomConfig {
    uint64_t seed = 7;
    int32_t n_images = 100;
    int32_t image_size = 256;
    int32_t bbox_size = 96;
    PhantomTexture texture = BrightRim{};
    Spacing base_spacing{0.07, 0.07};
    // Number of flat intensity plateaus the noise is posterized into; 0 keeps it continuous.
    int32_t plateaus = 6;
    // Per-image correlation length is drawn uniformly from length * [1 - jitter, 1 + jitter].
    double correlation_jitter = 0.8;
    // Per-image contrast is drawn uniformly from [min_contrast, 1].
    double min_contrast = 0.25;
};

struct PhantomImage {
    Image2D image;
    BBox bbox;
};

inline constexpr double kPhantomMaxIntensity = 1023.0;

// Throws InvalidConfig.
void validate(const PhantomConfig &cfg);

// Deterministic in cfg. Image k draws from its own substream derived from (seed, k), so any image
// can be regenerated alone.
std::vector<PhantomImage> generate_corpus(const PhantomConfig &cfg);
PhantomImage generate_image(const PhantomConfig &cfg, int32_t index);

enum class PhantomFormat { Raw, Png16 };

// Writes one file per image plus manifest.csv into out_dir; returns the manifest path.
std::filesystem::path write_corpus(const PhantomConfig &cfg, const std::filesystem::path &out_dir,
                                   PhantomFormat format = PhantomFormat::Raw);

} // namespace radrobust
