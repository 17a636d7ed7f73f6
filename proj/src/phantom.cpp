#include "radrobust/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "radrobust/error.hpp"
#include "radrobust/image_io.hpp"
#include "radrobust/manifest.hpp"

namespace radrobust {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// mt19937_64's output sequence is fixed by the standard; the std distributions are not, so values
// are drawn from raw 64-bit words here.
class Stream {
  public:
    Stream(uint64_t seed, int32_t index) : engine_(splitmix64(splitmix64(seed) ^ static_cast<uint64_t>(index))) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int64_t integer(int64_t lo, int64_t hi_inclusive) {
        const auto span = static_cast<uint64_t>(hi_inclusive - lo + 1);
        return lo + static_cast<int64_t>(engine_() % span);
    }

  private:
    std::mt19937_64 engine_;
};

std::vector<double> gaussian_kernel(double sigma) {
    const auto radius = static_cast<int64_t>(std::ceil(3.0 * sigma));
    std::vector<double> k(static_cast<size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int64_t i = -radius; i <= radius; ++i) {
        const double v = std::exp(-0.5 * static_cast<double>(i * i) / (sigma * sigma));
        k[static_cast<size_t>(i + radius)] = v;
        sum += v;
    }
    for (auto &v : k) {
        v /= sum;
    }
    return k;
}

// Standardized (zero mean, unit variance) smooth noise of size n x n.
std::vector<double> smooth_field(Stream &rng, int64_t n, double sigma) {
    const auto kernel = gaussian_kernel(sigma);
    const auto radius = static_cast<int64_t>(kernel.size() / 2);
    const int64_t padded = n + 2 * radius;
    std::vector<double> noise(static_cast<size_t>(padded * padded));
    for (auto &v : noise) {
        v = rng.uniform() - 0.5;
    }
    // Horizontal pass keeps all padded rows; vertical pass produces the valid n x n window.
    std::vector<double> rows(static_cast<size_t>(padded * n), 0.0);
    for (int64_t y = 0; y < padded; ++y) {
        for (int64_t x = 0; x < n; ++x) {
            double acc = 0.0;
            for (size_t k = 0; k < kernel.size(); ++k) {
                acc += kernel[k] * noise[static_cast<size_t>(y * padded + x) + k];
            }
            rows[static_cast<size_t>(y * n + x)] = acc;
        }
    }
    std::vector<double> field(static_cast<size_t>(n * n), 0.0);
    for (int64_t y = 0; y < n; ++y) {
        for (int64_t x = 0; x < n; ++x) {
            double acc = 0.0;
            for (size_t k = 0; k < kernel.size(); ++k) {
                acc += kernel[k] * rows[static_cast<size_t>((y + static_cast<int64_t>(k)) * n + x)];
            }
            field[static_cast<size_t>(y * n + x)] = acc;
        }
    }
    double mean = 0.0;
    for (const double v : field) {
        mean += v;
    }
    mean /= static_cast<double>(field.size());
    double var = 0.0;
    for (const double v : field) {
        var += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(var / static_cast<double>(field.size()));
    for (auto &v : field) {
        v = sd > 0.0 ? (v - mean) / sd : 0.0;
    }
    return field;
}

double correlation_length(const PhantomTexture &t) {
    return std::visit([](const auto &tex) { return tex.correlation_length; }, t);
}

} // namespace

void validate(const PhantomConfig &cfg) {
    auto fail = [](const std::string &msg) { throw Error(ErrorKind::InvalidConfig, msg); };
    if (cfg.n_images < 1) {
        fail("n_images must be at least 1");
    }
    if (cfg.image_size < 2 || cfg.bbox_size < 1 || cfg.bbox_size >= cfg.image_size) {
        fail("bbox_size must be positive and smaller than image_size");
    }
    if (!(cfg.base_spacing.x > 0.0) || !(cfg.base_spacing.y > 0.0)) {
        fail("base spacing must be positive");
    }
    if (cfg.plateaus < 0) {
        fail("plateaus must be non-negative");
    }
    if (!(cfg.correlation_jitter >= 0.0) || !(cfg.correlation_jitter < 1.0)) {
        fail("correlation_jitter must lie in [0, 1)");
    }
    if (!(cfg.min_contrast > 0.0) || !(cfg.min_contrast <= 1.0)) {
        fail("min_contrast must lie in (0, 1]");
    }
    if (!(correlation_length(cfg.texture) > 0.0)) {
        fail("correlation_length must be positive");
    }
    if (const auto *rim = std::get_if<BrightRim>(&cfg.texture)) {
        if (rim->rim_width < 1) {
            fail("rim_width must be at least 1");
        }
        if (!(rim->rim_gain > 1.0) || !std::isfinite(rim->rim_gain)) {
            fail("rim_gain must be greater than 1");
        }
        if (2 * rim->rim_width > cfg.bbox_size) {
            fail("rim_width does not fit inside the box");
        }
    }
}

PhantomImage generate_image(const PhantomConfig &cfg, int32_t index) {
    validate(cfg);
    Stream rng(cfg.seed, index);
    const int64_t n = cfg.image_size;

    const double jitter = rng.uniform(1.0 - cfg.correlation_jitter, 1.0 + cfg.correlation_jitter);
    const double sigma = correlation_length(cfg.texture) * jitter;
    const double contrast = rng.uniform(cfg.min_contrast, 1.0);
    const BBox bbox{rng.integer(0, n - cfg.bbox_size), rng.integer(0, n - cfg.bbox_size), cfg.bbox_size,
                    cfg.bbox_size};
    const auto field = smooth_field(rng, n, sigma);

    // Texture occupies [base, base * gain); the rim band, scaled by gain, lands in [base * gain,
    // base * gain^2) = [.., 1023), strictly above every unscaled pixel.
    const auto *rim = std::get_if<BrightRim>(&cfg.texture);
    const double gain = rim != nullptr ? rim->rim_gain : 2.0;
    const double base = kPhantomMaxIntensity / (gain * gain);

    std::vector<double> pixels(field.size());
    for (size_t i = 0; i < field.size(); ++i) {
        double v = 0.5 + 0.5 * contrast * std::tanh(field[i]);
        if (cfg.plateaus > 0) {
            const double p = cfg.plateaus;
            v = (std::min(std::floor(v * p), p - 1.0) + 0.5) / p;
        }
        pixels[i] = base + base * (gain - 1.0) * v;
    }
    if (rim != nullptr) {
        for (int64_t y = bbox.y0; y < bbox.y0 + bbox.bh; ++y) {
            for (int64_t x = bbox.x0; x < bbox.x0 + bbox.bw; ++x) {
                const int64_t edge = std::min({x - bbox.x0, y - bbox.y0, bbox.x0 + bbox.bw - 1 - x, bbox.y0 + bbox.bh - 1 - y});
                if (edge < rim->rim_width) {
                    auto &p = pixels[static_cast<size_t>(y * n + x)];
                    p = std::min(p * gain, kPhantomMaxIntensity);
                }
            }
        }
    }
    return PhantomImage{Image2D(n, n, cfg.base_spacing, std::move(pixels)), bbox};
}

std::vector<PhantomImage> generate_corpus(const PhantomConfig &cfg) {
    validate(cfg);
    std::vector<PhantomImage> out;
    out.reserve(static_cast<size_t>(cfg.n_images));
    for (int32_t k = 0; k < cfg.n_images; ++k) {
        out.push_back(generate_image(cfg, k));
    }
    return out;
}

std::filesystem::path write_corpus(const PhantomConfig &cfg, const std::filesystem::path &out_dir,
                                   PhantomFormat format) {
    validate(cfg);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create '" + out_dir.string() + "': " + ec.message());
    }
    std::vector<ManifestEntry> entries;
    const char *label = std::holds_alternative<BrightRim>(cfg.texture) ? "bright_rim" : "smooth_noise";
    for (int32_t k = 0; k < cfg.n_images; ++k) {
        const PhantomImage ph = generate_image(cfg, k);
        char id[32];
        std::snprintf(id, sizeof id, "phantom_%04d", k);
        const std::string file = std::string(id) + (format == PhantomFormat::Raw ? ".raw" : ".png");
        if (format == PhantomFormat::Raw) {
            write_raw_f32(out_dir / file, ph.image);
        } else {
            write_png(out_dir / file, ph.image, PngDepth::Sixteen);
        }
        entries.push_back(ManifestEntry{id, file, cfg.base_spacing, ph.bbox, label});
    }
    const auto manifest = out_dir / "manifest.csv";
    write_manifest(manifest, entries);
    return manifest;
}

} // namespace radrobust
