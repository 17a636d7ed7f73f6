#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "radrobust/error.hpp"
#include "radrobust/manifest.hpp"
#include "radrobust/morphology.hpp"
#include "radrobust/phantom.hpp"
#include "radrobust/quantize.hpp"

using namespace radrobust;

namespace {

PhantomConfig small_config() {
    PhantomConfig cfg;
    cfg.n_images = 5;
    cfg.image_size = 64;
    cfg.bbox_size = 32;
    return cfg;
}

double max_over(const Image2D &img, const Mask2D &m) {
    double best = -1e300;
    for (size_t i = 0; i < img.pixels().size(); ++i) {
        if (m.bits()[i] != 0) {
            best = std::max(best, img.pixels()[i]);
        }
    }
    return best;
}

} // namespace

TEST_CASE("generation is deterministic and sized as configured") {
    const auto cfg = small_config();
    const auto a = generate_corpus(cfg);
    const auto b = generate_corpus(cfg);
    REQUIRE(a.size() == 5);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].image == b[i].image);
        CHECK(a[i].bbox == b[i].bbox);
        CHECK(generate_image(cfg, static_cast<int32_t>(i)).image == a[i].image);
    }
    auto other = cfg;
    other.seed = cfg.seed + 1;
    CHECK_FALSE(generate_corpus(other)[0].image == a[0].image);
}

TEST_CASE("intensities stay in [0, 1023] and boxes inside the image") {
    for (const PhantomTexture &tex : {PhantomTexture{SmoothNoise{}}, PhantomTexture{BrightRim{3.0, 2, 3.0}}}) {
        auto cfg = small_config();
        cfg.texture = tex;
        cfg.plateaus = 0;
        for (const auto &ph : generate_corpus(cfg)) {
            const auto [mn, mx] = std::minmax_element(ph.image.pixels().begin(), ph.image.pixels().end());
            CHECK(*mn >= 0.0);
            CHECK(*mx <= kPhantomMaxIntensity);
            CHECK(ph.bbox.x0 >= 0);
            CHECK(ph.bbox.x0 + ph.bbox.bw <= cfg.image_size);
            CHECK(ph.bbox.bw == cfg.bbox_size);
            CHECK(ph.image.spacing() == cfg.base_spacing);
        }
    }
}

TEST_CASE("bright rim holds the ROI maximum and erosion removes it") {
    auto cfg = small_config();
    cfg.n_images = 20;
    cfg.texture = BrightRim{4.0, 2, 2.0};
    for (const bool posterize : {true, false}) {
        cfg.plateaus = posterize ? 6 : 0;
        for (const auto &ph : generate_corpus(cfg)) {
            const auto roi = bbox_to_mask(ph.bbox, ph.image.width(), ph.image.height());
            int64_t best_x = -1;
            int64_t best_y = -1;
            double best = -1.0;
            for (int64_t y = 0; y < ph.image.height(); ++y) {
                for (int64_t x = 0; x < ph.image.width(); ++x) {
                    if (roi.at(x, y) && ph.image.at(x, y) > best) {
                        best = ph.image.at(x, y);
                        best_x = x;
                        best_y = y;
                    }
                }
            }
            const int64_t edge = std::min({best_x - ph.bbox.x0, best_y - ph.bbox.y0, ph.bbox.x0 + ph.bbox.bw - 1 - best_x,
                                           ph.bbox.y0 + ph.bbox.bh - 1 - best_y});
            CHECK(edge < 2);

            const auto eroded = perturb_to_area(roi, 0.8).mask;
            CHECK(max_over(ph.image, eroded) < max_over(ph.image, roi));
        }
    }
}

TEST_CASE("smooth noise keeps static levels of surviving pixels") {
    auto cfg = small_config();
    cfg.texture = SmoothNoise{3.0};
    const StaticRangeBins spec{32, 0, 1023};
    for (const auto &ph : generate_corpus(cfg)) {
        const auto roi = bbox_to_mask(ph.bbox, ph.image.width(), ph.image.height());
        const auto eroded = perturb_to_area(roi, 0.8).mask;
        const auto a = quantize(ph.image, roi, spec);
        const auto b = quantize(ph.image, eroded, spec);
        for (size_t i = 0; i < eroded.bits().size(); ++i) {
            if (eroded.bits()[i] != 0) {
                CHECK(a.levels()[i] == b.levels()[i]);
            }
        }
    }
}

TEST_CASE("plateaus posterize the texture") {
    auto cfg = small_config();
    cfg.texture = SmoothNoise{};
    cfg.plateaus = 4;
    const auto ph = generate_image(cfg, 0);
    std::vector<double> distinct(ph.image.pixels().begin(), ph.image.pixels().end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    CHECK(distinct.size() <= 4);
}

TEST_CASE("invalid configs are rejected") {
    auto kind = [](PhantomConfig cfg) {
        try {
            validate(cfg);
        } catch (const Error &e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    auto cfg = small_config();
    cfg.n_images = 0;
    CHECK(kind(cfg) == ErrorKind::InvalidConfig);
    cfg = small_config();
    cfg.bbox_size = cfg.image_size;
    CHECK(kind(cfg) == ErrorKind::InvalidConfig);
    cfg = small_config();
    cfg.texture = BrightRim{4.0, 0, 2.0};
    CHECK(kind(cfg) == ErrorKind::InvalidConfig);
    cfg.texture = BrightRim{4.0, 2, 1.0};
    CHECK(kind(cfg) == ErrorKind::InvalidConfig);
    cfg.texture = SmoothNoise{0.0};
    CHECK(kind(cfg) == ErrorKind::InvalidConfig);
}

TEST_CASE("write_corpus emits images and a manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "radrobust_test_phantom";
    std::filesystem::remove_all(dir);
    auto cfg = small_config();
    cfg.n_images = 3;
    const auto manifest = write_corpus(cfg, dir, PhantomFormat::Raw);
    const auto entries = read_manifest(manifest);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].image_id == "phantom_0000");
    CHECK(entries[0].label.value_or("") == "bright_rim");
    CHECK(std::filesystem::exists(resolve_image_path(manifest, entries[2])));

    const auto png_manifest = write_corpus(cfg, dir / "png", PhantomFormat::Png16);
    CHECK(std::filesystem::exists(dir / "png" / "phantom_0001.png"));
    CHECK(read_manifest(png_manifest).size() == 3);
}
