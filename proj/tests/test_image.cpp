#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "radrobust/error.hpp"
#include "radrobust/image.hpp"

using namespace radrobust;

namespace {

Image2D ramp_x(int w, int h, Spacing s) {
    std::vector<double> px(static_cast<size_t>(w * h));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            px[static_cast<size_t>(y * w + x)] = x;
        }
    }
    return Image2D(w, h, s, std::move(px));
}

} // namespace

TEST_CASE("Image2D rejects malformed rasters") {
    CHECK_THROWS_AS(Image2D(0, 3, {1, 1}, 0.0), Error);
    CHECK_THROWS_AS(Image2D(2, 2, {0, 1}, 0.0), Error);
    CHECK_THROWS_AS(Image2D(2, 2, {1, 1}, std::vector<double>(3, 0.0)), Error);
    CHECK_THROWS_AS(Image2D(1, 1, {1, 1}, std::vector<double>{NAN}), Error);
}

TEST_CASE("bbox_to_mask") {
    CHECK(bbox_to_mask({0, 0, 4, 4}, 4, 4).area() == 16);
    CHECK(bbox_to_mask({1, 1, 2, 2}, 4, 4).area() == 4);

    const auto clamped = bbox_to_mask({3, 3, 4, 4}, 4, 4);
    CHECK(clamped.area() == 1);
    CHECK(clamped.at(3, 3));

    CHECK(bbox_to_mask({-2, 1, 4, 2}, 4, 4).area() == 4);

    try {
        bbox_to_mask({5, 0, 2, 2}, 4, 4);
        FAIL("expected EmptyRegion");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::EmptyRegion);
    }
    CHECK_THROWS_AS(bbox_to_mask({0, 0, 0, 2}, 4, 4), Error);
}

TEST_CASE("bbox_to_mask area equals the clamped box area") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pos(-6, 12);
    std::uniform_int_distribution<int> len(1, 10);
    for (int t = 0; t < 300; ++t) {
        const BBox b{pos(rng), pos(rng), len(rng), len(rng)};
        const int64_t cw = std::max<int64_t>(0, std::min<int64_t>(b.x0 + b.bw, 8) - std::max<int64_t>(b.x0, 0));
        const int64_t ch = std::max<int64_t>(0, std::min<int64_t>(b.y0 + b.bh, 7) - std::max<int64_t>(b.y0, 0));
        if (cw * ch == 0) {
            CHECK_THROWS_AS(bbox_to_mask(b, 8, 7), Error);
        } else {
            CHECK(bbox_to_mask(b, 8, 7).area() == cw * ch);
        }
    }
}

TEST_CASE("resample_image identity is pixel exact") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-50, 300);
    std::vector<double> px(35);
    for (auto &v : px) {
        v = u(rng);
    }
    const Image2D img(7, 5, {0.3, 0.7}, px);
    CHECK(resample_image(img, {0.3, 0.7}) == img);
    CHECK(resample_image(img, {0.3, 0.7}, Interpolation::Linear) == img);
}

TEST_CASE("resample_image reproduces constants") {
    const Image2D img(9, 6, {1.0, 1.0}, 42.5);
    for (const Spacing t : {Spacing{0.5, 0.5}, Spacing{1.7, 0.3}, Spacing{3.0, 2.0}}) {
        const auto out = resample_image(img, t);
        CHECK(out.spacing() == t);
        for (const double v : out.pixels()) {
            CHECK(std::abs(v - 42.5) < 1e-9);
        }
    }
}

TEST_CASE("resample_image output geometry") {
    const Image2D img(10, 4, {1.0, 1.0}, 0.0);
    const auto out = resample_image(img, {0.5, 3.0});
    CHECK(out.width() == 20);
    CHECK(out.height() == 1); // round(4 / 3)
    CHECK(resample_image(img, {100.0, 100.0}).width() == 1);
    CHECK(resampled_extent(3, 1.0, 0.4) == 8); // round(7.5) away from zero
}

TEST_CASE("cubic B-spline reproduces a linear ramp in the interior") {
    const Image2D img = ramp_x(64, 8, {1.0, 1.0});
    const auto out = resample_image(img, {0.5, 0.5});
    REQUIRE(out.width() == 128);
    for (int64_t k = 0; k < out.width(); ++k) {
        const double expected = 0.5 * static_cast<double>(k) - 0.25;
        if (expected < 12.0 || expected > 51.0) {
            continue;
        }
        for (int64_t y = 0; y < out.height(); ++y) {
            CHECK(std::abs(out.at(k, y) - expected) < 1e-6);
        }
    }
}

TEST_CASE("cubic B-spline interpolates the samples it was built from") {
    // Upsampling by an exact factor of 1/3 puts every third output centre on an input centre.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 255);
    std::vector<double> px(16 * 16);
    for (auto &v : px) {
        v = u(rng);
    }
    const Image2D img(16, 16, {3.0, 3.0}, px);
    const auto out = resample_image(img, {1.0, 1.0});
    REQUIRE(out.width() == 48);
    for (int64_t y = 0; y < 16; ++y) {
        for (int64_t x = 0; x < 16; ++x) {
            CHECK(out.at(3 * x + 1, 3 * y + 1) == doctest::Approx(img.at(x, y)).epsilon(1e-9));
        }
    }
}

TEST_CASE("linear fallback reproduces the ramp exactly away from the clamp") {
    const Image2D img = ramp_x(16, 4, {1.0, 1.0});
    const auto out = resample_image(img, {0.5, 0.5}, Interpolation::Linear);
    for (int64_t k = 1; k < out.width() - 1; ++k) {
        CHECK(out.at(k, 3) == doctest::Approx(0.5 * static_cast<double>(k) - 0.25));
    }
    CHECK(out.at(0, 0) == 0.0); // clamped to the edge
}

TEST_CASE("resample_mask") {
    const Mask2D mask = oracle::rectangle(5, 3, 1, 1, 2, 1);
    CHECK(resample_mask(mask, {1, 1}, {1, 1}) == mask);

    const auto full = resample_mask(Mask2D(2, 2, true), {1, 1}, {0.5, 0.5});
    CHECK(full.width() == 4);
    CHECK(full.height() == 4);
    CHECK(full.area() == 16);

    // Output centres at 0.25, 0.75 map to source 0; 1.25, 1.75 map to source 1.
    Mask2D corner(2, 2);
    corner.set(0, 0, true);
    const auto up = resample_mask(corner, {1, 1}, {0.5, 0.5});
    CHECK(up.area() == 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            CHECK(up.at(x, y) == (x < 2 && y < 2));
        }
    }
}

TEST_CASE("resample_mask stays binary and keeps all-true masks all-true") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> sp(0.2, 3.0);
    for (int t = 0; t < 50; ++t) {
        const Spacing src{sp(rng), sp(rng)};
        const Spacing dst{sp(rng), sp(rng)};
        const auto out = resample_mask(Mask2D(6, 9, true), src, dst);
        CHECK(out.area() == out.width() * out.height());
        const auto rnd = resample_mask(oracle::random_mask(rng, 6, 9, 0.5), src, dst);
        for (const auto b : rnd.bits()) {
            CHECK((b == 0 || b == 1));
        }
    }
}

TEST_CASE("normalize_minmax") {
    const Image2D img(3, 1, {1, 1}, std::vector<double>{0.0, 5.0, 10.0});
    const auto out = normalize_minmax(img);
    CHECK(out.at(0, 0) == 0.0);
    CHECK(out.at(1, 0) == doctest::Approx(127.5));
    CHECK(out.at(2, 0) == 255.0);

    const Image2D already(3, 1, {1, 1}, std::vector<double>{0.0, 100.0, 255.0});
    CHECK(normalize_minmax(already) == already);

    const Image2D flat(4, 4, {1, 1}, 7.0);
    const auto flat_out = normalize_minmax(flat);
    for (const double v : flat_out.pixels()) {
        CHECK(v == 0.0);
    }
    CHECK_THROWS_AS(normalize_minmax(img, 5.0, 5.0), Error);
}

TEST_CASE("normalize_minmax hits lo and hi for any non-constant input") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> px(20);
        for (auto &v : px) {
            v = u(rng);
        }
        const double lo = u(rng);
        const double hi = lo + std::abs(u(rng)) + 1.0;
        const auto out = normalize_minmax(Image2D(5, 4, {1, 1}, px), lo, hi);
        const auto [mn, mx] = std::minmax_element(out.pixels().begin(), out.pixels().end());
        CHECK(std::abs(*mn - lo) < 1e-9);
        CHECK(std::abs(*mx - hi) < 1e-9);
    }
}

TEST_CASE("median_spacing") {
    const std::vector<Spacing> one{{0.07, 0.07}};
    CHECK(median_spacing(one) == Spacing{0.07, 0.07});
    const std::vector<Spacing> odd{{1, 1}, {3, 3}, {2, 2}};
    CHECK(median_spacing(odd) == Spacing{2, 2});
    const std::vector<Spacing> even{{1, 1}, {2, 2}};
    CHECK(median_spacing(even) == Spacing{1.5, 1.5});
    const std::vector<Spacing> mixed{{1, 4}, {2, 1}, {9, 2}};
    CHECK(median_spacing(mixed) == Spacing{2, 2});
    try {
        median_spacing(std::vector<Spacing>{});
        FAIL("expected EmptyCorpus");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::EmptyCorpus);
    }
}
