#include <doctest.h>

#include <cmath>
#include <random>

#include "radrobust/error.hpp"
#include "radrobust/similarity.hpp"

using namespace radrobust;

namespace {

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

std::vector<double> random_vector(std::mt19937_64 &rng, size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = g(rng);
    }
    return v;
}

} // namespace

TEST_CASE("paired sample validation") {
    CHECK(kind_of([] { PairedSample({1.0}, {1.0}); }) == ErrorKind::ZeroVariance);
    CHECK(kind_of([] { PairedSample({1.0, 2.0}, {1.0}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { PairedSample({1.0, NAN}, {1.0, 2.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("pearson") {
    CHECK(pearson({{1, 2, 3, 5}, {1, 2, 3, 5}}) == doctest::Approx(1.0));
    CHECK(pearson({{1, 2, 3, 5}, {3, 5, 7, 11}}) == doctest::Approx(1.0));
    CHECK(pearson({{1, 2, 3}, {3, 2, 1}}) == doctest::Approx(-1.0));
    CHECK(kind_of([] { pearson({{1, 1, 1}, {1, 2, 3}}); }) == ErrorKind::ZeroVariance);
}

TEST_CASE("spearman") {
    CHECK(spearman({{1, 2, 3, 4}, {10, 20, 25, 100}}) == doctest::Approx(1.0));
    CHECK(spearman({{1, 2, 3}, {1, 4, 9}}) == doctest::Approx(1.0));
    CHECK(spearman({{1, 2, 2, 3}, {1, 2, 3, 4}}) == doctest::Approx(0.9486833).epsilon(1e-7));
    CHECK(average_ranks(std::vector<double>{1, 2, 2, 3}) == std::vector<double>{1, 2.5, 2.5, 4});
    CHECK(kind_of([] { spearman({{4, 4, 4}, {1, 2, 3}}); }) == ErrorKind::ZeroVariance);
}

TEST_CASE("lins ccc") {
    CHECK(lins_ccc({{1, 2, 3}, {1, 2, 3}}) == 1.0);
    CHECK(std::abs(lins_ccc({{1, 2, 3}, {2, 3, 4}}) - 4.0 / 7.0) < 1e-9);
    CHECK(std::abs(lins_ccc({{1, 2, 3}, {2, 4, 6}}) - 4.0 / 11.0) < 1e-9);
    CHECK(lins_ccc({{5, 5}, {5, 5}}) == 1.0);
    CHECK(lins_ccc({{5, 5}, {6, 6}}) == 0.0);
}

TEST_CASE("summarize") {
    const auto one = summarize(std::vector<double>{0.5});
    CHECK(one.minimum == 0.5);
    CHECK(one.median == 0.5);
    CHECK(one.mean == 0.5);
    CHECK(one.maximum == 0.5);
    CHECK(one.std_dev == 0.0);
    CHECK(one.n_above_threshold == 0);
    CHECK(one.n_total == 1);

    const auto three = summarize(std::vector<double>{1.0, 0.8, 0.95});
    CHECK(three.median == 0.95);
    CHECK(three.mean == doctest::Approx(0.9166667).epsilon(1e-7));
    CHECK(three.std_dev == doctest::Approx(0.1040833).epsilon(1e-6));
    CHECK(three.n_above_threshold == 2);

    const auto flat = summarize(std::vector<double>{1.0, 1.0});
    CHECK(flat.std_dev == 0.0);
    CHECK(flat.n_above_threshold == 2);

    // Strict inequality.
    CHECK(summarize(std::vector<double>{0.9, 0.9}).n_above_threshold == 0);
    CHECK(summarize(std::vector<double>{0.2, 0.4, 0.6, 0.8}).median == doctest::Approx(0.5));
    CHECK(kind_of([] { summarize(std::vector<double>{}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("metric identities on random samples") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int t = 0; t < 500; ++t) {
        const size_t n = 2 + t % 40;
        auto x = random_vector(rng, n);
        auto noise = random_vector(rng, n);
        std::vector<double> y(n);
        const double a = coef(rng);
        const double b = coef(rng);
        for (size_t i = 0; i < n; ++i) {
            y[i] = a * x[i] + b + 0.5 * noise[i];
        }
        const PairedSample s(x, y);
        const PairedSample swapped(y, x);
        CHECK(std::abs(lins_ccc({x, x}) - 1.0) < 1e-12);
        CHECK(std::abs(lins_ccc(s)) <= std::abs(pearson(s)) + 1e-12);
        CHECK(pearson(s) == doctest::Approx(pearson(swapped)).epsilon(1e-12));
        CHECK(spearman(s) == doctest::Approx(spearman(swapped)).epsilon(1e-12));
        CHECK(lins_ccc(s) == doctest::Approx(lins_ccc(swapped)).epsilon(1e-12));

        // Positive affine maps leave pearson alone; shifting one side lowers ccc.
        std::vector<double> scaled(n);
        std::vector<double> shifted(n);
        for (size_t i = 0; i < n; ++i) {
            scaled[i] = 2.5 * y[i] + 7.0;
            shifted[i] = x[i] + 0.75;
        }
        CHECK(pearson({x, scaled}) == doctest::Approx(pearson(s)).epsilon(1e-9));
        CHECK(lins_ccc({x, shifted}) < lins_ccc({x, x}));

        // Strictly monotone maps leave spearman alone.
        std::vector<double> mono(n);
        for (size_t i = 0; i < n; ++i) {
            mono[i] = std::exp(y[i]) + y[i] * y[i] * y[i];
        }
        CHECK(spearman({x, mono}) == doctest::Approx(spearman(s)).epsilon(1e-12));
    }
}
