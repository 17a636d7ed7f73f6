#include "radrobust/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "radrobust/error.hpp"

namespace radrobust {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct Moments {
    double mean_x, mean_y, var_x, var_y, cov;
};

// Population moments, two-pass.
Moments moments(std::span<const double> x, std::span<const double> y) {
    Moments m{mean_of(x), mean_of(y), 0.0, 0.0, 0.0};
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - m.mean_x;
        const double dy = y[i] - m.mean_y;
        m.var_x += dx * dx;
        m.var_y += dy * dy;
        m.cov += dx * dy;
    }
    const auto n = static_cast<double>(x.size());
    m.var_x /= n;
    m.var_y /= n;
    m.cov /= n;
    return m;
}

double correlation(std::span<const double> x, std::span<const double> y) {
    const Moments m = moments(x, y);
    if (!(m.var_x > 0.0) || !(m.var_y > 0.0)) {
        throw Error(ErrorKind::ZeroVariance, "correlation undefined for a constant variable");
    }
    return std::clamp(m.cov / std::sqrt(m.var_x * m.var_y), -1.0, 1.0);
}

} // namespace

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
        throw Error(ErrorKind::InvalidArgument, "paired sample sides differ in length (" +
                                                    std::to_string(x_.size()) + " vs " + std::to_string(y_.size()) + ")");
    }
    if (x_.size() < 2) {
        // A single pair has no spread on either side.
        throw Error(ErrorKind::ZeroVariance, "paired sample needs at least two pairs, got " + std::to_string(x_.size()));
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(x_.begin(), x_.end(), finite) || !std::all_of(y_.begin(), y_.end(), finite)) {
        throw Error(ErrorKind::InvalidArgument, "paired sample contains non-finite values");
    }
}

double pearson(const PairedSample &s) { return correlation(s.x(), s.y()); }

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

double spearman(const PairedSample &s) {
    const auto rx = average_ranks(s.x());
    const auto ry = average_ranks(s.y());
    return correlation(rx, ry);
}

double lins_ccc(const PairedSample &s) {
    const Moments m = moments(s.x(), s.y());
    const double shift = m.mean_x - m.mean_y;
    const double denom = m.var_x + m.var_y + shift * shift;
    if (!(denom > 0.0)) {
        // Both sides constant and equal.
        return 1.0;
    }
    return std::clamp(2.0 * m.cov / denom, -1.0, 1.0);
}

MetricSummary summarize(std::span<const double> values, double threshold) {
    if (values.empty()) {
        throw Error(ErrorKind::EmptyInput, "cannot summarize an empty list");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();

    MetricSummary out;
    out.minimum = sorted.front();
    out.maximum = sorted.back();
    out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    out.mean = mean_of(values);
    if (n > 1) {
        double ss = 0.0;
        for (const double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    }
    out.threshold = threshold;
    out.n_total = static_cast<int64_t>(n);
    out.n_above_threshold = std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; });
    return out;
}

} // namespace radrobust
