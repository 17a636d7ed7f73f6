#include "radrobust/firstorder.hpp"

#include <algorithm>
#include <cmath>

#include "radrobust/error.hpp"

namespace radrobust {

const std::vector<std::string> &first_order_feature_names() {
    static const std::vector<std::string> names = {
        "firstorder_mean",   "firstorder_std",     "firstorder_min",       "firstorder_max",
        "firstorder_median", "firstorder_entropy", "firstorder_uniformity",
    };
    return names;
}

std::map<std::string, double> first_order_features(const Image2D &img, const LevelImage &levels, const Mask2D &roi) {
    if (!roi.same_shape(img) || levels.width() != img.width() || levels.height() != img.height()) {
        throw Error(ErrorKind::InvalidArgument, "image, levels and ROI dimensions differ");
    }
    std::vector<double> values;
    std::vector<int64_t> histogram(static_cast<size_t>(levels.n_levels()) + 1, 0);
    const auto px = img.pixels();
    const auto bits = roi.bits();
    const auto lv = levels.levels();
    for (size_t i = 0; i < px.size(); ++i) {
        if (bits[i] != 0) {
            values.push_back(px[i]);
            ++histogram[static_cast<size_t>(std::clamp(lv[i], 0, levels.n_levels()))];
        }
    }
    if (values.empty()) {
        throw Error(ErrorKind::EmptyRoi, "first-order features need a non-empty ROI");
    }
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (const double v : values) {
        mean += v;
    }
    mean /= n;
    double var = 0.0;
    for (const double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= n;

    std::sort(values.begin(), values.end());
    const size_t m = values.size();
    const double median = m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);

    double entropy = 0.0;
    double uniformity = 0.0;
    for (const int64_t c : histogram) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            entropy -= p * std::log2(p);
            uniformity += p * p;
        }
    }
    return {
        {"firstorder_mean", mean},
        {"firstorder_std", std::sqrt(var)},
        {"firstorder_min", values.front()},
        {"firstorder_max", values.back()},
        {"firstorder_median", median},
        {"firstorder_entropy", entropy == 0.0 ? 0.0 : entropy},
        {"firstorder_uniformity", uniformity},
    };
}

} // namespace radrobust
