#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace radrobust {

// Paired feature values, one entry per image. Requires equal lengths, at least two pairs and finite
// values.
class PairedSample {
  public:
    PairedSample(std::vector<double> x, std::vector<double> y);

    std::span<const double> x() const noexcept { return x_; }
    std::span<const double> y() const noexcept { return y_; }
    size_t size() const noexcept { return x_.size(); }

  private:
    std::vector<double> x_;
    std::vector<double> y_;
};

// Product-moment correlation. Throws ZeroVariance if either side is constant.
double pearson(const PairedSample &s);

// Pearson correlation of average ranks (ties share the mean rank).
double spearman(const PairedSample &s);

// Lin's concordance correlation coefficient with population (1/n) moments. Two constant sides give
// 1 when they are equal and 0 otherwise.
double lins_ccc(const PairedSample &s);

// Average ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

inline constexpr double kDefaultAgreementThreshold = 0.9;

struct MetricSummary {
    double minimum = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double maximum = 0.0;
    double std_dev = 0.0; // sample (n - 1) standard deviation; 0 for a single value
    int64_t n_above_threshold = 0; // strictly greater than threshold
    double threshold = kDefaultAgreementThreshold;
    int64_t n_total = 0;
};

MetricSummary summarize(std::span<const double> values, double threshold = kDefaultAgreementThreshold);

} // namespace radrobust
