#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "radrobust/feature_table.hpp"
#include "radrobust/similarity.hpp"

namespace radrobust {

inline constexpr const char *kToolName = "radrobust";
inline constexpr const char *kToolVersion = "0.1.0";

enum class Comparison { OrigVsEroded, OrigVsDilated, ErodedVsDilated };

std::string_view to_string(Comparison c);
Comparison parse_comparison(std::string_view text);
const std::vector<Comparison> &all_comparisons();

// The (x, y) mask variants a comparison pairs up.
std::pair<MaskVariant, MaskVariant> variants_of(Comparison c);

enum class Metric { Pearson, Spearman, LinsCcc };
std::string_view to_string(Metric m);
inline constexpr Metric kMetrics[] = {Metric::Pearson, Metric::Spearman, Metric::LinsCcc};

// A metric value, or the reason it is undefined (e.g. ZeroVariance).
struct MetricValue {
    std::optional<double> value;
    std::string error;
};

struct FeatureAgreement {
    std::string feature;
    int64_t n_pairs = 0;
    MetricValue pearson;
    MetricValue spearman;
    MetricValue lins_ccc;

    const MetricValue &get(Metric m) const;
};

struct MetricBlockSummary {
    std::optional<MetricSummary> summary; // empty when no feature has a defined value
    int64_t n_undefined = 0;
};

struct ComparisonBlock {
    std::string binning;
    Comparison comparison = Comparison::OrigVsEroded;
    std::vector<FeatureAgreement> features;
    MetricBlockSummary pearson;
    MetricBlockSummary spearman;
    MetricBlockSummary lins_ccc;

    const FeatureAgreement *find(std::string_view feature) const;
    const MetricBlockSummary &summary(Metric m) const;
};

struct RobustnessReport {
    std::vector<ComparisonBlock> blocks;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();

    const ComparisonBlock *find(std::string_view binning, Comparison comparison) const;
};

// Pairs values image by image across the two mask variants of each comparison, for every binning
// in `binnings` (all binnings in the table when empty), then computes the three agreement metrics
// per feature and summarizes each metric over features.
RobustnessReport compare_features(const FeatureTable &table, const std::vector<Comparison> &comparisons,
                                  double threshold = kDefaultAgreementThreshold,
                                  const std::vector<std::string> &binnings = {});

// report.json; the layout is documented in the README.
nlohmann::ordered_json to_json(const RobustnessReport &report);
std::string dump_report(const RobustnessReport &report);

} // namespace radrobust
