#include "radrobust/report.hpp"

#include <map>

#include "radrobust/error.hpp"

namespace radrobust {

namespace {

MetricValue evaluate(double (*metric)(const PairedSample &), const std::vector<double> &x, const std::vector<double> &y) {
    MetricValue out;
    try {
        out.value = metric(PairedSample(x, y));
    } catch (const Error &e) {
        out.error = std::string(to_string(e.kind()));
    }
    return out;
}

MetricBlockSummary summarize_metric(const std::vector<FeatureAgreement> &features, Metric m, double threshold) {
    MetricBlockSummary out;
    std::vector<double> values;
    for (const auto &f : features) {
        const auto &v = f.get(m);
        if (v.value) {
            values.push_back(*v.value);
        } else {
            ++out.n_undefined;
        }
    }
    if (!values.empty()) {
        out.summary = summarize(values, threshold);
    }
    return out;
}

nlohmann::ordered_json metric_json(const MetricValue &v) {
    return v.value ? nlohmann::ordered_json(*v.value) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json summary_json(const MetricBlockSummary &s) {
    nlohmann::ordered_json j;
    if (s.summary) {
        const auto &m = *s.summary;
        j["minimum"] = m.minimum;
        j["median"] = m.median;
        j["mean"] = m.mean;
        j["maximum"] = m.maximum;
        j["std_dev"] = m.std_dev;
        j["n_above_threshold"] = m.n_above_threshold;
        j["threshold"] = m.threshold;
        j["n_total"] = m.n_total;
    } else {
        j["summary"] = nullptr;
    }
    j["n_undefined"] = s.n_undefined;
    return j;
}

} // namespace

std::string_view to_string(Comparison c) {
    switch (c) {
    case Comparison::OrigVsEroded: return "orig_vs_eroded";
    case Comparison::OrigVsDilated: return "orig_vs_dilated";
    case Comparison::ErodedVsDilated: return "eroded_vs_dilated";
    }
    return "orig_vs_eroded";
}

Comparison parse_comparison(std::string_view text) {
    for (const auto c : all_comparisons()) {
        if (to_string(c) == text) {
            return c;
        }
    }
    throw Error(ErrorKind::InvalidConfig, "unknown comparison '" + std::string(text) +
                                              "' (expected orig_vs_eroded, orig_vs_dilated or eroded_vs_dilated)");
}

const std::vector<Comparison> &all_comparisons() {
    static const std::vector<Comparison> all = {Comparison::OrigVsEroded, Comparison::OrigVsDilated,
                                                Comparison::ErodedVsDilated};
    return all;
}

std::pair<MaskVariant, MaskVariant> variants_of(Comparison c) {
    switch (c) {
    case Comparison::OrigVsEroded: return {MaskVariant::Original, MaskVariant::Eroded};
    case Comparison::OrigVsDilated: return {MaskVariant::Original, MaskVariant::Dilated};
    case Comparison::ErodedVsDilated: return {MaskVariant::Eroded, MaskVariant::Dilated};
    }
    return {MaskVariant::Original, MaskVariant::Eroded};
}

std::string_view to_string(Metric m) {
    switch (m) {
    case Metric::Pearson: return "pearson";
    case Metric::Spearman: return "spearman";
    case Metric::LinsCcc: return "lins_ccc";
    }
    return "pearson";
}

const MetricValue &FeatureAgreement::get(Metric m) const {
    switch (m) {
    case Metric::Pearson: return pearson;
    case Metric::Spearman: return spearman;
    case Metric::LinsCcc: return lins_ccc;
    }
    return pearson;
}

const FeatureAgreement *ComparisonBlock::find(std::string_view feature) const {
    for (const auto &f : features) {
        if (f.feature == feature) {
            return &f;
        }
    }
    return nullptr;
}

const MetricBlockSummary &ComparisonBlock::summary(Metric m) const {
    switch (m) {
    case Metric::Pearson: return pearson;
    case Metric::Spearman: return spearman;
    case Metric::LinsCcc: return lins_ccc;
    }
    return pearson;
}

const ComparisonBlock *RobustnessReport::find(std::string_view binning, Comparison comparison) const {
    for (const auto &b : blocks) {
        if (b.binning == binning && b.comparison == comparison) {
            return &b;
        }
    }
    return nullptr;
}

RobustnessReport compare_features(const FeatureTable &table, const std::vector<Comparison> &comparisons,
                                  double threshold, const std::vector<std::string> &binnings) {
    if (comparisons.empty()) {
        throw Error(ErrorKind::InvalidConfig, "at least one comparison is required");
    }
    const auto ids = table.image_ids();
    const auto features = table.features();
    std::map<std::string, size_t> id_index;
    for (size_t i = 0; i < ids.size(); ++i) {
        id_index.emplace(ids[i], i);
    }

    // (binning, feature, variant) -> per-image value slots
    using Key = std::tuple<std::string, std::string, MaskVariant>;
    std::map<Key, std::vector<std::optional<double>>> values;
    for (const auto &r : table.rows()) {
        auto &slot = values[Key{r.binning, r.feature, r.variant}];
        slot.resize(ids.size());
        slot[id_index.at(r.image_id)] = r.value;
    }

    RobustnessReport report;
    const auto selected = binnings.empty() ? table.binnings() : binnings;
    for (const auto &binning : selected) {
        for (const auto comparison : comparisons) {
            ComparisonBlock block;
            block.binning = binning;
            block.comparison = comparison;
            const auto [vx, vy] = variants_of(comparison);
            for (const auto &feature : features) {
                const auto ix = values.find(Key{binning, feature, vx});
                const auto iy = values.find(Key{binning, feature, vy});
                if (ix == values.end() && iy == values.end()) {
                    continue;
                }
                std::vector<double> x;
                std::vector<double> y;
                if (ix != values.end() && iy != values.end()) {
                    for (size_t i = 0; i < ids.size(); ++i) {
                        if (ix->second[i] && iy->second[i]) {
                            x.push_back(*ix->second[i]);
                            y.push_back(*iy->second[i]);
                        }
                    }
                }
                FeatureAgreement fa;
                fa.feature = feature;
                fa.n_pairs = static_cast<int64_t>(x.size());
                fa.pearson = evaluate(pearson, x, y);
                fa.spearman = evaluate(spearman, x, y);
                fa.lins_ccc = evaluate(lins_ccc, x, y);
                block.features.push_back(std::move(fa));
            }
            block.pearson = summarize_metric(block.features, Metric::Pearson, threshold);
            block.spearman = summarize_metric(block.features, Metric::Spearman, threshold);
            block.lins_ccc = summarize_metric(block.features, Metric::LinsCcc, threshold);
            report.blocks.push_back(std::move(block));
        }
    }
    return report;
}

nlohmann::ordered_json to_json(const RobustnessReport &report) {
    nlohmann::ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["provenance"] = report.provenance;
    auto blocks = nlohmann::ordered_json::array();
    for (const auto &b : report.blocks) {
        nlohmann::ordered_json jb;
        jb["binning"] = b.binning;
        jb["comparison"] = std::string(to_string(b.comparison));
        auto feats = nlohmann::ordered_json::array();
        for (const auto &f : b.features) {
            nlohmann::ordered_json jf;
            jf["feature"] = f.feature;
            jf["n_pairs"] = f.n_pairs;
            nlohmann::ordered_json errors = nlohmann::ordered_json::object();
            for (const auto m : kMetrics) {
                const auto &v = f.get(m);
                jf[std::string(to_string(m))] = metric_json(v);
                if (!v.value) {
                    errors[std::string(to_string(m))] = v.error;
                }
            }
            if (!errors.empty()) {
                jf["errors"] = errors;
            }
            feats.push_back(std::move(jf));
        }
        jb["features"] = std::move(feats);
        nlohmann::ordered_json sums;
        for (const auto m : kMetrics) {
            sums[std::string(to_string(m))] = summary_json(b.summary(m));
        }
        jb["summaries"] = std::move(sums);
        blocks.push_back(std::move(jb));
    }
    j["comparisons"] = std::move(blocks);
    return j;
}

std::string dump_report(const RobustnessReport &report) { return to_json(report).dump(2) + "\n"; }

} // namespace radrobust
