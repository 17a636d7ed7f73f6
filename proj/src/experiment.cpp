#include "radrobust/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "radrobust/error.hpp"
#include "radrobust/firstorder.hpp"
#include "radrobust/image_io.hpp"

namespace radrobust {

namespace {

bool needs(const ExperimentConfig &cfg, MaskVariant v) {
    return std::any_of(cfg.comparisons.begin(), cfg.comparisons.end(), [&](Comparison c) {
        const auto [a, b] = variants_of(c);
        return a == v || b == v;
    });
}

struct ImageOutcome {
    std::vector<FeatureRow> rows;
    std::optional<std::string> excluded_reason;
};

ImageOutcome process_image(const CorpusImage &item, Spacing target, const ExperimentConfig &cfg,
                           const std::vector<std::string> &spec_names) {
    ImageOutcome out;
    std::optional<PreparedImage> prepared;
    try {
        prepared = prepare_image(item.image, item.bbox, target, cfg, needs(cfg, MaskVariant::Eroded),
                                 needs(cfg, MaskVariant::Dilated));
    } catch (const Error &e) {
        switch (e.kind()) {
        case ErrorKind::EmptyRegion:
        case ErrorKind::EmptyRoi:
        case ErrorKind::VanishedMask:
        case ErrorKind::SaturatedMask:
            out.excluded_reason = e.what();
            return out;
        default:
            throw;
        }
    }

    std::vector<MaskVariant> variants{MaskVariant::Original};
    if (prepared->eroded) {
        variants.push_back(MaskVariant::Eroded);
    }
    if (prepared->dilated) {
        variants.push_back(MaskVariant::Dilated);
    }
    const auto names = extracted_feature_names();
    for (const auto variant : variants) {
        const Mask2D &roi = prepared->mask(variant);
        for (size_t s = 0; s < cfg.binning_specs.size(); ++s) {
            // Dynamic specs derive their edges from this particular mask; static edges are fixed.
            const auto features = extract_features(prepared->image, roi, cfg.binning_specs[s], cfg.ngldm);
            for (const auto &name : names) {
                out.rows.push_back(FeatureRow{item.image_id, variant, spec_names[s], name, features.at(name)});
            }
        }
    }
    return out;
}

nlohmann::ordered_json provenance_json(const ExperimentConfig &cfg, const ExperimentResult &result, size_t corpus_size) {
    nlohmann::ordered_json p;
    auto specs = nlohmann::ordered_json::array();
    for (const auto &s : cfg.binning_specs) {
        specs.push_back(to_string(s));
    }
    p["binning_specs"] = specs;
    p["binning_defaults"] = {{"n_bins", kDefaultBinCount}, {"bin_width", kDefaultBinWidth}, {"bin_origin", 0.0}};
    p["dynamic_edges"] = "per mask variant (ROI min/max)";
    p["static_edges"] = "shared across mask variants";
    p["target_area_change"] = cfg.target_area_change;
    p["erosion_ratio"] = 1.0 - cfg.target_area_change;
    p["dilation_ratio"] = 1.0 + cfg.target_area_change;
    p["perturbation_rule"] = "first-crossing";
    p["structuring_element"] = {{"shape", "square"}, {"side", cfg.structuring_element}};
    p["target_spacing"] = {{"mode", cfg.target_spacing ? "explicit" : "auto-median"},
                           {"x", result.target_spacing.x},
                           {"y", result.target_spacing.y}};
    p["image_interpolation"] = cfg.interpolation == Interpolation::CubicBSpline ? "cubic-bspline" : "linear";
    p["mask_interpolation"] = "nearest-neighbor";
    p["boundary"] = "clamp-to-edge";
    p["normalization"] = {{"lo", cfg.norm_lo}, {"hi", cfg.norm_hi}, {"order", "after resampling"}};
    p["ngldm"] = {{"alpha", cfg.ngldm.alpha}, {"distance", cfg.ngldm.distance}, {"dependence_index", "count + 1"}};
    auto comps = nlohmann::ordered_json::array();
    for (const auto c : cfg.comparisons) {
        comps.push_back(std::string(to_string(c)));
    }
    p["comparisons"] = comps;
    p["threshold"] = cfg.threshold;
    p["moments"] = {{"lins_ccc", "population"}, {"summary_std_dev", "sample"}};
    auto excluded = nlohmann::ordered_json::array();
    for (const auto &e : result.excluded) {
        excluded.push_back({{"image_id", e.image_id}, {"reason", e.reason}});
    }
    p["corpus"] = {{"manifest_size", corpus_size},
                   {"included", result.n_included},
                   {"excluded", result.excluded.size()},
                   {"excluded_images", excluded}};
    return p;
}

} // namespace

void validate(const ExperimentConfig &cfg) {
    if (cfg.binning_specs.empty()) {
        throw Error(ErrorKind::InvalidConfig, "at least one binning spec is required");
    }
    for (const auto &s : cfg.binning_specs) {
        validate(s);
    }
    if (!(cfg.target_area_change > 0.0) || !(cfg.target_area_change < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "target area change must lie strictly between 0 and 1");
    }
    if (cfg.target_spacing &&
        (!(cfg.target_spacing->x > 0.0) || !(cfg.target_spacing->y > 0.0) || !std::isfinite(cfg.target_spacing->x) ||
         !std::isfinite(cfg.target_spacing->y))) {
        throw Error(ErrorKind::InvalidConfig, "target spacing must be positive");
    }
    if (cfg.ngldm.alpha < 0 || cfg.ngldm.distance < 1) {
        throw Error(ErrorKind::InvalidConfig, "NGLDM needs alpha >= 0 and distance >= 1");
    }
    if (!(cfg.norm_hi > cfg.norm_lo)) {
        throw Error(ErrorKind::InvalidConfig, "normalization needs hi > lo");
    }
    if (cfg.comparisons.empty()) {
        throw Error(ErrorKind::InvalidConfig, "at least one comparison is required");
    }
    if (cfg.structuring_element < 3 || cfg.structuring_element % 2 == 0) {
        throw Error(ErrorKind::InvalidConfig, "structuring element side must be odd and >= 3");
    }
    if (cfg.threads < 1) {
        throw Error(ErrorKind::InvalidConfig, "threads must be at least 1");
    }
}

const Mask2D &PreparedImage::mask(MaskVariant v) const {
    switch (v) {
    case MaskVariant::Original: return original;
    case MaskVariant::Eroded:
        if (eroded) {
            return eroded->mask;
        }
        break;
    case MaskVariant::Dilated:
        if (dilated) {
            return dilated->mask;
        }
        break;
    }
    throw Error(ErrorKind::InvalidArgument, "mask variant '" + std::string(to_string(v)) + "' was not prepared");
}

PreparedImage prepare_image(const Image2D &image, const BBox &bbox, Spacing target, const ExperimentConfig &cfg,
                            bool need_eroded, bool need_dilated) {
    const Mask2D box = bbox_to_mask(bbox, image.width(), image.height());
    const Image2D resampled = resample_image(image, target, cfg.interpolation);
    Mask2D mask = resample_mask(box, image.spacing(), target);
    if (mask.empty()) {
        throw Error(ErrorKind::EmptyRoi, "bounding box vanished when resampled");
    }
    PreparedImage out{normalize_minmax(resampled, cfg.norm_lo, cfg.norm_hi), std::move(mask), std::nullopt,
                      std::nullopt};
    const StructuringElement se(cfg.structuring_element);
    if (need_eroded) {
        out.eroded = perturb_to_area(out.original, 1.0 - cfg.target_area_change, se);
    }
    if (need_dilated) {
        out.dilated = perturb_to_area(out.original, 1.0 + cfg.target_area_change, se);
    }
    return out;
}

std::map<std::string, double> extract_features(const Image2D &image, const Mask2D &roi, const BinningSpec &spec,
                                               const NgldmParams &params) {
    const LevelImage levels = quantize(image, roi, spec);
    auto features = feature_vector(compute_ngldm(levels, roi, params));
    features.merge(first_order_features(image, levels, roi));
    return features;
}

std::vector<std::string> extracted_feature_names() {
    std::vector<std::string> names = ngldm_feature_names();
    const auto &fo = first_order_feature_names();
    names.insert(names.end(), fo.begin(), fo.end());
    return names;
}

ExperimentResult extract_corpus(const std::vector<CorpusImage> &corpus, const ExperimentConfig &cfg) {
    validate(cfg);
    if (corpus.empty()) {
        throw Error(ErrorKind::EmptyCorpus, "the manifest lists no images");
    }
    ExperimentResult result;
    if (cfg.target_spacing) {
        result.target_spacing = *cfg.target_spacing;
    } else {
        std::vector<Spacing> spacings;
        spacings.reserve(corpus.size());
        for (const auto &c : corpus) {
            spacings.push_back(c.image.spacing());
        }
        result.target_spacing = median_spacing(spacings);
    }

    std::vector<std::string> spec_names;
    for (const auto &s : cfg.binning_specs) {
        spec_names.push_back(to_string(s));
    }

    std::vector<ImageOutcome> outcomes(corpus.size());
    const auto workers = std::min<size_t>(static_cast<size_t>(cfg.threads), corpus.size());
    if (workers <= 1) {
        for (size_t i = 0; i < corpus.size(); ++i) {
            outcomes[i] = process_image(corpus[i], result.target_spacing, cfg, spec_names);
        }
    } else {
        std::vector<std::exception_ptr> failures(workers);
        {
            std::vector<std::jthread> pool;
            for (size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (size_t i = w; i < corpus.size(); i += workers) {
                            outcomes[i] = process_image(corpus[i], result.target_spacing, cfg, spec_names);
                        }
                    } catch (...) {
                        failures[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto &f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
    }

    for (size_t i = 0; i < corpus.size(); ++i) {
        if (outcomes[i].excluded_reason) {
            result.excluded.push_back({corpus[i].image_id, *outcomes[i].excluded_reason});
            continue;
        }
        ++result.n_included;
        for (auto &row : outcomes[i].rows) {
            result.features.add(std::move(row));
        }
    }
    if (result.n_included == 0) {
        throw Error(ErrorKind::AllImagesExcluded,
                    "all " + std::to_string(corpus.size()) + " images were excluded; first reason: " +
                        result.excluded.front().reason);
    }
    result.report.provenance = provenance_json(cfg, result, corpus.size());
    return result;
}

ExperimentResult run_experiment(const std::vector<CorpusImage> &corpus, const ExperimentConfig &cfg) {
    ExperimentResult result = extract_corpus(corpus, cfg);
    std::vector<std::string> spec_names;
    for (const auto &s : cfg.binning_specs) {
        spec_names.push_back(to_string(s));
    }
    auto provenance = std::move(result.report.provenance);
    result.report = compare_features(result.features, cfg.comparisons, cfg.threshold, spec_names);
    result.report.provenance = std::move(provenance);
    return result;
}

std::vector<CorpusImage> load_corpus(const std::vector<ManifestEntry> &entries,
                                     const std::filesystem::path &manifest_path) {
    std::vector<CorpusImage> corpus;
    corpus.reserve(entries.size());
    for (const auto &e : entries) {
        corpus.push_back(CorpusImage{e.image_id, load_image(resolve_image_path(manifest_path, e), e.spacing), e.bbox});
    }
    return corpus;
}

} // namespace radrobust
