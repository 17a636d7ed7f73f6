#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radrobust/feature_table.hpp"
#include "radrobust/image.hpp"
#include "radrobust/manifest.hpp"
#include "radrobust/morphology.hpp"
#include "radrobust/ngldm.hpp"
#include "radrobust/quantize.hpp"
#include "radrobust/report.hpp"

namespace radrobust {

struct ExperimentConfig {
    std::vector<BinningSpec> binning_specs;
    // Masks are eroded to (1 - change) and dilated to (1 + change) of the original area.
    double target_area_change = 0.2;
    // Empty selects the median spacing of the corpus.
    std::optional<Spacing> target_spacing;
    NgldmParams ngldm;
    double norm_lo = 0.0;
    double norm_hi = 255.0;
    std::vector<Comparison> comparisons = all_comparisons();
    Interpolation interpolation = Interpolation::CubicBSpline;
    int32_t structuring_element = 3;
    double threshold = kDefaultAgreementThreshold;
    // Worker threads for per-image extraction; output order does not depend on it.
    int32_t threads = 1;
};

// Throws InvalidConfig / InvalidSpec.
void validate(const ExperimentConfig &cfg);

// One image with its annotation, already loaded.
struct CorpusImage {
    std::string image_id;
    Image2D image;
    BBox bbox;
};

// An image after resampling and normalization, with its mask variants on the resampled grid.
// Perturbed variants are present only when requested.
struct PreparedImage {
    Image2D image;
    Mask2D original;
    std::optional<PerturbResult> eroded;
    std::optional<PerturbResult> dilated;

    const Mask2D &mask(MaskVariant v) const;
};

// Resamples (image by spline, box mask by nearest neighbour), normalizes, then perturbs the mask.
// Propagates EmptyRegion, VanishedMask and SaturatedMask.
PreparedImage prepare_image(const Image2D &image, const BBox &bbox, Spacing target, const ExperimentConfig &cfg,
                            bool need_eroded, bool need_dilated);

// NGLDM family plus first-order basics for one (image, ROI, binning).
std::map<std::string, double> extract_features(const Image2D &image, const Mask2D &roi, const BinningSpec &spec,
                                               const NgldmParams &params);

// Every feature name extract_features emits, in output order.
std::vector<std::string> extracted_feature_names();

struct ExcludedImage {
    std::string image_id;
    std::string reason;
};

struct ExperimentResult {
    FeatureTable features;
    RobustnessReport report;
    std::vector<ExcludedImage> excluded;
    int64_t n_included = 0;
    Spacing target_spacing;
};

// Feature extraction only. Throws EmptyCorpus, AllImagesExcluded.
ExperimentResult extract_corpus(const std::vector<CorpusImage> &corpus, const ExperimentConfig &cfg);

// Extraction followed by the agreement report.
ExperimentResult run_experiment(const std::vector<CorpusImage> &corpus, const ExperimentConfig &cfg);

// Loads every manifest image (MissingFile if absent) into memory.
std::vector<CorpusImage> load_corpus(const std::vector<ManifestEntry> &entries,
                                     const std::filesystem::path &manifest_path);

} // namespace radrobust
