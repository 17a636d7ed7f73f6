#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radrobust/feature_table.hpp"
#include "radrobust/report.hpp"

namespace radrobust {

struct ScatterPoint {
    std::string image_id;
    double value_original = 0.0; // x: the comparison's reference variant
    double value_perturbed = 0.0; // y: the perturbed variant
};

struct ScatterTable {
    std::string feature;
    std::string binning;
    Comparison comparison = Comparison::OrigVsEroded;
    std::vector<ScatterPoint> points;

    std::string to_csv() const;
    // Self-contained SVG with the points and the y = x identity line.
    std::string to_svg() const;
};

// Points in table (manifest) order for images that have both variants. Throws UnknownFeature if
// the feature is not in the table, InvalidConfig if the binning is not.
ScatterTable emit_scatter(const std::string &feature, const std::string &binning, Comparison comparison,
                          const FeatureTable &table);

// scatter_<feature>_<binning> with the binning made filename-safe; non-default comparisons are
// appended as a suffix so they do not overwrite the orig_vs_eroded file.
std::string scatter_basename(const ScatterTable &scatter);

// Writes <basename>.csv, and <basename>.svg when with_svg is set. Returns the CSV path.
std::filesystem::path write_scatter(const ScatterTable &scatter, const std::filesystem::path &out_dir, bool with_svg);

} // namespace radrobust
