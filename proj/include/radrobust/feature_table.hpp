#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace radrobust {

enum class MaskVariant { Original, Eroded, Dilated };

std::string_view to_string(MaskVariant v);
MaskVariant parse_mask_variant(std::string_view text);

struct FeatureRow {
    std::string image_id;
    MaskVariant variant = MaskVariant::Original;
    std::string binning;
    std::string feature;
    double value = 0.0;
};

inline constexpr const char *kFeatureTableHeader = "image_id,mask_variant,binning,feature,value";

// Long-format feature table, one value per (image, mask variant, binning, feature). Row order is
// the order of insertion, which the pipeline keeps equal to manifest order.
class FeatureTable {
  public:
    void add(FeatureRow row) { rows_.push_back(std::move(row)); }
    const std::vector<FeatureRow> &rows() const noexcept { return rows_; }
    bool empty() const noexcept { return rows_.empty(); }

    // Distinct values in first-appearance order.
    std::vector<std::string> image_ids() const;
    std::vector<std::string> binnings() const;
    std::vector<std::string> features() const;

    std::string to_csv() const;
    static FeatureTable from_csv(const std::string &text);

    void write(const std::filesystem::path &path) const;
    static FeatureTable read(const std::filesystem::path &path);

  private:
    std::vector<FeatureRow> rows_;
};

} // namespace radrobust
