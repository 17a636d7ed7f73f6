#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "radrobust/image.hpp"
#include "radrobust/quantize.hpp"

namespace radrobust {

struct NgldmParams {
    // Largest level difference at which a neighbour still counts as dependent.
    int32_t alpha = 0;
    // Chebyshev radius of the neighbourhood.
    int32_t distance = 1;
};

// Neighbouring gray-level dependence matrix.
//
// s(i, j) counts ROI pixels at gray level i (1..n_levels) that have j - 1 dependent neighbours,
// so the dependence index j runs over 1..max_dependence with max_dependence = (2d + 1)^2. Storage is
// dense and row-major over (level, dependence).
class Ngldm {
  public:
    Ngldm(int32_t n_levels, int32_t max_dependence, std::vector<int64_t> counts);

    int32_t n_levels() const noexcept { return n_levels_; }
    int32_t max_dependence() const noexcept { return max_dependence_; }
    int64_t total() const noexcept { return total_; }
    std::span<const int64_t> counts() const noexcept { return counts_; }

    // 1-based level i and dependence j.
    int64_t s(int32_t i, int32_t j) const {
        return counts_[static_cast<size_t>(i - 1) * static_cast<size_t>(max_dependence_) + static_cast<size_t>(j - 1)];
    }

    friend bool operator==(const Ngldm &, const Ngldm &) = default;

  private:
    int32_t n_levels_;
    int32_t max_dependence_;
    std::vector<int64_t> counts_;
    int64_t total_;
};

Ngldm compute_ngldm(const LevelImage &levels, const Mask2D &roi, const NgldmParams &params = {});

double lde(const Ngldm &m);
double ldlgle(const Ngldm &m);

// The full NGLDM feature family keyed by snake-case name; see README for the table.
std::map<std::string, double> feature_vector(const Ngldm &m);

// Names produced by feature_vector, in a fixed order.
const std::vector<std::string> &ngldm_feature_names();

} // namespace radrobust
