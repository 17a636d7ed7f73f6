#pragma once

#include <map>
#include <string>
#include <vector>

#include "radrobust/image.hpp"
#include "radrobust/quantize.hpp"

namespace radrobust {

// Basic ROI statistics. Intensity moments use the raw (normalized) intensities; entropy and
// uniformity use the quantized levels, so they depend on the binning.
std::map<std::string, double> first_order_features(const Image2D &img, const LevelImage &levels, const Mask2D &roi);

const std::vector<std::string> &first_order_feature_names();

} // namespace radrobust
