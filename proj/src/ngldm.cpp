#include "radrobust/ngldm.hpp"

#include <cmath>
#include <numeric>

#include "radrobust/error.hpp"

namespace radrobust {

namespace {

void require_mass(const Ngldm &m) {
    if (m.total() < 1) {
        throw Error(ErrorKind::EmptyMatrix, "NGLDM has no counts");
    }
}

} // namespace

Ngldm::Ngldm(int32_t n_levels, int32_t max_dependence, std::vector<int64_t> counts)
    : n_levels_(n_levels), max_dependence_(max_dependence), counts_(std::move(counts)), total_(0) {
    if (n_levels < 1 || max_dependence < 1) {
        throw Error(ErrorKind::InvalidArgument, "NGLDM dimensions must be positive");
    }
    if (counts_.size() != static_cast<size_t>(n_levels) * static_cast<size_t>(max_dependence)) {
        throw Error(ErrorKind::InvalidArgument, "NGLDM count buffer does not match its dimensions");
    }
    for (const int64_t c : counts_) {
        if (c < 0) {
            throw Error(ErrorKind::InvalidArgument, "NGLDM counts must be non-negative");
        }
        total_ += c;
    }
}

Ngldm compute_ngldm(const LevelImage &levels, const Mask2D &roi, const NgldmParams &params) {
    if (params.distance < 1 || params.alpha < 0) {
        throw Error(ErrorKind::InvalidArgument, "NGLDM needs distance >= 1 and alpha >= 0");
    }
    if (roi.width() != levels.width() || roi.height() != levels.height()) {
        throw Error(ErrorKind::InvalidArgument, "ROI and level image dimensions differ");
    }
    if (roi.empty()) {
        throw Error(ErrorKind::EmptyRoi, "cannot build an NGLDM over an empty ROI");
    }
    const int32_t d = params.distance;
    const int32_t n_levels = levels.n_levels();
    const int32_t max_dep = (2 * d + 1) * (2 * d + 1);
    std::vector<int64_t> counts(static_cast<size_t>(n_levels) * static_cast<size_t>(max_dep), 0);

    const int64_t w = levels.width();
    const int64_t h = levels.height();
    for (int64_t y = 0; y < h; ++y) {
        for (int64_t x = 0; x < w; ++x) {
            if (!roi.at(x, y)) {
                continue;
            }
            const int32_t level = levels.at(x, y);
            if (level < 1 || level > n_levels) {
                throw Error(ErrorKind::InvalidArgument, "ROI pixel carries level " + std::to_string(level) +
                                                            " outside 1.." + std::to_string(n_levels));
            }
            int32_t dependent = 0;
            for (int64_t ny = std::max<int64_t>(0, y - d); ny <= std::min<int64_t>(h - 1, y + d); ++ny) {
                for (int64_t nx = std::max<int64_t>(0, x - d); nx <= std::min<int64_t>(w - 1, x + d); ++nx) {
                    if ((nx == x && ny == y) || !roi.at(nx, ny)) {
                        continue;
                    }
                    if (std::abs(levels.at(nx, ny) - level) <= params.alpha) {
                        ++dependent;
                    }
                }
            }
            ++counts[static_cast<size_t>(level - 1) * static_cast<size_t>(max_dep) + static_cast<size_t>(dependent)];
        }
    }
    return Ngldm(n_levels, max_dep, std::move(counts));
}

double lde(const Ngldm &m) {
    require_mass(m);
    // Integer column totals over gray levels, then the dependence weights.
    double acc = 0.0;
    for (int32_t j = 1; j <= m.max_dependence(); ++j) {
        int64_t column = 0;
        for (int32_t i = 1; i <= m.n_levels(); ++i) {
            column += m.s(i, j);
        }
        acc += static_cast<double>(column) / (static_cast<double>(j) * j);
    }
    return acc / static_cast<double>(m.total());
}

double ldlgle(const Ngldm &m) {
    require_mass(m);
    double acc = 0.0;
    for (int32_t i = 1; i <= m.n_levels(); ++i) {
        const double ii = static_cast<double>(i) * i;
        for (int32_t j = 1; j <= m.max_dependence(); ++j) {
            const double jj = static_cast<double>(j) * j;
            acc += static_cast<double>(m.s(i, j)) / (ii * jj);
        }
    }
    return acc / static_cast<double>(m.total());
}

const std::vector<std::string> &ngldm_feature_names() {
    static const std::vector<std::string> names = {
        "lde",      "hde",       "lgce",  "hgce",       "ldlgle", "ldhgle",  "hdlgle",   "hdhgle",  "glnu",
        "glnu_norm", "dcnu",     "dcnu_norm", "dc_energy", "dc_entropy", "gl_var", "dc_var",
    };
    return names;
}

std::map<std::string, double> feature_vector(const Ngldm &m) {
    require_mass(m);
    const double n_s = static_cast<double>(m.total());
    const int32_t n_g = m.n_levels();
    const int32_t n_j = m.max_dependence();

    double hde = 0.0, lgce = 0.0, hgce = 0.0, ldhgle = 0.0, hdlgle = 0.0, hdhgle = 0.0;
    double energy = 0.0, entropy = 0.0, mean_i = 0.0, mean_j = 0.0;
    std::vector<double> row_sums(static_cast<size_t>(n_g), 0.0);
    std::vector<double> col_sums(static_cast<size_t>(n_j), 0.0);

    for (int32_t i = 1; i <= n_g; ++i) {
        const double ii = static_cast<double>(i) * i;
        for (int32_t j = 1; j <= n_j; ++j) {
            const auto count = m.s(i, j);
            if (count == 0) {
                continue;
            }
            const double s = static_cast<double>(count);
            const double jj = static_cast<double>(j) * j;
            hde += s * jj;
            lgce += s / ii;
            hgce += s * ii;
            ldhgle += s * ii / jj;
            hdlgle += s * jj / ii;
            hdhgle += s * ii * jj;
            const double p = s / n_s;
            energy += p * p;
            entropy -= p * std::log2(p);
            mean_i += p * i;
            mean_j += p * j;
            row_sums[static_cast<size_t>(i - 1)] += s;
            col_sums[static_cast<size_t>(j - 1)] += s;
        }
    }

    double gl_var = 0.0, dc_var = 0.0;
    for (int32_t i = 1; i <= n_g; ++i) {
        for (int32_t j = 1; j <= n_j; ++j) {
            const auto count = m.s(i, j);
            if (count == 0) {
                continue;
            }
            const double p = static_cast<double>(count) / n_s;
            gl_var += p * (i - mean_i) * (i - mean_i);
            dc_var += p * (j - mean_j) * (j - mean_j);
        }
    }

    auto sum_squares = [](const std::vector<double> &v) {
        return std::accumulate(v.begin(), v.end(), 0.0, [](double a, double b) { return a + b * b; });
    };
    const double glnu = sum_squares(row_sums);
    const double dcnu = sum_squares(col_sums);

    return {
        {"lde", lde(m)},
        {"hde", hde / n_s},
        {"lgce", lgce / n_s},
        {"hgce", hgce / n_s},
        {"ldlgle", ldlgle(m)},
        {"ldhgle", ldhgle / n_s},
        {"hdlgle", hdlgle / n_s},
        {"hdhgle", hdhgle / n_s},
        {"glnu", glnu / n_s},
        {"glnu_norm", glnu / (n_s * n_s)},
        {"dcnu", dcnu / n_s},
        {"dcnu_norm", dcnu / (n_s * n_s)},
        {"dc_energy", energy},
        {"dc_entropy", entropy == 0.0 ? 0.0 : entropy},
        {"gl_var", gl_var},
        {"dc_var", dc_var},
    };
}

} // namespace radrobust
