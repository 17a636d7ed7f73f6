#include "radrobust/quantize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "radrobust/error.hpp"
#include "radrobust/format.hpp"

namespace radrobust {

namespace {

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

// Equal-width bin index in [1, n_bins] for x inside [lo, hi]; values outside clamp to the end bins.
int32_t bin_of(double x, double lo, double hi, int32_t n_bins) {
    const double scaled = std::floor((x - lo) * static_cast<double>(n_bins) / (hi - lo));
    if (!(scaled >= 0.0)) {
        return 1;
    }
    if (scaled >= static_cast<double>(n_bins)) {
        return n_bins;
    }
    return static_cast<int32_t>(scaled) + 1;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

template <class T> T parse_number(std::string_view token, std::string_view whole) {
    T value{};
    const auto *end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        throw Error(ErrorKind::InvalidSpec,
                    "bad number '" + std::string(token) + "' in binning spec '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

void validate(const BinningSpec &spec) {
    std::visit(Overloaded{
                   [](const DynamicBins &d) {
                       if (d.n_bins < 1) {
                           throw Error(ErrorKind::InvalidSpec, "dynamic binning needs n_bins >= 1");
                       }
                   },
                   [](const StaticRangeBins &s) {
                       if (s.n_bins < 1) {
                           throw Error(ErrorKind::InvalidSpec, "static binning needs n_bins >= 1");
                       }
                       if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.hi > s.lo)) {
                           throw Error(ErrorKind::InvalidSpec, "static binning needs finite hi > lo");
                       }
                   },
                   [](const StaticWidthBins &w) {
                       if (!std::isfinite(w.width) || !(w.width > 0.0) || !std::isfinite(w.origin)) {
                           throw Error(ErrorKind::InvalidSpec, "fixed-width binning needs a finite width > 0");
                       }
                   },
               },
               spec);
}

bool is_dynamic(const BinningSpec &spec) { return std::holds_alternative<DynamicBins>(spec); }

BinningSpec parse_binning(std::string_view text) {
    const size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::InvalidSpec, "binning spec '" + std::string(text) + "' lacks a ':'");
    }
    const std::string_view kind = text.substr(0, colon);
    const auto args = split(text.substr(colon + 1), ',');
    BinningSpec spec;
    if (kind == "dynamic" && args.size() == 1) {
        spec = DynamicBins{parse_number<int32_t>(args[0], text)};
    } else if (kind == "static" && args.size() == 3) {
        spec = StaticRangeBins{parse_number<int32_t>(args[2], text), parse_number<double>(args[0], text),
                               parse_number<double>(args[1], text)};
    } else if (kind == "static-width" && (args.size() == 1 || args.size() == 2)) {
        spec = StaticWidthBins{parse_number<double>(args[0], text),
                               args.size() == 2 ? parse_number<double>(args[1], text) : 0.0};
    } else {
        throw Error(ErrorKind::InvalidSpec, "unrecognized binning spec '" + std::string(text) +
                                                "' (expected dynamic:N, static:LO,HI,N or static-width:W[,ORIGIN])");
    }
    validate(spec);
    return spec;
}

std::string to_string(const BinningSpec &spec) {
    return std::visit(Overloaded{
                          [](const DynamicBins &d) { return "dynamic:" + std::to_string(d.n_bins); },
                          [](const StaticRangeBins &s) {
                              return "static:" + format_real(s.lo) + "," + format_real(s.hi) + "," +
                                     std::to_string(s.n_bins);
                          },
                          [](const StaticWidthBins &w) {
                              return "static-width:" + format_real(w.width) + "," + format_real(w.origin);
                          },
                      },
                      spec);
}

LevelImage::LevelImage(int64_t width, int64_t height, std::vector<int32_t> levels, int32_t n_levels)
    : width_(width), height_(height), levels_(std::move(levels)), n_levels_(n_levels) {
    if (width < 1 || height < 1 || static_cast<int64_t>(levels_.size()) != width * height) {
        throw Error(ErrorKind::InvalidArgument, "level buffer does not match its dimensions");
    }
    if (n_levels < 1) {
        throw Error(ErrorKind::InvalidArgument, "a level image needs at least one level");
    }
}

LevelImage quantize(const Image2D &img, const Mask2D &roi, const BinningSpec &spec) {
    validate(spec);
    if (!roi.same_shape(img)) {
        throw Error(ErrorKind::InvalidArgument, "ROI and image dimensions differ");
    }
    if (roi.empty()) {
        throw Error(ErrorKind::EmptyRoi, "cannot quantize an empty ROI");
    }
    const auto px = img.pixels();
    const auto bits = roi.bits();
    std::vector<int32_t> levels(px.size(), 0);

    int32_t n_levels = 1;
    if (const auto *d = std::get_if<DynamicBins>(&spec)) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < px.size(); ++i) {
            if (bits[i] != 0) {
                lo = std::min(lo, px[i]);
                hi = std::max(hi, px[i]);
            }
        }
        const bool flat = !(hi > lo);
        n_levels = flat ? 1 : d->n_bins;
        for (size_t i = 0; i < px.size(); ++i) {
            if (bits[i] != 0) {
                levels[i] = flat ? 1 : bin_of(px[i], lo, hi, d->n_bins);
            }
        }
    } else if (const auto *s = std::get_if<StaticRangeBins>(&spec)) {
        n_levels = s->n_bins;
        for (size_t i = 0; i < px.size(); ++i) {
            if (bits[i] != 0) {
                levels[i] = bin_of(px[i], s->lo, s->hi, s->n_bins);
            }
        }
    } else {
        const auto &w = std::get<StaticWidthBins>(spec);
        constexpr double kLevelCap = static_cast<double>(std::numeric_limits<int32_t>::max() / 2);
        for (size_t i = 0; i < px.size(); ++i) {
            if (bits[i] != 0) {
                const double level = std::clamp(std::floor((px[i] - w.origin) / w.width) + 1.0, 1.0, kLevelCap);
                levels[i] = static_cast<int32_t>(level);
                n_levels = std::max(n_levels, levels[i]);
            }
        }
    }
    return LevelImage(img.width(), img.height(), std::move(levels), n_levels);
}

} // namespace radrobust
