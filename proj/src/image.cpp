#include "radrobust/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "radrobust/error.hpp"

namespace radrobust {

namespace {

void check_dims(int64_t width, int64_t height) {
    if (width < 1 || height < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "raster dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
}

void check_spacing(Spacing s, const char *what) {
    if (!(s.x > 0.0) || !(s.y > 0.0) || !std::isfinite(s.x) || !std::isfinite(s.y)) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " spacing must be finite and positive");
    }
}

// Margin of edge-replicated samples added around the input before prefiltering. The causal and
// anti-causal recursions decay as |pole|^k (~0.268^k), so 32 samples push the truncation error well
// below double precision and the interior coefficients match those of the infinitely
// edge-extended signal.
constexpr int64_t kSplinePad = 32;

// In-place cubic B-spline prefilter (Unser's recursive filter, single pole, mirror start-up on the
// padded line).
void prefilter_line(std::span<double> c) {
    const auto n = static_cast<int64_t>(c.size());
    if (n < 2) {
        return;
    }
    const double z = std::sqrt(3.0) - 2.0;
    const double gain = (1.0 - z) * (1.0 - 1.0 / z);
    for (auto &v : c) {
        v *= gain;
    }

    double sum = c[0];
    double zk = z;
    const int64_t horizon = std::min<int64_t>(n, 40);
    for (int64_t k = 1; k < horizon; ++k) {
        sum += zk * c[static_cast<size_t>(k)];
        zk *= z;
    }
    c[0] = sum;
    for (int64_t k = 1; k < n; ++k) {
        c[static_cast<size_t>(k)] += z * c[static_cast<size_t>(k - 1)];
    }

    c[static_cast<size_t>(n - 1)] =
        (z / (z * z - 1.0)) * (c[static_cast<size_t>(n - 1)] + z * c[static_cast<size_t>(n - 2)]);
    for (int64_t k = n - 2; k >= 0; --k) {
        c[static_cast<size_t>(k)] = z * (c[static_cast<size_t>(k + 1)] - c[static_cast<size_t>(k)]);
    }
}

void bspline_weights(double t, double w[4]) {
    const double s = 1.0 - t;
    w[0] = s * s * s / 6.0;
    w[1] = 2.0 / 3.0 - t * t + 0.5 * t * t * t;
    w[2] = 2.0 / 3.0 - s * s + 0.5 * s * s * s;
    w[3] = t * t * t / 6.0;
}

// Spline coefficients over the edge-padded input.
class SplineCoefficients {
  public:
    explicit SplineCoefficients(const Image2D &img)
        : w_(img.width() + 2 * kSplinePad), h_(img.height() + 2 * kSplinePad),
          c_(static_cast<size_t>(w_ * h_)) {
        for (int64_t y = 0; y < h_; ++y) {
            const int64_t sy = std::clamp<int64_t>(y - kSplinePad, 0, img.height() - 1);
            for (int64_t x = 0; x < w_; ++x) {
                const int64_t sx = std::clamp<int64_t>(x - kSplinePad, 0, img.width() - 1);
                c_[static_cast<size_t>(y * w_ + x)] = img.at(sx, sy);
            }
        }
        for (int64_t y = 0; y < h_; ++y) {
            prefilter_line(std::span<double>(c_).subspan(static_cast<size_t>(y * w_), static_cast<size_t>(w_)));
        }
        std::vector<double> column(static_cast<size_t>(h_));
        for (int64_t x = 0; x < w_; ++x) {
            for (int64_t y = 0; y < h_; ++y) {
                column[static_cast<size_t>(y)] = c_[static_cast<size_t>(y * w_ + x)];
            }
            prefilter_line(column);
            for (int64_t y = 0; y < h_; ++y) {
                c_[static_cast<size_t>(y * w_ + x)] = column[static_cast<size_t>(y)];
            }
        }
    }

    // (u, v) are continuous indices into the unpadded input.
    double evaluate(double u, double v) const {
        const double fu = std::floor(u);
        const double fv = std::floor(v);
        double wx[4];
        double wy[4];
        bspline_weights(u - fu, wx);
        bspline_weights(v - fv, wy);
        const auto ix = static_cast<int64_t>(fu) + kSplinePad - 1;
        const auto iy = static_cast<int64_t>(fv) + kSplinePad - 1;
        double acc = 0.0;
        for (int64_t j = 0; j < 4; ++j) {
            const double *row = &c_[static_cast<size_t>((iy + j) * w_ + ix)];
            acc += wy[j] * (wx[0] * row[0] + wx[1] * row[1] + wx[2] * row[2] + wx[3] * row[3]);
        }
        return acc;
    }

  private:
    int64_t w_;
    int64_t h_;
    std::vector<double> c_;
};

double sample_linear(const Image2D &img, double u, double v) {
    const auto x0 = std::min<int64_t>(static_cast<int64_t>(std::floor(u)), img.width() - 1);
    const auto y0 = std::min<int64_t>(static_cast<int64_t>(std::floor(v)), img.height() - 1);
    const int64_t x1 = std::min<int64_t>(x0 + 1, img.width() - 1);
    const int64_t y1 = std::min<int64_t>(y0 + 1, img.height() - 1);
    const double tx = u - static_cast<double>(x0);
    const double ty = v - static_cast<double>(y0);
    const double top = (1.0 - tx) * img.at(x0, y0) + tx * img.at(x1, y0);
    const double bottom = (1.0 - tx) * img.at(x0, y1) + tx * img.at(x1, y1);
    return (1.0 - ty) * top + ty * bottom;
}

// Continuous source index of output pixel k, clamped to the sample range.
double source_coordinate(int64_t k, double source, double target, int64_t n) {
    const double u = (static_cast<double>(k) + 0.5) * target / source - 0.5;
    return std::clamp(u, 0.0, static_cast<double>(n - 1));
}

} // namespace

Image2D::Image2D(int64_t width, int64_t height, Spacing spacing, std::vector<double> pixels)
    : width_(width), height_(height), spacing_(spacing), pixels_(std::move(pixels)) {
    check_dims(width, height);
    check_spacing(spacing, "image");
    if (static_cast<int64_t>(pixels_.size()) != width * height) {
        throw Error(ErrorKind::InvalidArgument, "pixel buffer length does not match " +
                                                    std::to_string(width) + "x" + std::to_string(height));
    }
    if (!std::all_of(pixels_.begin(), pixels_.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorKind::InvalidArgument, "image contains non-finite intensities");
    }
}

Image2D::Image2D(int64_t width, int64_t height, Spacing spacing, double fill)
    : Image2D(width, height, spacing,
              std::vector<double>(width > 0 && height > 0 ? static_cast<size_t>(width * height) : 0, fill)) {}

Mask2D::Mask2D(int64_t width, int64_t height, bool fill) : width_(width), height_(height) {
    check_dims(width, height);
    bits_.assign(static_cast<size_t>(width * height), fill ? 1 : 0);
}

Mask2D::Mask2D(int64_t width, int64_t height, std::vector<uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    check_dims(width, height);
    if (static_cast<int64_t>(bits_.size()) != width * height) {
        throw Error(ErrorKind::InvalidArgument, "mask buffer length does not match its dimensions");
    }
    for (auto &b : bits_) {
        b = b != 0 ? 1 : 0;
    }
}

int64_t Mask2D::area() const noexcept {
    return std::accumulate(bits_.begin(), bits_.end(), int64_t{0});
}

Mask2D bbox_to_mask(const BBox &bbox, int64_t width, int64_t height) {
    check_dims(width, height);
    if (bbox.bw < 1 || bbox.bh < 1) {
        throw Error(ErrorKind::InvalidArgument, "bounding box width and height must be at least 1");
    }
    const int64_t x_begin = std::max<int64_t>(bbox.x0, 0);
    const int64_t y_begin = std::max<int64_t>(bbox.y0, 0);
    const int64_t x_end = std::min<int64_t>(bbox.x0 + bbox.bw, width);
    const int64_t y_end = std::min<int64_t>(bbox.y0 + bbox.bh, height);
    if (x_begin >= x_end || y_begin >= y_end) {
        throw Error(ErrorKind::EmptyRegion, "bounding box lies entirely outside the image");
    }
    Mask2D mask(width, height);
    for (int64_t y = y_begin; y < y_end; ++y) {
        for (int64_t x = x_begin; x < x_end; ++x) {
            mask.set(x, y, true);
        }
    }
    return mask;
}

int64_t resampled_extent(int64_t n, double source, double target) {
    if (!(source > 0.0) || !(target > 0.0) || !std::isfinite(source) || !std::isfinite(target)) {
        throw Error(ErrorKind::InvalidArgument, "spacings must be finite and positive");
    }
    const double extent = static_cast<double>(n) * source;
    const auto out = static_cast<int64_t>(std::llround(extent / target));
    if (out < 1 && extent <= 0.0) {
        throw Error(ErrorKind::DegenerateTarget, "input has zero physical extent");
    }
    return std::max<int64_t>(out, 1);
}

Image2D resample_image(const Image2D &img, Spacing target, Interpolation method) {
    check_spacing(target, "target");
    const Spacing source = img.spacing();
    if (target == source) {
        return img;
    }
    const int64_t out_w = resampled_extent(img.width(), source.x, target.x);
    const int64_t out_h = resampled_extent(img.height(), source.y, target.y);

    std::vector<double> us(static_cast<size_t>(out_w));
    for (int64_t x = 0; x < out_w; ++x) {
        us[static_cast<size_t>(x)] = source_coordinate(x, source.x, target.x, img.width());
    }

    std::vector<double> out(static_cast<size_t>(out_w * out_h));
    if (method == Interpolation::CubicBSpline) {
        const SplineCoefficients coeffs(img);
        for (int64_t y = 0; y < out_h; ++y) {
            const double v = source_coordinate(y, source.y, target.y, img.height());
            for (int64_t x = 0; x < out_w; ++x) {
                out[static_cast<size_t>(y * out_w + x)] = coeffs.evaluate(us[static_cast<size_t>(x)], v);
            }
        }
    } else {
        for (int64_t y = 0; y < out_h; ++y) {
            const double v = source_coordinate(y, source.y, target.y, img.height());
            for (int64_t x = 0; x < out_w; ++x) {
                out[static_cast<size_t>(y * out_w + x)] = sample_linear(img, us[static_cast<size_t>(x)], v);
            }
        }
    }
    return Image2D(out_w, out_h, target, std::move(out));
}

Mask2D resample_mask(const Mask2D &mask, Spacing source, Spacing target) {
    check_spacing(source, "source");
    check_spacing(target, "target");
    if (source == target) {
        return mask;
    }
    const int64_t out_w = resampled_extent(mask.width(), source.x, target.x);
    const int64_t out_h = resampled_extent(mask.height(), source.y, target.y);
    // Nearest source pixel centre: round((k + 0.5) * t / s - 0.5) == floor((k + 0.5) * t / s).
    auto nearest = [](int64_t k, double s, double t, int64_t n) {
        const auto i = static_cast<int64_t>(std::floor((static_cast<double>(k) + 0.5) * t / s));
        return std::clamp<int64_t>(i, 0, n - 1);
    };
    Mask2D out(out_w, out_h);
    for (int64_t y = 0; y < out_h; ++y) {
        const int64_t sy = nearest(y, source.y, target.y, mask.height());
        for (int64_t x = 0; x < out_w; ++x) {
            out.set(x, y, mask.at(nearest(x, source.x, target.x, mask.width()), sy));
        }
    }
    return out;
}

Image2D normalize_minmax(const Image2D &img, double lo, double hi) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::InvalidArgument, "normalization requires finite hi > lo");
    }
    const auto px = img.pixels();
    const auto [min_it, max_it] = std::minmax_element(px.begin(), px.end());
    const double mn = *min_it;
    const double mx = *max_it;
    std::vector<double> out(px.size(), lo);
    if (mx > mn) {
        const double scale = (hi - lo) / (mx - mn);
        for (size_t i = 0; i < px.size(); ++i) {
            out[i] = lo + (px[i] - mn) * scale;
        }
        // Pin the extrema so rounding in the affine map cannot push them off the interval.
        out[static_cast<size_t>(min_it - px.begin())] = lo;
        out[static_cast<size_t>(max_it - px.begin())] = hi;
        for (auto &v : out) {
            v = std::clamp(v, lo, hi);
        }
    }
    return Image2D(img.width(), img.height(), img.spacing(), std::move(out));
}

Spacing median_spacing(std::span<const Spacing> spacings) {
    if (spacings.empty()) {
        throw Error(ErrorKind::EmptyCorpus, "cannot take the median spacing of an empty corpus");
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(spacings.size());
    ys.reserve(spacings.size());
    for (const auto &s : spacings) {
        xs.push_back(s.x);
        ys.push_back(s.y);
    }
    return Spacing{median(std::move(xs)), median(std::move(ys))};
}

} // namespace radrobust
