#include "radrobust/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <png.h>

#include "radrobust/error.hpp"
#include "radrobust/format.hpp"

namespace radrobust {

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path &path, const char *mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) {
        const bool reading = mode[0] == 'r';
        throw Error(reading ? ErrorKind::MissingFile : ErrorKind::IoError,
                    std::string("cannot open '") + path.string() + "'");
    }
    return f;
}

[[noreturn]] void png_fail(png_structp png, png_const_charp msg) {
    (void)png;
    throw Error(ErrorKind::IoError, std::string("libpng: ") + msg);
}

void png_warn(png_structp, png_const_charp) {}

uint32_t float_bits_le(float v) {
    uint32_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) {
        bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) | (bits >> 24);
    }
    return bits;
}

float float_from_le(const unsigned char *b) {
    const uint32_t bits = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
                          (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    float v = 0.0f;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

} // namespace

Image2D read_png(const std::filesystem::path &path, Spacing spacing) {
    auto file = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
    if (png == nullptr) {
        throw Error(ErrorKind::IoError, "png_create_read_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp *png;
        png_infop *info;
        ~Guard() { png_destroy_read_struct(png, info, nullptr); }
    } guard{&png, &info};

    png_init_io(png, file.get());
    png_read_info(png, info);
    const auto width = static_cast<int64_t>(png_get_image_width(png, info));
    const auto height = static_cast<int64_t>(png_get_image_height(png, info));
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        throw Error(ErrorKind::IoError, "'" + path.string() + "' is not a single-channel grayscale PNG");
    }
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    if (depth == 16 && std::endian::native == std::endian::little) {
        png_set_swap(png);
    }
    png_read_update_info(png, info);
    const size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<unsigned char> buffer(rowbytes * static_cast<size_t>(height));
    std::vector<png_bytep> rows(static_cast<size_t>(height));
    for (int64_t y = 0; y < height; ++y) {
        rows[static_cast<size_t>(y)] = buffer.data() + static_cast<size_t>(y) * rowbytes;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);

    std::vector<double> pixels(static_cast<size_t>(width * height));
    for (int64_t y = 0; y < height; ++y) {
        const unsigned char *row = rows[static_cast<size_t>(y)];
        for (int64_t x = 0; x < width; ++x) {
            double v = 0.0;
            if (depth == 16) {
                uint16_t s = 0;
                std::memcpy(&s, row + 2 * x, sizeof s);
                v = s;
            } else {
                v = row[x];
            }
            pixels[static_cast<size_t>(y * width + x)] = v;
        }
    }
    return Image2D(width, height, spacing, std::move(pixels));
}

void write_png(const std::filesystem::path &path, const Image2D &img, PngDepth depth) {
    auto file = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
    if (png == nullptr) {
        throw Error(ErrorKind::IoError, "png_create_write_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp *png;
        png_infop *info;
        ~Guard() { png_destroy_write_struct(png, info); }
    } guard{&png, &info};

    const int bits = static_cast<int>(depth);
    const double top = depth == PngDepth::Sixteen ? 65535.0 : 255.0;
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), bits,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const size_t bytes_per_px = depth == PngDepth::Sixteen ? 2 : 1;
    std::vector<unsigned char> row(static_cast<size_t>(img.width()) * bytes_per_px);
    for (int64_t y = 0; y < img.height(); ++y) {
        for (int64_t x = 0; x < img.width(); ++x) {
            const auto v = static_cast<uint32_t>(std::clamp(std::round(img.at(x, y)), 0.0, top));
            if (depth == PngDepth::Sixteen) {
                // PNG stores 16-bit samples big-endian.
                row[static_cast<size_t>(2 * x)] = static_cast<unsigned char>(v >> 8);
                row[static_cast<size_t>(2 * x + 1)] = static_cast<unsigned char>(v & 0xFF);
            } else {
                row[static_cast<size_t>(x)] = static_cast<unsigned char>(v);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
}

Image2D read_raw_f32(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open '" + path.string() + "'");
    }
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic;
    int64_t width = 0;
    int64_t height = 0;
    Spacing spacing;
    if (!(hs >> magic >> width >> height >> spacing.x >> spacing.y) || magic != "P_RAWF32") {
        throw Error(ErrorKind::IoError, "'" + path.string() + "' has no valid P_RAWF32 header");
    }
    if (width < 1 || height < 1) {
        throw Error(ErrorKind::IoError, "'" + path.string() + "' declares an empty raster");
    }
    const auto count = static_cast<size_t>(width * height);
    std::vector<unsigned char> payload(count * 4);
    in.read(reinterpret_cast<char *>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (static_cast<size_t>(in.gcount()) != payload.size()) {
        throw Error(ErrorKind::IoError, "'" + path.string() + "' payload is truncated");
    }
    std::vector<double> pixels(count);
    for (size_t i = 0; i < count; ++i) {
        pixels[i] = float_from_le(payload.data() + 4 * i);
    }
    return Image2D(width, height, spacing, std::move(pixels));
}

void write_raw_f32(const std::filesystem::path &path, const Image2D &img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    }
    out << "P_RAWF32 " << img.width() << ' ' << img.height() << ' ' << format_real(img.spacing().x) << ' '
        << format_real(img.spacing().y) << '\n';
    std::vector<unsigned char> payload(img.pixels().size() * 4);
    for (size_t i = 0; i < img.pixels().size(); ++i) {
        const uint32_t bits = float_bits_le(static_cast<float>(img.pixels()[i]));
        std::memcpy(payload.data() + 4 * i, &bits, 4);
    }
    out.write(reinterpret_cast<const char *>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!out) {
        throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
    }
}

Image2D load_image(const std::filesystem::path &path, Spacing spacing) {
    if (!std::filesystem::exists(path)) {
        throw Error(ErrorKind::MissingFile, "image '" + path.string() + "' does not exist");
    }
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") {
        return read_png(path, spacing);
    }
    const Image2D raw = read_raw_f32(path);
    return Image2D(raw.width(), raw.height(), spacing, std::vector<double>(raw.pixels().begin(), raw.pixels().end()));
}

} // namespace radrobust
