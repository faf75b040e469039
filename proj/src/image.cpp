#include "gwip/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

#include <png.h>

#include "gwip/common.hpp"

namespace gwip {

RgbColor Image::rgb_at(int x, int y) const {
    auto q = [](double v) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    };
    return {q(at(0, x, y)), q(at(1, x, y)), q(at(2, x, y))};
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image load_png(std::FILE* fp, const std::string& path) {
    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failed");
    }
    std::vector<png_bytep> row_ptrs;
    std::vector<png_byte> data;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG: " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize everything to 8-bit RGB.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (w == 0 || h == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("empty PNG: " + path);
    }

    const std::size_t stride = png_get_rowbytes(png, info);
    data.resize(stride * h);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) row_ptrs[y] = data.data() + y * stride;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(int(w), int(h));
    for (png_uint_32 y = 0; y < h; ++y) {
        const png_byte* row = data.data() + y * stride;
        for (png_uint_32 x = 0; x < w; ++x) {
            img.at(0, int(x), int(y)) = row[3 * x + 0];
            img.at(1, int(x), int(y)) = row[3 * x + 1];
            img.at(2, int(x), int(y)) = row[3 * x + 2];
        }
    }
    return img;
}

int ppm_next_token(std::FILE* fp, char* buf, int cap) {
    int c;
    do {
        c = std::fgetc(fp);
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(fp);
        }
    } while (c != EOF && std::isspace(c));
    int n = 0;
    while (c != EOF && !std::isspace(c) && n < cap - 1) {
        buf[n++] = char(c);
        c = std::fgetc(fp);
    }
    buf[n] = '\0';
    return n;
}

Image load_ppm(std::FILE* fp, const std::string& path) {
    char tok[64];
    auto next_int = [&](const char* what) {
        if (!ppm_next_token(fp, tok, sizeof tok))
            throw IoError("truncated PPM header in " + path);
        long v = std::strtol(tok, nullptr, 10);
        if (v <= 0) throw IoError(std::string("bad PPM ") + what + " in " + path);
        return v;
    };
    if (!ppm_next_token(fp, tok, sizeof tok) || std::string(tok) != "P6")
        throw IoError("not a binary PPM (P6): " + path);
    const long w = next_int("width");
    const long h = next_int("height");
    const long maxval = next_int("maxval");
    if (maxval != 255)
        throw IoError("unsupported PPM maxval (expected 255): " + path);

    std::vector<std::uint8_t> raw(std::size_t(w) * h * 3);
    if (std::fread(raw.data(), 1, raw.size(), fp) != raw.size())
        throw IoError("truncated PPM data in " + path);

    Image img(int(w), int(h));
    for (long y = 0; y < h; ++y)
        for (long x = 0; x < w; ++x) {
            const std::size_t i = 3 * (std::size_t(y) * w + x);
            img.at(0, int(x), int(y)) = raw[i + 0];
            img.at(1, int(x), int(y)) = raw[i + 1];
            img.at(2, int(x), int(y)) = raw[i + 2];
        }
    return img;
}

} // namespace

Image load_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);

    unsigned char magic[8] = {};
    const std::size_t got = std::fread(magic, 1, sizeof magic, fp.get());
    std::rewind(fp.get());
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return load_png(fp.get(), path);
    if (got >= 2 && magic[0] == 'P' && magic[1] == '6') return load_ppm(fp.get(), path);
    throw IoError("unrecognized image format (want PNG or P6 PPM): " + path);
}

void save_png(const Image& img, const std::string& path) {
    if (img.empty()) throw IoError("refusing to write empty image: " + path);
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open " + path + " for writing");

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(std::size_t(img.width) * 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const RgbColor c = img.rgb_at(x, y);
            row[3 * x + 0] = c.r;
            row[3 * x + 1] = c.g;
            row[3 * x + 2] = c.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::vector<std::uint8_t> image_to_mask(const Image& img) {
    std::vector<std::uint8_t> mask(img.n_pixels());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = img.ch[0][i] >= 128.0 ? 1 : 0;
    return mask;
}

std::vector<std::uint8_t> load_mask(const std::string& path, int& width, int& height) {
    const Image img = load_image(path);
    width = img.width;
    height = img.height;
    return image_to_mask(img);
}

Image add_gaussian_noise(const Image& img, double stddev, std::uint64_t seed) {
    Image out = img;
    if (stddev <= 0.0) return out;
    std::mt19937_64 rng(seed);
    // Box-Muller on raw mt19937 draws keeps the stream independent of any
    // library distribution internals.
    auto uniform = [&rng] {
        return (double(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < out.n_pixels(); ++i) {
            const double u1 = uniform();
            const double u2 = uniform();
            const double n =
                std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            out.ch[c][i] = std::clamp(out.ch[c][i] + stddev * n, 0.0, 255.0);
        }
    return out;
}

} // namespace gwip
