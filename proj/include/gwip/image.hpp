#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gwip/color.hpp"

namespace gwip {

// Planar three-channel raster, row-major, nominal range [0,255] but stored
// as doubles so intermediate pipeline stages can leave the 8-bit grid.
// Vertex index of pixel (x, y) is y * width + x throughout.
struct Image {
    int width = 0;
    int height = 0;
    std::array<std::vector<double>, 3> ch;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h),
          ch{std::vector<double>(std::size_t(w) * h, fill),
             std::vector<double>(std::size_t(w) * h, fill),
             std::vector<double>(std::size_t(w) * h, fill)} {}

    std::size_t n_pixels() const { return std::size_t(width) * height; }
    bool empty() const { return width <= 0 || height <= 0; }

    double& at(int c, int x, int y) { return ch[c][std::size_t(y) * width + x]; }
    double at(int c, int x, int y) const { return ch[c][std::size_t(y) * width + x]; }

    // Rounds and clamps to the 8-bit grid.
    RgbColor rgb_at(int x, int y) const;

    bool same_dims(const Image& other) const {
        return width == other.width && height == other.height;
    }
};

// Reads a PNG or binary PPM (P6) file, sniffed by magic bytes.
// Throws IoError on unreadable or malformed input.
Image load_image(const std::string& path);

// Writes 8-bit RGB PNG; values are rounded and clamped to [0,255].
void save_png(const Image& img, const std::string& path);

// Per-pixel known(1)/missing(0) flags decoded from a mask image:
// pixels with first-channel value >= 128 are known.
std::vector<std::uint8_t> load_mask(const std::string& path, int& width, int& height);
std::vector<std::uint8_t> image_to_mask(const Image& img);

// Adds i.i.d. Gaussian noise of the given standard deviation to every
// channel, then clamps to [0,255]. Generation is seeded and reproducible.
Image add_gaussian_noise(const Image& img, double stddev, std::uint64_t seed);

} // namespace gwip
