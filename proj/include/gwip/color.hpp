#pragma once

#include <cstdint>

namespace gwip {

struct RgbColor {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
};

// CIELab, D65 white point, 2-degree observer. L in [0,100]; a,b are the
// opponent coordinates.
struct LabColor {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;
};

LabColor srgb_to_lab(RgbColor c);
RgbColor lab_to_srgb(const LabColor& c);

// CIEDE2000 color difference, parametric factors kL = kC = kH = 1.
// Symmetric and zero for identical inputs; not a metric (the triangle
// inequality can fail), so never use it for search-tree pruning.
double delta_e2000(const LabColor& p, const LabColor& q);

// Plain Euclidean distance between 8-bit RGB triples.
double delta_e_rgb(RgbColor p, RgbColor q);

// HSV Value component, max(r,g,b)/255, in [0,1].
double rgb_to_value(RgbColor c);

} // namespace gwip
