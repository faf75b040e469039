#include "gwip/color.hpp"

#include <algorithm>
#include <cmath>

namespace gwip {

namespace {

// sRGB (IEC 61966-2-1) primaries, D65 white.
constexpr double RGB_TO_XYZ[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double XYZ_TO_RGB[3][3] = {
    {3.2404542, -1.5371385, -0.4985314},
    {-0.9692660, 1.8760108, 0.0415560},
    {0.0556434, -0.2040259, 1.0572252},
};
constexpr double D65_XN = 0.95047;
constexpr double D65_YN = 1.00000;
constexpr double D65_ZN = 1.08883;

// CIE constants, exact rational forms.
constexpr double LAB_EPSILON = 216.0 / 24389.0;
constexpr double LAB_KAPPA = 24389.0 / 27.0;

inline double srgb_decode(double v) {
    return (v <= 0.04045) ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

inline double srgb_encode(double v) {
    return (v <= 0.0031308) ? v * 12.92
                            : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

inline double lab_f(double t) {
    return (t > LAB_EPSILON) ? std::cbrt(t) : (LAB_KAPPA * t + 16.0) / 116.0;
}

inline double lab_f_inv(double t) {
    const double t3 = t * t * t;
    return (t3 > LAB_EPSILON) ? t3 : (116.0 * t - 16.0) / LAB_KAPPA;
}

inline double deg2rad(double d) { return d * M_PI / 180.0; }

inline std::uint8_t to_u8(double v) {
    return static_cast<std::uint8_t>(
        std::clamp(std::lround(v), 0L, 255L));
}

} // namespace

LabColor srgb_to_lab(RgbColor c) {
    const double rl = srgb_decode(c.r / 255.0);
    const double gl = srgb_decode(c.g / 255.0);
    const double bl = srgb_decode(c.b / 255.0);

    const double x = RGB_TO_XYZ[0][0] * rl + RGB_TO_XYZ[0][1] * gl + RGB_TO_XYZ[0][2] * bl;
    const double y = RGB_TO_XYZ[1][0] * rl + RGB_TO_XYZ[1][1] * gl + RGB_TO_XYZ[1][2] * bl;
    const double z = RGB_TO_XYZ[2][0] * rl + RGB_TO_XYZ[2][1] * gl + RGB_TO_XYZ[2][2] * bl;

    const double fx = lab_f(x / D65_XN);
    const double fy = lab_f(y / D65_YN);
    const double fz = lab_f(z / D65_ZN);

    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

RgbColor lab_to_srgb(const LabColor& c) {
    const double fy = (c.L + 16.0) / 116.0;
    const double fx = fy + c.a / 500.0;
    const double fz = fy - c.b / 200.0;

    const double x = D65_XN * lab_f_inv(fx);
    const double z = D65_ZN * lab_f_inv(fz);
    // The L* branch point sits at L = kappa*epsilon = 8.
    const double y =
        D65_YN * ((c.L > LAB_KAPPA * LAB_EPSILON)
                      ? fy * fy * fy
                      : c.L / LAB_KAPPA);

    const double rl = XYZ_TO_RGB[0][0] * x + XYZ_TO_RGB[0][1] * y + XYZ_TO_RGB[0][2] * z;
    const double gl = XYZ_TO_RGB[1][0] * x + XYZ_TO_RGB[1][1] * y + XYZ_TO_RGB[1][2] * z;
    const double bl = XYZ_TO_RGB[2][0] * x + XYZ_TO_RGB[2][1] * y + XYZ_TO_RGB[2][2] * z;

    return {to_u8(255.0 * srgb_encode(std::clamp(rl, 0.0, 1.0))),
            to_u8(255.0 * srgb_encode(std::clamp(gl, 0.0, 1.0))),
            to_u8(255.0 * srgb_encode(std::clamp(bl, 0.0, 1.0)))};
}

double delta_e2000(const LabColor& p, const LabColor& q) {
    const double c1 = std::hypot(p.a, p.b);
    const double c2 = std::hypot(q.a, q.b);
    const double c_bar = 0.5 * (c1 + c2);

    const double c_bar7 = std::pow(c_bar, 7.0);
    const double pow25_7 = 6103515625.0; // 25^7
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + pow25_7)));

    const double a1p = (1.0 + g) * p.a;
    const double a2p = (1.0 + g) * q.a;
    const double c1p = std::hypot(a1p, p.b);
    const double c2p = std::hypot(a2p, q.b);

    auto hue_deg = [](double a, double b) {
        if (a == 0.0 && b == 0.0) return 0.0;
        double h = std::atan2(b, a) * 180.0 / M_PI;
        return (h < 0.0) ? h + 360.0 : h;
    };
    const double h1p = hue_deg(a1p, p.b);
    const double h2p = hue_deg(a2p, q.b);

    const double dLp = q.L - p.L;
    const double dCp = c2p - c1p;

    double dhp = 0.0;
    if (c1p * c2p != 0.0) {
        dhp = h2p - h1p;
        if (dhp > 180.0)
            dhp -= 360.0;
        else if (dhp < -180.0)
            dhp += 360.0;
    }
    const double dHp = 2.0 * std::sqrt(c1p * c2p) * std::sin(deg2rad(dhp) / 2.0);

    const double l_bar = 0.5 * (p.L + q.L);
    const double cp_bar = 0.5 * (c1p + c2p);

    double hp_bar = h1p + h2p;
    if (c1p * c2p != 0.0) {
        if (std::abs(h1p - h2p) <= 180.0)
            hp_bar = 0.5 * (h1p + h2p);
        else if (h1p + h2p < 360.0)
            hp_bar = 0.5 * (h1p + h2p + 360.0);
        else
            hp_bar = 0.5 * (h1p + h2p - 360.0);
    }

    const double t = 1.0 - 0.17 * std::cos(deg2rad(hp_bar - 30.0)) +
                     0.24 * std::cos(deg2rad(2.0 * hp_bar)) +
                     0.32 * std::cos(deg2rad(3.0 * hp_bar + 6.0)) -
                     0.20 * std::cos(deg2rad(4.0 * hp_bar - 63.0));

    const double dtheta = 30.0 * std::exp(-((hp_bar - 275.0) / 25.0) *
                                          ((hp_bar - 275.0) / 25.0));
    const double cp_bar7 = std::pow(cp_bar, 7.0);
    const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + pow25_7));
    const double rt = -std::sin(deg2rad(2.0 * dtheta)) * rc;

    const double lm50 = (l_bar - 50.0) * (l_bar - 50.0);
    const double sl = 1.0 + 0.015 * lm50 / std::sqrt(20.0 + lm50);
    const double sc = 1.0 + 0.045 * cp_bar;
    const double sh = 1.0 + 0.015 * cp_bar * t;

    const double vl = dLp / sl;
    const double vc = dCp / sc;
    const double vh = dHp / sh;

    return std::sqrt(vl * vl + vc * vc + vh * vh + rt * vc * vh);
}

double delta_e_rgb(RgbColor p, RgbColor q) {
    const double dr = double(p.r) - double(q.r);
    const double dg = double(p.g) - double(q.g);
    const double db = double(p.b) - double(q.b);
    return std::sqrt(dr * dr + dg * dg + db * db);
}

double rgb_to_value(RgbColor c) {
    return std::max({c.r, c.g, c.b}) / 255.0;
}

} // namespace gwip
