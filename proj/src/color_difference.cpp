// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hueforge/hue_plane.hpp"
#include "hueforge/metrics.hpp"
#include "hueforge/parallel.hpp"
#include "hueforge/tone_mapping.hpp"

namespace hueforge::metrics {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;
constexpr double kRad = std::numbers::pi / 180.0;

// sRGB primaries, D65.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// White is the image of (1,1,1) so that white maps to L* = 100, a* = b* = 0.
constexpr double kWhiteX = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kWhiteY = kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2];
constexpr double kWhiteZ = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

double lab_f(double t)
{
    constexpr double eps = 216.0 / 24389.0;
    constexpr double kappa = 24389.0 / 27.0;
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

double pow7(double v)
{
    const double v2 = v * v;
    return v2 * v2 * v2 * v;
}

double hue_angle(double b, double a)
{
    if (a == 0.0 && b == 0.0) {
        return 0.0;
    }
    double h = std::atan2(b, a) * kDeg;
    return h < 0.0 ? h + 360.0 : h;
}

double decode_ldr(std::uint8_t code, const HueDifferenceConfig& config)
{
    const double v = code / 255.0;
    switch (config.ldr_transfer) {
    case LdrTransfer::srgb: return srgb_decode(v);
    case LdrTransfer::gamma: return std::pow(v, config.ldr_gamma);
    case LdrTransfer::linear: return v;
    }
    return v;
}

double percentile(std::vector<double> values, double q)
{
    if (values.empty()) {
        return 0.0;
    }
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
    const std::size_t idx = std::clamp<std::size_t>(rank, 1, values.size()) - 1;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx), values.end());
    return values[idx];
}

} // namespace

PixelMetric delta_c(const RgbImage& reference, const RgbImage& candidate, double tolerance)
{
    require_same_shape(reference, candidate, "delta_c");
    PixelMetric out;
    out.map = LuminanceMap(reference.width(), reference.height());
    std::vector<unsigned char> one_sided(reference.size(), 0);
    parallel::for_each_index(reference.size(), [&](std::size_t i) {
        const auto c1 = hue::max_saturated_color(reference[i], tolerance);
        const auto c2 = hue::max_saturated_color(candidate[i], tolerance);
        if (!c1 || !c2) {
            one_sided[i] = (c1.has_value() != c2.has_value()) ? 1 : 0;
            out.map[i] = 0.0;
            return;
        }
        out.map[i] = std::sqrt((c1->r - c2->r) * (c1->r - c2->r) + (c1->g - c2->g) * (c1->g - c2->g) +
                               (c1->b - c2->b) * (c1->b - c2->b));
    });
    if (!reference.empty()) {
        out.mean = parallel::deterministic_sum(reference.size(), [&](std::size_t i) { return out.map[i]; }) /
                   static_cast<double>(reference.size());
    }
    out.one_sided_achromatic = static_cast<std::size_t>(std::count(one_sided.begin(), one_sided.end(), 1));
    return out;
}

PixelMetric delta_c(const HdrImage& reference, const LdrImage& candidate)
{
    return delta_c(reference.rgb(), to_normalized(candidate));
}

double srgb_decode(double v)
{
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double srgb_encode(double v)
{
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

Lab linear_rgb_to_lab(const Rgb& p)
{
    const double x = kRgbToXyz[0][0] * p.r + kRgbToXyz[0][1] * p.g + kRgbToXyz[0][2] * p.b;
    const double y = kRgbToXyz[1][0] * p.r + kRgbToXyz[1][1] * p.g + kRgbToXyz[1][2] * p.b;
    const double z = kRgbToXyz[2][0] * p.r + kRgbToXyz[2][1] * p.g + kRgbToXyz[2][2] * p.b;
    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Lab srgb_to_lab(const Rgb& p)
{
    return linear_rgb_to_lab({srgb_decode(p.r), srgb_decode(p.g), srgb_decode(p.b)});
}

Ciede2000Terms ciede2000(const Lab& p1, const Lab& p2, double kl, double kc, double kh)
{
    constexpr double k25_7 = 6103515625.0; // 25^7

    const double c1 = std::hypot(p1.a, p1.b);
    const double c2 = std::hypot(p2.a, p2.b);
    const double c_bar7 = pow7((c1 + c2) / 2.0);
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + k25_7)));

    const double a1 = (1.0 + g) * p1.a;
    const double a2 = (1.0 + g) * p2.a;
    const double cp1 = std::hypot(a1, p1.b);
    const double cp2 = std::hypot(a2, p2.b);
    const double hp1 = hue_angle(p1.b, a1);
    const double hp2 = hue_angle(p2.b, a2);
    const double cprod = cp1 * cp2;

    double dhp = 0.0;
    if (cprod != 0.0) {
        dhp = hp2 - hp1;
        if (dhp > 180.0) {
            dhp -= 360.0;
        } else if (dhp < -180.0) {
            dhp += 360.0;
        }
    }

    Ciede2000Terms t;
    t.delta_l = p2.l - p1.l;
    t.delta_c = cp2 - cp1;
    t.delta_h = 2.0 * std::sqrt(cprod) * std::sin(dhp * kRad / 2.0);

    const double l_bar = (p1.l + p2.l) / 2.0;
    const double cp_bar = (cp1 + cp2) / 2.0;
    double hp_bar = hp1 + hp2;
    if (cprod != 0.0) {
        if (std::abs(hp1 - hp2) <= 180.0) {
            hp_bar /= 2.0;
        } else if (hp1 + hp2 < 360.0) {
            hp_bar = (hp_bar + 360.0) / 2.0;
        } else {
            hp_bar = (hp_bar - 360.0) / 2.0;
        }
    }

    const double tt = 1.0 - 0.17 * std::cos((hp_bar - 30.0) * kRad) + 0.24 * std::cos(2.0 * hp_bar * kRad) +
                      0.32 * std::cos((3.0 * hp_bar + 6.0) * kRad) - 0.20 * std::cos((4.0 * hp_bar - 63.0) * kRad);
    const double dtheta = 30.0 * std::exp(-((hp_bar - 275.0) / 25.0) * ((hp_bar - 275.0) / 25.0));
    const double cp_bar7 = pow7(cp_bar);
    const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + k25_7));
    const double l50 = (l_bar - 50.0) * (l_bar - 50.0);
    t.sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
    t.sc = 1.0 + 0.045 * cp_bar;
    t.sh = 1.0 + 0.015 * cp_bar * tt;
    t.rt = -std::sin(2.0 * dtheta * kRad) * rc;

    const double dl = t.delta_l / (kl * t.sl);
    const double dc = t.delta_c / (kc * t.sc);
    const double dh = t.delta_h / (kh * t.sh);
    t.delta_e = std::sqrt(dl * dl + dc * dc + dh * dh + t.rt * dc * dh);
    return t;
}

LabImage hdr_to_lab(const HdrImage& hdr, const HueDifferenceConfig& config)
{
    std::vector<double> key(hdr.size());
    for (std::size_t i = 0; i < hdr.size(); ++i) {
        key[i] = config.hdr_normalization == HdrNormalization::luminance ? tmo::luminance(hdr[i])
                                                                         : channel_minmax(hdr[i]).max;
    }
    double ref = percentile(key, config.hdr_percentile);
    if (!(ref > 0.0)) {
        ref = key.empty() ? 0.0 : *std::max_element(key.begin(), key.end());
    }
    const double scale = ref > 0.0 ? 1.0 / ref : 1.0;
    LabImage out(hdr.width(), hdr.height());
    parallel::for_each_index(hdr.size(), [&](std::size_t i) {
        const Rgb& p = hdr[i];
        // Clipped linear values; sRGB encoding followed by srgb_to_lab's
        // decoding is the identity here.
        out[i] = linear_rgb_to_lab({std::min(1.0, p.r * scale), std::min(1.0, p.g * scale), std::min(1.0, p.b * scale)});
    });
    return out;
}

LabImage ldr_to_lab(const LdrImage& ldr, const HueDifferenceConfig& config)
{
    LabImage out(ldr.width(), ldr.height());
    parallel::for_each_index(ldr.size(), [&](std::size_t i) {
        const Rgb8& p = ldr[i];
        out[i] = linear_rgb_to_lab({decode_ldr(p.r, config), decode_ldr(p.g, config), decode_ldr(p.b, config)});
    });
    return out;
}

PixelMetric ciede2000_delta_h(const LabImage& first, const LabImage& second, const HueDifferenceConfig& config)
{
    require_same_shape(first, second, "ciede2000_delta_h");
    PixelMetric out;
    out.map = LuminanceMap(first.width(), first.height());
    parallel::for_each_index(first.size(), [&](std::size_t i) {
        const auto t = ciede2000(first[i], second[i], 1.0, 1.0, config.kh);
        out.map[i] = std::abs(config.normalized ? t.delta_h / (config.kh * t.sh) : t.delta_h);
    });
    if (!first.empty()) {
        out.mean = parallel::deterministic_sum(first.size(), [&](std::size_t i) { return out.map[i]; }) /
                   static_cast<double>(first.size());
    }
    return out;
}

PixelMetric ciede2000_delta_h(const HdrImage& reference, const LdrImage& candidate, const HueDifferenceConfig& config)
{
    require_same_shape(reference, candidate, "ciede2000_delta_h");
    return ciede2000_delta_h(hdr_to_lab(reference, config), ldr_to_lab(candidate, config), config);
}

} // namespace hueforge::metrics
