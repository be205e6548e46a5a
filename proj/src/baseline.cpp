// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/baseline.hpp"

#include <cmath>

#include "hueforge/parallel.hpp"

namespace hueforge::baseline {

void MantiukConfig::validate() const
{
    if (saturation && !(*saturation >= 0.0)) {
        throw ValidationError("saturation must be nonnegative");
    }
    if (!(k1 > 0.0) || !(k2 > 0.0)) {
        throw ValidationError("k1 and k2 must be positive");
    }
}

double mantiuk_correct(double channel, double lum_in, double lum_out, double saturation)
{
    if (!(lum_in > 0.0)) {
        return 0.0;
    }
    return std::pow(channel / lum_in, saturation) * lum_out;
}

double mantiuk_saturation_for_contrast(double contrast, double k1, double k2)
{
    const double p = std::pow(contrast, k2);
    return (1.0 + k1) * p / (1.0 + k1 * p);
}

double estimate_contrast(const LuminancePair& lum)
{
    require_same_shape(lum.world, lum.display, "estimate_contrast");
    double n = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lum.world.size(); ++i) {
        const double lw = lum.world[i];
        const double ld = lum.display[i];
        if (!(lw > 0.0) || !(ld > 0.0)) {
            continue;
        }
        const double x = std::log(lw);
        const double y = std::log(ld);
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (n < 2.0 || !(std::abs(denom) > 1e-12 * n * n)) {
        return 1.0;
    }
    return (n * sxy - sx * sy) / denom;
}

double resolve_saturation(const LuminancePair& lum, const MantiukConfig& config)
{
    config.validate();
    if (config.saturation) {
        return *config.saturation;
    }
    const double c = estimate_contrast(lum);
    if (!(c > 0.0)) {
        return 0.0;
    }
    return mantiuk_saturation_for_contrast(c, config.k1, config.k2);
}

RgbImage mantiuk_color(const HdrImage& hdr, const LuminancePair& lum, double saturation)
{
    require_same_shape(hdr, lum.world, "mantiuk_color");
    require_same_shape(hdr, lum.display, "mantiuk_color");
    RgbImage out(hdr.width(), hdr.height());
    parallel::for_each_index(hdr.size(), [&](std::size_t i) {
        const double lw = lum.world[i];
        const double ld = lum.display[i];
        const Rgb& c = hdr[i];
        out[i] = {mantiuk_correct(c.r, lw, ld, saturation), mantiuk_correct(c.g, lw, ld, saturation),
                  mantiuk_correct(c.b, lw, ld, saturation)};
    });
    return out;
}

} // namespace hueforge::baseline
