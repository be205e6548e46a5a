// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/hue_plane.hpp"

#include <atomic>
#include <cmath>

#include "hueforge/ldr_reconstruction.hpp"
#include "hueforge/parallel.hpp"

namespace hueforge::hue {

std::optional<Rgb> max_saturated_color(const Rgb& x, double tolerance)
{
    const auto [lo, hi] = channel_minmax(x);
    const double spread = hi - lo;
    if (!(spread > tolerance)) {
        return std::nullopt;
    }
    return Rgb{(x.r - lo) / spread, (x.g - lo) / spread, (x.b - lo) / spread};
}

HuePlaneCoords decompose(const Rgb& x, double tolerance)
{
    const auto [lo, hi] = channel_minmax(x);
    HuePlaneCoords c;
    c.white = lo;
    c.chroma = hi - lo;
    c.black = 1.0 - hi;
    if (auto sat = max_saturated_color(x, tolerance)) {
        c.max_saturated = *sat;
        c.achromatic = false;
    }
    return c;
}

Rgb recompose(const HuePlaneCoords& coords)
{
    if (coords.achromatic) {
        return {coords.white, coords.white, coords.white};
    }
    const auto& s = coords.max_saturated;
    return {coords.white + coords.chroma * s.r, coords.white + coords.chroma * s.g,
            coords.white + coords.chroma * s.b};
}

Rgb compensate_pixel(const Rgb& ldr_pixel, const std::optional<Rgb>& target)
{
    const auto [lo, hi] = channel_minmax(ldr_pixel);
    if (!target || !(hi > lo)) {
        return ldr_pixel;
    }
    // white + chroma * c written as a lerp between min and max: std::lerp is
    // exact at t = 0 and t = 1 and monotone in t, so no channel can leave
    // [lo, hi] through rounding.
    return {std::lerp(lo, hi, target->r), std::lerp(lo, hi, target->g), std::lerp(lo, hi, target->b)};
}

RgbImage compensate_image_float(const LdrImage& ldr, const HdrImage& hdr, CompensationStats* stats)
{
    require_same_shape(ldr, hdr, "compensate_image");
    RgbImage out(ldr.width(), ldr.height());
    std::atomic<std::size_t> reference_gray{0};
    std::atomic<std::size_t> ldr_gray{0};
    parallel::for_ranges(ldr.size(), [&](std::size_t begin, std::size_t end) {
        std::size_t ref_local = 0;
        std::size_t ldr_local = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const Rgb8& q = ldr[i];
            const Rgb x{q.r / 255.0, q.g / 255.0, q.b / 255.0};
            const bool ldr_achromatic = q.r == q.g && q.g == q.b;
            const auto target = max_saturated_color(hdr[i], kHdrAchromaticTolerance);
            if (ldr_achromatic) {
                ++ldr_local;
            } else if (!target) {
                ++ref_local;
            }
            out[i] = compensate_pixel(x, target);
        }
        reference_gray += ref_local;
        ldr_gray += ldr_local;
    });
    if (stats != nullptr) {
        stats->achromatic_reference = reference_gray.load();
        stats->achromatic_ldr = ldr_gray.load();
    }
    return out;
}

LdrImage compensate_image(const LdrImage& ldr, const HdrImage& hdr, CompensationStats* stats)
{
    CompensationStats local;
    LdrImage out = ldr::quantize_clip(compensate_image_float(ldr, hdr, &local));
    if (local.achromatic_reference > 0) {
        warn(std::to_string(local.achromatic_reference) +
             " chromatic pixels have an achromatic HDR reference and were left unchanged");
    }
    if (stats != nullptr) {
        *stats = local;
    }
    return out;
}

} // namespace hueforge::hue
