// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/ldr_reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "hueforge/parallel.hpp"

namespace hueforge::ldr {

void ReconstructionConfig::validate() const
{
    if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) {
        throw ValidationError("gamma must be positive");
    }
}

RgbImage color_ratio(const HdrImage& hdr, const LuminancePair& lum)
{
    require_same_shape(hdr, lum.world, "color_ratio (world luminance)");
    require_same_shape(hdr, lum.display, "color_ratio (display luminance)");
    RgbImage out(hdr.width(), hdr.height());
    parallel::for_each_index(hdr.size(), [&](std::size_t i) {
        const double lw = lum.world[i];
        if (lw <= 0.0) {
            return;
        }
        const double ratio = lum.display[i] / lw;
        const Rgb& c = hdr[i];
        out[i] = {ratio * c.r, ratio * c.g, ratio * c.b};
    });
    return out;
}

RgbImage gamma_encode(const RgbImage& img, double gamma)
{
    if (!(gamma > 0.0)) {
        throw ValidationError("gamma must be positive");
    }
    const double inv = 1.0 / gamma;
    auto enc = [inv](double v) { return std::pow(std::max(v, 0.0), inv); };
    RgbImage out(img.width(), img.height());
    parallel::for_each_index(img.size(), [&](std::size_t i) {
        out[i] = {enc(img[i].r), enc(img[i].g), enc(img[i].b)};
    });
    return out;
}

std::uint8_t quantize_channel(double v)
{
    // std::round rounds halfway cases away from zero.
    const double q = std::round(v * 255.0);
    return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

LdrImage quantize_clip(const RgbImage& img)
{
    LdrImage out(img.width(), img.height());
    parallel::for_each_index(img.size(), [&](std::size_t i) {
        out[i] = {quantize_channel(img[i].r), quantize_channel(img[i].g), quantize_channel(img[i].b)};
    });
    return out;
}

RgbImage clip_only(const RgbImage& img)
{
    auto clip = [](double v) { return std::clamp(v, 0.0, 1.0); };
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = {clip(img[i].r), clip(img[i].g), clip(img[i].b)};
    }
    return out;
}

WideIntImage round_only(const RgbImage& img)
{
    auto rnd = [](double v) { return static_cast<std::int32_t>(std::round(v * 255.0)); };
    WideIntImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = {rnd(img[i].r), rnd(img[i].g), rnd(img[i].b)};
    }
    return out;
}

RgbImage to_normalized(const WideIntImage& img)
{
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = {img[i].r / 255.0, img[i].g / 255.0, img[i].b / 255.0};
    }
    return out;
}

Reconstruction finish(RgbImage cf, const ReconstructionConfig& config)
{
    config.validate();
    if (config.gamma) {
        cf = gamma_encode(cf, *config.gamma);
    }
    Reconstruction out;
    out.ldr = quantize_clip(cf);
    if (config.record_prequant) {
        out.prequant = std::move(cf);
    }
    return out;
}

Reconstruction reconstruct(const HdrImage& hdr, const LuminancePair& lum, const ReconstructionConfig& config)
{
    return finish(color_ratio(hdr, lum), config);
}

} // namespace hueforge::ldr
