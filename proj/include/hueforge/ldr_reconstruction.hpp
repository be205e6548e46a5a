// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <optional>

#include "hueforge/core_types.hpp"

namespace hueforge::ldr {

struct ReconstructionConfig
{
    /// Display gamma; std::nullopt disables the encoding step.
    std::optional<double> gamma = 2.2;
    /// Keep the floating-point image that precedes quantization.
    bool record_prequant = false;

    void validate() const;
};

/// C_f = (L_d / L_w) C per channel; pixels with L_w == 0 become black.
RgbImage color_ratio(const HdrImage& hdr, const LuminancePair& lum);

/// v -> max(v, 0)^(1/gamma). Values above 1 are left for quantize_clip.
RgbImage gamma_encode(const RgbImage& img, double gamma);

/// round(v * 255) half away from zero, then clamp to [0,255].
std::uint8_t quantize_channel(double v);

LdrImage quantize_clip(const RgbImage& img);

/// Clamp to [0,1] without rounding.
RgbImage clip_only(const RgbImage& img);

/// round(v * 255) without clamping.
WideIntImage round_only(const RgbImage& img);

/// Integer image rescaled by 1/255 (values may lie outside [0,1]).
RgbImage to_normalized(const WideIntImage& img);

struct Reconstruction
{
    LdrImage ldr;
    /// Filled when record_prequant is set.
    std::optional<RgbImage> prequant;
};

/// Applies gamma (when configured) to a floating-point image and quantizes.
Reconstruction finish(RgbImage cf, const ReconstructionConfig& config);

/// color_ratio followed by finish().
Reconstruction reconstruct(const HdrImage& hdr, const LuminancePair& lum, const ReconstructionConfig& config);

} // namespace hueforge::ldr
