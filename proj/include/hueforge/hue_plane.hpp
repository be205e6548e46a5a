// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <cstddef>
#include <optional>

#include "hueforge/core_types.hpp"

namespace hueforge::hue {

/// Pixels whose channel spread is below this are treated as achromatic on
/// the HDR side. 8-bit pixels use exact equality (spread 0).
inline constexpr double kHdrAchromaticTolerance = 1e-9;

/// Barycentric position of a pixel on its constant-hue plane, the triangle
/// spanned by white (1,1,1), black (0,0,0) and the maximally saturated
/// color of the same hue.
///
/// white + black + chroma == 1 always. For pixels inside the unit cube all
/// three also lie in [0,1]; HDR pixels may give black < 0 and chroma > 1.
struct HuePlaneCoords
{
    double white = 0.0;
    double black = 0.0;
    double chroma = 0.0;
    /// Meaningful only when !achromatic. Max channel 1, min channel 0.
    Rgb max_saturated{};
    bool achromatic = true;
};

/// (x - min(x)) / (max(x) - min(x)). std::nullopt when
/// max(x) - min(x) <= tolerance.
std::optional<Rgb> max_saturated_color(const Rgb& x, double tolerance = 0.0);

HuePlaneCoords decompose(const Rgb& x, double tolerance = 0.0);

/// white * (1,1,1) + chroma * max_saturated. Achromatic coordinates give
/// white * (1,1,1).
Rgb recompose(const HuePlaneCoords& coords);

/// Keeps the white/black/chroma weights of `ldr_pixel` and swaps in the
/// reference hue `target`. With both inputs in [0,1]^3, each output
/// channel lies between min(ldr_pixel) and max(ldr_pixel).
Rgb compensate_pixel(const Rgb& ldr_pixel, const std::optional<Rgb>& target);

struct CompensationStats
{
    /// LDR pixel chromatic but the HDR pixel achromatic; left untouched.
    std::size_t achromatic_reference = 0;
    /// LDR pixel achromatic (chroma weight 0); unchanged by construction.
    std::size_t achromatic_ldr = 0;
};

/// Transplants each HDR pixel's maximally saturated color into the paired
/// tone-mapped pixel and re-quantizes. Throws DimensionError on mismatch.
LdrImage compensate_image(const LdrImage& ldr, const HdrImage& hdr, CompensationStats* stats = nullptr);

/// Same as compensate_image but returns the floating-point result before
/// re-quantization.
RgbImage compensate_image_float(const LdrImage& ldr, const HdrImage& hdr, CompensationStats* stats = nullptr);

} // namespace hueforge::hue
