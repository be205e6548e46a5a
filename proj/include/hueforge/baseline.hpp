// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <optional>

#include "hueforge/core_types.hpp"

namespace hueforge::baseline {

/// Nonlinear saturation-corrected color reconstruction,
/// C_out = (C / L_in)^s * L_out.
struct MantiukConfig
{
    /// Fixed saturation factor; std::nullopt derives it from the tone
    /// curve's contrast.
    std::optional<double> saturation;
    double k1 = 1.6774;
    double k2 = 0.9925;

    void validate() const;
};

double mantiuk_correct(double channel, double lum_in, double lum_out, double saturation);

/// s(c) = (1 + k1) c^k2 / (1 + k1 c^k2).
double mantiuk_saturation_for_contrast(double contrast, double k1 = 1.6774, double k2 = 0.9925);

/// Least-squares slope of log L_out against log L_in over pixels where both
/// are positive. Returns 1 when the fit is degenerate.
double estimate_contrast(const LuminancePair& lum);

/// Saturation actually used for `lum` under `config`.
double resolve_saturation(const LuminancePair& lum, const MantiukConfig& config);

/// Floating-point LDR image before gamma and quantization.
RgbImage mantiuk_color(const HdrImage& hdr, const LuminancePair& lum, double saturation);

} // namespace hueforge::baseline
