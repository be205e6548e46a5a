// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hueforge/core_types.hpp"

namespace hueforge::tmo {

enum class Operator
{
    reinhard_global,
    reinhard_local,
    drago,
    durand,
};

std::string_view operator_name(Operator op);
std::optional<Operator> parse_operator(std::string_view name);

struct TmoConfig
{
    Operator op = Operator::reinhard_global;

    /// Key value; shared by both Reinhard operators.
    double key_value = 0.18;

    double drago_bias = 0.85;
    double drago_max_display = 100.0;

    double durand_contrast = 50.0;
    /// Spatial sigma as a fraction of the image diagonal.
    double durand_sigma_space = 0.02;
    /// Range sigma in log10 units.
    double durand_sigma_range = 0.4;

    int local_scales = 8;
    double local_phi = 8.0;
    double local_epsilon = 0.05;
    double local_scale_ratio = 1.6;

    /// Throws ValidationError when a field is out of range.
    void validate() const;
};

/// Offset added before taking logarithms of luminance.
inline constexpr double kLogGuard = 1e-6;

/// 0.27 R + 0.67 G + 0.06 B.
constexpr double luminance(const Rgb& p) { return 0.27 * p.r + 0.67 * p.g + 0.06 * p.b; }

LuminanceMap world_luminance(const HdrImage& img);

/// Geometric mean exp(mean(log(kLogGuard + L))). Throws on an empty map.
double log_average(const LuminanceMap& lum);

LuminanceMap reinhard_global(const LuminanceMap& lum, double key_value);

/// Center-surround Gaussian pyramid with per-pixel scale selection. Falls
/// back to reinhard_global (with a warning) when the image is smaller than
/// the widest kernel.
LuminanceMap reinhard_local(const LuminanceMap& lum, const TmoConfig& config);

LuminanceMap drago(const LuminanceMap& lum, double bias, double max_display = 100.0);

/// Bilateral base/detail split in log10 space; the base is compressed to
/// log10(contrast) and the result scaled so its maximum is 1.
LuminanceMap durand(const LuminanceMap& lum, const TmoConfig& config);

/// Separable Gaussian blur with edge replication. Kernel radius is
/// ceil(3 sigma).
LuminanceMap gaussian_blur(const LuminanceMap& src, double sigma);

/// Brute-force bilateral filter, radius ceil(2 sigma_space).
LuminanceMap bilateral_filter(const LuminanceMap& src, double sigma_space, double sigma_range);

/// World luminance plus the configured operator's display luminance.
LuminancePair tone_map(const HdrImage& img, const TmoConfig& config);

} // namespace hueforge::tmo
