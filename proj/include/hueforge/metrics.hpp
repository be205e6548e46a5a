// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hueforge/core_types.hpp"

namespace hueforge::metrics {

// ---------------------------------------------------------------------------
// Maximally saturated color difference
// ---------------------------------------------------------------------------

struct PixelMetric
{
    double mean = 0.0;
    LuminanceMap map;
    /// Pixels where exactly one side was achromatic (term forced to 0).
    std::size_t one_sided_achromatic = 0;
};

/// Mean Euclidean distance between per-pixel maximally saturated colors.
/// A pixel whose channel spread is <= `tolerance` is achromatic; if both
/// sides are, or only one is, the term is 0 (the missing hue is borrowed
/// from the other side). Each term lies in [0, sqrt 3]; the
/// maximum pairs a secondary with its complementary primary.
PixelMetric delta_c(const RgbImage& reference, const RgbImage& candidate, double tolerance = 1e-9);
PixelMetric delta_c(const HdrImage& reference, const LdrImage& candidate);

// ---------------------------------------------------------------------------
// CIELAB and CIEDE2000
// ---------------------------------------------------------------------------

/// CIE 1976 L*a*b*, D65 2-degree white.
struct Lab
{
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

double srgb_decode(double v);
double srgb_encode(double v);

/// Linear-light sRGB primaries to Lab.
Lab linear_rgb_to_lab(const Rgb& linear);

/// sRGB-encoded value in [0,1]^3 to Lab.
Lab srgb_to_lab(const Rgb& encoded);

struct Ciede2000Terms
{
    double delta_l = 0.0;  ///< Delta L'
    double delta_c = 0.0;  ///< Delta C'
    double delta_h = 0.0;  ///< Delta H' = 2 sqrt(C'1 C'2) sin(Delta h' / 2)
    double sl = 1.0;
    double sc = 1.0;
    double sh = 1.0;
    double rt = 0.0;
    double delta_e = 0.0;  ///< full Delta E00
};

Ciede2000Terms ciede2000(const Lab& first, const Lab& second, double kl = 1.0, double kc = 1.0, double kh = 1.0);

/// How the 8-bit code values of an LDR image map back to linear light.
enum class LdrTransfer
{
    srgb,
    gamma,
    linear,
};

enum class HdrNormalization
{
    /// Divide by a percentile of 0.27 R + 0.67 G + 0.06 B luminance.
    luminance,
    /// Divide by a percentile of the per-pixel maximum channel.
    max_channel,
};

struct HueDifferenceConfig
{
    /// Divide Delta H' by k_H S_H.
    bool normalized = false;
    double kh = 1.0;
    LdrTransfer ldr_transfer = LdrTransfer::srgb;
    double ldr_gamma = 2.2;
    HdrNormalization hdr_normalization = HdrNormalization::max_channel;
    double hdr_percentile = 0.999;
};

using LabImage = Image<Lab>;

/// Normalizes by the configured percentile, clips to [0,1] and converts.
LabImage hdr_to_lab(const HdrImage& hdr, const HueDifferenceConfig& config = {});
LabImage ldr_to_lab(const LdrImage& ldr, const HueDifferenceConfig& config = {});

/// Mean |Delta H'| over all pixels.
PixelMetric ciede2000_delta_h(const LabImage& first, const LabImage& second, const HueDifferenceConfig& config = {});
PixelMetric ciede2000_delta_h(const HdrImage& reference, const LdrImage& candidate,
                              const HueDifferenceConfig& config = {});

// ---------------------------------------------------------------------------
// Tone-mapped image quality index
// ---------------------------------------------------------------------------

struct TmqiConstants
{
    double a = 0.8012;
    double alpha = 0.3046;
    double beta = 0.7088;
    std::vector<double> level_weights{0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
    int window = 11;
    double window_sigma = 1.5;
    double c1 = 0.01;
    double c2 = 10.0;
    /// Spatial frequency at the first level is half of this; it halves per level.
    double base_frequency = 32.0;
    double contrast_beta_a = 4.4;
    double contrast_beta_b = 10.1;
    double contrast_normalizer = 64.29;
    double brightness_mean = 115.94;
    double brightness_sigma = 27.99;
    int naturalness_block = 11;
};

struct TmqiResult
{
    double q = 0.0;
    double s = 0.0;
    double n = 0.0;
};

/// HDR luminance (Rec. 709 weights) rescaled to [0, 2^32 - 1].
LuminanceMap tmqi_hdr_luminance(const HdrImage& hdr);
/// Rec. 709 weighted luminance of the 8-bit code values, in [0,255].
LuminanceMap tmqi_ldr_luminance(const LdrImage& ldr);

/// Multi-scale structural fidelity in [0,1]. Uses fewer levels (with a
/// warning) when the image is too small for all of them.
double structural_fidelity(const LuminanceMap& hdr_lum, const LuminanceMap& ldr_lum,
                           const TmqiConstants& constants = {});

/// Brightness and contrast naturalness in [0,1].
double statistical_naturalness(const LuminanceMap& ldr_lum, const TmqiConstants& constants = {});

TmqiResult tmqi(const HdrImage& hdr, const LdrImage& ldr, const TmqiConstants& constants = {});

// ---------------------------------------------------------------------------
// Mean luminance adjustment
// ---------------------------------------------------------------------------

/// Mean of 0.27 R + 0.67 G + 0.06 B over channels rescaled to [0,1].
double mean_luminance(const LdrImage& ldr);

/// Scales every channel so the mean luminance becomes `target_mean`, then
/// re-quantizes. Throws ValidationError for an all-black image.
LdrImage mean_luminance_adjust(const LdrImage& ldr, double target_mean);

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct MetricConfig
{
    HueDifferenceConfig hue;
    TmqiConstants tmqi;
    bool keep_maps = false;
};

struct MetricReport
{
    double delta_c = 0.0;
    double delta_h = 0.0;
    double tmqi_q = 0.0;
    double tmqi_s = 0.0;
    double tmqi_n = 0.0;
    std::optional<LuminanceMap> delta_c_map;
    std::optional<LuminanceMap> delta_h_map;
};

MetricReport evaluate(const HdrImage& hdr, const LdrImage& ldr, const MetricConfig& config = {});

} // namespace hueforge::metrics
