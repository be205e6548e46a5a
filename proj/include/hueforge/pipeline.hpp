// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hueforge/baseline.hpp"
#include "hueforge/core_types.hpp"
#include "hueforge/ldr_reconstruction.hpp"
#include "hueforge/metrics.hpp"
#include "hueforge/tone_mapping.hpp"

namespace hueforge::pipeline {

enum class Method
{
    conventional,
    proposed,
    mantiuk,
};

std::string_view method_name(Method m);

struct PipelineConfig
{
    tmo::TmoConfig tmo;
    ldr::ReconstructionConfig reconstruction;
    baseline::MantiukConfig mantiuk;
    metrics::MetricConfig metrics;
};

/// Metric settings whose LDR decoding matches the reconstruction: sRGB
/// when a display gamma was applied, linear otherwise.
metrics::MetricConfig metric_config_for(const PipelineConfig& config);

struct ToneMapped
{
    LuminancePair luminance;
    LdrImage ldr;
};

/// Luminance compression, color ratio, optional gamma, quantize and clip.
ToneMapped tone_map_conventional(const HdrImage& hdr, const PipelineConfig& config);

/// Mantiuk-corrected reconstruction of an already tone-mapped luminance.
LdrImage tone_map_mantiuk(const HdrImage& hdr, const LuminancePair& luminance, const PipelineConfig& config,
                          double* saturation_used = nullptr);

struct MethodResult
{
    Method method;
    LdrImage ldr;
    metrics::MetricReport report;
};

/// Conventional and hue-compensated results, plus the Mantiuk baseline
/// when requested, each with its metric report.
std::vector<MethodResult> run_methods(const HdrImage& hdr, const PipelineConfig& config, bool with_mantiuk);

} // namespace hueforge::pipeline
