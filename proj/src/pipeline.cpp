// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/pipeline.hpp"

#include "hueforge/hue_plane.hpp"

namespace hueforge::pipeline {

std::string_view method_name(Method m)
{
    switch (m) {
    case Method::conventional: return "conventional";
    case Method::proposed: return "proposed";
    case Method::mantiuk: return "mantiuk";
    }
    return "unknown";
}

metrics::MetricConfig metric_config_for(const PipelineConfig& config)
{
    metrics::MetricConfig m = config.metrics;
    m.hue.ldr_transfer = config.reconstruction.gamma ? metrics::LdrTransfer::srgb : metrics::LdrTransfer::linear;
    return m;
}

ToneMapped tone_map_conventional(const HdrImage& hdr, const PipelineConfig& config)
{
    ToneMapped out;
    out.luminance = tmo::tone_map(hdr, config.tmo);
    out.ldr = ldr::reconstruct(hdr, out.luminance, config.reconstruction).ldr;
    return out;
}

LdrImage tone_map_mantiuk(const HdrImage& hdr, const LuminancePair& luminance, const PipelineConfig& config,
                          double* saturation_used)
{
    const double s = baseline::resolve_saturation(luminance, config.mantiuk);
    if (saturation_used != nullptr) {
        *saturation_used = s;
    }
    return ldr::finish(baseline::mantiuk_color(hdr, luminance, s), config.reconstruction).ldr;
}

std::vector<MethodResult> run_methods(const HdrImage& hdr, const PipelineConfig& config, bool with_mantiuk)
{
    const auto metric_config = metric_config_for(config);
    auto conventional = tone_map_conventional(hdr, config);

    std::vector<MethodResult> results;
    auto add = [&](Method m, LdrImage img) {
        auto report = metrics::evaluate(hdr, img, metric_config);
        results.push_back({m, std::move(img), std::move(report)});
    };
    LdrImage proposed = hue::compensate_image(conventional.ldr, hdr);
    LdrImage mantiuk;
    if (with_mantiuk) {
        mantiuk = tone_map_mantiuk(hdr, conventional.luminance, config);
    }
    add(Method::conventional, std::move(conventional.ldr));
    add(Method::proposed, std::move(proposed));
    if (with_mantiuk) {
        add(Method::mantiuk, std::move(mantiuk));
    }
    return results;
}

} // namespace hueforge::pipeline
