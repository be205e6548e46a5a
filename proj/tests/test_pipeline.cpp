// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include <cmath>

#include <gtest/gtest.h>

#include <hueforge/hue_plane.hpp>
#include <hueforge/pipeline.hpp>
#include <hueforge/report.hpp>

#include "scenes.hpp"

using namespace hueforge;

namespace {

HdrImage small_scene()
{
    return corpus::make_scenes(32)[0].image;
}

} // namespace

TEST(Pipeline, MetricConfigFollowsGamma)
{
    pipeline::PipelineConfig c;
    EXPECT_EQ(pipeline::metric_config_for(c).hue.ldr_transfer, metrics::LdrTransfer::srgb);
    c.reconstruction.gamma = std::nullopt;
    EXPECT_EQ(pipeline::metric_config_for(c).hue.ldr_transfer, metrics::LdrTransfer::linear);
}

TEST(Pipeline, RunMethodsOrder)
{
    pipeline::PipelineConfig c;
    const auto two = pipeline::run_methods(small_scene(), c, false);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].method, pipeline::Method::conventional);
    EXPECT_EQ(two[1].method, pipeline::Method::proposed);
    const auto three = pipeline::run_methods(small_scene(), c, true);
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three[2].method, pipeline::Method::mantiuk);
    EXPECT_EQ(three[0].ldr, two[0].ldr);
}

TEST(Pipeline, ProposedIsCompensatedConventional)
{
    pipeline::PipelineConfig c;
    const HdrImage hdr = small_scene();
    const auto results = pipeline::run_methods(hdr, c, false);
    EXPECT_EQ(results[1].ldr, hue::compensate_image(results[0].ldr, hdr));
    EXPECT_EQ(results[0].ldr, pipeline::tone_map_conventional(hdr, c).ldr);
}

TEST(Pipeline, MethodNames)
{
    EXPECT_EQ(pipeline::method_name(pipeline::Method::conventional), "conventional");
    EXPECT_EQ(pipeline::method_name(pipeline::Method::proposed), "proposed");
    EXPECT_EQ(pipeline::method_name(pipeline::Method::mantiuk), "mantiuk");
}

TEST(Report, JsonKeys)
{
    metrics::MetricReport r;
    r.delta_c = 0.5;
    r.tmqi_q = 0.9;
    const auto j = report::to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"delta_c", "delta_h", "tmqi_q", "tmqi_s", "tmqi_n"}));
    EXPECT_EQ(j["delta_c"].get<double>(), 0.5);
}

TEST(Report, CsvRow)
{
    metrics::MetricReport r;
    r.delta_c = 0.25;
    r.delta_h = 1.5;
    r.tmqi_q = 0.75;
    r.tmqi_s = 0.5;
    r.tmqi_n = 0.125;
    EXPECT_EQ(report::csv_header(), "image,tmo,method,delta_c,delta_h,tmqi_q,tmqi_s,tmqi_n");
    EXPECT_EQ(report::csv_row("tree", "drago", "proposed", r), "tree,drago,proposed,0.25,1.5,0.75,0.5,0.125");
    EXPECT_EQ(report::csv_row("a,b", "drago", "x\"y", r).substr(0, 16), "\"a,b\",drago,\"x\"\"");
}

TEST(Report, HeatmapEndpoints)
{
    LuminanceMap m(3, 1);
    m[0] = 0.0;
    m[1] = 0.5;
    m[2] = 2.0;
    const LdrImage h = report::heatmap(m, 1.0);
    EXPECT_EQ(h[0], (Rgb8{0, 0, 0}));
    EXPECT_EQ(h[2], (Rgb8{255, 255, 255}));
    const LdrImage auto_scale = report::heatmap(m);
    EXPECT_EQ(auto_scale[2], (Rgb8{255, 255, 255}));
    EXPECT_NE(auto_scale[1], (Rgb8{255, 255, 255}));
}
