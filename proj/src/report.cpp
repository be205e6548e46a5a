// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/report.hpp"

#include <algorithm>
#include <cstdio>

#include "hueforge/ldr_reconstruction.hpp"

namespace hueforge::report {

namespace {

std::string number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

} // namespace

nlohmann::ordered_json to_json(const metrics::MetricReport& r)
{
    nlohmann::ordered_json j;
    j["delta_c"] = r.delta_c;
    j["delta_h"] = r.delta_h;
    j["tmqi_q"] = r.tmqi_q;
    j["tmqi_s"] = r.tmqi_s;
    j["tmqi_n"] = r.tmqi_n;
    return j;
}

std::string csv_header() { return "image,tmo,method,delta_c,delta_h,tmqi_q,tmqi_s,tmqi_n"; }

std::string csv_row(std::string_view image, std::string_view tmo, std::string_view method,
                    const metrics::MetricReport& r)
{
    return csv_field(image) + ',' + csv_field(tmo) + ',' + csv_field(method) + ',' + number(r.delta_c) + ',' +
           number(r.delta_h) + ',' + number(r.tmqi_q) + ',' + number(r.tmqi_s) + ',' + number(r.tmqi_n);
}

LdrImage heatmap(const LuminanceMap& values, double full_scale)
{
    if (!(full_scale > 0.0)) {
        full_scale = values.empty() ? 1.0 : *std::max_element(values.pixels().begin(), values.pixels().end());
        if (!(full_scale > 0.0)) {
            full_scale = 1.0;
        }
    }
    LdrImage out(values.width(), values.height());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = std::clamp(values[i] / full_scale, 0.0, 1.0) * 3.0;
        const Rgb c{std::clamp(t, 0.0, 1.0), std::clamp(t - 1.0, 0.0, 1.0), std::clamp(t - 2.0, 0.0, 1.0)};
        out[i] = {ldr::quantize_channel(c.r), ldr::quantize_channel(c.g), ldr::quantize_channel(c.b)};
    }
    return out;
}

} // namespace hueforge::report
