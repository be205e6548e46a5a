// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hueforge/core_types.hpp"
#include "hueforge/metrics.hpp"

namespace hueforge::report {

/// {"delta_c", "delta_h", "tmqi_q", "tmqi_s", "tmqi_n"}.
nlohmann::ordered_json to_json(const metrics::MetricReport& r);

/// image,tmo,method,delta_c,delta_h,tmqi_q,tmqi_s,tmqi_n
std::string csv_header();
std::string csv_row(std::string_view image, std::string_view tmo, std::string_view method,
                    const metrics::MetricReport& r);

/// Black-red-yellow-white ramp; `full_scale` maps to white. A nonpositive
/// full scale uses the map's maximum.
LdrImage heatmap(const LuminanceMap& values, double full_scale = 0.0);

} // namespace hueforge::report
