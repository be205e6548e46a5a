// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/core_types.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>

namespace hueforge {

namespace {

bool valid_channel(double v) { return std::isfinite(v) && v >= 0.0; }

std::atomic<bool> g_warnings_enabled{true};

} // namespace

HdrImage::HdrImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : data_(width, height, std::move(pixels))
{
    const auto px = data_.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (!valid_channel(px[i].r) || !valid_channel(px[i].g) || !valid_channel(px[i].b)) {
            throw ValidationError("HDR pixel " + std::to_string(i) +
                                  " has a non-finite or negative channel");
        }
    }
}

RgbImage to_normalized(const LdrImage& img)
{
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = {img[i].r / 255.0, img[i].g / 255.0, img[i].b / 255.0};
    }
    return out;
}

void warn(std::string_view message)
{
    if (!g_warnings_enabled.load()) {
        return;
    }
    static std::mutex m;
    std::lock_guard lock(m);
    std::cerr << "hueforge: warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_warnings_enabled.store(enabled); }

} // namespace hueforge
