// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

namespace hueforge::corpus {

namespace {

using Shader = std::function<Rgb(double u, double v)>;

HdrImage render(std::size_t size, const Shader& shade)
{
    std::vector<Rgb> px(size * size);
    for (std::size_t y = 0; y < size; ++y) {
        for (std::size_t x = 0; x < size; ++x) {
            const double u = (static_cast<double>(x) + 0.5) / static_cast<double>(size);
            const double v = (static_cast<double>(y) + 0.5) / static_cast<double>(size);
            const Rgb c = shade(u, v);
            px[y * size + x] = {std::max(0.0, c.r), std::max(0.0, c.g), std::max(0.0, c.b)};
        }
    }
    return new_hdr(size, size, std::move(px));
}

// saturation 0 is gray, 1 is the pure hue; result scaled by intensity.
Rgb tint(double hue, double saturation, double intensity)
{
    const Rgb c = hue_color(hue);
    const double w = 1.0 - saturation;
    return {intensity * (w + saturation * c.r), intensity * (w + saturation * c.g),
            intensity * (w + saturation * c.b)};
}

Rgb add(const Rgb& a, const Rgb& b) { return {a.r + b.r, a.g + b.g, a.b + b.b}; }

// Deterministic [0,1) sequence.
double hash01(std::uint32_t n)
{
    n ^= n >> 16;
    n *= 0x7feb352dU;
    n ^= n >> 15;
    n *= 0x846ca68bU;
    n ^= n >> 16;
    return static_cast<double>(n) / 4294967296.0;
}

Rgb color_ramps(double u, double v)
{
    constexpr double hues[] = {0, 30, 60, 120, 180, 240, 275, 300};
    const auto band = std::min<std::size_t>(7, static_cast<std::size_t>(v * 8.0));
    const double saturation = 0.75 + 0.25 * std::fmod(v * 8.0, 1.0);
    return tint(hues[band], saturation, std::pow(10.0, -2.0 + 5.0 * u));
}

Rgb hue_wheel(double u, double v)
{
    const double dx = u - 0.5;
    const double dy = v - 0.5;
    const double r = std::hypot(dx, dy) / 0.48;
    const double intensity = std::pow(10.0, -1.0 + 3.5 * (1.0 - v));
    if (r > 1.0) {
        return tint(0.0, 0.0, 0.05 * intensity);
    }
    const double hue = std::atan2(dy, dx) * 180.0 / std::numbers::pi + 180.0;
    return tint(hue, std::sqrt(r), intensity);
}

Rgb neon(double u, double v)
{
    Rgb c{0.004, 0.004, 0.012};
    constexpr double hues[] = {300, 180, 110, 30};
    for (int k = 0; k < 4; ++k) {
        const double centre = 0.2 + 0.2 * k + 0.08 * std::sin(2.0 * std::numbers::pi * (u * (1.5 + 0.5 * k) + 0.1 * k));
        const double d = (v - centre) * 256.0;
        const double glow = 40.0 * std::exp(-d * d / 6.0) + 2.0 * std::exp(-d * d / 120.0);
        c = add(c, tint(hues[k], 0.95, glow));
    }
    return c;
}

Rgb stained_glass(double u, double v)
{
    constexpr int kCells = 24;
    double best = 1e9;
    double second = 1e9;
    int owner = 0;
    for (int i = 0; i < kCells; ++i) {
        const double px = hash01(2U * i + 1U);
        const double py = hash01(2U * i + 2U);
        const double d = std::hypot(u - px, v - py);
        if (d < best) {
            second = best;
            best = d;
            owner = i;
        } else if (d < second) {
            second = d;
        }
    }
    if (second - best < 0.008) {
        return {0.01, 0.01, 0.01};
    }
    const double light = 200.0 / (1.0 + ((u - 0.3) * (u - 0.3) + (v - 0.25) * (v - 0.25)) * 60.0);
    return tint(360.0 * hash01(100U + owner), 0.7 + 0.3 * hash01(200U + owner), light);
}

Rgb step_edges(double u, double v)
{
    const auto i = static_cast<int>(u * 8.0);
    const auto j = static_cast<int>(v * 8.0);
    const double hue = 30.0 * ((i * 7 + j * 3) % 12);
    const double saturation = ((i + j) % 2 == 0) ? 0.95 : 0.6;
    return tint(hue, saturation, std::pow(10.0, ((i + 2 * j) % 5) - 1.5));
}

Rgb sunset(double u, double v)
{
    const double sun = std::hypot(u - 0.62, v - 0.55);
    if (v > 0.62) {
        // Ground: dim saturated foliage.
        return tint(100.0 + 30.0 * std::sin(u * 20.0), 0.85, 0.02 + 0.08 * (v - 0.62));
    }
    const double t = v / 0.62;
    Rgb sky = tint(230.0 + 155.0 * t, 0.55 + 0.4 * t, 0.5 + 6.0 * t * t);
    if (sun < 0.06) {
        return add(sky, tint(45.0, 0.35, 800.0));
    }
    return add(sky, tint(30.0, 0.9, 40.0 * std::exp(-(sun - 0.06) * 25.0)));
}

} // namespace

Rgb hue_color(double degrees)
{
    double h = std::fmod(degrees, 360.0);
    if (h < 0.0) {
        h += 360.0;
    }
    const double x = h / 60.0;
    const double f = x - std::floor(x);
    switch (static_cast<int>(x) % 6) {
    case 0: return {1.0, f, 0.0};
    case 1: return {1.0 - f, 1.0, 0.0};
    case 2: return {0.0, 1.0, f};
    case 3: return {0.0, 1.0 - f, 1.0};
    case 4: return {f, 0.0, 1.0};
    default: return {1.0, 0.0, 1.0 - f};
    }
}

std::string Scene::file_name() const { return name + (encoding == Encoding::pfm ? ".pfm" : ".hdr"); }

std::vector<Scene> make_scenes(std::size_t size)
{
    std::vector<Scene> scenes;
    scenes.push_back({"color_ramps", Encoding::rgbe_rle, render(size, color_ramps)});
    scenes.push_back({"hue_wheel", Encoding::rgbe_flat, render(size, hue_wheel)});
    scenes.push_back({"neon", Encoding::pfm, render(size, neon)});
    scenes.push_back({"stained_glass", Encoding::rgbe_rle, render(size, stained_glass)});
    scenes.push_back({"step_edges", Encoding::rgbe_rle, render(size, step_edges)});
    scenes.push_back({"sunset", Encoding::rgbe_flat, render(size, sunset)});
    return scenes;
}

HdrImage make_gray_ramp(std::size_t width, std::size_t height)
{
    std::vector<Rgb> px(width * height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double v = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(x) / static_cast<double>(std::max<std::size_t>(1, width - 1)));
            px[y * width + x] = {v, v, v};
        }
    }
    return new_hdr(width, height, std::move(px));
}

} // namespace hueforge::corpus
