// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <string>
#include <vector>

#include <hueforge/core_types.hpp>

namespace hueforge::corpus {

enum class Encoding
{
    rgbe_flat,
    rgbe_rle,
    pfm,
};

struct Scene
{
    std::string name;
    Encoding encoding;
    HdrImage image;

    std::string file_name() const;
};

/// Fully saturated color of hue `degrees` (max channel 1, min channel 0).
Rgb hue_color(double degrees);

/// Procedural high-dynamic-range test scenes, each `size` x `size`,
/// returned in file-name order. Pure functions of `size`.
std::vector<Scene> make_scenes(std::size_t size = 256);

/// Gray ramp with no chromatic pixel.
HdrImage make_gray_ramp(std::size_t width, std::size_t height);

} // namespace hueforge::corpus
