// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hueforge/core_types.hpp"

namespace hueforge::io {

using Bytes = std::vector<std::uint8_t>;

/// Radiance shared-exponent pixel.
struct RgbePixel
{
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t e = 0;
};

/// m * 2^(e - 136) per channel; e == 0 decodes to black.
Rgb decode_rgbe(const RgbePixel& p);

/// Radiance .hdr (flat, old-style run-length and adaptive RLE scanlines).
/// Only the standard `-Y H +X W` orientation is accepted.
HdrImage read_radiance_hdr(std::span<const std::uint8_t> data);

/// Portable float map, three-channel `PF` only. Rows are stored bottom-up
/// in the file and returned top-down.
HdrImage read_pfm(std::span<const std::uint8_t> data);

enum class LdrFormat
{
    png,
    ppm,
};

Bytes write_ldr(const LdrImage& img, LdrFormat format);

LdrImage read_ppm(std::span<const std::uint8_t> data);
LdrImage read_png(std::span<const std::uint8_t> data);

/// Detects PNG or binary PPM from the leading bytes.
LdrImage read_ldr(std::span<const std::uint8_t> data);

/// Detects Radiance or PFM from the leading bytes.
HdrImage read_hdr(std::span<const std::uint8_t> data);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);

HdrImage load_hdr(const std::filesystem::path& path);
LdrImage load_ldr(const std::filesystem::path& path);

/// Format chosen from the extension: `.ppm` writes PPM, anything else PNG.
void save_ldr(const std::filesystem::path& path, const LdrImage& img);

} // namespace hueforge::io
