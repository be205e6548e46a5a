// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <hueforge/core_types.hpp>
#include <hueforge/image_io.hpp>

namespace hueforge::corpus {

/// Inverse of io::decode_rgbe up to mantissa truncation.
io::RgbePixel encode_rgbe(const Rgb& p);

enum class RgbeLayout
{
    flat,
    rle,
};

/// Radiance .hdr bytes. `rle` uses adaptive run-length scanlines and
/// requires 8 <= width <= 32767.
io::Bytes write_radiance_hdr(const HdrImage& img, RgbeLayout layout);

/// Little-endian `PF` bytes, rows stored bottom-up.
io::Bytes write_pfm(const HdrImage& img);

} // namespace hueforge::corpus
