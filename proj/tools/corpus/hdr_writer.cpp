// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hdr_writer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <hueforge/errors.hpp>

namespace hueforge::corpus {

io::RgbePixel encode_rgbe(const Rgb& p)
{
    const double v = std::max({p.r, p.g, p.b});
    if (v < 1e-32) {
        return {};
    }
    int e = 0;
    const double m = std::frexp(v, &e) * 256.0 / v;
    if (e + 128 > 255) {
        throw ValidationError("value too large for RGBE");
    }
    auto mant = [&](double c) { return static_cast<std::uint8_t>(std::min(255.0, c * m)); };
    return {mant(p.r), mant(p.g), mant(p.b), static_cast<std::uint8_t>(e + 128)};
}

namespace {

void append(io::Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

// One channel of one scanline: runs of >= 3 equal bytes become (128 + n, v),
// everything else literal blocks (n, bytes...), n <= 127 / 128.
void encode_channel(io::Bytes& out, const std::vector<std::uint8_t>& data)
{
    const std::size_t n = data.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t run = 1;
        while (i + run < n && run < 127 && data[i + run] == data[i]) {
            ++run;
        }
        if (run >= 3) {
            out.push_back(static_cast<std::uint8_t>(128 + run));
            out.push_back(data[i]);
            i += run;
            continue;
        }
        std::size_t lit = 0;
        while (i + lit < n && lit < 128) {
            if (i + lit + 2 < n && data[i + lit] == data[i + lit + 1] && data[i + lit] == data[i + lit + 2]) {
                break;
            }
            ++lit;
        }
        out.push_back(static_cast<std::uint8_t>(lit));
        out.insert(out.end(), data.begin() + static_cast<std::ptrdiff_t>(i),
                   data.begin() + static_cast<std::ptrdiff_t>(i + lit));
        i += lit;
    }
}

} // namespace

io::Bytes write_radiance_hdr(const HdrImage& img, RgbeLayout layout)
{
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    if (layout == RgbeLayout::rle && (w < 8 || w > 32767)) {
        throw ValidationError("RLE scanlines need 8 <= width <= 32767");
    }
    io::Bytes out;
    append(out, "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " + std::to_string(h) + " +X " + std::to_string(w) + "\n");
    std::vector<std::uint8_t> channel[4];
    for (auto& c : channel) {
        c.resize(w);
    }
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const auto p = encode_rgbe(img.at(x, y));
            channel[0][x] = p.r;
            channel[1][x] = p.g;
            channel[2][x] = p.b;
            channel[3][x] = p.e;
        }
        if (layout == RgbeLayout::flat) {
            for (std::size_t x = 0; x < w; ++x) {
                for (auto& c : channel) {
                    out.push_back(c[x]);
                }
            }
            continue;
        }
        out.push_back(2);
        out.push_back(2);
        out.push_back(static_cast<std::uint8_t>(w >> 8));
        out.push_back(static_cast<std::uint8_t>(w & 0xFF));
        for (auto& c : channel) {
            encode_channel(out, c);
        }
    }
    return out;
}

io::Bytes write_pfm(const HdrImage& img)
{
    io::Bytes out;
    append(out, "PF\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n-1.0\n");
    for (std::size_t y = img.height(); y-- > 0;) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const Rgb& p = img.at(x, y);
            for (double c : {p.r, p.g, p.b}) {
                const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(c));
                for (int k = 0; k < 4; ++k) {
                    out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
                }
            }
        }
    }
    return out;
}

} // namespace hueforge::corpus
