// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hueforge/errors.hpp"

namespace hueforge {

/// Real-valued RGB triple. Used for linear HDR radiance and for normalized
/// display values (nominally [0,1], possibly outside it before clipping).
struct Rgb
{
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

using NormalizedPixel = Rgb;

struct Rgb8
{
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// Integer RGB without range restriction, for rounding-only analysis.
struct RgbInt
{
    std::int32_t r = 0;
    std::int32_t g = 0;
    std::int32_t b = 0;

    friend bool operator==(const RgbInt&, const RgbInt&) = default;
};

struct ChannelRange
{
    double min = 0.0;
    double max = 0.0;
};

constexpr ChannelRange channel_minmax(const Rgb& p)
{
    auto lo = p.r < p.g ? p.r : p.g;
    auto hi = p.r < p.g ? p.g : p.r;
    lo = p.b < lo ? p.b : lo;
    hi = p.b > hi ? p.b : hi;
    return {lo, hi};
}

/// Row-major width x height grid of pixels.
template <typename Pixel>
class Image
{
public:
    using pixel_type = Pixel;

    Image() = default;

    Image(std::size_t width, std::size_t height, Pixel fill = {})
        : width_(width), height_(height), pixels_(width * height, fill)
    {
    }

    Image(std::size_t width, std::size_t height, std::vector<Pixel> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels))
    {
        if (pixels_.size() != width_ * height_) {
            throw DimensionError("pixel count " + std::to_string(pixels_.size()) +
                                 " does not match " + std::to_string(width_) + "x" +
                                 std::to_string(height_));
        }
    }

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    Pixel& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
    const Pixel& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
    Pixel& operator[](std::size_t i) { return pixels_[i]; }
    const Pixel& operator[](std::size_t i) const { return pixels_[i]; }

    std::span<Pixel> pixels() { return pixels_; }
    std::span<const Pixel> pixels() const { return pixels_; }
    std::span<const Pixel> row(std::size_t y) const { return {pixels_.data() + y * width_, width_}; }
    std::span<Pixel> row(std::size_t y) { return {pixels_.data() + y * width_, width_}; }

    template <typename Other>
    bool same_shape(const Image<Other>& other) const
    {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Pixel> pixels_;
};

using RgbImage = Image<Rgb>;
using LdrImage = Image<Rgb8>;
using WideIntImage = Image<RgbInt>;
using LuminanceMap = Image<double>;

/// Linear HDR radiance image. Every channel is finite and nonnegative; the
/// absolute scale is arbitrary.
class HdrImage
{
public:
    HdrImage() = default;

    /// Validates dimensions and channel values. Throws DimensionError or
    /// ValidationError.
    HdrImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels);

    std::size_t width() const { return data_.width(); }
    std::size_t height() const { return data_.height(); }
    std::size_t size() const { return data_.size(); }

    const Rgb& at(std::size_t x, std::size_t y) const { return data_.at(x, y); }
    const Rgb& operator[](std::size_t i) const { return data_[i]; }
    std::span<const Rgb> pixels() const { return data_.pixels(); }
    const RgbImage& rgb() const { return data_; }

    template <typename Other>
    bool same_shape(const Image<Other>& other) const
    {
        return data_.same_shape(other);
    }
    bool same_shape(const HdrImage& other) const { return data_.same_shape(other.data_); }

    friend bool operator==(const HdrImage&, const HdrImage&) = default;

private:
    RgbImage data_;
};

inline HdrImage new_hdr(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
{
    return HdrImage(width, height, std::move(pixels));
}

/// Per-pixel world luminance (>= 0) and display luminance (in [0,1]).
struct LuminancePair
{
    LuminanceMap world;
    LuminanceMap display;
};

/// 8-bit image rescaled to [0,1] by 1/255.
RgbImage to_normalized(const LdrImage& img);

template <typename A, typename B>
void require_same_shape(const A& a, const B& b, const char* what)
{
    if (a.width() != b.width() || a.height() != b.height()) {
        throw DimensionError(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                             std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                             "x" + std::to_string(b.height()));
    }
}

} // namespace hueforge
