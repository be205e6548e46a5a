// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/tone_mapping.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hueforge/parallel.hpp"

namespace hueforge::tmo {

namespace {

std::vector<double> gaussian_kernel(double sigma)
{
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
        k[i + radius] = v;
        sum += v;
    }
    for (double& v : k) {
        v /= sum;
    }
    return k;
}

int kernel_radius(double sigma) { return std::max(1, static_cast<int>(std::ceil(3.0 * sigma))); }

/// Center sigma of pyramid level j. The center profile exp(-r^2 / (a s)^2)
/// with a = 1 / (2 sqrt 2) has standard deviation s / 4.
double level_sigma(int level, double ratio) { return std::pow(ratio, level) / 4.0; }

double level_scale(int level, double ratio) { return std::pow(ratio, level); }

LuminanceMap scaled_luminance(const LuminanceMap& lum, double key_value)
{
    const double avg = log_average(lum);
    LuminanceMap out(lum.width(), lum.height());
    const double k = key_value / avg;
    for (std::size_t i = 0; i < lum.size(); ++i) {
        out[i] = k * lum[i];
    }
    return out;
}

} // namespace

std::string_view operator_name(Operator op)
{
    switch (op) {
    case Operator::reinhard_global: return "reinhard_global";
    case Operator::reinhard_local: return "reinhard_local";
    case Operator::drago: return "drago";
    case Operator::durand: return "durand";
    }
    return "unknown";
}

std::optional<Operator> parse_operator(std::string_view name)
{
    for (auto op : {Operator::reinhard_global, Operator::reinhard_local, Operator::drago, Operator::durand}) {
        if (operator_name(op) == name) {
            return op;
        }
    }
    return std::nullopt;
}

void TmoConfig::validate() const
{
    if (!(key_value >= 0.0 && key_value <= 1.0)) {
        throw ValidationError("key value must lie in [0,1]");
    }
    if (!(drago_bias > 0.0 && drago_bias <= 1.0)) {
        throw ValidationError("drago bias must lie in (0,1]");
    }
    if (!(durand_contrast > 1.0)) {
        throw ValidationError("durand contrast must exceed 1");
    }
    if (!(durand_sigma_space > 0.0) || !(durand_sigma_range > 0.0)) {
        throw ValidationError("durand sigmas must be positive");
    }
    if (local_scales < 1) {
        throw ValidationError("scale count must be at least 1");
    }
    if (!(local_scale_ratio > 1.0) || !(local_epsilon > 0.0)) {
        throw ValidationError("invalid local operator parameters");
    }
}

LuminanceMap world_luminance(const HdrImage& img)
{
    LuminanceMap out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = luminance(img[i]);
    }
    return out;
}

double log_average(const LuminanceMap& lum)
{
    if (lum.empty()) {
        throw ValidationError("log average of an empty luminance map");
    }
    const double sum =
        parallel::deterministic_sum(lum.size(), [&](std::size_t i) { return std::log(kLogGuard + lum[i]); });
    return std::exp(sum / static_cast<double>(lum.size()));
}

LuminanceMap reinhard_global(const LuminanceMap& lum, double key_value)
{
    LuminanceMap out = scaled_luminance(lum, key_value);
    for (double& v : out.pixels()) {
        v = v / (1.0 + v);
    }
    return out;
}

LuminanceMap gaussian_blur(const LuminanceMap& src, double sigma)
{
    const auto kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);
    const auto w = static_cast<std::ptrdiff_t>(src.width());
    const auto h = static_cast<std::ptrdiff_t>(src.height());
    LuminanceMap tmp(src.width(), src.height());
    LuminanceMap out(src.width(), src.height());

    parallel::for_each_index(src.height(), [&](std::size_t y) {
        const auto row = src.row(y);
        auto dst = tmp.row(y);
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const auto xx = std::clamp<std::ptrdiff_t>(x + k, 0, w - 1);
                acc += kernel[k + radius] * row[xx];
            }
            dst[x] = acc;
        }
    });
    parallel::for_each_index(src.height(), [&](std::size_t yi) {
        const auto y = static_cast<std::ptrdiff_t>(yi);
        auto dst = out.row(yi);
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const auto yy = std::clamp<std::ptrdiff_t>(y + k, 0, h - 1);
                acc += kernel[k + radius] * tmp.at(x, yy);
            }
            dst[x] = acc;
        }
    });
    return out;
}

LuminanceMap reinhard_local(const LuminanceMap& lum, const TmoConfig& config)
{
    if (config.local_scales < 2) {
        throw ValidationError("reinhard_local needs at least 2 scales");
    }
    const int levels = config.local_scales;
    const int widest = 2 * kernel_radius(level_sigma(levels, config.local_scale_ratio)) + 1;
    if (lum.width() < static_cast<std::size_t>(widest) || lum.height() < static_cast<std::size_t>(widest)) {
        warn("image smaller than the widest local kernel (" + std::to_string(widest) +
             " px); using the global operator");
        return reinhard_global(lum, config.key_value);
    }

    const LuminanceMap scaled = scaled_luminance(lum, config.key_value);
    // Level j's surround is level j+1's center.
    std::vector<LuminanceMap> blurred;
    blurred.reserve(static_cast<std::size_t>(levels) + 1);
    for (int j = 0; j <= levels; ++j) {
        blurred.push_back(gaussian_blur(scaled, level_sigma(j, config.local_scale_ratio)));
    }

    const double numerator_bias = std::pow(2.0, config.local_phi) * config.key_value;
    LuminanceMap out(lum.width(), lum.height());
    parallel::for_each_index(lum.size(), [&](std::size_t i) {
        int chosen = 0;
        for (int j = 0; j < levels; ++j) {
            const double s = level_scale(j, config.local_scale_ratio);
            const double center = blurred[j][i];
            const double surround = blurred[j + 1][i];
            const double activity = (center - surround) / (numerator_bias / (s * s) + center);
            if (std::abs(activity) >= config.local_epsilon) {
                break;
            }
            chosen = j;
        }
        const double v = scaled[i] / (1.0 + blurred[chosen][i]);
        out[i] = std::clamp(v, 0.0, 1.0);
    });
    return out;
}

LuminanceMap drago(const LuminanceMap& lum, double bias, double max_display)
{
    if (!(bias > 0.0 && bias <= 1.0)) {
        throw ValidationError("drago bias must lie in (0,1]");
    }
    LuminanceMap out(lum.width(), lum.height());
    const double max_world = lum.empty() ? 0.0 : *std::max_element(lum.pixels().begin(), lum.pixels().end());
    if (!(max_world > 0.0)) {
        return out;
    }
    // Luminance is expressed relative to the world adaptation level.
    const double adaptation = log_average(lum);
    const double lmax = max_world / adaptation;
    const double exponent = std::log(bias) / std::log(0.5);
    const double front = max_display * 0.01 / std::log10(1.0 + lmax);

    for (std::size_t i = 0; i < lum.size(); ++i) {
        const double l = lum[i] / adaptation;
        out[i] = front * std::log(1.0 + l) / std::log(2.0 + 8.0 * std::pow(l / lmax, exponent));
    }
    const double peak = *std::max_element(out.pixels().begin(), out.pixels().end());
    if (peak > 0.0) {
        for (double& v : out.pixels()) {
            v = std::clamp(v / peak, 0.0, 1.0);
        }
    }
    return out;
}

LuminanceMap bilateral_filter(const LuminanceMap& src, double sigma_space, double sigma_range)
{
    const int radius = std::max(1, static_cast<int>(std::ceil(2.0 * sigma_space)));
    const auto w = static_cast<std::ptrdiff_t>(src.width());
    const auto h = static_cast<std::ptrdiff_t>(src.height());
    std::vector<double> spatial((2 * radius + 1) * (2 * radius + 1));
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            spatial[(dy + radius) * (2 * radius + 1) + (dx + radius)] =
                std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_space * sigma_space));
        }
    }
    const double range_scale = -1.0 / (2.0 * sigma_range * sigma_range);

    LuminanceMap out(src.width(), src.height());
    parallel::for_each_index(src.height(), [&](std::size_t yi) {
        const auto y = static_cast<std::ptrdiff_t>(yi);
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            const double center = src.at(x, y);
            double acc = 0.0;
            double norm = 0.0;
            for (int dy = -radius; dy <= radius; ++dy) {
                const auto yy = y + dy;
                if (yy < 0 || yy >= h) {
                    continue;
                }
                for (int dx = -radius; dx <= radius; ++dx) {
                    const auto xx = x + dx;
                    if (xx < 0 || xx >= w) {
                        continue;
                    }
                    const double v = src.at(xx, yy);
                    const double d = v - center;
                    const double wgt =
                        spatial[(dy + radius) * (2 * radius + 1) + (dx + radius)] * std::exp(range_scale * d * d);
                    acc += wgt * v;
                    norm += wgt;
                }
            }
            out.at(x, y) = acc / norm;
        }
    });
    return out;
}

LuminanceMap durand(const LuminanceMap& lum, const TmoConfig& config)
{
    if (!(config.durand_contrast > 1.0)) {
        throw ValidationError("durand contrast must exceed 1");
    }
    if (lum.empty()) {
        return {};
    }
    LuminanceMap log_lum(lum.width(), lum.height());
    for (std::size_t i = 0; i < lum.size(); ++i) {
        log_lum[i] = std::log10(kLogGuard + lum[i]);
    }
    const double diagonal = std::hypot(static_cast<double>(lum.width()), static_cast<double>(lum.height()));
    const double sigma_space = std::max(0.5, config.durand_sigma_space * diagonal);
    const LuminanceMap base = bilateral_filter(log_lum, sigma_space, config.durand_sigma_range);

    const auto [min_it, max_it] = std::minmax_element(base.pixels().begin(), base.pixels().end());
    // Rounding in the filter leaves a flat base with a spread of a few ulps;
    // such a base is treated as constant.
    const double base_range = *max_it - *min_it;
    const double factor = base_range > 1e-9 ? std::log10(config.durand_contrast) / base_range : 1.0;
    const double offset = *max_it * factor;

    LuminanceMap out(lum.width(), lum.height());
    for (std::size_t i = 0; i < lum.size(); ++i) {
        const double detail = log_lum[i] - base[i];
        out[i] = std::pow(10.0, base[i] * factor + detail - offset);
    }
    const double peak = *std::max_element(out.pixels().begin(), out.pixels().end());
    for (double& v : out.pixels()) {
        v = std::clamp(v / peak, 0.0, 1.0);
    }
    return out;
}

LuminancePair tone_map(const HdrImage& img, const TmoConfig& config)
{
    config.validate();
    LuminancePair pair;
    pair.world = world_luminance(img);
    switch (config.op) {
    case Operator::reinhard_global: pair.display = reinhard_global(pair.world, config.key_value); break;
    case Operator::reinhard_local: pair.display = reinhard_local(pair.world, config); break;
    case Operator::drago: pair.display = drago(pair.world, config.drago_bias, config.drago_max_display); break;
    case Operator::durand: pair.display = durand(pair.world, config); break;
    }
    return pair;
}

} // namespace hueforge::tmo
