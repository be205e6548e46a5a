// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hueforge/ldr_reconstruction.hpp"
#include "hueforge/metrics.hpp"
#include "hueforge/parallel.hpp"
#include "hueforge/tone_mapping.hpp"

namespace hueforge::metrics {

namespace {

constexpr double kRec709[3] = {0.2126, 0.7152, 0.0722};

/// Correlation with a separable kernel over the region where it fits
/// entirely ("valid" mode).
LuminanceMap filter_valid(const LuminanceMap& src, const std::vector<double>& k1d)
{
    const std::size_t k = k1d.size();
    const std::size_t ow = src.width() - k + 1;
    const std::size_t oh = src.height() - k + 1;
    LuminanceMap tmp(ow, src.height());
    parallel::for_each_index(src.height(), [&](std::size_t y) {
        const auto row = src.row(y);
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                acc += k1d[j] * row[x + j];
            }
            tmp.at(x, y) = acc;
        }
    });
    LuminanceMap out(ow, oh);
    parallel::for_each_index(oh, [&](std::size_t y) {
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                acc += k1d[j] * tmp.at(x, y + j);
            }
            out.at(x, y) = acc;
        }
    });
    return out;
}

std::vector<double> gaussian_window_1d(int size, double sigma)
{
    std::vector<double> w(static_cast<std::size_t>(size));
    const double half = (size - 1) / 2.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - half;
        w[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

LuminanceMap multiply(const LuminanceMap& a, const LuminanceMap& b)
{
    LuminanceMap out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] * b[i];
    }
    return out;
}

double normal_cdf(double x, double mu, double sigma)
{
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

double normal_pdf(double x, double mu, double sigma)
{
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double beta_pdf(double x, double a, double b)
{
    if (x < 0.0 || x > 1.0) {
        return 0.0;
    }
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    if (x == 0.0 || x == 1.0) {
        return 0.0; // a, b > 1
    }
    return std::exp(log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
}

/// Mean of the local structural-fidelity map at one scale.
double local_fidelity(const LuminanceMap& hdr, const LuminanceMap& ldr, const std::vector<double>& window,
                      double frequency, const TmqiConstants& k)
{
    const LuminanceMap mu1 = filter_valid(hdr, window);
    const LuminanceMap mu2 = filter_valid(ldr, window);
    const LuminanceMap e11 = filter_valid(multiply(hdr, hdr), window);
    const LuminanceMap e22 = filter_valid(multiply(ldr, ldr), window);
    const LuminanceMap e12 = filter_valid(multiply(hdr, ldr), window);

    // Contrast sensitivity at this scale sets the visibility threshold of
    // local standard deviations.
    const double csf = 100.0 * 2.6 * (0.0192 + 0.114 * frequency) * std::exp(-std::pow(0.114 * frequency, 1.1));
    const double threshold = 128.0 / (1.4 * csf);
    const double spread = threshold / 3.0;

    const std::size_t n = mu1.size();
    return parallel::deterministic_sum(n, [&](std::size_t i) {
               const double s1 = std::sqrt(std::max(0.0, e11[i] - mu1[i] * mu1[i]));
               const double s2 = std::sqrt(std::max(0.0, e22[i] - mu2[i] * mu2[i]));
               const double s12 = e12[i] - mu1[i] * mu2[i];
               const double p1 = normal_cdf(s1, threshold, spread);
               const double p2 = normal_cdf(s2, threshold, spread);
               return ((2.0 * p1 * p2 + k.c1) / (p1 * p1 + p2 * p2 + k.c1)) * ((s12 + k.c2) / (s1 * s2 + k.c2));
           }) /
           static_cast<double>(n);
}

/// 2x2 box average with edge replication, keeping every other sample.
LuminanceMap downsample(const LuminanceMap& src)
{
    const std::size_t w = src.width();
    const std::size_t h = src.height();
    LuminanceMap out((w + 1) / 2, (h + 1) / 2);
    for (std::size_t y = 0; y < out.height(); ++y) {
        const std::size_t y0 = 2 * y;
        const std::size_t y1 = std::min(h - 1, y0 + 1);
        for (std::size_t x = 0; x < out.width(); ++x) {
            const std::size_t x0 = 2 * x;
            const std::size_t x1 = std::min(w - 1, x0 + 1);
            out.at(x, y) = 0.25 * (src.at(x0, y0) + src.at(x1, y0) + src.at(x0, y1) + src.at(x1, y1));
        }
    }
    return out;
}

} // namespace

LuminanceMap tmqi_hdr_luminance(const HdrImage& hdr)
{
    LuminanceMap lum(hdr.width(), hdr.height());
    for (std::size_t i = 0; i < hdr.size(); ++i) {
        const Rgb& p = hdr[i];
        lum[i] = kRec709[0] * p.r + kRec709[1] * p.g + kRec709[2] * p.b;
    }
    if (lum.empty()) {
        return lum;
    }
    const auto [lo_it, hi_it] = std::minmax_element(lum.pixels().begin(), lum.pixels().end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    const double factor = range > 0.0 ? std::round((std::pow(2.0, 32) - 1.0) / range) : 0.0;
    for (double& v : lum.pixels()) {
        v = factor * (v - lo);
    }
    return lum;
}

LuminanceMap tmqi_ldr_luminance(const LdrImage& ldr)
{
    LuminanceMap lum(ldr.width(), ldr.height());
    for (std::size_t i = 0; i < ldr.size(); ++i) {
        const Rgb8& p = ldr[i];
        lum[i] = kRec709[0] * p.r + kRec709[1] * p.g + kRec709[2] * p.b;
    }
    return lum;
}

double structural_fidelity(const LuminanceMap& hdr_lum, const LuminanceMap& ldr_lum, const TmqiConstants& k)
{
    require_same_shape(hdr_lum, ldr_lum, "structural_fidelity");
    const auto window = gaussian_window_1d(k.window, k.window_sigma);
    const auto min_side = static_cast<std::size_t>(k.window);
    if (hdr_lum.width() < min_side || hdr_lum.height() < min_side) {
        throw ValidationError("image smaller than the structural fidelity window");
    }

    LuminanceMap a = hdr_lum;
    LuminanceMap b = ldr_lum;
    std::vector<double> scores;
    double frequency = k.base_frequency;
    const std::size_t levels = k.level_weights.size();
    for (std::size_t level = 0; level < levels; ++level) {
        if (a.width() < min_side || a.height() < min_side) {
            warn("image too small for " + std::to_string(levels) + " fidelity scales; using " +
                 std::to_string(level));
            break;
        }
        frequency /= 2.0;
        scores.push_back(local_fidelity(a, b, window, frequency, k));
        if (level + 1 < levels) {
            a = downsample(a);
            b = downsample(b);
        }
    }

    // Weights of the levels actually used are rescaled to the full total.
    const double total = std::accumulate(k.level_weights.begin(), k.level_weights.end(), 0.0);
    const double used = std::accumulate(k.level_weights.begin(),
                                        k.level_weights.begin() + static_cast<std::ptrdiff_t>(scores.size()), 0.0);
    double s = 1.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        // A negative mean (anti-correlated structure) counts as no fidelity.
        s *= std::pow(std::clamp(scores[i], 0.0, 1.0), k.level_weights[i] * total / used);
    }
    return std::clamp(s, 0.0, 1.0);
}

double statistical_naturalness(const LuminanceMap& ldr_lum, const TmqiConstants& k)
{
    if (ldr_lum.empty()) {
        throw ValidationError("naturalness of an empty image");
    }
    const double mean = std::accumulate(ldr_lum.pixels().begin(), ldr_lum.pixels().end(), 0.0) /
                        static_cast<double>(ldr_lum.size());

    const auto block = static_cast<std::size_t>(k.naturalness_block);
    double std_sum = 0.0;
    std::size_t blocks = 0;
    for (std::size_t by = 0; by < ldr_lum.height(); by += block) {
        for (std::size_t bx = 0; bx < ldr_lum.width(); bx += block) {
            const std::size_t ex = std::min(ldr_lum.width(), bx + block);
            const std::size_t ey = std::min(ldr_lum.height(), by + block);
            const auto count = static_cast<double>((ex - bx) * (ey - by));
            double s = 0.0;
            for (std::size_t y = by; y < ey; ++y) {
                for (std::size_t x = bx; x < ex; ++x) {
                    s += ldr_lum.at(x, y);
                }
            }
            const double m = s / count;
            double ss = 0.0;
            for (std::size_t y = by; y < ey; ++y) {
                for (std::size_t x = bx; x < ex; ++x) {
                    const double d = ldr_lum.at(x, y) - m;
                    ss += d * d;
                }
            }
            std_sum += count > 1.0 ? std::sqrt(ss / (count - 1.0)) : 0.0;
            ++blocks;
        }
    }
    const double contrast = std_sum / static_cast<double>(blocks);

    const double a = k.contrast_beta_a;
    const double b = k.contrast_beta_b;
    const double mode = (a - 1.0) / (a + b - 2.0);
    const double pc = beta_pdf(contrast / k.contrast_normalizer, a, b) / beta_pdf(mode, a, b);
    const double pb = normal_pdf(mean, k.brightness_mean, k.brightness_sigma) /
                      normal_pdf(k.brightness_mean, k.brightness_mean, k.brightness_sigma);
    return std::clamp(pb * pc, 0.0, 1.0);
}

TmqiResult tmqi(const HdrImage& hdr, const LdrImage& ldr, const TmqiConstants& k)
{
    require_same_shape(hdr, ldr, "tmqi");
    TmqiResult r;
    const LuminanceMap ldr_lum = tmqi_ldr_luminance(ldr);
    r.s = structural_fidelity(tmqi_hdr_luminance(hdr), ldr_lum, k);
    r.n = statistical_naturalness(ldr_lum, k);
    r.q = k.a * std::pow(r.s, k.alpha) + (1.0 - k.a) * std::pow(r.n, k.beta);
    return r;
}

double mean_luminance(const LdrImage& ldr)
{
    if (ldr.empty()) {
        return 0.0;
    }
    const double sum = parallel::deterministic_sum(ldr.size(), [&](std::size_t i) {
        const Rgb8& p = ldr[i];
        return tmo::luminance({p.r / 255.0, p.g / 255.0, p.b / 255.0});
    });
    return sum / static_cast<double>(ldr.size());
}

LdrImage mean_luminance_adjust(const LdrImage& ldr, double target_mean)
{
    if (!(target_mean > 0.0)) {
        throw ValidationError("target mean luminance must be positive");
    }
    const double current = mean_luminance(ldr);
    if (!(current > 0.0)) {
        throw ValidationError("cannot rescale an all-black image");
    }
    const double k = target_mean / current;
    RgbImage scaled = to_normalized(ldr);
    for (Rgb& p : scaled.pixels()) {
        p = {p.r * k, p.g * k, p.b * k};
    }
    return ldr::quantize_clip(scaled);
}

MetricReport evaluate(const HdrImage& hdr, const LdrImage& ldr, const MetricConfig& config)
{
    require_same_shape(hdr, ldr, "evaluate");
    MetricReport report;
    auto dc = delta_c(hdr, ldr);
    auto dh = ciede2000_delta_h(hdr, ldr, config.hue);
    const auto t = tmqi(hdr, ldr, config.tmqi);
    report.delta_c = dc.mean;
    report.delta_h = dh.mean;
    report.tmqi_q = t.q;
    report.tmqi_s = t.s;
    report.tmqi_n = t.n;
    if (config.keep_maps) {
        report.delta_c_map = std::move(dc.map);
        report.delta_h_map = std::move(dh.map);
    }
    return report;
}

} // namespace hueforge::metrics
