// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <hueforge/errors.hpp>
#include <hueforge/metrics.hpp>

using namespace hueforge;
using metrics::Lab;

namespace {

RgbImage single(const Rgb& p) { return RgbImage(1, 1, std::vector<Rgb>{p}); }

struct Ciede2000Pair
{
    Lab first;
    Lab second;
    double delta_e;
};

// Published CIEDE2000 reference pairs with their four-decimal Delta E00.
const std::array<Ciede2000Pair, 34> kReferencePairs{{
    {{50.0000, 2.6772, -79.7751}, {50.0000, 0.0000, -82.7485}, 2.0425},
    {{50.0000, 3.1571, -77.2803}, {50.0000, 0.0000, -82.7485}, 2.8615},
    {{50.0000, 2.8361, -74.0200}, {50.0000, 0.0000, -82.7485}, 3.4412},
    {{50.0000, -1.3802, -84.2814}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, -1.1848, -84.8006}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, -0.9009, -85.5211}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, 0.0000, 0.0000}, {50.0000, -1.0000, 2.0000}, 2.3669},
    {{50.0000, -1.0000, 2.0000}, {50.0000, 0.0000, 0.0000}, 2.3669},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0009}, 7.1792},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0010}, 7.1792},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0011}, 7.2195},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0012}, 7.2195},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0009, -2.4900}, 4.8045},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0010, -2.4900}, 4.8045},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0011, -2.4900}, 4.7461},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 0.0000, -2.5000}, 4.3065},
    {{50.0000, 2.5000, 0.0000}, {73.0000, 25.0000, -18.0000}, 27.1492},
    {{50.0000, 2.5000, 0.0000}, {61.0000, -5.0000, 29.0000}, 22.8977},
    {{50.0000, 2.5000, 0.0000}, {56.0000, -27.0000, -3.0000}, 31.9030},
    {{50.0000, 2.5000, 0.0000}, {58.0000, 24.0000, 15.0000}, 19.4535},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.1736, 0.5854}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2972, 0.0000}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 1.8634, 0.5757}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2592, 0.3350}, 1.0000},
    {{60.2574, -34.0099, 36.2677}, {60.4626, -34.1751, 39.4387}, 1.2644},
    {{63.0109, -31.0961, -5.8663}, {62.8187, -29.7946, -4.0864}, 1.2630},
    {{61.2901, 3.7196, -5.3901}, {61.4292, 2.2480, -4.9620}, 1.8731},
    {{35.0831, -44.1164, 3.7933}, {35.0232, -40.0716, 1.5901}, 1.8645},
    {{22.7233, 20.0904, -46.6940}, {23.0331, 14.9730, -42.5619}, 2.0373},
    {{36.4612, 47.8580, 18.3852}, {36.2715, 50.5065, 21.2231}, 1.4146},
    {{90.8027, -2.0831, 1.4410}, {91.1528, -1.6435, 0.0447}, 1.4441},
    {{90.9257, -0.5406, -0.9208}, {88.6381, -0.8985, -0.7239}, 1.5381},
    {{6.7747, -0.2908, -2.4247}, {5.8714, -0.0985, -2.2286}, 0.6377},
    {{2.0776, 0.0795, -1.1350}, {0.9033, -0.0636, -0.5514}, 0.9082},
}};

} // namespace

TEST(DeltaC, IdenticalImagesGiveZero)
{
    const RgbImage img(2, 1, std::vector<Rgb>{{0.2, 0.6, 0.4}, {0.9, 0.1, 0.1}});
    EXPECT_EQ(metrics::delta_c(img, img).mean, 0.0);
}

TEST(DeltaC, OrthogonalPrimariesGiveSqrtTwo)
{
    EXPECT_DOUBLE_EQ(metrics::delta_c(single({1, 0, 0}), single({0, 1, 0})).mean, std::sqrt(2.0));
}

TEST(DeltaC, ComplementaryPairGivesSqrtThree)
{
    EXPECT_DOUBLE_EQ(metrics::delta_c(single({1, 0, 1}), single({0, 1, 0})).mean, std::sqrt(3.0));
}

TEST(DeltaC, AchromaticSidesContributeZero)
{
    const auto both = metrics::delta_c(single({0.3, 0.3, 0.3}), single({0.7, 0.7, 0.7}));
    EXPECT_EQ(both.mean, 0.0);
    EXPECT_EQ(both.one_sided_achromatic, 0u);
    const auto one = metrics::delta_c(single({0.3, 0.3, 0.3}), single({0.7, 0.2, 0.2}));
    EXPECT_EQ(one.mean, 0.0);
    EXPECT_EQ(one.one_sided_achromatic, 1u);
}

TEST(DeltaC, SymmetricAndBounded)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Rgb> a(400);
    std::vector<Rgb> b(400);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = {u(rng), u(rng), u(rng)};
        b[i] = {u(rng), u(rng), u(rng)};
    }
    const RgbImage ia(20, 20, a);
    const RgbImage ib(20, 20, b);
    const auto ab = metrics::delta_c(ia, ib);
    const auto ba = metrics::delta_c(ib, ia);
    EXPECT_EQ(ab.mean, ba.mean);
    for (double v : ab.map.pixels()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, std::sqrt(3.0) + 1e-15);
    }
}

TEST(DeltaC, ChromaScalingAroundMinIsInvariant)
{
    const Rgb reference{0.9, 0.2, 0.5};
    const Rgb x{0.1, 0.6, 0.3};
    const double base = metrics::delta_c(single(reference), single(x)).mean;
    for (double k : {0.1, 0.5, 0.99}) {
        const Rgb y{0.1 + k * (x.r - 0.1), 0.1 + k * (x.g - 0.1), 0.1 + k * (x.b - 0.1)};
        EXPECT_NEAR(metrics::delta_c(single(reference), single(y)).mean, base, 1e-12);
    }
}

TEST(DeltaC, DimensionMismatchThrows)
{
    EXPECT_THROW(metrics::delta_c(RgbImage(2, 1), RgbImage(1, 2)), DimensionError);
}

TEST(DeltaC, HdrAgainstLdr)
{
    const HdrImage hdr = new_hdr(1, 1, {{4.0, 0.0, 0.0}});
    const LdrImage ldr(1, 1, std::vector<Rgb8>{{0, 255, 0}});
    EXPECT_DOUBLE_EQ(metrics::delta_c(hdr, ldr).mean, std::sqrt(2.0));
}

TEST(SrgbToLab, ReferenceColors)
{
    const Lab white = metrics::srgb_to_lab({1.0, 1.0, 1.0});
    EXPECT_NEAR(white.l, 100.0, 1e-9);
    EXPECT_NEAR(white.a, 0.0, 1e-9);
    EXPECT_NEAR(white.b, 0.0, 1e-9);
    const Lab black = metrics::srgb_to_lab({0.0, 0.0, 0.0});
    EXPECT_NEAR(black.l, 0.0, 1e-12);
    const Lab red = metrics::srgb_to_lab({1.0, 0.0, 0.0});
    EXPECT_NEAR(red.l, 53.24, 0.01);
    EXPECT_NEAR(red.a, 80.09, 0.01);
    EXPECT_NEAR(red.b, 67.20, 0.01);
}

TEST(SrgbTransfer, RoundTrip)
{
    for (double v = 0.0; v <= 1.0; v += 0.01) {
        EXPECT_NEAR(metrics::srgb_encode(metrics::srgb_decode(v)), v, 1e-12);
    }
}

TEST(Ciede2000, ReferencePairs)
{
    for (std::size_t i = 0; i < kReferencePairs.size(); ++i) {
        const auto& p = kReferencePairs[i];
        EXPECT_NEAR(metrics::ciede2000(p.first, p.second).delta_e, p.delta_e, 1e-4) << "pair " << i + 1;
    }
}

TEST(Ciede2000, SymmetricInArguments)
{
    for (const auto& p : kReferencePairs) {
        EXPECT_NEAR(metrics::ciede2000(p.first, p.second).delta_e, metrics::ciede2000(p.second, p.first).delta_e,
                    1e-12);
        EXPECT_NEAR(std::abs(metrics::ciede2000(p.first, p.second).delta_h),
                    std::abs(metrics::ciede2000(p.second, p.first).delta_h), 1e-12);
    }
}

TEST(Ciede2000, HueTermVanishesForAchromatic)
{
    EXPECT_EQ(metrics::ciede2000({50, 0, 0}, {60, 10, -5}).delta_h, 0.0);
    EXPECT_EQ(metrics::ciede2000({50, 0, 0}, {70, 0, 0}).delta_h, 0.0);
}

TEST(Ciede2000DeltaH, IdenticalImagesGiveZero)
{
    const metrics::LabImage lab(2, 1, std::vector<Lab>{{50, 10, 20}, {70, -30, 5}});
    EXPECT_EQ(metrics::ciede2000_delta_h(lab, lab).mean, 0.0);
}

TEST(Ciede2000DeltaH, MeanOfAbsoluteHueTerm)
{
    const metrics::LabImage a(2, 1, std::vector<Lab>{{50, 10, 0}, {50, 10, 0}});
    const metrics::LabImage b(2, 1, std::vector<Lab>{{50, 0, 10}, {50, 0, -10}});
    const double t = std::abs(metrics::ciede2000({50, 10, 0}, {50, 0, 10}).delta_h);
    EXPECT_NEAR(metrics::ciede2000_delta_h(a, b).mean, t, 1e-12);

    metrics::HueDifferenceConfig cfg;
    cfg.normalized = true;
    const auto up = metrics::ciede2000({50, 10, 0}, {50, 0, 10});
    const auto down = metrics::ciede2000({50, 10, 0}, {50, 0, -10});
    EXPECT_NEAR(metrics::ciede2000_delta_h(a, b, cfg).mean,
                (std::abs(up.delta_h / up.sh) + std::abs(down.delta_h / down.sh)) / 2.0, 1e-12);
}

TEST(HdrToLab, NormalizesByPercentileAndClips)
{
    std::vector<Rgb> px(1000, Rgb{2.0, 1.0, 0.5});
    px[0] = {400.0, 400.0, 400.0};
    const HdrImage hdr = new_hdr(1000, 1, px);
    const auto lab = metrics::hdr_to_lab(hdr);
    const Lab expected = metrics::linear_rgb_to_lab({1.0, 0.5, 0.25});
    EXPECT_NEAR(lab[5].l, expected.l, 1e-12);
    EXPECT_NEAR(lab[5].a, expected.a, 1e-12);
    EXPECT_NEAR(lab[0].l, 100.0, 1e-9);

    metrics::HueDifferenceConfig lum;
    lum.hdr_normalization = metrics::HdrNormalization::luminance;
    const auto by_lum = metrics::hdr_to_lab(hdr, lum);
    // Luminance of (2, 1, 0.5) is 1.24, so the red channel clips.
    const Lab clipped = metrics::linear_rgb_to_lab({1.0, 1.0 / 1.24, 0.5 / 1.24});
    EXPECT_NEAR(by_lum[5].b, clipped.b, 1e-9);
}

TEST(LdrToLab, TransferFunctions)
{
    const LdrImage ldr(1, 1, std::vector<Rgb8>{{255, 128, 0}});
    metrics::HueDifferenceConfig cfg;
    cfg.ldr_transfer = metrics::LdrTransfer::linear;
    const Lab lin = metrics::ldr_to_lab(ldr, cfg)[0];
    const Lab lin_ref = metrics::linear_rgb_to_lab({1.0, 128.0 / 255.0, 0.0});
    EXPECT_NEAR(lin.a, lin_ref.a, 1e-12);
    cfg.ldr_transfer = metrics::LdrTransfer::srgb;
    const Lab s = metrics::ldr_to_lab(ldr, cfg)[0];
    const Lab s_ref = metrics::srgb_to_lab({1.0, 128.0 / 255.0, 0.0});
    EXPECT_NEAR(s.b, s_ref.b, 1e-12);
    cfg.ldr_transfer = metrics::LdrTransfer::gamma;
    cfg.ldr_gamma = 2.0;
    const Lab g = metrics::ldr_to_lab(ldr, cfg)[0];
    const double v = 128.0 / 255.0;
    const Lab g_ref = metrics::linear_rgb_to_lab({1.0, v * v, 0.0});
    EXPECT_NEAR(g.l, g_ref.l, 1e-12);
}

TEST(Ciede2000DeltaH, SymmetricOnImages)
{
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-60.0, 60.0);
    std::vector<Lab> a(100);
    std::vector<Lab> b(100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = {50.0 + u(rng) / 2, u(rng), u(rng)};
        b[i] = {50.0 + u(rng) / 2, u(rng), u(rng)};
    }
    const metrics::LabImage ia(10, 10, a);
    const metrics::LabImage ib(10, 10, b);
    EXPECT_NEAR(metrics::ciede2000_delta_h(ia, ib).mean, metrics::ciede2000_delta_h(ib, ia).mean, 1e-12);
}
