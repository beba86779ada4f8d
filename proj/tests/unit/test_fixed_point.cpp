#include "oracles.hpp"

#include "wristml/error.hpp"
#include "wristml/fixed_point.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace {

using namespace wristml;

constexpr std::int32_t kOne = 1 << 16;

TEST(QFormat, QuantizeExamples) {
    const QFormat q{16};
    EXPECT_EQ(q.quantize(0.5), 32768);
    EXPECT_EQ(q.quantize(-0.5), -32768);
    EXPECT_EQ(q.quantize(1.0), kOne);
    // half a step rounds away from zero
    EXPECT_EQ(q.quantize(std::ldexp(1.0, -17)), 1);
    EXPECT_EQ(q.quantize(-std::ldexp(1.0, -17)), -1);
    EXPECT_EQ(q.dequantize(32768), 0.5);
    EXPECT_EQ(q.resolution(), std::ldexp(1.0, -16));
    EXPECT_EQ(q.max_value(), 32768.0 - std::ldexp(1.0, -16));
    EXPECT_EQ(q.min_value(), -32768.0);
}

TEST(QFormat, SaturatesInsteadOfWrapping) {
    const QFormat q{16};
    bool sat = false;
    EXPECT_EQ(q.quantize(70000.0, &sat), std::numeric_limits<std::int32_t>::max());
    EXPECT_TRUE(sat);
    EXPECT_EQ(q.quantize(-70000.0, &sat), std::numeric_limits<std::int32_t>::min());
    EXPECT_TRUE(sat);
    q.quantize(0.25, &sat);
    EXPECT_FALSE(sat);
    EXPECT_FALSE(q.representable(70000.0));
    EXPECT_TRUE(q.representable(-32768.0));
}

TEST(QFormat, RejectsOutOfRangeFractionBits) {
    EXPECT_THROW(QFormat{0}, RangeError);
    EXPECT_THROW(QFormat{31}, RangeError);
    EXPECT_NO_THROW(QFormat{1});
    EXPECT_NO_THROW(QFormat{30});
}

TEST(Quantize, SaturatedWeightIsCounted) {
    const NetworkModel net({{1, Activation::linear}, {1, Activation::tanh}}, {{70000.0, 0.25}});
    const auto q = quantize(net, QFormat{16});
    EXPECT_EQ(q.saturated_weights(), 1u);
    EXPECT_EQ(q.weights(0)[0], std::numeric_limits<std::int32_t>::max());
    EXPECT_EQ(q.weights(0)[1], 16384);
}

TEST(Quantize, DequantizationErrorIsHalfAStep) {
    const auto net = randomize_weights(build_network_a(), 77, 4.0);
    const auto back = dequantize(quantize(net, QFormat{16})).flat_weights();
    const auto orig = net.flat_weights();
    double worst = 0.0;
    for (std::size_t i = 0; i < orig.size(); ++i)
        worst = std::max(worst, std::fabs(orig[i] - back[i]));
    EXPECT_LE(worst, std::ldexp(1.0, -17));
    EXPECT_GT(worst, 0.0);
}

TEST(TanhLut, Anchors) {
    const TanhLut lut(QFormat{16});
    EXPECT_EQ(lut.eval(0), 0);
    EXPECT_NEAR(lut.eval(kOne) / 65536.0, 0.76159, 1e-3);
    EXPECT_EQ(lut.knots().size(), 257u);
    EXPECT_EQ(lut.saturation(), kOne - 1);
}

TEST(TanhLut, SaturationEndpoints) {
    const TanhLut lut(QFormat{16});
    for (std::int32_t x : {4 * kOne, 4 * kOne + 1, 10 * kOne, std::numeric_limits<std::int32_t>::max()}) {
        EXPECT_EQ(lut.eval(x), kOne - 1);
        EXPECT_EQ(lut.eval(-x), -(kOne - 1));
    }
    EXPECT_EQ(lut.eval(std::numeric_limits<std::int32_t>::min()), -(kOne - 1));
}

TEST(TanhLut, OddSymmetryAndMonotonicityOverTheWholeTable) {
    const TanhLut lut(QFormat{16});
    std::int32_t prev = lut.eval(-5 * kOne);
    for (std::int32_t x = -5 * kOne; x <= 5 * kOne; ++x) {
        const std::int32_t y = lut.eval(x);
        ASSERT_EQ(lut.eval(-x), -y) << x;
        ASSERT_GE(y, prev) << x;
        prev = y;
    }
}

TEST(TanhLut, DeviationFromTanhOnTheInterpolatedDomain) {
    const TanhLut lut(QFormat{16});
    double worst = 0.0;
    for (std::int32_t x = -4 * kOne + 1; x < 4 * kOne; ++x)
        worst = std::max(worst, std::fabs(lut.eval(x) / 65536.0 - std::tanh(x / 65536.0)));
    EXPECT_LE(worst, 2e-4);
}

TEST(TanhLut, ClampRegionDeviationIsBoundedByTheTanhTail) {
    const TanhLut lut(QFormat{16});
    for (std::int32_t x = 4 * kOne; x < 40 * kOne; x += 97)
        EXPECT_LE(std::fabs(lut.eval(x) / 65536.0 - std::tanh(x / 65536.0)), 1.0 - std::tanh(4.0));
}

TEST(TanhLut, OtherFormats) {
    for (int f : {8, 12, 20, 24}) {
        const QFormat q{f};
        const TanhLut lut(q);
        EXPECT_EQ(lut.eval(0), 0);
        EXPECT_NEAR(q.dequantize(lut.eval(q.quantize(0.5))), std::tanh(0.5), 2e-4 + q.resolution());
        EXPECT_EQ(lut.saturation(), (1 << f) - 1);
    }
}

TEST(InferFixed, NoWraparoundWithAdversarialWeights) {
    std::mt19937_64 rng(21);
    const std::int32_t big[] = {std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::min(),
                                std::numeric_limits<std::int32_t>::max() - 1, -kOne, kOne, 0};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LayerSpec> layers = {{1 + rng() % 8, Activation::linear},
                                         {1 + rng() % 16, trial % 2 ? Activation::tanh : Activation::linear},
                                         {1 + rng() % 4, trial % 3 ? Activation::tanh : Activation::linear}};
        std::vector<std::vector<std::int32_t>> weights(2);
        for (std::size_t c = 0; c < 2; ++c) {
            weights[c].resize((layers[c].size + 1) * layers[c + 1].size);
            for (auto& w : weights[c])
                w = big[rng() % 6];
        }
        const FixedPointNet net(layers, weights, QFormat{16});
        std::vector<std::int32_t> in(layers[0].size);
        for (auto& v : in)
            v = big[rng() % 6];
        FixedInferenceStats stats;
        std::size_t clamped = 0;
        const auto got = infer_fixed_raw(net, in, &stats);
        const auto want = oracle::fixed_forward(net, in, clamped);
        ASSERT_EQ(got, want) << "trial " << trial;
        EXPECT_EQ(stats.saturated_neurons, clamped);
    }
}

TEST(InferFixed, LargeSumClampsWithCorrectSign) {
    // 8 * 32767.99^2 overflows int32 and int64 intermediate in raw units.
    const std::int32_t mx = std::numeric_limits<std::int32_t>::max();
    const FixedPointNet pos({{8, Activation::linear}, {1, Activation::linear}},
                            {std::vector<std::int32_t>(9, mx)}, QFormat{16});
    FixedInferenceStats stats;
    const std::vector<std::int32_t> in(8, mx);
    EXPECT_EQ(infer_fixed_raw(pos, in, &stats)[0], mx);
    EXPECT_EQ(stats.saturated_neurons, 1u);
    const std::vector<std::int32_t> neg(8, -mx);
    EXPECT_EQ(infer_fixed_raw(pos, neg, &stats)[0], std::numeric_limits<std::int32_t>::min());
}

TEST(InferFixed, PreActivationAboveFourHitsLutSaturation) {
    const auto net = quantize(NetworkModel({{1, Activation::linear}, {1, Activation::tanh}}, {{8.0, 0.0}}));
    const double in1[] = {0.5};
    const double in2[] = {-1.0};
    EXPECT_EQ(infer_fixed(net, in1)[0], 1.0 - std::ldexp(1.0, -16));
    EXPECT_EQ(infer_fixed(net, in2)[0], -(1.0 - std::ldexp(1.0, -16)));
}

TEST(InferFixed, TracksFloatOnNetworkAShapedNet) {
    const auto net = randomize_weights(build_network_a(), 42, 0.5);
    const auto q = quantize(net, QFormat{16});
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
        std::vector<double> in(5);
        for (double& v : in)
            v = u(rng);
        const auto a = infer_float(net, in);
        const auto b = infer_fixed(q, in);
        for (std::size_t i = 0; i < 3; ++i)
            worst = std::max(worst, std::fabs(a[i] - b[i]));
    }
    EXPECT_LE(worst, 1e-2);
}

TEST(InferFixed, Deterministic) {
    const auto q = quantize(randomize_weights(build_network_a(), 3, 2.0));
    const double in[] = {0.1, -0.2, 0.3, -0.4, 0.5};
    const auto a = infer_fixed(q, in);
    for (int i = 0; i < 10; ++i)
        EXPECT_EQ(infer_fixed(q, in), a);
}

TEST(InferFixed, ErrorsOnBadInput) {
    const auto q = quantize(build_network_a());
    const double too_big[] = {40000.0, 0, 0, 0, 0};
    const double short_in[] = {0.0, 0.0};
    EXPECT_THROW(infer_fixed(q, too_big), RangeError);
    EXPECT_THROW(infer_fixed(q, short_in), ShapeError);
}

TEST(InferFixed, ZeroNetGivesZero) {
    const double in[] = {1, 2, 3, 4, 5};
    for (double v : infer_fixed(quantize(build_network_a()), in))
        EXPECT_EQ(v, 0.0);
}

}  // namespace
