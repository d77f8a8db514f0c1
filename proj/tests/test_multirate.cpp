// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ldacs/multirate.hpp"
#include "test_util.hpp"

#include <random>

using namespace ldacs;

TEST_CASE("identity filter passes samples through") {
    FilterSpec s;
    s.order = 2;
    s.passband_edge = 0.4;
    s.stopband_edge = 0.6;
    // h = [0, 1, 0] delays by one sample; h = [1] is the true identity
    const auto f = filter_from_unique(s, std::vector<double>{0.0, 1.0});
    std::vector<double> x{1.0, -2.0, 3.0, 0.5};
    const auto y = fir_process(f, x);
    REQUIRE(y.size() == 4);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 1.0);
    CHECK(y[2] == -2.0);
}

TEST_CASE("streaming equals batch bit-for-bit") {
    const auto c = build_cascade(498);
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(1000);
    for (auto& v : x) v = dist(gen);

    const auto full = cascade_process(c, x);

    CascadeFilter<double> stream(c);
    std::vector<double> split;
    const std::size_t cuts[] = {0, 1, 7, 130, 131, 500, 1000};
    for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
        const auto part = stream.process(
            std::span<const double>(x).subspan(cuts[i], cuts[i + 1] - cuts[i]));
        split.insert(split.end(), part.begin(), part.end());
    }
    REQUIRE(split.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(split[i] == full[i]);
}

TEST_CASE("expanded impulse response") {
    const auto c = build_cascade(498);
    const auto h = expand_impulse_response(c);
    CHECK(h.size() == 171); // (26*4) + (26*2) + 14 + 1
    for (std::size_t k = 0; k < h.size(); ++k) {
        CHECK(std::abs(h[k] - h[h.size() - 1 - k]) < 1e-15);
    }
}

TEST_CASE("cascade processing matches direct convolution") {
    const auto c = build_cascade(498);
    const auto h = expand_impulse_response(c);

    SUBCASE("unit impulse reproduces the expanded response") {
        std::vector<double> x(200, 0.0);
        x[0] = 1.0;
        const auto y = cascade_process(c, x);
        for (std::size_t k = 0; k < h.size(); ++k) {
            CHECK(std::abs(y[k] - h[k]) < 1e-12);
        }
    }
    SUBCASE("delayed impulse peaks at the group delay") {
        std::vector<double> x(400, 0.0);
        x[0] = 1.0;
        const auto y = cascade_process(c, x);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < y.size(); ++i) {
            if (std::abs(y[i]) > std::abs(y[peak])) peak = i;
        }
        CHECK(peak == 85);
    }
    SUBCASE("zero input yields zero output") {
        const std::vector<double> x(64, 0.0);
        for (double v : cascade_process(c, x)) CHECK(v == 0.0);
    }
    SUBCASE("random input matches the single expanded convolution") {
        std::mt19937_64 gen(99);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> x(10000);
        for (auto& v : x) v = dist(gen);
        const auto y = cascade_process(c, x);
        const auto ref = testutil::conv_ref(x, h); // oracle
        double worst = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            worst = std::max(worst, std::abs(y[i] - ref[i]));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("floating path is linear") {
    const auto c = build_cascade(342);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(500), y(500), mix(500);
    const double a = 1.7, b = -0.4;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = dist(gen);
        y[i] = dist(gen);
        mix[i] = a * x[i] + b * y[i];
    }
    const auto fx = cascade_process(c, x);
    const auto fy = cascade_process(c, y);
    const auto fm = cascade_process(c, mix);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double expect = a * fx[i] + b * fy[i];
        CHECK(std::abs(fm[i] - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("zero-stuffed taps cost no arithmetic") {
    const auto c = build_cascade(498);
    // stage 1: order 26 at M=4 keeps 27 nonzero taps out of 105
    const auto taps = c.stages[0].nonzero_taps();
    CHECK(taps.size() == 27);
    for (const auto& [idx, v] : taps) CHECK(idx % 4 == 0);
    // stage 2: halfband at M=2 keeps 15 (14 coefficient taps + center)
    CHECK(c.stages[1].nonzero_taps().size() == 15);
}
