// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ldacs/fixed_point.hpp"
#include "ldacs/multirate.hpp"
#include "ldacs/rng.hpp"

#include <cmath>

using namespace ldacs;

TEST_CASE("quantize representable and saturating values") {
    FixedPointFormat f16{16, 14};
    QuantizeStats st;
    CHECK(quantize_value(0.5, f16, &st) == 0.5);
    CHECK(st.saturations == 0);

    FixedPointFormat f8{8, 7};
    CHECK(quantize_value(1.0, f8, &st) == doctest::Approx(127.0 / 128.0));
    CHECK(st.saturations == 1);
    CHECK(quantize_value(-1.0, f8) == -1.0); // -2^(w-1) is representable

    SUBCASE("ties round to even") {
        FixedPointFormat f{8, 4}; // lsb = 1/16
        CHECK(quantize_value(3.0 / 32.0, f) == 2.0 / 16.0);  // 1.5 lsb -> 2
        CHECK(quantize_value(5.0 / 32.0, f) == 2.0 / 16.0);  // 2.5 lsb -> 2
        CHECK(quantize_value(-3.0 / 32.0, f) == -2.0 / 16.0);
    }
    SUBCASE("format validation") {
        CHECK_THROWS_AS(FixedPointFormat(16, 16).validate(), std::invalid_argument);
        CHECK_THROWS_AS(FixedPointFormat(1, 0).validate(), std::invalid_argument);
    }
}

TEST_CASE("quantization noise power approaches lsb^2/12") {
    FixedPointFormat fmt{16, 14};
    Rng rng(42);
    const int n = 1000000;
    double err2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.uniform() - 0.5;
        const double q = quantize_value(v, fmt);
        err2 += (q - v) * (q - v);
    }
    err2 /= n;
    const double lsb = fmt.lsb();
    CHECK(err2 == doctest::Approx(lsb * lsb / 12.0).epsilon(0.1));
}

TEST_CASE("fixed-point cascade") {
    const auto c = build_cascade(498);
    Rng rng(7);
    std::vector<cplx> x(4000);
    for (auto& v : x) v = 0.3 * rng.cgaussian();
    const auto ref = cascade_process(c, std::span<const cplx>(x));

    SUBCASE("32-bit everywhere stays within 1e-6 of floating point") {
        const auto y = fixed_point_process(c, x, FixedPointFormat::for_word(32),
                                           FixedPointFormat::for_word(32));
        double worst = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            worst = std::max(worst, std::abs(y[i] - ref[i]));
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("error power decreases monotonically with word length") {
        double prev = 1e9;
        for (int wl : {8, 16, 32}) {
            const auto fmt = FixedPointFormat::for_word(wl);
            const auto y = fixed_point_process(c, x, fmt, fmt);
            double err = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) err += std::norm(y[i] - ref[i]);
            err /= static_cast<double>(y.size());
            CHECK(err < prev);
            prev = err;
        }
    }
    SUBCASE("halfband center taps stay exact shifts") {
        // with coefficients crushed to 8 bits the 0.5 taps must not move
        FixedPointCascade fp(c, FixedPointFormat::for_word(8),
                             FixedPointFormat::for_word(16));
        CHECK(fp.coefficient_stats().operations > 0);
        // a pure DC input settles to the DC gain; heavy coefficient
        // quantization shifts it only by the coefficient error
        std::vector<cplx> dc(600, cplx{0.25, 0.0});
        const auto y = fp.process(std::span<const cplx>(dc));
        CHECK(std::abs(y.back().real() - 0.25) < 0.02);
    }
    SUBCASE("saturation events are counted") {
        FixedPointFormat small{8, 6};
        QuantizeStats st;
        std::vector<cplx> loud(300, cplx{1.9, 0.0});
        (void)fixed_point_process(c, loud, small, small, &st);
        CHECK(st.saturations > 0);
    }
}
