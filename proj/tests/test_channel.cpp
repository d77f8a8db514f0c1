// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ldacs/channel.hpp"
#include "test_util.hpp"

#include <cmath>
#include <limits>

using namespace ldacs;

TEST_CASE("profile validation") {
    for (const char* name : {"awgn", "enr", "apt", "tma"}) {
        const auto p = ChannelProfile::by_name(name);
        p.validate();
        double total = 0.0;
        for (const auto& t : p.taps) total += t.power;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)ChannelProfile::by_name("urban"), std::invalid_argument);

    ChannelProfile bad;
    bad.taps = {{0, 0.6, FadingKind::rayleigh, 0.0}, {0, 0.4, FadingKind::rayleigh, 0.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // duplicate delay
}

TEST_CASE("channel draws have the right statistics") {
    SUBCASE("awgn profile is a unit tap") {
        Rng rng(1);
        const auto c = draw_channel(ChannelProfile::awgn_only(), rng);
        REQUIRE(c.size() == 1);
        CHECK(std::abs(c[0] - cplx{1.0, 0.0}) < 1e-6);
    }
    SUBCASE("rayleigh tap power is exponential with unit mean") {
        ChannelProfile p;
        p.name = "ray1";
        p.taps = {{0, 1.0, FadingKind::rayleigh, 0.0}};
        Rng rng(7);
        const int n = 100000;
        double mean = 0.0, below_ln2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = std::norm(draw_channel(p, rng)[0]);
            mean += g;
            below_ln2 += g < std::log(2.0) ? 1.0 : 0.0;
        }
        mean /= n;
        below_ln2 /= n; // exponential median is ln 2
        CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
        CHECK(below_ln2 == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("rician K = 15 dB splits LOS and scatter power correctly") {
        ChannelProfile p;
        p.name = "rice1";
        p.taps = {{0, 1.0, FadingKind::rician, 15.0}};
        Rng rng(9);
        const int n = 100000;
        cplx mean{};
        double power = 0.0;
        for (int i = 0; i < n; ++i) {
            const cplx g = draw_channel(p, rng)[0];
            mean += g;
            power += std::norm(g);
        }
        mean /= static_cast<double>(n);
        power /= n;
        const double k_lin = std::pow(10.0, 1.5);
        const double los_power = std::norm(mean);
        const double scatter = power - los_power;
        CHECK(power == doctest::Approx(1.0).epsilon(0.02));
        CHECK(los_power / scatter == doctest::Approx(k_lin).epsilon(0.05));
    }
}

TEST_CASE("apply_channel") {
    std::vector<cplx> x{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    SUBCASE("unit tap is the identity") {
        const std::vector<cplx> taps{{1.0, 0.0}};
        CHECK(apply_channel(taps, x) == x);
    }
    SUBCASE("delayed tap shifts by one sample") {
        const std::vector<cplx> taps{{0.0, 0.0}, {1.0, 0.0}};
        const auto y = apply_channel(taps, x);
        CHECK(y[0] == cplx{});
        CHECK(y[1] == x[0]);
        CHECK(y[3] == x[2]);
    }
    SUBCASE("per-subcarrier gain matches the tap DFT") {
        Rng rng(17);
        const auto p = ChannelProfile::ldacs_apt();
        const auto taps = draw_channel(p, rng);
        const int big = 4096;
        std::vector<cplx> tone(big);
        for (int k : {3, 17, -9}) {
            const double f = 2.0 * k / 256.0;
            for (int n = 0; n < big; ++n) {
                tone[n] = std::polar(1.0, M_PI * f * n);
            }
            const auto y = apply_channel(taps, tone);
            // steady-state gain (skip the transient)
            const cplx g = y[100] / tone[100];
            const cplx expect = testutil::dtft_ref(std::span<const cplx>(taps), f); // oracle
            CHECK(std::abs(g - expect) < 1e-9);
        }
    }
}

TEST_CASE("block fading redraws taps per block") {
    ChannelProfile p;
    p.name = "ray1";
    p.taps = {{0, 1.0, FadingKind::rayleigh, 0.0}};
    Rng rng(23);
    std::vector<cplx> x(1000, cplx{1.0, 0.0});
    const auto out = apply_block_fading(p, x, 100, 0, rng);
    REQUIRE(out.block_taps.size() == 10);
    // constant within a block, different across blocks
    CHECK(out.samples[5] == out.samples[95]);
    CHECK(out.samples[105] != out.samples[95]);
}

TEST_CASE("dme generator") {
    DmeConfig cfg;
    SUBCASE("zero rate generates silence") {
        cfg.pulse_pair_rate = 0.0;
        Rng rng(3);
        for (const auto& v : generate_dme(5000, cfg, rng)) CHECK(v == cplx{});
    }
    SUBCASE("pulse pair peaks are spaced by the configured gap") {
        cfg.carrier_offsets_hz = {0.0};
        const auto pair = dme_pulse_pair(200, 40.0, cfg, 0.0);
        // find the two local maxima of |s|
        std::vector<std::size_t> peaks;
        for (std::size_t i = 1; i + 1 < pair.size(); ++i) {
            if (std::abs(pair[i]) > std::abs(pair[i - 1]) &&
                std::abs(pair[i]) >= std::abs(pair[i + 1]) && std::abs(pair[i]) > 0.5) {
                peaks.push_back(i);
            }
        }
        REQUIRE(peaks.size() == 2);
        CHECK(peaks[1] - peaks[0] == 48); // 12 us at 4 MHz
    }
    SUBCASE("half-amplitude width matches the configuration") {
        cfg.carrier_offsets_hz = {0.0};
        const auto pair = dme_pulse_pair(200, 40.0, cfg, 0.0);
        // amplitude at +-1.75 us (7 samples) from the peak is 0.5
        CHECK(std::abs(pair[40]) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(pair[47]) == doctest::Approx(0.5).epsilon(0.01));
    }
    SUBCASE("average power approaches the configured ratio") {
        cfg.power_ratio_db = -3.0;
        Rng rng(11);
        const std::size_t n = 4000000; // one second at 4 MHz
        const auto s = generate_dme(n, cfg, rng);
        const double p = mean_power(std::span<const cplx>(s));
        CHECK(p == doctest::Approx(std::pow(10.0, -0.3)).epsilon(0.05));
    }
}

TEST_CASE("awgn") {
    Rng rng(19);
    std::vector<cplx> x(1000000, cplx{1.0, 0.0});
    SUBCASE("infinite SNR passes through") {
        const auto y = add_awgn(x, std::numeric_limits<double>::infinity(), rng);
        CHECK(y == x);
    }
    SUBCASE("measured SNR lands within 0.1 dB") {
        const double snr_db = 7.0;
        const auto y = add_awgn(x, snr_db, rng);
        double noise = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) noise += std::norm(y[i] - x[i]);
        noise /= static_cast<double>(y.size());
        const double measured = 10.0 * std::log10(1.0 / noise);
        CHECK(measured == doctest::Approx(snr_db).epsilon(0.015));
    }
    SUBCASE("components are balanced and uncorrelated") {
        const auto y = add_noise_n0(std::vector<cplx>(1000000, cplx{}), 2.0, rng);
        double vr = 0.0, vi = 0.0, cross = 0.0;
        for (const auto& v : y) {
            vr += v.real() * v.real();
            vi += v.imag() * v.imag();
            cross += v.real() * v.imag();
        }
        vr /= static_cast<double>(y.size());
        vi /= static_cast<double>(y.size());
        cross /= static_cast<double>(y.size());
        CHECK(vr == doctest::Approx(1.0).epsilon(0.02));
        CHECK(vi == doctest::Approx(1.0).epsilon(0.02));
        CHECK(std::abs(cross) < 0.01);
    }
    SUBCASE("zero-power input is rejected") {
        const std::vector<cplx> z(16, cplx{});
        CHECK_THROWS_AS((void)add_awgn(z, 10.0, rng), std::invalid_argument);
    }
}

TEST_CASE("received signal composition is additive") {
    // r = channel(x) + channel_d(dme) + noise, each term isolated
    Rng rng(29);
    const auto p = ChannelProfile::ldacs_enr();
    std::vector<cplx> x(2000);
    for (auto& v : x) v = rng.cgaussian();
    DmeConfig dme;
    dme.power_ratio_db = 0.0;

    Rng r1(100), r2(200), r3(300);
    const auto cl = draw_channel(p, r1);
    const auto cd = draw_channel(p, r1);
    const auto sig = apply_channel(cl, x);
    const auto s = generate_dme(x.size(), dme, r2);
    const auto intf = apply_channel(cd, s);
    auto noise = add_noise_n0(std::vector<cplx>(x.size(), cplx{}), 0.1, r3);

    std::vector<cplx> r(x.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sig[i] + intf[i] + noise[i];
    // reconstruct with identical seeds
    Rng r1b(100), r2b(200), r3b(300);
    const auto clb = draw_channel(p, r1b);
    const auto cdb = draw_channel(p, r1b);
    const auto sigb = apply_channel(clb, x);
    const auto sb = generate_dme(x.size(), dme, r2b);
    const auto intfb = apply_channel(cdb, sb);
    const auto noiseb = add_noise_n0(std::vector<cplx>(x.size(), cplx{}), 0.1, r3b);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r[i] == sigb[i] + intfb[i] + noiseb[i]); // determinism, exact
    }
}
