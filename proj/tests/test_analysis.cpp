// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ldacs/analysis.hpp"
#include "ldacs/experiment.hpp"
#include "ldacs/ofdm.hpp"
#include "ldacs/rng.hpp"

#include <cmath>

using namespace ldacs;

TEST_CASE("welch psd") {
    Fft fft;
    SUBCASE("pure tone peaks at its frequency at 0 dB") {
        const double f0 = 0.25; // Nyquist units
        std::vector<cplx> x(1 << 16);
        for (std::size_t n = 0; n < x.size(); ++n) {
            x[n] = std::polar(1.0, M_PI * f0 * static_cast<double>(n));
        }
        const auto psd = welch_psd(x, 1024, 0.5, fft);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < psd.psd_db.size(); ++i) {
            if (psd.psd_db[i] > psd.psd_db[peak]) peak = i;
        }
        CHECK(psd.psd_db[peak] == 0.0);
        CHECK(psd.freq_norm[peak] == doctest::Approx(f0).epsilon(0.01));
    }
    SUBCASE("white noise is flat within +-1.5 dB over 100+ segments") {
        Rng rng(5);
        std::vector<cplx> x(120 * 512 + 1024);
        for (auto& v : x) v = rng.cgaussian();
        const auto psd = welch_psd(x, 1024, 0.5, fft);
        CHECK(psd.segments >= 100);
        double lo = 1e9, hi = -1e9;
        for (double v : psd.psd_db) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi - lo < 3.0); // +-1.5 dB around the mean level
    }
    SUBCASE("total power matches the time-domain power within 1%") {
        Rng rng(6);
        std::vector<cplx> x(300000);
        for (auto& v : x) v = 0.7 * rng.cgaussian();
        const auto psd = welch_psd(x, 1024, 0.5, fft);
        const double pt = mean_power(std::span<const cplx>(x));
        CHECK(psd.total_power == doctest::Approx(pt).epsilon(0.01));
    }
    SUBCASE("short input is rejected") {
        const std::vector<cplx> x(100);
        CHECK_THROWS_AS((void)welch_psd(x, 1024, 0.5, fft), std::invalid_argument);
    }
    SUBCASE("unfiltered ofdm sidelobes decay like the sinc envelope") {
        ExperimentConfig cfg;
        cfg.bandwidth_khz = 498;
        const OfdmConfig ocfg = make_ofdm_config(cfg, Waveform::ofdm);
        Rng rng(8);
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(ocfg.bits_per_symbol()) * 300);
        for (auto& b : bits) b = rng.bit() ? 1 : 0;
        const auto mod = ofdm_modulate(make_frame(bits, ocfg), ocfg, fft);
        const auto psd = welch_psd(mod.samples, 1024, 0.5, fft);
        // first sidelobe region: a few dB-tens below peak, far from the floor
        double near = -300.0, far = -300.0;
        for (std::size_t i = 0; i < psd.freq_norm.size(); ++i) {
            const double f = std::abs(psd.freq_norm[i]);
            if (f > 0.125 && f < 0.16) near = std::max(near, psd.psd_db[i]);
            if (f > 0.5 && f < 0.7) far = std::max(far, psd.psd_db[i]);
        }
        CHECK(near > -30.0); // sinc-like near sidelobes
        CHECK(near < -8.0);
        CHECK(far < near - 8.0); // decays with offset
    }
}

TEST_CASE("oob attenuation") {
    Fft fft;
    SUBCASE("all-zero out-of-band floors the attenuation") {
        std::vector<cplx> x(1 << 15);
        for (std::size_t n = 0; n < x.size(); ++n) {
            x[n] = std::polar(1.0, M_PI * 0.01 * static_cast<double>(n));
        }
        const auto psd = welch_psd(x, 1024, 0.5, fft);
        CHECK(oob_attenuation_db(psd, 0.5) > 100.0);
    }
    SUBCASE("edges outside the grid are rejected") {
        std::vector<cplx> x(4096, cplx{1.0, 0.0});
        const auto psd = welch_psd(x, 1024, 0.5, fft);
        CHECK_THROWS_AS((void)oob_attenuation_db(psd, 1.5), std::invalid_argument);
    }
}

TEST_CASE("theoretical M-QAM BER") {
    SUBCASE("qpsk reduces to Q(sqrt(2 snr))") {
        const double snr = std::pow(10.0, 9.6 / 10.0);
        const double p = theoretical_ber_mqam(4, snr);
        CHECK(p == doctest::Approx(q_func(std::sqrt(2.0 * snr))).epsilon(1e-12));
        CHECK(p == doctest::Approx(1e-5).epsilon(0.15));
    }
    SUBCASE("limits") {
        CHECK(theoretical_ber_mqam(4, 1e12) < 1e-30);
        // overwhelming interference drives QPSK to the 0.5 asymptote
        CHECK(theoretical_ber_mqam(4, 100.0, 1e9) == doctest::Approx(0.5).epsilon(1e-3));
    }
    SUBCASE("monotone in snr and interference") {
        double prev = 1.0;
        for (double snr_db = -2.0; snr_db <= 14.0; snr_db += 1.0) {
            const double p = theoretical_ber_mqam(4, std::pow(10.0, snr_db / 10.0));
            CHECK(p < prev);
            prev = p;
        }
        prev = 0.0;
        for (double ip : {0.0, 0.01, 0.1, 1.0, 10.0}) {
            const double p = theoretical_ber_mqam(16, 10.0, ip);
            CHECK(p >= prev);
            prev = p;
        }
    }
    SUBCASE("subcarrier averaging") {
        const std::vector<double> gains{1.0, 1.0, 0.25};
        const double avg = theoretical_ber_mqam_subcarriers(4, 10.0, gains);
        const double direct = (2.0 * theoretical_ber_mqam(4, 10.0) +
                               theoretical_ber_mqam(4, 10.0, 0.0, 0.25)) /
                              3.0;
        CHECK(avg == doctest::Approx(direct).epsilon(1e-12));
    }
    SUBCASE("fading average stays between the AWGN bound and 0.5") {
        Rng rng(55);
        const double snr = std::pow(10.0, 8.0 / 10.0);
        const double awgn = theoretical_ber_mqam(4, snr);
        const double faded =
            theoretical_ber_mqam_fading(4, snr, ChannelProfile::ldacs_apt(), rng, 100000);
        CHECK(faded > awgn); // fading can only hurt at this operating point
        CHECK(faded < 0.5);
    }
    SUBCASE("non-square order is rejected") {
        CHECK_THROWS_AS((void)theoretical_ber_mqam(8, 10.0), std::invalid_argument);
    }
}

TEST_CASE("measure_ber") {
    std::vector<std::uint8_t> a(100000, 0), b(100000, 0);
    SUBCASE("identical streams") {
        const auto p = measure_ber(a, b);
        CHECK(p.ber == 0.0);
        CHECK(p.bit_errors == 0);
    }
    SUBCASE("complemented streams") {
        for (auto& v : b) v = 1;
        CHECK(measure_ber(a, b).ber == 1.0);
    }
    SUBCASE("37 flipped bits of 1e5") {
        b = a;
        for (int i = 0; i < 37; ++i) b[static_cast<std::size_t>(i) * 2421] ^= 1;
        const auto p = measure_ber(a, b);
        CHECK(p.ber == doctest::Approx(3.7e-4).epsilon(1e-12));
        CHECK(p.ci95_half_width > 0.0);
        CHECK(p.ci95_half_width < 2e-4);
    }
    SUBCASE("length mismatch") {
        b.pop_back();
        CHECK_THROWS_AS((void)measure_ber(a, b), std::invalid_argument);
    }
}

TEST_CASE("complexity table") {
    const auto c = build_cascade(498);
    const auto mult = multiplier_count(c);
    std::vector<ComplexityRow> rows{
        {"proposed", mult.total, static_cast<double>(c.group_delay_samples()),
         c.group_delay_us()},
        {"single-stage", 101, 100.0, 25.0},
    };
    const auto table = complexity_report(rows);
    CHECK(table.rows[0].multipliers == 25);
    CHECK(table.rows[0].group_delay_samples == 85.0);
    CHECK(table.rows[0].group_delay_us == doctest::Approx(21.25));
    CHECK(table.savings_percent(0, 1) == doctest::Approx(75.25).epsilon(0.01));
    CHECK(table.to_csv().find("proposed,25,85,21.25") != std::string::npos);
}
