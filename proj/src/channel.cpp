// SPDX-License-Identifier: Apache-2.0
#include "ldacs/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldacs {

void ChannelProfile::validate() const {
    if (taps.empty()) throw std::invalid_argument("channel profile has no taps");
    double total = 0.0;
    int prev_delay = -1;
    for (const auto& t : taps) {
        if (t.delay_samples <= prev_delay) {
            throw std::invalid_argument("tap delays must be strictly increasing");
        }
        if (t.power <= 0.0) throw std::invalid_argument("tap power must be positive");
        prev_delay = t.delay_samples;
        total += t.power;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("tap powers must sum to 1");
    }
}

int ChannelProfile::max_delay() const {
    int d = 0;
    for (const auto& t : taps) d = std::max(d, t.delay_samples);
    return d;
}

ChannelProfile ChannelProfile::awgn_only() {
    ChannelProfile p;
    p.name = "awgn";
    p.taps = {{0, 1.0, FadingKind::rician, 300.0}}; // effectively a pure LOS tap
    return p;
}

// Tap sets are representative stand-ins for the published LDACS channel
// characterizations (delays quantized to the 4 MHz sample grid).
ChannelProfile ChannelProfile::ldacs_enr() {
    ChannelProfile p;
    p.name = "enr";
    p.taps = {{0, 0.95, FadingKind::rician, 15.0}, {1, 0.05, FadingKind::rayleigh, 0.0}};
    return p;
}

ChannelProfile ChannelProfile::ldacs_tma() {
    ChannelProfile p;
    p.name = "tma";
    p.taps = {{0, 0.90, FadingKind::rician, 10.0}, {4, 0.10, FadingKind::rayleigh, 0.0}};
    return p;
}

ChannelProfile ChannelProfile::ldacs_apt() {
    ChannelProfile p;
    p.name = "apt";
    p.taps = {{0, 0.80, FadingKind::rician, 7.0},
              {2, 0.15, FadingKind::rayleigh, 0.0},
              {6, 0.05, FadingKind::rayleigh, 0.0}};
    return p;
}

ChannelProfile ChannelProfile::by_name(const std::string& name) {
    if (name == "awgn") return awgn_only();
    if (name == "enr") return ldacs_enr();
    if (name == "apt") return ldacs_apt();
    if (name == "tma") return ldacs_tma();
    throw std::invalid_argument("unknown channel profile: " + name);
}

std::vector<cplx> draw_channel(const ChannelProfile& profile, Rng& rng) {
    profile.validate();
    std::vector<cplx> c(static_cast<std::size_t>(profile.max_delay()) + 1, cplx{});
    for (const auto& t : profile.taps) {
        const double amp = std::sqrt(t.power);
        cplx gain;
        if (t.fading == FadingKind::rayleigh) {
            gain = amp * rng.cgaussian();
        } else {
            const double k = std::pow(10.0, t.rician_k_db / 10.0);
            const double los = std::sqrt(k / (k + 1.0));
            const double scat = std::sqrt(1.0 / (k + 1.0));
            gain = amp * (cplx{los, 0.0} + scat * rng.cgaussian());
        }
        c[static_cast<std::size_t>(t.delay_samples)] = gain;
    }
    return c;
}

std::vector<cplx> apply_channel(std::span<const cplx> taps, std::span<const cplx> x) {
    std::vector<cplx> y(x.size(), cplx{});
    for (std::size_t l = 0; l < taps.size(); ++l) {
        if (taps[l] == cplx{}) continue;
        const cplx g = taps[l];
        for (std::size_t n = l; n < x.size(); ++n) y[n] += g * x[n - l];
    }
    return y;
}

FadedSignal apply_block_fading(const ChannelProfile& profile, std::span<const cplx> x,
                               int block_len, int block_offset, Rng& rng) {
    profile.validate();
    if (block_len <= 0) throw std::invalid_argument("block length must be positive");
    FadedSignal out;
    out.samples.assign(x.size(), cplx{});
    const int n = static_cast<int>(x.size());
    const int n_blocks = (n - block_offset + block_len - 1) / block_len + 1;
    out.block_taps.reserve(static_cast<std::size_t>(std::max(n_blocks, 1)));

    auto block_of = [&](int idx) {
        const int rel = idx - block_offset;
        return rel < 0 ? 0 : rel / block_len;
    };
    const int total_blocks = block_of(n - 1) + 1;
    for (int b = 0; b < total_blocks; ++b) out.block_taps.push_back(draw_channel(profile, rng));

    for (int i = 0; i < n; ++i) {
        const auto& taps = out.block_taps[static_cast<std::size_t>(block_of(i))];
        cplx acc{};
        const int lmax = std::min<int>(static_cast<int>(taps.size()) - 1, i);
        for (int l = 0; l <= lmax; ++l) acc += taps[static_cast<std::size_t>(l)] * x[i - l];
        out.samples[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

// --- DME ----------------------------------------------------------------------

void DmeConfig::validate() const {
    if (pulse_half_width_us <= 0.0) throw std::invalid_argument("pulse width must be positive");
    if (pair_spacing_us <= pulse_half_width_us) {
        throw std::invalid_argument("pair spacing must exceed the pulse width");
    }
    if (pulse_pair_rate < 0.0) throw std::invalid_argument("pulse pair rate must be >= 0");
    if (carrier_offsets_hz.empty()) throw std::invalid_argument("no carrier offsets");
}

double DmeConfig::sigma_seconds() const {
    // full width at half amplitude = 2*sqrt(2 ln 2) * sigma
    return pulse_half_width_us * 1e-6 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

double DmeConfig::pulse_amplitude() const {
    if (pulse_pair_rate <= 0.0) return 0.0;
    // E[P] = n_offsets * rate * 2 * A^2 * sigma * sqrt(pi)  (pair overlap is
    // negligible at standard spacings)
    const double target = std::pow(10.0, power_ratio_db / 10.0);
    const double per_amp = static_cast<double>(carrier_offsets_hz.size()) * pulse_pair_rate *
                           2.0 * sigma_seconds() * std::sqrt(M_PI);
    return std::sqrt(target / per_amp);
}

std::vector<cplx> dme_pulse_pair(std::size_t n_samples, double t0_samples,
                                 const DmeConfig& cfg, double carrier_offset_hz,
                                 double fs_hz) {
    cfg.validate();
    std::vector<cplx> out(n_samples, cplx{});
    const double sigma_samp = cfg.sigma_seconds() * fs_hz;
    const double spacing_samp = cfg.pair_spacing_us * 1e-6 * fs_hz;
    const double w = 2.0 * M_PI * carrier_offset_hz / fs_hz;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double d1 = (static_cast<double>(i) - t0_samples) / sigma_samp;
        const double d2 = (static_cast<double>(i) - t0_samples - spacing_samp) / sigma_samp;
        const double g = std::exp(-0.5 * d1 * d1) + std::exp(-0.5 * d2 * d2);
        out[i] = g * cplx{std::cos(w * static_cast<double>(i)),
                          std::sin(w * static_cast<double>(i))};
    }
    return out;
}

std::vector<cplx> generate_dme(std::size_t n_samples, const DmeConfig& cfg, Rng& rng,
                               double fs_hz) {
    cfg.validate();
    std::vector<cplx> out(n_samples, cplx{});
    if (cfg.pulse_pair_rate <= 0.0 || n_samples == 0) return out;

    const double sigma_samp = cfg.sigma_seconds() * fs_hz;
    const double spacing_samp = cfg.pair_spacing_us * 1e-6 * fs_hz;
    const double amp = cfg.pulse_amplitude();
    const double support = 6.0 * sigma_samp; // pulse tail extent worth rendering
    const double mean_gap = fs_hz / cfg.pulse_pair_rate;

    for (double f_off : cfg.carrier_offsets_hz) {
        const double w = 2.0 * M_PI * f_off / fs_hz;
        // start before 0 so boundary pulses are represented
        double t = -(spacing_samp + support);
        t += rng.exponential(mean_gap);
        while (t < static_cast<double>(n_samples) + support) {
            for (double tp : {t, t + spacing_samp}) {
                const auto lo = static_cast<long>(std::floor(tp - support));
                const auto hi = static_cast<long>(std::ceil(tp + support));
                for (long i = std::max<long>(lo, 0);
                     i <= std::min<long>(hi, static_cast<long>(n_samples) - 1); ++i) {
                    const double d = (static_cast<double>(i) - tp) / sigma_samp;
                    const double g = amp * std::exp(-0.5 * d * d);
                    out[static_cast<std::size_t>(i)] +=
                        g * cplx{std::cos(w * static_cast<double>(i)),
                                 std::sin(w * static_cast<double>(i))};
                }
            }
            t += rng.exponential(mean_gap);
        }
    }
    return out;
}

// --- Noise ----------------------------------------------------------------------

std::vector<cplx> add_noise_n0(std::span<const cplx> x, double n0, Rng& rng) {
    if (n0 < 0.0) throw std::invalid_argument("noise variance must be >= 0");
    std::vector<cplx> y(x.begin(), x.end());
    const double s = std::sqrt(n0);
    for (auto& v : y) v += s * rng.cgaussian();
    return y;
}

std::vector<cplx> add_awgn(std::span<const cplx> x, double snr_db, Rng& rng) {
    if (std::isinf(snr_db) && snr_db > 0) return {x.begin(), x.end()};
    const double p = mean_power(x);
    if (p <= 0.0) throw std::invalid_argument("cannot set an SNR for a zero-power signal");
    const double n0 = p / std::pow(10.0, snr_db / 10.0);
    return add_noise_n0(x, n0, rng);
}

} // namespace ldacs
