// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "ldacs/dsp_util.hpp"
#include "ldacs/rng.hpp"

namespace ldacs {

enum class FadingKind { rayleigh, rician };

struct ChannelTap {
    int delay_samples = 0;
    double power = 1.0; // average linear power
    FadingKind fading = FadingKind::rayleigh;
    double rician_k_db = 0.0; // LOS-to-scatter ratio, rician only
};

/// Tapped-delay-line profile; taps are redrawn once per OFDM symbol (block
/// fading) and the average realization power is 1.
struct ChannelProfile {
    std::string name = "custom";
    std::vector<ChannelTap> taps;
    bool block_fading = true;

    void validate() const;
    int max_delay() const;

    static ChannelProfile awgn_only();
    static ChannelProfile ldacs_enr();
    static ChannelProfile ldacs_apt();
    static ChannelProfile ldacs_tma();
    static ChannelProfile by_name(const std::string& name);
};

/// One tap-vector realization c[delay], length max_delay()+1.
std::vector<cplx> draw_channel(const ChannelProfile& profile, Rng& rng);

/// Linear convolution with a fixed tap vector (length-preserving, causal).
std::vector<cplx> apply_channel(std::span<const cplx> taps, std::span<const cplx> x);

/// Block-fading application: an independent tap realization per block of
/// `block_len` samples, blocks offset by `block_offset` (so fading switches
/// align with filtered symbol boundaries). Returns output and realizations.
struct FadedSignal {
    std::vector<cplx> samples;
    std::vector<std::vector<cplx>> block_taps; // one realization per block
};
FadedSignal apply_block_fading(const ChannelProfile& profile, std::span<const cplx> x,
                               int block_len, int block_offset, Rng& rng);

// --- DME interference -------------------------------------------------------

/// Gaussian pulse-pair interferer model; one Poisson arrival stream per
/// configured carrier offset. Power is set analytically from the pulse
/// energy and pair rate.
struct DmeConfig {
    double pulse_half_width_us = 3.5; // full width at half amplitude
    double pair_spacing_us = 12.0;
    double pulse_pair_rate = 2700.0; // pairs per second per offset
    std::vector<double> carrier_offsets_hz = {-500e3, 500e3};
    double power_ratio_db = 0.0; // average power relative to a unit-power signal

    void validate() const;
    double sigma_seconds() const;
    /// Pulse amplitude that makes the expected average power equal
    /// 10^(power_ratio_db/10).
    double pulse_amplitude() const;
};

std::vector<cplx> generate_dme(std::size_t n_samples, const DmeConfig& cfg, Rng& rng,
                               double fs_hz = 4e6);

/// A single pulse pair starting at sample t0 (deterministic building block
/// of the generator).
std::vector<cplx> dme_pulse_pair(std::size_t n_samples, double t0_samples,
                                 const DmeConfig& cfg, double carrier_offset_hz,
                                 double fs_hz = 4e6);

// --- Noise -------------------------------------------------------------------

/// Complex AWGN at the SNR measured against the input's average power.
/// +inf SNR returns the input unchanged. Zero-power input is rejected.
std::vector<cplx> add_awgn(std::span<const cplx> x, double snr_db, Rng& rng);

/// Complex AWGN with explicit per-sample variance n0 (both components get
/// n0/2).
std::vector<cplx> add_noise_n0(std::span<const cplx> x, double n0, Rng& rng);

} // namespace ldacs
