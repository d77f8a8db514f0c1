// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldacs/channel.hpp"
#include "ldacs/dsp_util.hpp"
#include "ldacs/fft.hpp"
#include "ldacs/filter_design.hpp"

namespace ldacs {

// --- PSD estimation -----------------------------------------------------------

struct PsdEstimate {
    std::vector<double> freq_norm; // [-1, 1) in Nyquist units, ascending
    std::vector<double> freq_hz;
    std::vector<double> psd_db; // peak-normalized
    double total_power = 0.0;   // integrated power before normalization
    double peak_db_raw = 0.0;   // peak density before normalization (dB)
    int segments = 0;
    int segment_length = 0;
    double sample_rate_hz = 0.0;
};

/// Averaged modified periodograms (Hann window), density normalized so the
/// mean over bins equals the signal's average power.
PsdEstimate welch_psd(std::span<const cplx> x, int segment_length, double overlap,
                      Fft& fft, double fs_hz = kSampleRateHz);

/// Worst (highest) PSD level outside [-edge, +edge] relative to the in-band
/// peak, as a positive attenuation. Floors at 200 dB.
double oob_attenuation_db(const PsdEstimate& psd, double band_edge_norm);

/// Folds the two-sided PSD onto a uniform offset grid over [0, 1] (max of
/// the +f/-f sides), peak-normalized; suitable for verify_mask.
std::vector<double> psd_offset_envelope(const PsdEstimate& psd, int grid_size);

// --- BER ------------------------------------------------------------------------

struct BerPoint {
    double snr_db = 0.0;
    long long bit_errors = 0;
    long long bits = 0;
    double ber = 0.0;
    double ci95_half_width = 0.0; // Wilson interval
};

BerPoint measure_ber(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx);

/// Square M-QAM bit error probability for one subcarrier:
///   (4/log2 M)(1 - 1/sqrt(M)) * sum_i Q((2i-1) sqrt(3 log2(M) g λ snr_b /
///   (M-1))), with the effective SNR degraded by interference power.
/// snr_linear is the per-bit SNR; interference enters as extra noise power
/// relative to the unit signal.
double theoretical_ber_mqam(int order, double snr_linear, double interference_power = 0.0,
                            double filter_gain_sq = 1.0, double channel_gain = 1.0,
                            double interference_channel_gain = 1.0);

/// Average over per-subcarrier filter gains (flat channel).
double theoretical_ber_mqam_subcarriers(int order, double snr_linear,
                                        std::span<const double> filter_gains_sq,
                                        double interference_power = 0.0);

/// Fading expectation by Monte-Carlo over channel realizations (the signal
/// and interferer draw independent channels from the same profile family).
double theoretical_ber_mqam_fading(int order, double snr_linear,
                                   const ChannelProfile& signal_channel, Rng& rng,
                                   int draws = 100000, double interference_power = 0.0,
                                   const ChannelProfile* interferer_channel = nullptr);

// --- Complexity reporting ---------------------------------------------------------

struct ComplexityRow {
    std::string name;
    int multipliers = 0;
    double group_delay_samples = 0.0;
    double group_delay_us = 0.0;
};

struct ComplexityTable {
    std::vector<ComplexityRow> rows;
    /// Multiplier savings of row `a` relative to row `b`, in percent.
    double savings_percent(std::size_t a, std::size_t b) const;
    std::string to_text() const;
    std::string to_csv() const;
};

ComplexityTable complexity_report(std::span<const ComplexityRow> rows);

} // namespace ldacs
