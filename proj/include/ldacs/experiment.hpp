// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldacs/analysis.hpp"
#include "ldacs/channel.hpp"
#include "ldacs/fixed_point.hpp"
#include "ldacs/multirate.hpp"
#include "ldacs/ofdm.hpp"

namespace ldacs {

inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentConfig {
    std::string kind = "design"; // design|psd|ber|wlsweep|complexity|maskcheck
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    // signal
    int bandwidth_khz = 498;
    std::vector<std::string> waveforms = {"ofdm", "lref_ofdm"};
    int qam_order = 4;
    int fft_size = 64;
    int cp_length = 11;
    int oversample = 4;
    int active_subcarriers = 0; // 0 = derive from the bandwidth
    int pilot_spacing = 7;
    int excluded_edge_subcarriers = 0;

    // channel
    std::string channel = "awgn";
    bool dme_enabled = false;
    double dme_power_db = 0.0;
    std::vector<double> dme_offsets_hz = {-500e3, 500e3};
    double phase_impairment_rad = 0.0; // per-symbol random-walk std
    bool pilot_correction = false;

    // ber
    std::vector<double> snr_db = {0, 2, 4, 6, 8, 10};
    long long bits_per_point = 1000000;
    int symbols_per_trial = 20;

    // wl
    std::string wl_scenario = "transceiver"; // "filter" or "transceiver"
    std::vector<int> word_lengths = {8, 16, 32};

    // psd
    int psd_segment = 1024;
    double psd_overlap = 0.5;
    int psd_symbols = 200;

    static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
    static ExperimentConfig from_file(const std::string& path);
    void apply(const std::map<std::string, std::string>& overrides);
    std::string to_manifest() const;
    void validate() const;
};

/// Derived per-bandwidth active-subcarrier count that keeps the occupied
/// band inside the filter passband.
int auto_active_subcarriers(int bw_khz, int fft_size, int oversample);

OfdmConfig make_ofdm_config(const ExperimentConfig& cfg, Waveform w);

// --- BER sweep ----------------------------------------------------------------

struct BerSweepResult {
    Waveform waveform;
    std::vector<BerPoint> points;
};

/// Monte-Carlo BER for one waveform over the configured SNR grid. snr_db is
/// per-bit SNR (Eb/N0) at the demodulator. Trials are seeded by
/// (seed, snr index, trial index), so the aggregate is order-independent.
BerSweepResult run_ber_sweep(const ExperimentConfig& cfg, Waveform w);

// --- Whole experiments -----------------------------------------------------------

/// Runs the configured experiment, writes result files plus manifest.txt to
/// cfg.out_dir. Returns 0 on success. Throws std::invalid_argument for
/// configuration errors and std::runtime_error for runtime failures.
int run_experiment(const ExperimentConfig& cfg);

/// Joins result tables of compatible runs (by manifest paths).
std::string compare_runs(const std::vector<std::string>& manifest_paths);

} // namespace ldacs
