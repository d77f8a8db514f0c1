// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldacs/dsp_util.hpp"
#include "ldacs/fft.hpp"
#include "ldacs/filter_design.hpp"

namespace ldacs {

enum class Waveform { ofdm, fofdm, lref_ofdm };

Waveform waveform_from_name(const std::string& name);
std::string waveform_name(Waveform w);

struct OfdmConfig {
    int fft_size = 64;           // K
    int active_subcarriers = 50; // even; split around a null DC carrier
    int cp_length = 11;          // base-rate samples
    int oversample = 4;
    int qam_order = 4;  // {4, 16, 64}
    int pilot_spacing = 7; // every n-th active subcarrier carries a pilot (0 = none)
    Waveform waveform = Waveform::ofdm;
    int bandwidth_khz = 498;
    int excluded_edge_subcarriers = 0; // per side, dropped from BER accounting

    void validate() const;
    int output_fft_size() const { return fft_size * oversample; }
    int samples_per_symbol() const { return oversample * (fft_size + cp_length); }

    /// Signed subcarrier indices (base-rate bins), DC excluded, ascending.
    std::vector<int> active_indices() const;
    /// Positions into the active list that carry pilots.
    std::vector<int> pilot_positions() const;
    int data_per_symbol() const;
    int bits_per_symbol() const;
};

struct SymbolGrid {
    int n_symbols = 0;
    int n_active = 0;
    std::vector<cplx> cells; // row-major [symbol][active]

    cplx& at(int s, int a) { return cells[static_cast<std::size_t>(s) * n_active + a]; }
    const cplx& at(int s, int a) const {
        return cells[static_cast<std::size_t>(s) * n_active + a];
    }
};

// --- QAM -------------------------------------------------------------------

int qam_bits_per_symbol(int order); // validates {4, 16, 64}

/// Gray-coded square M-QAM with unit average energy. Bits map per symbol:
/// first half of the bits select the I level, second half the Q level
/// (QPSK: 00 -> (+1+j)/sqrt(2)).
std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, int order);

/// Hard nearest-neighbor decisions.
std::vector<std::uint8_t> qam_demap(std::span<const cplx> symbols, int order);

// --- Frames ----------------------------------------------------------------

/// Known pilot cell value (common phase reference).
inline constexpr cplx kPilotValue{1.0, 0.0};

/// Fills a grid from data bits; pilots carry kPilotValue. Bit count must be
/// a multiple of bits_per_symbol().
SymbolGrid make_frame(std::span<const std::uint8_t> bits, const OfdmConfig& cfg);

/// Demaps the data cells back to bits (pilot cells skipped).
std::vector<std::uint8_t> extract_bits(const SymbolGrid& grid, const OfdmConfig& cfg);

// --- Modulation ------------------------------------------------------------

struct ModulatedStream {
    std::vector<cplx> samples;
    double scale; // net linear gain applied to unit-energy constellation points
};

/// Per symbol: zero-padded centered IFFT of size K*oversample, cyclic prefix
/// of oversample*cp_length samples, stream normalized to unit average power.
ModulatedStream ofdm_modulate(const SymbolGrid& grid, const OfdmConfig& cfg, Fft& fft);

struct TxFilterResult {
    std::vector<cplx> samples;
    double scale; // renormalization factor applied after filtering
};

/// ofdm passes through; lref_ofdm runs the three-stage cascade; fofdm runs
/// the single-stage comparison filter. Output renormalized to unit power.
TxFilterResult apply_tx_filter(std::span<const cplx> x, Waveform waveform,
                               const CascadeDesign* cascade,
                               const DesignedFilter* single_stage);

// --- Demodulation ----------------------------------------------------------

/// Per-subcarrier combined filter power gain |H(f_k)|^2 for the matched
/// tx/rx filtering model (ones when only one side filters).
std::vector<double> filter_gains_at_subcarriers(std::span<const double> impulse,
                                                const OfdmConfig& cfg, bool both_ends);

struct EqualizerInfo {
    /// |H|^2 (or |H|) per active subcarrier; empty means all-ones.
    std::vector<double> filter_gain;
    /// Channel gain per (symbol, active subcarrier); empty means all-ones.
    std::vector<cplx> channel_gains;
    int n_symbols = 0;
    double tx_scale = 1.0;          // net transmit gain (modulate * filter renorm)
    double zero_threshold = 1e-12;  // |denominator| below this flags the cell

    const cplx& channel_at(int s, int a, int n_active) const {
        return channel_gains[static_cast<std::size_t>(s) * n_active + a];
    }
};

struct DemodResult {
    SymbolGrid grid;
    std::vector<std::pair<int, int>> flagged; // (symbol, active) excluded cells
};

/// r must be aligned: r[0] is the first sample of the first symbol's cyclic
/// prefix after any filter group delay has been compensated by the caller.
DemodResult ofdm_demodulate(std::span<const cplx> r, const OfdmConfig& cfg,
                            const EqualizerInfo& eq, Fft& fft);

// --- Pilot phase correction --------------------------------------------------

struct PhaseCorrection {
    bool applied = false;
    std::vector<double> phase_per_symbol;
};

/// Least-squares common-phase estimate per symbol over the pilot cells;
/// derotates every cell in place. Pass-through (applied=false) without
/// pilots.
PhaseCorrection pilot_phase_correct(SymbolGrid& grid, const OfdmConfig& cfg);

} // namespace ldacs
