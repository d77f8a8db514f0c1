// SPDX-License-Identifier: Apache-2.0
#include "ldacs/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldacs/multirate.hpp"

namespace ldacs {

Waveform waveform_from_name(const std::string& name) {
    if (name == "ofdm") return Waveform::ofdm;
    if (name == "fofdm") return Waveform::fofdm;
    if (name == "lref_ofdm" || name == "lref") return Waveform::lref_ofdm;
    throw std::invalid_argument("unknown waveform: " + name);
}

std::string waveform_name(Waveform w) {
    switch (w) {
        case Waveform::ofdm: return "ofdm";
        case Waveform::fofdm: return "fofdm";
        case Waveform::lref_ofdm: return "lref_ofdm";
    }
    return "?";
}

void OfdmConfig::validate() const {
    if (fft_size < 4 || (fft_size & (fft_size - 1)) != 0) {
        throw std::invalid_argument("fft size must be a power of two >= 4");
    }
    if (active_subcarriers < 2 || active_subcarriers % 2 != 0 ||
        active_subcarriers >= fft_size) {
        throw std::invalid_argument("active subcarriers must be even and below the FFT size");
    }
    if (cp_length < 0 || cp_length >= fft_size) {
        throw std::invalid_argument("cyclic prefix must be shorter than the FFT size");
    }
    if (oversample < 1) throw std::invalid_argument("oversample factor must be >= 1");
    qam_bits_per_symbol(qam_order);
    if (pilot_spacing < 0) throw std::invalid_argument("pilot spacing must be >= 0");
    if (excluded_edge_subcarriers < 0 ||
        2 * excluded_edge_subcarriers >= active_subcarriers) {
        throw std::invalid_argument("excluded edge subcarriers out of range");
    }
}

std::vector<int> OfdmConfig::active_indices() const {
    const int side = active_subcarriers / 2;
    std::vector<int> idx;
    idx.reserve(active_subcarriers);
    for (int k = -side; k <= side; ++k) {
        if (k != 0) idx.push_back(k);
    }
    return idx;
}

std::vector<int> OfdmConfig::pilot_positions() const {
    std::vector<int> pos;
    if (pilot_spacing > 0) {
        for (int a = 0; a < active_subcarriers; a += pilot_spacing) pos.push_back(a);
    }
    return pos;
}

int OfdmConfig::data_per_symbol() const {
    return active_subcarriers - static_cast<int>(pilot_positions().size());
}

int OfdmConfig::bits_per_symbol() const {
    return data_per_symbol() * qam_bits_per_symbol(qam_order);
}

// --- QAM ---------------------------------------------------------------------

int qam_bits_per_symbol(int order) {
    switch (order) {
        case 4: return 2;
        case 16: return 4;
        case 64: return 6;
        default: throw std::invalid_argument("QAM order must be 4, 16, or 64");
    }
}

namespace {

int gray_decode(int g) {
    g ^= g >> 1;
    g ^= g >> 2;
    return g;
}

double axis_scale(int order) {
    // E[level^2] per axis is (L^2 - 1)/3 over the odd levels.
    const int l = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    return std::sqrt(2.0 * (l * l - 1) / 3.0);
}

} // namespace

std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, int order) {
    const int k = qam_bits_per_symbol(order);
    if (bits.size() % static_cast<std::size_t>(k) != 0) {
        throw std::invalid_argument("bit count must be a multiple of log2(M)");
    }
    const int mb = k / 2;
    const int l = 1 << mb;
    const double scale = axis_scale(order);
    std::vector<cplx> out(bits.size() / static_cast<std::size_t>(k));
    for (std::size_t s = 0; s < out.size(); ++s) {
        const std::uint8_t* b = bits.data() + s * static_cast<std::size_t>(k);
        int gi = 0, gq = 0;
        for (int j = 0; j < mb; ++j) gi = (gi << 1) | (b[j] & 1);
        for (int j = 0; j < mb; ++j) gq = (gq << 1) | (b[mb + j] & 1);
        const int vi = gray_decode(gi);
        const int vq = gray_decode(gq);
        out[s] = cplx(l - 1 - 2 * vi, l - 1 - 2 * vq) / scale;
    }
    return out;
}

std::vector<std::uint8_t> qam_demap(std::span<const cplx> symbols, int order) {
    const int k = qam_bits_per_symbol(order);
    const int mb = k / 2;
    const int l = 1 << mb;
    const double scale = axis_scale(order);
    std::vector<std::uint8_t> bits(symbols.size() * static_cast<std::size_t>(k));
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const auto slice = [&](double v) {
            int idx = static_cast<int>(std::lround((l - 1 - v * scale) / 2.0));
            return std::clamp(idx, 0, l - 1);
        };
        const int vi = slice(symbols[s].real());
        const int vq = slice(symbols[s].imag());
        const int gi = vi ^ (vi >> 1);
        const int gq = vq ^ (vq >> 1);
        std::uint8_t* b = bits.data() + s * static_cast<std::size_t>(k);
        for (int j = 0; j < mb; ++j) b[j] = static_cast<std::uint8_t>((gi >> (mb - 1 - j)) & 1);
        for (int j = 0; j < mb; ++j) {
            b[mb + j] = static_cast<std::uint8_t>((gq >> (mb - 1 - j)) & 1);
        }
    }
    return bits;
}

// --- Frames ------------------------------------------------------------------

SymbolGrid make_frame(std::span<const std::uint8_t> bits, const OfdmConfig& cfg) {
    cfg.validate();
    const int bps = cfg.bits_per_symbol();
    if (bps == 0 || bits.size() % static_cast<std::size_t>(bps) != 0) {
        throw std::invalid_argument("bit count must be a multiple of bits per symbol");
    }
    const auto pilots = cfg.pilot_positions();
    const auto symbols = qam_map(bits, cfg.qam_order);

    SymbolGrid grid;
    grid.n_symbols = static_cast<int>(bits.size() / static_cast<std::size_t>(bps));
    grid.n_active = cfg.active_subcarriers;
    grid.cells.assign(static_cast<std::size_t>(grid.n_symbols) * grid.n_active, cplx{});

    std::size_t next = 0;
    for (int s = 0; s < grid.n_symbols; ++s) {
        std::size_t p = 0;
        for (int a = 0; a < grid.n_active; ++a) {
            if (p < pilots.size() && pilots[p] == a) {
                grid.at(s, a) = kPilotValue;
                ++p;
            } else {
                grid.at(s, a) = symbols[next++];
            }
        }
    }
    return grid;
}

std::vector<std::uint8_t> extract_bits(const SymbolGrid& grid, const OfdmConfig& cfg) {
    const auto pilots = cfg.pilot_positions();
    std::vector<cplx> data;
    data.reserve(static_cast<std::size_t>(grid.n_symbols) * cfg.data_per_symbol());
    for (int s = 0; s < grid.n_symbols; ++s) {
        std::size_t p = 0;
        for (int a = 0; a < grid.n_active; ++a) {
            if (p < pilots.size() && pilots[p] == a) {
                ++p;
            } else {
                data.push_back(grid.at(s, a));
            }
        }
    }
    return qam_demap(data, cfg.qam_order);
}

// --- Modulation ----------------------------------------------------------------

ModulatedStream ofdm_modulate(const SymbolGrid& grid, const OfdmConfig& cfg, Fft& fft) {
    cfg.validate();
    if (grid.n_active != cfg.active_subcarriers) {
        throw std::invalid_argument("grid does not match the configuration");
    }
    const int f = cfg.output_fft_size();
    const int cp = cfg.oversample * cfg.cp_length;
    const auto active = cfg.active_indices();

    ModulatedStream out;
    out.samples.assign(static_cast<std::size_t>(grid.n_symbols) * (f + cp), cplx{});

    std::vector<cplx> bins(f);
    for (int s = 0; s < grid.n_symbols; ++s) {
        std::fill(bins.begin(), bins.end(), cplx{});
        for (int a = 0; a < grid.n_active; ++a) {
            const int k = active[a];
            bins[static_cast<std::size_t>((k + f) % f)] = grid.at(s, a);
        }
        fft.inverse(bins); // unnormalized
        cplx* dst = out.samples.data() + static_cast<std::size_t>(s) * (f + cp);
        for (int i = 0; i < cp; ++i) dst[i] = bins[static_cast<std::size_t>(f - cp + i)];
        std::copy(bins.begin(), bins.end(), dst + cp);
    }

    const double p = mean_power(std::span<const cplx>(out.samples));
    if (p <= 0.0) {
        out.scale = 1.0;
        return out;
    }
    const double g = 1.0 / std::sqrt(p);
    for (auto& v : out.samples) v *= g;
    out.scale = g;
    return out;
}

TxFilterResult apply_tx_filter(std::span<const cplx> x, Waveform waveform,
                               const CascadeDesign* cascade,
                               const DesignedFilter* single_stage) {
    TxFilterResult r;
    if (waveform == Waveform::ofdm) {
        r.samples.assign(x.begin(), x.end());
        r.scale = 1.0;
        return r;
    }
    if (waveform == Waveform::lref_ofdm) {
        if (!cascade) throw std::invalid_argument("lref_ofdm requires the cascade filter");
        r.samples = cascade_process(*cascade, x);
    } else {
        if (!single_stage) throw std::invalid_argument("fofdm requires the comparison filter");
        r.samples = fir_process(*single_stage, x);
    }
    const double p = mean_power(std::span<const cplx>(r.samples));
    r.scale = p > 0.0 ? 1.0 / std::sqrt(p) : 1.0;
    for (auto& v : r.samples) v *= r.scale;
    return r;
}

// --- Demodulation ----------------------------------------------------------------

std::vector<double> filter_gains_at_subcarriers(std::span<const double> impulse,
                                                const OfdmConfig& cfg, bool both_ends) {
    const auto active = cfg.active_indices();
    std::vector<double> gains(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
        const double f_norm = 2.0 * active[a] / cfg.output_fft_size();
        const double mag = std::abs(dtft_at(impulse, f_norm));
        gains[a] = both_ends ? mag * mag : mag;
    }
    return gains;
}

DemodResult ofdm_demodulate(std::span<const cplx> r, const OfdmConfig& cfg,
                            const EqualizerInfo& eq, Fft& fft) {
    cfg.validate();
    const int f = cfg.output_fft_size();
    const int cp = cfg.oversample * cfg.cp_length;
    const int spp = f + cp;
    const int n_sym = static_cast<int>(r.size()) / spp;
    if (n_sym == 0) throw std::invalid_argument("input shorter than one OFDM symbol");
    const auto active = cfg.active_indices();
    const bool have_channel = !eq.channel_gains.empty();
    if (have_channel && eq.n_symbols < n_sym) {
        throw std::invalid_argument("equalizer channel info shorter than the input");
    }
    if (!eq.filter_gain.empty() && eq.filter_gain.size() != active.size()) {
        throw std::invalid_argument("equalizer filter gains do not match the grid");
    }

    DemodResult res;
    res.grid.n_symbols = n_sym;
    res.grid.n_active = cfg.active_subcarriers;
    res.grid.cells.assign(static_cast<std::size_t>(n_sym) * cfg.active_subcarriers, cplx{});

    const double base = static_cast<double>(f) * eq.tx_scale;
    std::vector<cplx> bins(f);
    for (int s = 0; s < n_sym; ++s) {
        const cplx* src = r.data() + static_cast<std::size_t>(s) * spp + cp;
        std::copy(src, src + f, bins.begin());
        fft.forward(bins);
        for (int a = 0; a < cfg.active_subcarriers; ++a) {
            const int k = active[a];
            const cplx bin = bins[static_cast<std::size_t>((k + f) % f)];
            cplx den{base, 0.0};
            if (!eq.filter_gain.empty()) den *= eq.filter_gain[a];
            if (have_channel) den *= eq.channel_at(s, a, cfg.active_subcarriers);
            if (std::abs(den) < eq.zero_threshold * base) {
                res.flagged.emplace_back(s, a);
                res.grid.at(s, a) = cplx{};
            } else {
                res.grid.at(s, a) = bin / den;
            }
        }
    }
    return res;
}

PhaseCorrection pilot_phase_correct(SymbolGrid& grid, const OfdmConfig& cfg) {
    PhaseCorrection pc;
    const auto pilots = cfg.pilot_positions();
    if (pilots.empty()) return pc; // pass-through, applied stays false

    pc.applied = true;
    pc.phase_per_symbol.resize(grid.n_symbols);
    for (int s = 0; s < grid.n_symbols; ++s) {
        cplx acc{};
        for (int a : pilots) acc += grid.at(s, a) * std::conj(kPilotValue);
        const double phase = std::abs(acc) > 0.0 ? std::arg(acc) : 0.0;
        pc.phase_per_symbol[s] = phase;
        const cplx rot = std::polar(1.0, -phase);
        for (int a = 0; a < grid.n_active; ++a) grid.at(s, a) *= rot;
    }
    return pc;
}

} // namespace ldacs
