// SPDX-License-Identifier: Apache-2.0
#include "ldacs/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ldacs/io.hpp"

namespace ldacs {

namespace fs = std::filesystem;

namespace {

std::string get(const std::map<std::string, std::string>& kv, const std::string& key,
                const std::string& fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

bool parse_bool(const std::string& s) {
    return s == "1" || s == "true" || s == "yes" || s == "on";
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split_list(s)) out.push_back(std::stod(tok));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split_list(s)) out.push_back(std::stoi(tok));
    return out;
}

std::string join(const std::vector<std::string>& v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i];
    }
    return s;
}

} // namespace

int auto_active_subcarriers(int bw_khz, int fft_size, int oversample) {
    const auto& entry = bandwidth_entry(bw_khz);
    // subcarrier spacing at the base rate, kHz
    const double spacing_khz = kSampleRateHz / oversample / fft_size / 1000.0;
    const double half_band_khz = entry.fp1 / 4.0 * (kSampleRateHz / 2.0) / 1000.0;
    int side = static_cast<int>(std::floor(half_band_khz / spacing_khz));
    side = std::min(side, fft_size / 2 - 1);
    return 2 * std::max(side, 1);
}

OfdmConfig make_ofdm_config(const ExperimentConfig& cfg, Waveform w) {
    OfdmConfig o;
    o.fft_size = cfg.fft_size;
    o.cp_length = cfg.cp_length;
    o.oversample = cfg.oversample;
    o.qam_order = cfg.qam_order;
    o.pilot_spacing = cfg.pilot_spacing;
    o.waveform = w;
    o.bandwidth_khz = cfg.bandwidth_khz;
    o.excluded_edge_subcarriers = cfg.excluded_edge_subcarriers;
    o.active_subcarriers = cfg.active_subcarriers > 0
                               ? cfg.active_subcarriers
                               : auto_active_subcarriers(cfg.bandwidth_khz, cfg.fft_size,
                                                         cfg.oversample);
    o.validate();
    return o;
}

// --- config ---------------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig c;
    c.apply(kv);
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    return from_map(load_config(path));
}

void ExperimentConfig::apply(const std::map<std::string, std::string>& kv) {
    kind = get(kv, "experiment.kind", kind);
    seed = std::stoull(get(kv, "experiment.seed", std::to_string(seed)));
    out_dir = get(kv, "experiment.out", out_dir);

    bandwidth_khz = std::stoi(get(kv, "signal.bandwidth_khz", std::to_string(bandwidth_khz)));
    if (kv.count("signal.waveforms")) waveforms = split_list(kv.at("signal.waveforms"));
    qam_order = std::stoi(get(kv, "signal.qam_order", std::to_string(qam_order)));
    fft_size = std::stoi(get(kv, "signal.fft_size", std::to_string(fft_size)));
    cp_length = std::stoi(get(kv, "signal.cp_length", std::to_string(cp_length)));
    oversample = std::stoi(get(kv, "signal.oversample", std::to_string(oversample)));
    active_subcarriers =
        std::stoi(get(kv, "signal.active_subcarriers", std::to_string(active_subcarriers)));
    pilot_spacing = std::stoi(get(kv, "signal.pilot_spacing", std::to_string(pilot_spacing)));
    excluded_edge_subcarriers = std::stoi(
        get(kv, "signal.excluded_edge", std::to_string(excluded_edge_subcarriers)));

    channel = get(kv, "channel.profile", channel);
    dme_enabled = parse_bool(get(kv, "channel.dme", dme_enabled ? "1" : "0"));
    dme_power_db = std::stod(get(kv, "channel.dme_power_db", std::to_string(dme_power_db)));
    if (kv.count("channel.dme_offsets_hz")) {
        dme_offsets_hz = parse_double_list(kv.at("channel.dme_offsets_hz"));
    }
    phase_impairment_rad = std::stod(
        get(kv, "channel.phase_impairment_rad", std::to_string(phase_impairment_rad)));
    pilot_correction =
        parse_bool(get(kv, "channel.pilot_correction", pilot_correction ? "1" : "0"));

    if (kv.count("ber.snr_db")) snr_db = parse_double_list(kv.at("ber.snr_db"));
    bits_per_point = std::stoll(get(kv, "ber.bits_per_point", std::to_string(bits_per_point)));
    symbols_per_trial =
        std::stoi(get(kv, "ber.symbols_per_trial", std::to_string(symbols_per_trial)));

    wl_scenario = get(kv, "wl.scenario", wl_scenario);
    if (kv.count("wl.word_lengths")) word_lengths = parse_int_list(kv.at("wl.word_lengths"));

    psd_segment = std::stoi(get(kv, "psd.segment", std::to_string(psd_segment)));
    psd_overlap = std::stod(get(kv, "psd.overlap", std::to_string(psd_overlap)));
    psd_symbols = std::stoi(get(kv, "psd.symbols", std::to_string(psd_symbols)));
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kinds{"design", "psd",        "ber",
                                                "wlsweep", "complexity", "maskcheck"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
        throw std::invalid_argument("unknown experiment kind: " + kind);
    }
    bandwidth_entry(bandwidth_khz);
    if (waveforms.empty()) throw std::invalid_argument("no waveforms configured");
    for (const auto& w : waveforms) waveform_from_name(w);
    if ((kind == "ber") && snr_db.empty()) {
        throw std::invalid_argument("ber sweep needs a non-empty SNR grid");
    }
    if (bits_per_point <= 0) throw std::invalid_argument("bit budget must be positive");
    if (symbols_per_trial <= 0) throw std::invalid_argument("symbols per trial must be positive");
    if (wl_scenario != "filter" && wl_scenario != "transceiver") {
        throw std::invalid_argument("wl scenario must be 'filter' or 'transceiver'");
    }
    for (int wl : word_lengths) FixedPointFormat::for_word(wl).validate();
}

std::string ExperimentConfig::to_manifest() const {
    std::ostringstream os;
    os << "kind=" << kind << "\nseed=" << seed << "\nversion=" << kToolVersion << "\n";
    os << "[signal]\n";
    os << "bandwidth_khz=" << bandwidth_khz << "\nwaveforms=" << join(waveforms) << "\n";
    os << "qam_order=" << qam_order << "\nfft_size=" << fft_size << "\ncp_length=" << cp_length
       << "\noversample=" << oversample << "\nactive_subcarriers=" << active_subcarriers
       << "\npilot_spacing=" << pilot_spacing << "\nexcluded_edge="
       << excluded_edge_subcarriers << "\n";
    os << "[channel]\nprofile=" << channel << "\ndme=" << (dme_enabled ? 1 : 0)
       << "\ndme_power_db=" << dme_power_db << "\nphase_impairment_rad="
       << phase_impairment_rad << "\npilot_correction=" << (pilot_correction ? 1 : 0) << "\n";
    os << "[ber]\nsnr_db=";
    for (std::size_t i = 0; i < snr_db.size(); ++i) os << (i ? "," : "") << snr_db[i];
    os << "\nbits_per_point=" << bits_per_point << "\nsymbols_per_trial=" << symbols_per_trial
       << "\n";
    os << "[wl]\nscenario=" << wl_scenario << "\nword_lengths=";
    for (std::size_t i = 0; i < word_lengths.size(); ++i) os << (i ? "," : "") << word_lengths[i];
    os << "\n[psd]\nsegment=" << psd_segment << "\noverlap=" << psd_overlap
       << "\nsymbols=" << psd_symbols << "\n";
    return os.str();
}

// --- transceiver chain ------------------------------------------------------------

namespace {

struct ChainContext {
    OfdmConfig ofdm;
    Waveform wf = Waveform::ofdm;
    const CascadeDesign* cascade = nullptr;
    const DesignedFilter* single = nullptr;
    std::vector<double> filter_gains; // |H|^2 per active SC (empty for plain ofdm)
    int filter_delay = 0;             // one-side group delay, samples
    ChannelProfile profile = ChannelProfile::awgn_only();
    bool fading = false;
    bool dme = false;
    DmeConfig dme_cfg;
    double phase_walk_std = 0.0;
    bool pilot_fix = false;
};

ChainContext make_chain(const ExperimentConfig& cfg, Waveform w,
                        const CascadeDesign* cascade, const DesignedFilter* single) {
    ChainContext ctx;
    ctx.ofdm = make_ofdm_config(cfg, w);
    ctx.wf = w;
    ctx.cascade = cascade;
    ctx.single = single;
    ctx.profile = ChannelProfile::by_name(cfg.channel);
    ctx.fading = cfg.channel != "awgn";
    ctx.dme = cfg.dme_enabled;
    ctx.dme_cfg.power_ratio_db = cfg.dme_power_db;
    ctx.dme_cfg.carrier_offsets_hz = cfg.dme_offsets_hz;
    ctx.phase_walk_std = cfg.phase_impairment_rad;
    ctx.pilot_fix = cfg.pilot_correction || cfg.phase_impairment_rad > 0.0;

    if (w == Waveform::lref_ofdm) {
        if (!cascade) throw std::invalid_argument("lref_ofdm requires a cascade design");
        const auto h = expand_impulse_response(*cascade);
        ctx.filter_gains = filter_gains_at_subcarriers(h, ctx.ofdm, true);
        ctx.filter_delay = cascade->group_delay_samples();
    } else if (w == Waveform::fofdm) {
        if (!single) throw std::invalid_argument("fofdm requires the comparison filter");
        ctx.filter_gains = filter_gains_at_subcarriers(single->coefficients, ctx.ofdm, true);
        ctx.filter_delay = single->group_delay_samples();
    }
    return ctx;
}

struct TrialOutcome {
    long long bits = 0;
    long long errors = 0;
    long long flagged_cells = 0;
};

TrialOutcome run_trial(const ChainContext& ctx, int n_symbols, double ebn0_db, Rng& rng,
                       Fft& fft) {
    const OfdmConfig& cfg = ctx.ofdm;
    const int bps = cfg.bits_per_symbol();
    const int spp = cfg.samples_per_symbol();
    const int kbits = qam_bits_per_symbol(cfg.qam_order);

    std::vector<std::uint8_t> tx_bits(static_cast<std::size_t>(n_symbols) * bps);
    for (auto& b : tx_bits) b = rng.bit() ? 1 : 0;

    const SymbolGrid grid = make_frame(tx_bits, cfg);
    ModulatedStream mod = ofdm_modulate(grid, cfg, fft);

    const int pad = 2 * ctx.filter_delay + ctx.profile.max_delay() + 8;
    mod.samples.resize(mod.samples.size() + static_cast<std::size_t>(pad), cplx{});

    TxFilterResult txf = apply_tx_filter(mod.samples, ctx.wf, ctx.cascade, ctx.single);
    const double net_scale = mod.scale * txf.scale;

    // channel
    std::vector<cplx> r;
    std::vector<std::vector<cplx>> block_taps;
    if (ctx.fading) {
        FadedSignal faded = apply_block_fading(ctx.profile, txf.samples, spp,
                                               ctx.filter_delay, rng);
        r = std::move(faded.samples);
        block_taps = std::move(faded.block_taps);
    } else {
        r = std::move(txf.samples);
    }

    if (ctx.dme) {
        const auto d = generate_dme(r.size(), ctx.dme_cfg, rng);
        if (ctx.fading) {
            const FadedSignal df = apply_block_fading(ctx.profile, d, spp, ctx.filter_delay,
                                                      rng);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += df.samples[i];
        } else {
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += d[i];
        }
    }

    if (ctx.phase_walk_std > 0.0) {
        double theta = 0.0;
        int block = -1;
        cplx rot{1.0, 0.0};
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int b = i < static_cast<std::size_t>(ctx.filter_delay)
                              ? 0
                              : static_cast<int>((i - ctx.filter_delay) / spp);
            if (b != block) {
                theta += ctx.phase_walk_std * rng.gaussian();
                rot = std::polar(1.0, theta);
                block = b;
            }
            r[i] *= rot;
        }
    }

    // per-bit SNR -> per-sample noise variance
    const int f = cfg.output_fft_size();
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    const double n0 = f * net_scale * net_scale / (kbits * ebn0);
    r = add_noise_n0(r, n0, rng);

    // receive filtering + alignment
    std::vector<cplx> y;
    if (ctx.wf == Waveform::lref_ofdm) {
        y = cascade_process(*ctx.cascade, r);
    } else if (ctx.wf == Waveform::fofdm) {
        y = fir_process(*ctx.single, r);
    } else {
        y = std::move(r);
    }
    const std::size_t offset = static_cast<std::size_t>(2 * ctx.filter_delay);
    const std::size_t need = static_cast<std::size_t>(n_symbols) * spp;
    if (y.size() < offset + need) throw std::runtime_error("internal: stream too short");

    EqualizerInfo eq;
    eq.tx_scale = net_scale;
    eq.filter_gain = ctx.filter_gains;
    eq.n_symbols = n_symbols;
    if (ctx.fading) {
        const auto active = cfg.active_indices();
        eq.channel_gains.resize(static_cast<std::size_t>(n_symbols) * cfg.active_subcarriers);
        for (int s = 0; s < n_symbols; ++s) {
            const auto& taps = block_taps[static_cast<std::size_t>(s)];
            for (int a = 0; a < cfg.active_subcarriers; ++a) {
                const double f_norm = 2.0 * active[a] / f;
                eq.channel_gains[static_cast<std::size_t>(s) * cfg.active_subcarriers + a] =
                    dtft_at(std::span<const cplx>(taps), f_norm);
            }
        }
    }

    DemodResult res = ofdm_demodulate(std::span<const cplx>(y).subspan(offset, need), cfg,
                                      eq, fft);
    if (ctx.pilot_fix) pilot_phase_correct(res.grid, cfg);

    // count data-cell bit errors (flagged cells excluded)
    std::unordered_set<long long> flagged;
    for (const auto& [s, a] : res.flagged) {
        flagged.insert(static_cast<long long>(s) * cfg.active_subcarriers + a);
    }
    const auto pilots = cfg.pilot_positions();
    const int excl = cfg.excluded_edge_subcarriers;

    TrialOutcome out;
    out.flagged_cells = static_cast<long long>(res.flagged.size());
    std::size_t bit_pos = 0;
    std::vector<cplx> one(1);
    for (int s = 0; s < n_symbols; ++s) {
        std::size_t p = 0;
        for (int a = 0; a < cfg.active_subcarriers; ++a) {
            if (p < pilots.size() && pilots[p] == a) {
                ++p;
                continue;
            }
            const std::size_t cell_bits = bit_pos;
            bit_pos += static_cast<std::size_t>(kbits);
            if (a < excl || a >= cfg.active_subcarriers - excl) continue;
            if (flagged.count(static_cast<long long>(s) * cfg.active_subcarriers + a)) continue;
            one[0] = res.grid.at(s, a);
            const auto rx_bits = qam_demap(one, cfg.qam_order);
            for (int j = 0; j < kbits; ++j) {
                out.errors += (rx_bits[static_cast<std::size_t>(j)] ^
                               tx_bits[cell_bits + static_cast<std::size_t>(j)]) &
                              1;
            }
            out.bits += kbits;
        }
    }
    return out;
}

} // namespace

BerSweepResult run_ber_sweep(const ExperimentConfig& cfg, Waveform w) {
    cfg.validate();
    BerSweepResult result;
    result.waveform = w;

    CascadeDesign cascade = build_cascade(cfg.bandwidth_khz);
    DesignedFilter single;
    const CascadeDesign* casc_ptr = nullptr;
    const DesignedFilter* single_ptr = nullptr;
    if (w == Waveform::lref_ofdm) {
        casc_ptr = &cascade;
    } else if (w == Waveform::fofdm) {
        single = design_single_stage_to_mask(ldacs_mask(cfg.bandwidth_khz), cfg.bandwidth_khz);
        single_ptr = &single;
    }
    const ChainContext ctx = make_chain(cfg, w, casc_ptr, single_ptr);

    Fft fft;

    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
        BerPoint point;
        point.snr_db = cfg.snr_db[si];
        long long trial = 0;
        long long bits = 0, errors = 0;
        while (bits < cfg.bits_per_point) {
            Rng rng = Rng::for_trial(cfg.seed + (static_cast<std::uint64_t>(si) << 40) +
                                         (static_cast<std::uint64_t>(w) << 56),
                                     static_cast<std::uint64_t>(trial));
            const TrialOutcome t =
                run_trial(ctx, cfg.symbols_per_trial, cfg.snr_db[si], rng, fft);
            bits += t.bits;
            errors += t.errors;
            ++trial;
        }
        point.bits = bits;
        point.bit_errors = errors;
        point.ber = static_cast<double>(errors) / static_cast<double>(bits);
        const double z = 1.959963984540054;
        const double nn = static_cast<double>(bits);
        point.ci95_half_width =
            z * std::sqrt(point.ber * (1.0 - point.ber) / nn + z * z / (4.0 * nn * nn)) /
            (1.0 + z * z / nn);
        result.points.push_back(point);
    }
    return result;
}

// --- experiment runners ----------------------------------------------------------

namespace {

struct RunOutput {
    std::vector<std::string> files;
    std::string summary;
};

RunOutput run_design(const ExperimentConfig& cfg, const fs::path& out) {
    RunOutput ro;
    const CascadeDesign c = build_cascade(cfg.bandwidth_khz);
    const char* stage_names[3] = {"filter1", "filter2", "filter3"};
    for (int i = 0; i < 3; ++i) {
        const std::string f =
            (out / (std::string("coeffs_") + stage_names[i] + "_" +
                    std::to_string(cfg.bandwidth_khz) + ".txt"))
                .string();
        save_coefficients(f, c.stages[static_cast<std::size_t>(i)], cfg.bandwidth_khz);
        ro.files.push_back(f);
    }
    const auto h = expand_impulse_response(c);
    const auto resp = frequency_response(h, 4096);
    const std::string rf = (out / "response_cascade.csv").string();
    save_response_csv(rf, resp);
    ro.files.push_back(rf);

    std::vector<CascadeDesign> all;
    for (const auto& e : kBandwidthTable) all.push_back(build_cascade(e.bw_khz));
    const CoefficientBank bank = build_coefficient_bank(all);

    const auto mult = multiplier_count(c);
    const auto rep = verify_mask(magnitude_db(resp), ldacs_mask(cfg.bandwidth_khz));
    std::ostringstream os;
    os << "bandwidth_khz=" << cfg.bandwidth_khz << "\n"
       << "multipliers=" << mult.per_stage[0] << "+" << mult.per_stage[1] << "+"
       << mult.per_stage[2] << "=" << mult.total << "\n"
       << "group_delay_samples=" << c.group_delay_samples() << "\n"
       << "group_delay_us=" << c.group_delay_us() << "\n"
       << "coefficient_bank=" << bank.stored_count() << "\n"
       << "naive_storage=" << naive_storage_count() << "\n"
       << "mask_pass=" << (rep.pass ? 1 : 0) << "\n"
       << "mask_margin_db=" << rep.worst_margin_db << "\n";
    ro.summary = os.str();
    const std::string sf = (out / "design_summary.txt").string();
    write_text_file(sf, ro.summary);
    ro.files.push_back(sf);
    return ro;
}

RunOutput run_psd(const ExperimentConfig& cfg, const fs::path& out) {
    RunOutput ro;
    Fft fft;
    CascadeDesign cascade = build_cascade(cfg.bandwidth_khz);
    DesignedFilter single;
    bool have_single = false;

    const SpectralMask mask = ldacs_mask(cfg.bandwidth_khz);
    std::ostringstream os;
    for (const auto& wname : cfg.waveforms) {
        const Waveform w = waveform_from_name(wname);
        if (w == Waveform::fofdm && !have_single) {
            single = design_single_stage_to_mask(mask, cfg.bandwidth_khz);
            have_single = true;
        }
        const OfdmConfig ocfg = make_ofdm_config(cfg, w);
        Rng rng = Rng::for_trial(cfg.seed, static_cast<std::uint64_t>(w));
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(cfg.psd_symbols) *
                                       ocfg.bits_per_symbol());
        for (auto& b : bits) b = rng.bit() ? 1 : 0;
        ModulatedStream mod = ofdm_modulate(make_frame(bits, ocfg), ocfg, fft);
        TxFilterResult tx = apply_tx_filter(mod.samples, w,
                                            w == Waveform::lref_ofdm ? &cascade : nullptr,
                                            w == Waveform::fofdm ? &single : nullptr);
        const PsdEstimate psd =
            welch_psd(tx.samples, cfg.psd_segment, cfg.psd_overlap, fft);
        const std::string pf = (out / ("psd_" + wname + ".csv")).string();
        save_psd_csv(pf, psd);
        ro.files.push_back(pf);

        const auto env = psd_offset_envelope(psd, 4097);
        const auto rep = verify_mask(env, mask);
        os << wname << ": mask_pass=" << (rep.pass ? 1 : 0)
           << " margin_db=" << rep.worst_margin_db;
        if (!rep.pass) os << " first_violation=" << rep.first_violation_freq;
        os << " oob_att_db="
           << oob_attenuation_db(psd, bandwidth_entry(cfg.bandwidth_khz).fs1 / 4.0) << "\n";
    }
    ro.summary = os.str();
    const std::string sf = (out / "psd_summary.txt").string();
    write_text_file(sf, ro.summary);
    ro.files.push_back(sf);
    return ro;
}

RunOutput run_ber(const ExperimentConfig& cfg, const fs::path& out) {
    RunOutput ro;
    std::ostringstream os;
    for (const auto& wname : cfg.waveforms) {
        const BerSweepResult res = run_ber_sweep(cfg, waveform_from_name(wname));
        const std::string bf = (out / ("ber_" + wname + ".csv")).string();
        save_ber_csv(bf, res.points);
        ro.files.push_back(bf);
        os << wname << ":";
        for (const auto& p : res.points) os << " " << p.snr_db << "dB=" << p.ber;
        os << "\n";
    }
    ro.summary = os.str();
    return ro;
}

RunOutput run_wlsweep(const ExperimentConfig& cfg, const fs::path& out) {
    RunOutput ro;
    Fft fft;
    const CascadeDesign cascade = build_cascade(cfg.bandwidth_khz);
    const SpectralMask mask = ldacs_mask(cfg.bandwidth_khz);
    const OfdmConfig ocfg = make_ofdm_config(cfg, Waveform::lref_ofdm);

    Rng rng = Rng::for_trial(cfg.seed, 0x571);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(cfg.psd_symbols) *
                                   ocfg.bits_per_symbol());
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    const ModulatedStream mod = ofdm_modulate(make_frame(bits, ocfg), ocfg, fft);
    const std::vector<cplx> ref = cascade_process(cascade, mod.samples);

    std::ostringstream csv;
    csv << "word_length,scenario,err_power_db,mask_pass,mask_margin_db,saturations\n";
    for (int wl : cfg.word_lengths) {
        const FixedPointFormat ffmt = FixedPointFormat::for_word(wl);
        const FixedPointFormat dfmt = cfg.wl_scenario == "filter"
                                          ? FixedPointFormat::for_word(16)
                                          : FixedPointFormat::for_word(wl);
        QuantizeStats stats;
        const auto y = fixed_point_process(cascade, mod.samples, ffmt, dfmt, &stats);
        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) err += std::norm(y[i] - ref[i]);
        err /= static_cast<double>(y.size());
        const double err_db = 10.0 * std::log10(std::max(err, 1e-30));

        const PsdEstimate psd = welch_psd(y, cfg.psd_segment, cfg.psd_overlap, fft);
        const std::string pf =
            (out / ("psd_wl" + std::to_string(wl) + "_" + cfg.wl_scenario + ".csv")).string();
        save_psd_csv(pf, psd);
        ro.files.push_back(pf);
        const auto rep = verify_mask(psd_offset_envelope(psd, 4097), mask);

        csv << wl << ',' << cfg.wl_scenario << ',' << err_db << ',' << (rep.pass ? 1 : 0)
            << ',' << rep.worst_margin_db << ',' << stats.saturations << "\n";
    }
    const std::string cf = (out / "wl_summary.csv").string();
    write_text_file(cf, csv.str());
    ro.files.push_back(cf);
    ro.summary = csv.str();
    return ro;
}

RunOutput run_complexity(const ExperimentConfig& cfg, const fs::path& out) {
    RunOutput ro;
    const CascadeDesign c = build_cascade(cfg.bandwidth_khz);
    const SpectralMask mask = ldacs_mask(cfg.bandwidth_khz);
    const DesignedFilter single = design_single_stage_to_mask(mask, cfg.bandwidth_khz);

    std::vector<ComplexityRow> rows;
    const auto mult = multiplier_count(c);
    rows.push_back({"proposed 3-stage cascade", mult.total,
                    static_cast<double>(c.group_delay_samples()), c.group_delay_us()});
    rows.push_back({"single-stage equiripple", single.unique_multipliers(),
                    static_cast<double>(single.group_delay_samples()),
                    single.group_delay_samples() / kSampleRateHz * 1e6});
    ComplexityTable table = complexity_report(rows);

    std::ostringstream os;
    os << table.to_text();
    os << "multiplier savings vs single-stage: " << table.savings_percent(0, 1) << "%\n";
    ro.summary = os.str();
    const std::string tf = (out / "complexity.txt").string();
    write_text_file(tf, ro.summary);
    const std::string cf = (out / "complexity.csv").string();
    write_text_file(cf, table.to_csv());
    ro.files = {tf, cf};
    return ro;
}

RunOutput run_maskcheck(const ExperimentConfig&, const fs::path& out) {
    RunOutput ro;
    std::ostringstream csv;
    csv << "bandwidth_khz,pass,margin_db,first_violation_freq\n";
    for (const auto& e : kBandwidthTable) {
        const CascadeDesign c = build_cascade(e.bw_khz);
        const auto resp = magnitude_db(frequency_response(expand_impulse_response(c), 8192));
        const auto rep = verify_mask(resp, ldacs_mask(e.bw_khz));
        csv << e.bw_khz << ',' << (rep.pass ? 1 : 0) << ',' << rep.worst_margin_db << ','
            << rep.first_violation_freq << "\n";
    }
    const std::string cf = (out / "maskcheck.csv").string();
    write_text_file(cf, csv.str());
    ro.files.push_back(cf);
    ro.summary = csv.str();
    return ro;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);

    RunOutput ro;
    if (cfg.kind == "design") {
        ro = run_design(cfg, out);
    } else if (cfg.kind == "psd") {
        ro = run_psd(cfg, out);
    } else if (cfg.kind == "ber") {
        ro = run_ber(cfg, out);
    } else if (cfg.kind == "wlsweep") {
        ro = run_wlsweep(cfg, out);
    } else if (cfg.kind == "complexity") {
        ro = run_complexity(cfg, out);
    } else if (cfg.kind == "maskcheck") {
        ro = run_maskcheck(cfg, out);
    } else {
        throw std::invalid_argument("unknown experiment kind: " + cfg.kind);
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream manifest;
    manifest << cfg.to_manifest();
    manifest << "[run]\nwall_time_s=" << wall << "\noutputs=";
    for (std::size_t i = 0; i < ro.files.size(); ++i) {
        manifest << (i ? "," : "") << fs::path(ro.files[i]).filename().string();
    }
    manifest << "\n";
    write_text_file((out / "manifest.txt").string(), manifest.str());
    return 0;
}

std::string compare_runs(const std::vector<std::string>& manifest_paths) {
    if (manifest_paths.empty()) {
        throw std::invalid_argument("no manifests to compare");
    }
    std::string kind;
    struct Run {
        fs::path dir;
        std::map<std::string, std::string> kv;
    };
    std::vector<Run> runs;
    for (const auto& mp : manifest_paths) {
        Run r;
        r.dir = fs::path(mp).parent_path();
        r.kv = load_config(mp);
        const std::string k = get(r.kv, "kind", "");
        if (kind.empty()) kind = k;
        if (k != kind) throw std::invalid_argument("incompatible experiment kinds");
        runs.push_back(std::move(r));
    }

    std::ostringstream os;
    if (kind == "ber") {
        // join ber_<wf>.csv tables on snr
        std::vector<std::string> cols;
        std::map<double, std::vector<std::string>> table;
        for (const auto& r : runs) {
            for (const auto& f : split_list(get(r.kv, "run.outputs", ""))) {
                if (f.rfind("ber_", 0) != 0) continue;
                const std::string col = r.dir.filename().string() + ":" +
                                        f.substr(4, f.size() - 8);
                cols.push_back(col);
                const auto text = read_text_file((r.dir / f).string());
                std::istringstream is(text);
                std::string line;
                std::getline(is, line); // header
                while (std::getline(is, line)) {
                    const auto parts = split_list(line);
                    if (parts.size() < 2) continue;
                    auto& row = table[std::stod(parts[0])];
                    row.resize(cols.size());
                    row[cols.size() - 1] = parts[1];
                }
            }
        }
        os << "snr_db";
        for (const auto& c : cols) os << ',' << c;
        os << "\n";
        for (const auto& [snr, row] : table) {
            os << snr;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                os << ',' << (i < row.size() && !row[i].empty() ? row[i] : "");
            }
            os << "\n";
        }
    } else if (kind == "wlsweep") {
        os << "run,word_length,scenario,err_power_db,mask_pass,mask_margin_db,saturations\n";
        for (const auto& r : runs) {
            const auto text = read_text_file((r.dir / "wl_summary.csv").string());
            std::istringstream is(text);
            std::string line;
            std::getline(is, line);
            while (std::getline(is, line)) {
                if (!line.empty()) os << r.dir.filename().string() << ',' << line << "\n";
            }
        }
    } else {
        // generic: concatenate summaries
        for (const auto& r : runs) {
            os << "# " << r.dir.string() << "\n";
            for (const auto& f : split_list(get(r.kv, "run.outputs", ""))) {
                if (f.find("summary") != std::string::npos || f.find(".csv") != std::string::npos) {
                    os << read_text_file((r.dir / f).string());
                }
            }
        }
    }
    return os.str();
}

} // namespace ldacs
