// SPDX-License-Identifier: Apache-2.0
//
// Batch experiment runner: filter design, PSD/BER studies, word-length
// sweeps, complexity tables, and spectral-mask checks, all driven by a
// key=value config file with CLI overrides.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "ldacs/experiment.hpp"
#include "ldacs/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
    std::string config;
    std::string seed;
    std::string out;
    std::string bw;
    std::string waveform;
    std::string snr;
    std::string bits;
    std::string channel;
    std::string wl_scenario;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config, "config file (key=value sections)");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--out", a.out, "output directory");
    cmd->add_option("--bw", a.bw, "transmission bandwidth in kHz {342,498,654,732}");
    cmd->add_option("--waveform", a.waveform, "comma list: ofdm,fofdm,lref_ofdm");
    cmd->add_option("--snr", a.snr, "comma list of per-bit SNR points in dB");
    cmd->add_option("--bits", a.bits, "bit budget per SNR point");
    cmd->add_option("--channel", a.channel, "channel profile: awgn|enr|apt|tma");
    cmd->add_option("--wl-scenario", a.wl_scenario, "word-length scenario: filter|transceiver");
}

int run_kind(const std::string& kind, const CommonArgs& a) {
    ldacs::ExperimentConfig cfg;
    if (!a.config.empty()) cfg = ldacs::ExperimentConfig::from_file(a.config);
    std::map<std::string, std::string> ov;
    ov["experiment.kind"] = kind;
    if (!a.seed.empty()) ov["experiment.seed"] = a.seed;
    if (!a.out.empty()) ov["experiment.out"] = a.out;
    if (!a.bw.empty()) ov["signal.bandwidth_khz"] = a.bw;
    if (!a.waveform.empty()) ov["signal.waveforms"] = a.waveform;
    if (!a.snr.empty()) ov["ber.snr_db"] = a.snr;
    if (!a.bits.empty()) ov["ber.bits_per_point"] = a.bits;
    if (!a.channel.empty()) ov["channel.profile"] = a.channel;
    if (!a.wl_scenario.empty()) ov["wl.scenario"] = a.wl_scenario;
    cfg.apply(ov);
    return ldacs::run_experiment(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDACS filter-design and baseband experiment toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"design",  "psd",        "ber",
                                            "wlsweep", "complexity", "maskcheck"};
    std::map<std::string, CommonArgs> args;
    for (const auto& k : kinds) {
        auto* cmd = app.add_subcommand(k, k + " experiment");
        add_common(cmd, args[k]);
    }

    auto* cmp = app.add_subcommand("compare", "join result tables of compatible runs");
    std::vector<std::string> manifests;
    std::string cmp_out;
    cmp->add_option("manifests", manifests, "manifest.txt paths")->required();
    cmp->add_option("--out", cmp_out, "write the joined table to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (cmp->parsed()) {
            const std::string table = ldacs::compare_runs(manifests);
            if (cmp_out.empty()) {
                std::fputs(table.c_str(), stdout);
            } else {
                ldacs::write_text_file(cmp_out, table);
            }
            return kExitOk;
        }
        for (const auto& k : kinds) {
            if (app.get_subcommand(k)->parsed()) return run_kind(k, args.at(k));
        }
        std::fprintf(stderr, "no subcommand\n");
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return kExitRuntime;
    }
}
