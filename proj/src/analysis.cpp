// SPDX-License-Identifier: Apache-2.0
#include "ldacs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ldacs {

PsdEstimate welch_psd(std::span<const cplx> x, int segment_length, double overlap,
                      Fft& fft, double fs_hz) {
    if (segment_length < 8) throw std::invalid_argument("segment length too small");
    if (!(overlap >= 0.0 && overlap < 1.0)) throw std::invalid_argument("bad overlap");
    if (x.size() < static_cast<std::size_t>(segment_length)) {
        throw std::invalid_argument("input shorter than one segment");
    }
    const int n = segment_length;
    const int hop = std::max(1, static_cast<int>(std::lround(n * (1.0 - overlap))));

    std::vector<double> win(n);
    double wpow = 0.0;
    for (int i = 0; i < n; ++i) {
        win[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1));
        wpow += win[i] * win[i];
    }
    wpow /= n;

    std::vector<double> acc(n, 0.0);
    std::vector<cplx> seg(n);
    int count = 0;
    for (std::size_t start = 0; start + n <= x.size(); start += hop) {
        for (int i = 0; i < n; ++i) seg[i] = x[start + i] * win[i];
        fft.forward(seg);
        for (int i = 0; i < n; ++i) acc[i] += std::norm(seg[i]);
        ++count;
    }

    PsdEstimate psd;
    psd.segments = count;
    psd.segment_length = n;
    psd.sample_rate_hz = fs_hz;
    psd.freq_norm.resize(n);
    psd.freq_hz.resize(n);
    psd.psd_db.resize(n);

    // Density scaled so that the mean over bins equals the average power.
    std::vector<double> dens(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        dens[i] = acc[i] / (static_cast<double>(count) * n * n * wpow);
        total += dens[i];
    }
    psd.total_power = total;

    double peak = 0.0;
    for (double d : dens) peak = std::max(peak, d);
    psd.peak_db_raw = to_db(std::sqrt(peak));

    // fftshift to [-1, 1)
    for (int i = 0; i < n; ++i) {
        const int src = (i + n / 2) % n;
        const double f = (static_cast<double>(i) - n / 2) * 2.0 / n;
        psd.freq_norm[i] = f;
        psd.freq_hz[i] = f * fs_hz / 2.0;
        const double rel = dens[src] / peak;
        psd.psd_db[i] = std::max(10.0 * std::log10(std::max(rel, 1e-30)), kDbFloor);
    }
    return psd;
}

double oob_attenuation_db(const PsdEstimate& psd, double band_edge_norm) {
    if (!(band_edge_norm > 0.0 && band_edge_norm < 1.0)) {
        throw std::invalid_argument("band edge outside the PSD grid");
    }
    double worst = kDbFloor;
    bool any = false;
    for (std::size_t i = 0; i < psd.freq_norm.size(); ++i) {
        if (std::abs(psd.freq_norm[i]) > band_edge_norm) {
            worst = std::max(worst, psd.psd_db[i]);
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("band edge outside the PSD grid");
    return -std::max(worst, kDbFloor);
}

std::vector<double> psd_offset_envelope(const PsdEstimate& psd, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
    const int n = psd.segment_length;
    std::vector<double> env(grid_size, kDbFloor);
    for (int i = 0; i < grid_size; ++i) {
        const double f = static_cast<double>(i) / (grid_size - 1);
        // nearest bins on both sides
        for (double sgn : {1.0, -1.0}) {
            double idx = (sgn * f) * n / 2.0 + n / 2.0;
            int j = std::clamp(static_cast<int>(std::lround(idx)), 0, n - 1);
            env[i] = std::max(env[i], psd.psd_db[j]);
        }
    }
    return env;
}

// --- BER ---------------------------------------------------------------------

BerPoint measure_ber(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx) {
    if (tx.size() != rx.size()) throw std::invalid_argument("bit stream length mismatch");
    if (tx.empty()) throw std::invalid_argument("empty bit streams");
    BerPoint p;
    p.bits = static_cast<long long>(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) {
        p.bit_errors += (tx[i] ^ rx[i]) & 1;
    }
    p.ber = static_cast<double>(p.bit_errors) / static_cast<double>(p.bits);
    const double z = 1.959963984540054; // 95%
    const double nn = static_cast<double>(p.bits);
    const double ph = p.ber;
    p.ci95_half_width = z * std::sqrt(ph * (1.0 - ph) / nn + z * z / (4.0 * nn * nn)) /
                        (1.0 + z * z / nn);
    return p;
}

double theoretical_ber_mqam(int order, double snr_linear, double interference_power,
                            double filter_gain_sq, double channel_gain,
                            double interference_channel_gain) {
    const int k = [&] {
        switch (order) {
            case 4: return 2;
            case 16: return 4;
            case 64: return 6;
            default: throw std::invalid_argument("QAM order must be square (4, 16, 64)");
        }
    }();
    if (snr_linear <= 0.0) return 0.5;
    const int sqrt_m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    // noise + interference power relative to a unit signal; QPSK with clean
    // channel and no interference collapses to Q(sqrt(2*snr))
    const double pn = 1.0 / snr_linear;
    const double denom = (order - 1) * (pn + interference_channel_gain * interference_power);
    const double base = 3.0 * k * filter_gain_sq * channel_gain / denom;
    double sum = 0.0;
    for (int i = 1; i <= sqrt_m / 2; ++i) {
        sum += q_func((2 * i - 1) * std::sqrt(base));
    }
    return 4.0 / k * (1.0 - 1.0 / sqrt_m) * sum;
}

double theoretical_ber_mqam_subcarriers(int order, double snr_linear,
                                        std::span<const double> filter_gains_sq,
                                        double interference_power) {
    if (filter_gains_sq.empty()) throw std::invalid_argument("no subcarrier gains");
    double acc = 0.0;
    for (double g : filter_gains_sq) {
        acc += theoretical_ber_mqam(order, snr_linear, interference_power, g);
    }
    return acc / static_cast<double>(filter_gains_sq.size());
}

double theoretical_ber_mqam_fading(int order, double snr_linear,
                                   const ChannelProfile& signal_channel, Rng& rng,
                                   int draws, double interference_power,
                                   const ChannelProfile* interferer_channel) {
    if (draws < 1) throw std::invalid_argument("draws must be >= 1");
    double acc = 0.0;
    for (int d = 0; d < draws; ++d) {
        const auto c = draw_channel(signal_channel, rng);
        double lambda = 0.0;
        for (const auto& g : c) lambda += std::norm(g);
        double lambda_d = 1.0;
        if (interferer_channel) {
            const auto cd = draw_channel(*interferer_channel, rng);
            lambda_d = 0.0;
            for (const auto& g : cd) lambda_d += std::norm(g);
        }
        acc += theoretical_ber_mqam(order, snr_linear, interference_power, 1.0, lambda,
                                    lambda_d);
    }
    return acc / draws;
}

// --- Complexity ---------------------------------------------------------------

double ComplexityTable::savings_percent(std::size_t a, std::size_t b) const {
    const double ma = rows.at(a).multipliers;
    const double mb = rows.at(b).multipliers;
    return (mb - ma) / mb * 100.0;
}

std::string ComplexityTable::to_text() const {
    std::ostringstream os;
    os << "design                          multipliers   delay (samples)   delay (us)\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-30s  %11d   %15.1f   %10.3f\n", r.name.c_str(),
                      r.multipliers, r.group_delay_samples, r.group_delay_us);
        os << buf;
    }
    return os.str();
}

std::string ComplexityTable::to_csv() const {
    std::ostringstream os;
    os << "name,multipliers,group_delay_samples,group_delay_us\n";
    for (const auto& r : rows) {
        os << r.name << ',' << r.multipliers << ',' << r.group_delay_samples << ','
           << r.group_delay_us << '\n';
    }
    return os.str();
}

ComplexityTable complexity_report(std::span<const ComplexityRow> rows) {
    ComplexityTable t;
    t.rows.assign(rows.begin(), rows.end());
    return t;
}

} // namespace ldacs
