// SPDX-License-Identifier: Apache-2.0
#include "ldacs/filter_design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ldacs {

namespace {

constexpr double kMaskGuardDb = 2.0;  // construction slack under the nominal levels
constexpr double kMaskFloorDb = -80.0;
constexpr double kHalfbandEdgeTol = 1e-9;

double fold_frequency(double t) {
    double u = std::fmod(t, 2.0);
    if (u < 0.0) u += 2.0;
    return u <= 1.0 ? u : 2.0 - u;
}

/// Equiripple order estimate (Herrmann's formula); used only to seed
/// minimum-order searches.
int estimate_equiripple_order(double fp, double fs, double dp, double ds) {
    const double lp = std::log10(dp);
    const double ls = std::log10(ds);
    const double d_inf = (0.005309 * lp * lp + 0.07114 * lp - 0.4761) * ls -
                         (0.00266 * lp * lp + 0.5941 * lp + 0.4278);
    const double f_fac = 11.01217 + 0.51244 * (lp - ls);
    const double df = (fs - fp) / 2.0; // cycles/sample
    const int n = static_cast<int>(std::ceil(d_inf / df - f_fac * df));
    return std::max(2, n);
}

double bessel_i0(double x) {
    double sum = 1.0, term = 1.0;
    const double x2 = 0.25 * x * x;
    for (int k = 1; k < 60; ++k) {
        term *= x2 / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

} // namespace

const BandwidthEntry& bandwidth_entry(int bw_khz) {
    for (const auto& e : kBandwidthTable) {
        if (e.bw_khz == bw_khz) return e;
    }
    throw std::invalid_argument("unsupported transmission bandwidth: " +
                                std::to_string(bw_khz) + " kHz");
}

void FilterSpec::validate() const {
    if (order <= 0 || order % 2 != 0) {
        throw std::invalid_argument("filter order must be a positive even integer");
    }
    if (!(passband_edge > 0.0 && passband_edge < 1.0) ||
        !(stopband_edge > 0.0 && stopband_edge < 1.0)) {
        throw std::invalid_argument("band edges must lie in (0, 1)");
    }
    if (passband_edge >= stopband_edge) {
        throw std::invalid_argument("passband edge must be below stopband edge");
    }
    if (interpolation_factor < 1) {
        throw std::invalid_argument("interpolation factor must be >= 1");
    }
    if (kind == FilterKind::halfband &&
        std::abs(passband_edge + stopband_edge - 1.0) > kHalfbandEdgeTol) {
        throw std::invalid_argument("halfband edges must satisfy fp + fs = 1");
    }
    if (kind == FilterKind::halfband && (order / 2) % 2 != 1) {
        throw std::invalid_argument("halfband order must satisfy N = 2 (mod 4)");
    }
}

int DesignedFilter::unique_multipliers() const {
    return spec.kind == FilterKind::halfband ? (spec.order + 2) / 4 : spec.order / 2 + 1;
}

int DesignedFilter::group_delay_samples() const {
    return (spec.order / 2) * spec.interpolation_factor;
}

std::vector<std::pair<int, double>> DesignedFilter::nonzero_taps() const {
    std::vector<std::pair<int, double>> taps;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i] != 0.0) taps.emplace_back(static_cast<int>(i), coefficients[i]);
    }
    return taps;
}

DesignedFilter filter_from_unique(const FilterSpec& spec, std::vector<double> unique) {
    spec.validate();
    const int n = spec.order;
    const int m = spec.interpolation_factor;
    DesignedFilter f;
    f.spec = spec;
    f.coefficients.assign(static_cast<std::size_t>(n) * m + 1, 0.0);
    if (spec.kind == FilterKind::general_lowpass) {
        if (unique.size() != static_cast<std::size_t>(n / 2 + 1)) {
            throw std::invalid_argument("general filter expects N/2+1 unique coefficients");
        }
        for (int k = 0; k <= n / 2; ++k) {
            f.coefficients[static_cast<std::size_t>(k) * m] = unique[k];
            f.coefficients[static_cast<std::size_t>(n - k) * m] = unique[k];
        }
    } else {
        if (unique.size() != static_cast<std::size_t>((n + 2) / 4)) {
            throw std::invalid_argument("halfband filter expects (N+2)/4 unique coefficients");
        }
        for (std::size_t i = 0; i < unique.size(); ++i) {
            const int pos = 2 * static_cast<int>(i);
            f.coefficients[static_cast<std::size_t>(pos) * m] = unique[i];
            f.coefficients[static_cast<std::size_t>(n - pos) * m] = unique[i];
        }
        f.coefficients[static_cast<std::size_t>(n / 2) * m] = 0.5;
    }
    f.unique_coefficients = std::move(unique);
    return f;
}

DesignedFilter design_equiripple(const FilterSpec& spec) {
    spec.validate();
    if (spec.kind != FilterKind::general_lowpass) {
        throw std::invalid_argument("design_equiripple handles general lowpass specs");
    }
    const std::array<RemezBand, 2> bands{{
        {0.0, spec.passband_edge, 1.0, spec.passband_weight},
        {spec.stopband_edge, 1.0, 0.0, 1.0},
    }};
    RemezResult res = remez_design(spec.order, bands);

    std::vector<double> unique(res.taps.begin(), res.taps.begin() + spec.order / 2 + 1);
    FilterSpec proto = spec;
    proto.interpolation_factor = 1;
    return filter_from_unique(proto, std::move(unique));
}

DesignedFilter design_halfband(int order, double passband_edge) {
    if (order <= 0 || order % 2 != 0 || (order / 2) % 2 != 1) {
        throw design_error("halfband order must be even with N/2 odd");
    }
    if (!(passband_edge > 0.0 && passband_edge < 0.5)) {
        throw design_error("halfband passband edge must lie in (0, 0.5)");
    }
    // Nonzero-tap subfilter: approximate 1 on [0, 2*fp] with a type-II filter
    // of half the order; the halfband complementarity then shapes the
    // stopband automatically.
    const int sub_order = order / 2;
    const std::array<RemezBand, 1> band{{{0.0, 2.0 * passband_edge, 1.0, 1.0}}};
    RemezResult res = remez_design(sub_order, band);

    // Normalize the subfilter to unit sum: DC gain lands exactly on 1 and,
    // by complementarity, the Nyquist gain on 0.
    const double s = std::accumulate(res.taps.begin(), res.taps.end(), 0.0);
    if (std::abs(s) < 1e-12) throw design_error("halfband subfilter has zero DC gain");

    std::vector<double> unique((order + 2) / 4);
    for (std::size_t i = 0; i < unique.size(); ++i) {
        unique[i] = 0.5 * res.taps[i] / s;
    }
    FilterSpec spec;
    spec.order = order;
    spec.passband_edge = passband_edge;
    spec.stopband_edge = 1.0 - passband_edge;
    spec.kind = FilterKind::halfband;
    spec.interpolation_factor = 1;
    return filter_from_unique(spec, std::move(unique));
}

DesignedFilter design_windowed(int order, double passband_edge, double stopband_edge,
                               double attenuation_db) {
    if (order <= 0 || order % 2 != 0) {
        throw std::invalid_argument("windowed design expects a positive even order");
    }
    if (!(passband_edge > 0.0 && passband_edge < stopband_edge && stopband_edge < 1.0)) {
        throw std::invalid_argument("invalid band edges");
    }
    const double a = attenuation_db;
    double beta = 0.0;
    if (a > 50.0) {
        beta = 0.1102 * (a - 8.7);
    } else if (a >= 21.0) {
        beta = 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0);
    }
    const double fc = 0.5 * (passband_edge + stopband_edge);
    const int half = order / 2;
    const double i0b = bessel_i0(beta);
    std::vector<double> unique(half + 1);
    for (int k = 0; k <= half; ++k) {
        const int d = half - k; // distance from center
        const double sinc = d == 0 ? fc : std::sin(M_PI * fc * d) / (M_PI * d);
        const double t = static_cast<double>(d) / half;
        const double w = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - t * t))) / i0b;
        unique[k] = sinc * w;
    }
    FilterSpec spec;
    spec.order = order;
    spec.passband_edge = passband_edge;
    spec.stopband_edge = stopband_edge;
    spec.target_attenuation_db = attenuation_db;
    spec.kind = FilterKind::general_lowpass;
    return filter_from_unique(spec, std::move(unique));
}

DesignedFilter interpolate_coefficients(const DesignedFilter& f, int factor) {
    if (factor < 1) throw std::invalid_argument("interpolation factor must be >= 1");
    if (f.spec.interpolation_factor != 1) {
        throw std::invalid_argument("filter is already interpolated");
    }
    FilterSpec spec = f.spec;
    spec.interpolation_factor = factor;
    return filter_from_unique(spec, f.unique_coefficients);
}

double min_stopband_attenuation_db(const DesignedFilter& f, int grid_size) {
    const auto resp = magnitude_db(frequency_response(f.coefficients, grid_size));
    double worst = kDbFloor;
    for (int i = 0; i < grid_size; ++i) {
        const double freq = static_cast<double>(i) / (grid_size - 1);
        if (freq >= f.spec.stopband_edge) worst = std::max(worst, resp[i]);
    }
    return -worst;
}

// ---------------------------------------------------------------------------
// Cascade
// ---------------------------------------------------------------------------

int CascadeDesign::group_delay_samples() const {
    int total = 0;
    for (const auto& s : stages) total += s.group_delay_samples();
    return total;
}

double CascadeDesign::group_delay_us(double fs_hz) const {
    return group_delay_samples() / fs_hz * 1e6;
}

CascadeDesign build_cascade(int bandwidth_khz) {
    const auto& entry = bandwidth_entry(bandwidth_khz);

    FilterSpec s1;
    s1.order = kStage1Order;
    s1.passband_edge = entry.fp1;
    s1.stopband_edge = entry.fs1;
    s1.target_attenuation_db = entry.att1_db;
    s1.kind = FilterKind::general_lowpass;
    s1.passband_weight = kPassbandWeight;

    DesignedFilter f1 = interpolate_coefficients(design_equiripple(s1), 4);

    DesignedFilter f2 = design_halfband(kStage2Order, kReferenceFreq / 2.0);
    f2.spec.target_attenuation_db = kStage2AttDb;
    f2 = interpolate_coefficients(f2, 2);

    DesignedFilter f3 = design_halfband(kStage3Order, kReferenceFreq / 4.0);
    f3.spec.target_attenuation_db = kStage3AttDb;

    CascadeDesign c;
    c.bandwidth_khz = bandwidth_khz;
    c.stages = {std::move(f1), std::move(f2), std::move(f3)};
    c.reference_frequency = kReferenceFreq;
    return c;
}

MultiplierReport multiplier_count(const CascadeDesign& c) {
    MultiplierReport r;
    for (std::size_t i = 0; i < c.stages.size(); ++i) {
        r.per_stage[i] = c.stages[i].unique_multipliers();
        r.total += r.per_stage[i];
    }
    return r;
}

std::vector<cplx> frequency_response(std::span<const double> coeffs, int grid_size) {
    if (coeffs.empty()) throw std::invalid_argument("empty coefficient sequence");
    if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
    std::vector<cplx> out(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        out[i] = dtft_at(coeffs, static_cast<double>(i) / (grid_size - 1));
    }
    return out;
}

std::vector<double> magnitude_db(std::span<const cplx> response) {
    std::vector<double> out(response.size());
    for (std::size_t i = 0; i < response.size(); ++i) out[i] = to_db(std::abs(response[i]));
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient bank
// ---------------------------------------------------------------------------

int CoefficientBank::stored_count() const {
    int n = 0;
    for (const auto& [bw, set] : filter1_sets) n += static_cast<int>(set.size());
    return n + static_cast<int>(filter2_unique.size() + filter3_unique.size());
}

CascadeDesign CoefficientBank::reconstruct(int bw_khz) const {
    const auto it = filter1_sets.find(bw_khz);
    if (it == filter1_sets.end()) {
        throw std::invalid_argument("bandwidth not present in coefficient bank");
    }
    const auto& entry = bandwidth_entry(bw_khz);

    FilterSpec s1;
    s1.order = kStage1Order;
    s1.passband_edge = entry.fp1;
    s1.stopband_edge = entry.fs1;
    s1.target_attenuation_db = entry.att1_db;
    s1.kind = FilterKind::general_lowpass;
    s1.passband_weight = kPassbandWeight;
    s1.interpolation_factor = 4;

    FilterSpec s2;
    s2.order = kStage2Order;
    s2.passband_edge = kReferenceFreq / 2.0;
    s2.stopband_edge = 1.0 - kReferenceFreq / 2.0;
    s2.target_attenuation_db = kStage2AttDb;
    s2.kind = FilterKind::halfband;
    s2.interpolation_factor = 2;

    FilterSpec s3;
    s3.order = kStage3Order;
    s3.passband_edge = kReferenceFreq / 4.0;
    s3.stopband_edge = 1.0 - kReferenceFreq / 4.0;
    s3.target_attenuation_db = kStage3AttDb;
    s3.kind = FilterKind::halfband;
    s3.interpolation_factor = 1;

    CascadeDesign c;
    c.bandwidth_khz = bw_khz;
    c.stages = {filter_from_unique(s1, it->second), filter_from_unique(s2, filter2_unique),
                filter_from_unique(s3, filter3_unique)};
    c.reference_frequency = kReferenceFreq;
    return c;
}

CoefficientBank build_coefficient_bank(std::span<const CascadeDesign> cascades) {
    if (cascades.empty()) throw std::invalid_argument("no cascades supplied");
    CoefficientBank bank;
    bank.filter2_unique = cascades.front().stages[1].unique_coefficients;
    bank.filter3_unique = cascades.front().stages[2].unique_coefficients;
    for (const auto& c : cascades) {
        if (c.stages[1].unique_coefficients != bank.filter2_unique ||
            c.stages[2].unique_coefficients != bank.filter3_unique) {
            throw std::runtime_error("masking filters differ across bandwidths");
        }
        bank.filter1_sets[c.bandwidth_khz] = c.stages[0].unique_coefficients;
    }
    return bank;
}

int naive_storage_count() {
    const int per_bw = (kStage1Order / 2 + 1) + (kStage2Order / 2 + 1) + (kStage3Order / 2 + 1);
    return per_bw * static_cast<int>(kBandwidthTable.size());
}

// ---------------------------------------------------------------------------
// Spectral masks
// ---------------------------------------------------------------------------

void SpectralMask::validate() const {
    if (points.size() < 2) throw std::invalid_argument("mask needs at least two points");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].freq <= points[i - 1].freq) {
            throw std::invalid_argument("mask frequencies must be strictly increasing");
        }
    }
}

double SpectralMask::level_at(double freq) const {
    if (points.empty()) throw std::invalid_argument("empty mask");
    if (freq <= points.front().freq) return points.front().level_db;
    if (freq >= points.back().freq) return points.back().level_db;
    auto hi = std::upper_bound(points.begin(), points.end(), freq,
                               [](double f, const MaskPoint& p) { return f < p.freq; });
    const auto lo = hi - 1;
    const double t = (freq - lo->freq) / (hi->freq - lo->freq);
    return lo->level_db + t * (hi->level_db - lo->level_db);
}

bool SpectralMask::in_passband(double freq) const { return level_at(freq) >= 0.0; }

SpectralMask ldacs_mask(int bandwidth_khz) {
    const auto& entry = bandwidth_entry(bandwidth_khz);
    const double fs_s = entry.fs1 / 4.0;
    const double s2 = 1.0 - kReferenceFreq / 2.0; // stage-2 prototype stop edge
    const double s3 = 1.0 - kReferenceFreq / 4.0;

    const auto in_stop1 = [&](double f) { return fold_frequency(4.0 * f) >= entry.fs1; };
    const auto in_stop2 = [&](double f) { return fold_frequency(2.0 * f) >= s2; };
    const auto in_stop3 = [&](double f) { return f >= s3; };

    // Region boundaries: every frequency where some stage enters or leaves
    // its (interpolated) stopband.
    std::vector<double> bounds{fs_s, 1.0};
    for (int j = 0; j <= 2; ++j) {
        for (double sgn : {-1.0, 1.0}) {
            const double f = (2.0 * j + sgn * entry.fs1) / 4.0;
            if (f > fs_s + 1e-12 && f < 1.0) bounds.push_back(f);
        }
    }
    for (int j = 0; j <= 1; ++j) {
        for (double sgn : {-1.0, 1.0}) {
            const double f = (2.0 * j + sgn * s2) / 2.0;
            if (f > fs_s + 1e-12 && f < 1.0) bounds.push_back(f);
        }
    }
    if (s3 > fs_s) bounds.push_back(s3);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 bounds.end());

    SpectralMask mask;
    mask.name = "ldacs-" + std::to_string(bandwidth_khz);
    constexpr double kStep = 1e-7; // step-transition spacing between regions
    mask.points.push_back({0.0, 0.5});
    mask.points.push_back({fs_s - kStep, 0.5});
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double lo = bounds[i];
        const double hi = bounds[i + 1];
        if (hi - lo < 1e-6) continue;
        const double mid = 0.5 * (lo + hi);
        double att = 0.0;
        if (in_stop1(mid)) att += entry.att1_db;
        if (in_stop2(mid)) att += kStage2AttDb;
        if (in_stop3(mid)) att += kStage3AttDb;
        const double level = std::max(-(att - kMaskGuardDb), kMaskFloorDb);
        mask.points.push_back({lo, level});
        mask.points.push_back({hi - (i + 2 < bounds.size() ? kStep : 0.0), level});
    }
    mask.validate();
    return mask;
}

MaskReport verify_mask(std::span<const double> response_db, const SpectralMask& mask) {
    mask.validate();
    if (response_db.size() < 2) throw std::invalid_argument("response too short");
    MaskReport rep;
    rep.worst_margin_db = 1e30;
    const int n = static_cast<int>(response_db.size());
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        if (mask.in_passband(f)) continue;
        const double margin = mask.level_at(f) - response_db[i];
        ++rep.points_checked;
        if (margin < rep.worst_margin_db) rep.worst_margin_db = margin;
        if (margin < 0.0) {
            if (rep.violations == 0) rep.first_violation_freq = f;
            ++rep.violations;
        }
    }
    rep.pass = rep.violations == 0 && rep.points_checked > 0;
    if (rep.points_checked == 0) rep.worst_margin_db = 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Stage-plan evaluation
// ---------------------------------------------------------------------------

int max_interpolation_factor(double f_stop) {
    if (!(f_stop > 0.0 && f_stop < 1.0)) {
        throw std::invalid_argument("stopband edge must lie in (0, 1)");
    }
    return static_cast<int>(std::floor(1.0 / f_stop + 1e-9));
}

std::vector<StagePlan> reference_stage_options() {
    std::vector<StagePlan> plans(4);
    plans[0].name = "option-1";
    plans[0].stages = {{26, 4, FilterKind::general_lowpass}, {50, 1, FilterKind::general_lowpass}};
    plans[1].name = "option-2";
    plans[1].stages = {{44, 3, FilterKind::general_lowpass}, {24, 1, FilterKind::general_lowpass}};
    plans[2].name = "option-3";
    plans[2].stages = {{104, 2, FilterKind::general_lowpass}, {14, 1, FilterKind::halfband}};
    plans[3].name = "option-4";
    plans[3].stages = {{26, 4, FilterKind::general_lowpass},
                       {26, 2, FilterKind::halfband},
                       {14, 1, FilterKind::halfband}};
    return plans;
}

namespace {

/// Designs every stage of a candidate plan for the given signal band and
/// fills in the measured metrics. Throws design_error/invalid_argument on
/// infeasible structure; the caller records the reason.
void evaluate_plan(StagePlan& plan, const SpectralMask& mask, double fp_s, double fs_s) {
    if (plan.stages.empty()) throw std::invalid_argument("plan has no stages");

    const int m0 = plan.stages[0].interpolation;
    if (m0 > max_interpolation_factor(fs_s)) {
        throw design_error("stage-1 interpolation exceeds the feasible maximum");
    }
    if (m0 * fs_s >= 1.0) {
        throw design_error("stage-1 prototype stopband edge reaches Nyquist");
    }
    for (std::size_t i = 1; i < plan.stages.size(); ++i) {
        if (plan.stages[i].interpolation >= m0) {
            throw design_error("masking stages must use decreasing interpolation factors");
        }
    }

    std::vector<DesignedFilter> stages;
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const auto& st = plan.stages[i];
        double fp = 0.0, fs = 0.0;
        if (i == 0) {
            fp = m0 * fp_s;
            fs = m0 * fs_s;
        } else if (plan.stages.size() == 3) {
            // Reference-frequency rule: masking edges derived from the
            // stage-1 stopband edge of the widest supported bandwidth.
            fp = kReferenceFreq * st.interpolation / 4.0;
            fs = 1.0 - fp;
        } else {
            // Two-stage rule: preserve up to the signal stopband edge and
            // cut before the first interpolation image of stage 1.
            fp = fs_s;
            fs = 2.0 / m0 - fs_s;
        }
        DesignedFilter f;
        if (st.kind == FilterKind::halfband) {
            if (std::abs(fp + fs - 1.0) > 1e-6) {
                throw design_error("halfband masking stage needs symmetric edges");
            }
            f = design_halfband(st.order, fp);
        } else {
            FilterSpec s;
            s.order = st.order;
            s.passband_edge = fp;
            s.stopband_edge = fs;
            s.kind = FilterKind::general_lowpass;
            s.passband_weight = kPassbandWeight;
            f = design_equiripple(s);
        }
        if (st.interpolation > 1) f = interpolate_coefficients(f, st.interpolation);
        stages.push_back(std::move(f));
    }

    plan.total_unique_multipliers = 0;
    plan.total_group_delay_samples = 0;
    plan.overall_order = 0;
    std::vector<double> h{1.0};
    for (const auto& f : stages) {
        plan.total_unique_multipliers += f.unique_multipliers();
        plan.total_group_delay_samples += f.group_delay_samples();
        plan.overall_order += f.spec.order * f.spec.interpolation_factor;
        h = convolve(h, f.coefficients);
    }
    const auto rep = verify_mask(magnitude_db(frequency_response(h, 8192)), mask);
    plan.mask_pass = rep.pass;
    plan.mask_margin_db = rep.worst_margin_db;
    plan.feasible = true;
}

} // namespace

std::vector<StagePlan> search_stage_plan(std::vector<StagePlan> candidates,
                                         const SpectralMask& mask, int bandwidth_khz) {
    const auto& entry = bandwidth_entry(bandwidth_khz);
    const double fp_s = entry.fp1 / 4.0;
    const double fs_s = entry.fs1 / 4.0;

    for (auto& plan : candidates) {
        try {
            evaluate_plan(plan, mask, fp_s, fs_s);
        } catch (const std::exception& e) {
            plan.feasible = false;
            plan.infeasible_reason = e.what();
            // Structural counts are still reported for comparison.
            plan.total_unique_multipliers = 0;
            plan.total_group_delay_samples = 0;
            for (const auto& st : plan.stages) {
                plan.total_unique_multipliers += st.kind == FilterKind::halfband
                                                     ? (st.order + 2) / 4
                                                     : st.order / 2 + 1;
                plan.total_group_delay_samples += (st.order / 2) * st.interpolation;
            }
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const StagePlan& a,
                                                              const StagePlan& b) {
        if (a.feasible != b.feasible) return a.feasible;
        if (a.total_unique_multipliers != b.total_unique_multipliers) {
            return a.total_unique_multipliers < b.total_unique_multipliers;
        }
        if (a.total_group_delay_samples != b.total_group_delay_samples) {
            return a.total_group_delay_samples < b.total_group_delay_samples;
        }
        return a.stages.size() < b.stages.size();
    });
    return candidates;
}

DesignedFilter design_single_stage_to_mask(const SpectralMask& mask, int bandwidth_khz,
                                           int max_order) {
    const auto& entry = bandwidth_entry(bandwidth_khz);
    const double fp = entry.fp1 / 4.0;
    const double fs = entry.fs1 / 4.0;

    double floor_db = 0.0;
    for (const auto& p : mask.points) floor_db = std::min(floor_db, p.level_db);
    const double delta = std::pow(10.0, floor_db / 20.0);

    int order = estimate_equiripple_order(fp, fs, delta, delta) - 8;
    order = std::max(4, order - (order % 2));
    for (; order <= max_order; order += 2) {
        FilterSpec s;
        s.order = order;
        s.passband_edge = fp;
        s.stopband_edge = fs;
        s.kind = FilterKind::general_lowpass;
        s.passband_weight = 1.0;
        DesignedFilter f;
        try {
            f = design_equiripple(s);
        } catch (const design_error&) {
            continue;
        }
        const auto rep = verify_mask(magnitude_db(frequency_response(f.coefficients, 8192)),
                                     mask);
        if (rep.pass) return f;
    }
    throw design_error("no single-stage design satisfies the mask within the order limit");
}

} // namespace ldacs
