// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ldacs/dsp_util.hpp"
#include "ldacs/remez.hpp"

namespace ldacs {

// ---------------------------------------------------------------------------
// Design constants for the reconfigurable three-stage transmit filter.
// Normalized frequencies use the Nyquist = 1 convention at fs = 4 MHz.
// ---------------------------------------------------------------------------

inline constexpr double kSampleRateHz = 4e6;

/// Stage-1 prototype band edges and nominal attenuation per transmission
/// bandwidth. Edges are 4x the signal band edges (the stage-1 prototype is
/// interpolated by 4).
struct BandwidthEntry {
    int bw_khz;
    double fp1;
    double fs1;
    double att1_db; // nominal minimum stopband attenuation, magnitude
};

inline constexpr std::array<BandwidthEntry, 4> kBandwidthTable{{
    {342, 0.3418, 0.6724, 70.5},
    {498, 0.4980, 0.6724, 37.9},
    {654, 0.6543, 0.7950, 31.5},
    {732, 0.7324, 0.7950, 14.5},
}};

/// Reference frequency F_m: stage-1 stopband edge of the widest bandwidth.
/// The masking stages are derived from it and shared by all bandwidths.
inline constexpr double kReferenceFreq = 0.795;

inline constexpr int kStage1Order = 26;
inline constexpr int kStage2Order = 26;
inline constexpr int kStage3Order = 14;
inline constexpr double kStage2AttDb = 43.1; // nominal, halfband masking stage
inline constexpr double kStage3AttDb = 81.8;

/// Passband:stopband Chebyshev weight ratio for the stage-1 prototypes.
/// Keeps the passband deviation a factor ~3 under the stopband deviation so
/// the cascaded in-band ripple stays inside a ±0.5 dB envelope even for the
/// widest (shallowest) bandwidth.
inline constexpr double kPassbandWeight = 3.1622776601683795;

const BandwidthEntry& bandwidth_entry(int bw_khz); // throws invalid_argument

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class FilterKind { general_lowpass, halfband };

struct FilterSpec {
    int order = 0;                    // N, even
    double passband_edge = 0.0;       // (0,1), Nyquist = 1
    double stopband_edge = 0.0;       // (0,1)
    double target_attenuation_db = 0; // nominal magnitude, informational
    FilterKind kind = FilterKind::general_lowpass;
    int interpolation_factor = 1;     // M >= 1
    double passband_weight = 1.0;     // Chebyshev weight ratio pass:stop

    void validate() const; // throws std::invalid_argument
};

/// Symmetric linear-phase FIR with the zero-stuffed interpolation structure
/// applied. `coefficients` has length order*M + 1; `unique_coefficients` is
/// the stored half: for general filters taps 0..N/2 (N/2+1 values), for
/// halfband filters the nonzero taps on one side of the center (the 0.5
/// center tap is implied, realized as a shift).
struct DesignedFilter {
    FilterSpec spec;
    std::vector<double> coefficients;
    std::vector<double> unique_coefficients;

    int unique_multipliers() const;
    int group_delay_samples() const; // (N/2) * M
    std::vector<std::pair<int, double>> nonzero_taps() const;
};

/// Rebuild the full zero-stuffed coefficient set from a stored unique half.
/// Designers and the coefficient bank share this path, so bank round-trips
/// are bit-exact.
DesignedFilter filter_from_unique(const FilterSpec& spec, std::vector<double> unique);

// ---------------------------------------------------------------------------
// Designers
// ---------------------------------------------------------------------------

/// Weighted equiripple lowpass of the given even order; interpolation is not
/// applied here (spec.interpolation_factor must be 1).
DesignedFilter design_equiripple(const FilterSpec& spec);

/// Equiripple halfband of even order N (N/2 odd) with passband edge fp and
/// stopband edge 1-fp. Designed through the half-length transformation: the
/// nonzero-tap subfilter is an equiripple approximation of 1 on [0, 2*fp],
/// then zero-stuffed around the exact 0.5 center tap.
DesignedFilter design_halfband(int order, double passband_edge);

/// Kaiser-windowed lowpass (robustness fallback / comparison designer).
DesignedFilter design_windowed(int order, double passband_edge, double stopband_edge,
                               double attenuation_db);

/// Zero-stuff by M: H_out(w) = H_in(M*w). Requires an uninterpolated input.
DesignedFilter interpolate_coefficients(const DesignedFilter& f, int factor);

/// Minimum measured attenuation over [stopband_edge, 1] of an uninterpolated
/// prototype, from a dense response sweep.
double min_stopband_attenuation_db(const DesignedFilter& f, int grid_size = 8192);

// ---------------------------------------------------------------------------
// Cascade
// ---------------------------------------------------------------------------

struct MultiplierReport {
    std::array<int, 3> per_stage{};
    int total = 0;
};

struct CascadeDesign {
    int bandwidth_khz = 0;
    std::array<DesignedFilter, 3> stages; // I (M=4), II (M=2), III (M=1)
    double reference_frequency = kReferenceFreq;

    int group_delay_samples() const;
    double group_delay_us(double fs_hz = kSampleRateHz) const;
};

CascadeDesign build_cascade(int bandwidth_khz);
MultiplierReport multiplier_count(const CascadeDesign& c);

/// DTFT samples on a uniform grid over [0, 1] normalized frequency.
std::vector<cplx> frequency_response(std::span<const double> coeffs, int grid_size);
std::vector<double> magnitude_db(std::span<const cplx> response);

// ---------------------------------------------------------------------------
// Coefficient bank
// ---------------------------------------------------------------------------

struct CoefficientBank {
    std::map<int, std::vector<double>> filter1_sets; // bw_khz -> 14 values
    std::vector<double> filter2_unique;              // 7 values
    std::vector<double> filter3_unique;              // 4 values

    int stored_count() const;
    CascadeDesign reconstruct(int bw_khz) const;
};

/// Assemble the shared bank from per-bandwidth cascades; the masking stages
/// must compare equal across all of them.
CoefficientBank build_coefficient_bank(std::span<const CascadeDesign> cascades);

/// Storage required when every bandwidth keeps private (symmetric-half)
/// copies of all three stages.
int naive_storage_count();

// ---------------------------------------------------------------------------
// Spectral masks
// ---------------------------------------------------------------------------

struct MaskPoint {
    double freq;     // normalized offset, Nyquist = 1
    double level_db; // maximum relative level
};

struct SpectralMask {
    std::string name;
    std::vector<MaskPoint> points;

    double level_at(double freq) const;  // piecewise-linear, ends clamped
    bool in_passband(double freq) const; // mask level >= 0 dB
    void validate() const;
};

/// Piecewise mask assembled from the per-stage nominal attenuations: the
/// passband envelope is +0.5 dB (held through the filter transition), each
/// region outside carries the summed nominal attenuation of the stages whose
/// stopbands cover it, minus a 2 dB construction guard, floored at -80 dB.
SpectralMask ldacs_mask(int bandwidth_khz);

struct MaskReport {
    bool pass = false;
    double worst_margin_db = 0.0;      // min(mask - response) outside passband
    double first_violation_freq = -1.0;
    int points_checked = 0;
    int violations = 0;
};

/// Response samples are assumed uniform over [0, 1] normalized frequency.
/// Points inside the mask passband are excluded.
MaskReport verify_mask(std::span<const double> response_db, const SpectralMask& mask);

// ---------------------------------------------------------------------------
// Stage-plan evaluation
// ---------------------------------------------------------------------------

int max_interpolation_factor(double f_stop); // floor(1 / f_stop)

struct StageTemplate {
    int order;
    int interpolation;
    FilterKind kind;
};

struct StagePlan {
    std::string name;
    std::vector<StageTemplate> stages;

    // filled by evaluation:
    bool feasible = false;
    std::string infeasible_reason;
    int total_unique_multipliers = 0;
    int total_group_delay_samples = 0;
    int overall_order = 0;
    bool mask_pass = false;
    double mask_margin_db = 0.0;
};

/// The four candidate plans from the design exploration (2-stage variants
/// plus the final 3-stage plan).
std::vector<StagePlan> reference_stage_options();

/// Designs each candidate's stages for the given bandwidth, measures the
/// cascaded response against the mask, fills the complexity metrics, and
/// returns the plans ranked by multiplier count (ties: group delay, then
/// stage count). Infeasible candidates are kept, marked with a reason.
std::vector<StagePlan> search_stage_plan(std::vector<StagePlan> candidates,
                                         const SpectralMask& mask, int bandwidth_khz);

/// Minimum-order single-stage equiripple design whose response satisfies the
/// composite mask (equal pass/stop weights, stopband at the mask floor).
DesignedFilter design_single_stage_to_mask(const SpectralMask& mask, int bandwidth_khz,
                                           int max_order = 400);

} // namespace ldacs
