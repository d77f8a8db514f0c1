// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ldacs/dsp_util.hpp"
#include "ldacs/filter_design.hpp"

namespace ldacs {

/// Emulated two's-complement fixed point: round to nearest (ties to even),
/// saturate at the representable range. Values stay doubles holding exact
/// fixed-point quantities.
struct FixedPointFormat {
    int word_length = 16;
    int fraction_bits = 14;

    void validate() const;
    double lsb() const { return std::ldexp(1.0, -fraction_bits); }
    double max_value() const { return (std::ldexp(1.0, word_length - 1) - 1.0) * lsb(); }
    double min_value() const { return -std::ldexp(1.0, word_length - 1) * lsb(); }

    /// Word-length-only constructor used by the studies: two integer bits of
    /// headroom (values span roughly (-2, 2)).
    static FixedPointFormat for_word(int word_length) {
        return {word_length, word_length - 2};
    }
};

struct QuantizeStats {
    long long saturations = 0;
    long long operations = 0;
};

double quantize_value(double v, const FixedPointFormat& fmt, QuantizeStats* stats = nullptr);
cplx quantize_value(cplx v, const FixedPointFormat& fmt, QuantizeStats* stats = nullptr);
std::vector<double> quantize(std::span<const double> v, const FixedPointFormat& fmt,
                             QuantizeStats* stats = nullptr);
std::vector<cplx> quantize(std::span<const cplx> v, const FixedPointFormat& fmt,
                           QuantizeStats* stats = nullptr);

/// Cascade execution with coefficients held at `filter_fmt` and every
/// product/accumulation rounded and saturated at `datapath_fmt`. The 0.5
/// center tap of the halfband stages is realized as an exact shift. The
/// input is quantized to the datapath format on entry.
class FixedPointCascade {
public:
    FixedPointCascade(const CascadeDesign& c, FixedPointFormat filter_fmt,
                      FixedPointFormat datapath_fmt);

    cplx step(cplx x);
    std::vector<cplx> process(std::span<const cplx> in);
    std::vector<double> process(std::span<const double> in);

    const QuantizeStats& datapath_stats() const { return data_stats_; }
    const QuantizeStats& coefficient_stats() const { return coeff_stats_; }

private:
    struct Tap {
        int index;
        double coeff;   // quantized, or exactly 0.5 for the halfband center
        bool is_shift;  // center tap applied as an arithmetic shift
    };
    struct Stage {
        std::vector<Tap> taps;
        std::vector<cplx> buf;
        std::size_t pos = 0;
    };

    cplx stage_step(Stage& s, cplx x);

    std::vector<Stage> stages_;
    FixedPointFormat data_fmt_;
    QuantizeStats coeff_stats_;
    QuantizeStats data_stats_;
};

/// One-shot helper matching the study scenarios (filter word length vs
/// full-chain word length).
std::vector<cplx> fixed_point_process(const CascadeDesign& c, std::span<const cplx> in,
                                      FixedPointFormat filter_fmt,
                                      FixedPointFormat datapath_fmt,
                                      QuantizeStats* datapath_stats = nullptr);
std::vector<double> fixed_point_process(const CascadeDesign& c, std::span<const double> in,
                                        FixedPointFormat filter_fmt,
                                        FixedPointFormat datapath_fmt,
                                        QuantizeStats* datapath_stats = nullptr);

} // namespace ldacs
