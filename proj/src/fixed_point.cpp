// SPDX-License-Identifier: Apache-2.0
#include "ldacs/fixed_point.hpp"

#include <stdexcept>

namespace ldacs {

void FixedPointFormat::validate() const {
    if (word_length < 2 || word_length > 64) {
        throw std::invalid_argument("word length must be in [2, 64]");
    }
    if (fraction_bits < 0 || fraction_bits >= word_length) {
        throw std::invalid_argument("fraction bits must be below the word length");
    }
}

double quantize_value(double v, const FixedPointFormat& fmt, QuantizeStats* stats) {
    const double scaled = std::ldexp(v, fmt.fraction_bits);
    // nearbyint under the default FP environment rounds ties to even
    double q = std::nearbyint(scaled);
    const double hi = std::ldexp(1.0, fmt.word_length - 1) - 1.0;
    const double lo = -std::ldexp(1.0, fmt.word_length - 1);
    bool sat = false;
    if (q > hi) {
        q = hi;
        sat = true;
    } else if (q < lo) {
        q = lo;
        sat = true;
    }
    if (stats) {
        ++stats->operations;
        stats->saturations += sat ? 1 : 0;
    }
    return std::ldexp(q, -fmt.fraction_bits);
}

cplx quantize_value(cplx v, const FixedPointFormat& fmt, QuantizeStats* stats) {
    return {quantize_value(v.real(), fmt, stats), quantize_value(v.imag(), fmt, stats)};
}

std::vector<double> quantize(std::span<const double> v, const FixedPointFormat& fmt,
                             QuantizeStats* stats) {
    fmt.validate();
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = quantize_value(v[i], fmt, stats);
    return out;
}

std::vector<cplx> quantize(std::span<const cplx> v, const FixedPointFormat& fmt,
                           QuantizeStats* stats) {
    fmt.validate();
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = quantize_value(v[i], fmt, stats);
    return out;
}

FixedPointCascade::FixedPointCascade(const CascadeDesign& c, FixedPointFormat filter_fmt,
                                     FixedPointFormat datapath_fmt)
    : data_fmt_(datapath_fmt) {
    filter_fmt.validate();
    datapath_fmt.validate();
    for (const auto& f : c.stages) {
        Stage st;
        const int center =
            f.spec.kind == FilterKind::halfband
                ? (f.spec.order / 2) * f.spec.interpolation_factor
                : -1;
        for (const auto& [idx, coeff] : f.nonzero_taps()) {
            Tap t;
            t.index = idx;
            t.is_shift = (idx == center);
            t.coeff = t.is_shift ? 0.5 : quantize_value(coeff, filter_fmt, &coeff_stats_);
            st.taps.push_back(t);
        }
        st.buf.assign(f.coefficients.size(), cplx{});
        stages_.push_back(std::move(st));
    }
}

cplx FixedPointCascade::stage_step(Stage& s, cplx x) {
    s.buf[s.pos] = x;
    const std::size_t len = s.buf.size();
    cplx acc{};
    for (const auto& t : s.taps) {
        std::size_t idx = s.pos + len - static_cast<std::size_t>(t.index);
        if (idx >= len) idx -= len;
        // the 0.5 center tap halves exactly; everything else rounds
        cplx prod = t.coeff * s.buf[idx];
        if (!t.is_shift) prod = quantize_value(prod, data_fmt_, &data_stats_);
        acc = quantize_value(acc + prod, data_fmt_, &data_stats_);
    }
    s.pos = s.pos + 1 == len ? 0 : s.pos + 1;
    return acc;
}

cplx FixedPointCascade::step(cplx x) {
    cplx v = quantize_value(x, data_fmt_, &data_stats_);
    for (auto& s : stages_) v = stage_step(s, v);
    return v;
}

std::vector<cplx> FixedPointCascade::process(std::span<const cplx> in) {
    std::vector<cplx> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = step(in[i]);
    return out;
}

std::vector<double> FixedPointCascade::process(std::span<const double> in) {
    std::vector<double> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = step({in[i], 0.0}).real();
    return out;
}

std::vector<cplx> fixed_point_process(const CascadeDesign& c, std::span<const cplx> in,
                                      FixedPointFormat filter_fmt,
                                      FixedPointFormat datapath_fmt,
                                      QuantizeStats* datapath_stats) {
    FixedPointCascade fp(c, filter_fmt, datapath_fmt);
    auto out = fp.process(in);
    if (datapath_stats) *datapath_stats = fp.datapath_stats();
    return out;
}

std::vector<double> fixed_point_process(const CascadeDesign& c, std::span<const double> in,
                                        FixedPointFormat filter_fmt,
                                        FixedPointFormat datapath_fmt,
                                        QuantizeStats* datapath_stats) {
    FixedPointCascade fp(c, filter_fmt, datapath_fmt);
    auto out = fp.process(in);
    if (datapath_stats) *datapath_stats = fp.datapath_stats();
    return out;
}

} // namespace ldacs
