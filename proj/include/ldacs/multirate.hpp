// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "ldacs/dsp_util.hpp"
#include "ldacs/filter_design.hpp"

namespace ldacs {

/// Streaming FIR execution with state carry-over. Zero-stuffed taps are
/// skipped entirely (only structurally nonzero taps touch the accumulator),
/// and any block partition of the input yields bit-identical output.
template <typename T>
class FirFilter {
public:
    explicit FirFilter(const DesignedFilter& f)
        : taps_(f.nonzero_taps()), len_(f.coefficients.size()), buf_(len_, T{}) {
        if (len_ == 0) throw std::invalid_argument("filter has no coefficients");
    }

    T step(T x) {
        buf_[pos_] = x;
        T acc{};
        for (const auto& [k, c] : taps_) {
            std::size_t idx = pos_ + len_ - static_cast<std::size_t>(k);
            if (idx >= len_) idx -= len_;
            acc += c * buf_[idx];
        }
        pos_ = pos_ + 1 == len_ ? 0 : pos_ + 1;
        return acc;
    }

    void process(std::span<const T> in, std::span<T> out) {
        if (in.size() != out.size()) throw std::invalid_argument("in/out size mismatch");
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = step(in[i]);
    }

    std::vector<T> process(std::span<const T> in) {
        std::vector<T> out(in.size());
        process(in, std::span<T>(out));
        return out;
    }

    void reset() {
        std::fill(buf_.begin(), buf_.end(), T{});
        pos_ = 0;
    }

private:
    std::vector<std::pair<int, double>> taps_;
    std::size_t len_;
    std::vector<T> buf_;
    std::size_t pos_ = 0;
};

/// The three cascaded stages as one streaming unit.
template <typename T>
class CascadeFilter {
public:
    explicit CascadeFilter(const CascadeDesign& c)
        : s1_(c.stages[0]), s2_(c.stages[1]), s3_(c.stages[2]) {}

    T step(T x) { return s3_.step(s2_.step(s1_.step(x))); }

    std::vector<T> process(std::span<const T> in) {
        std::vector<T> out(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = step(in[i]);
        return out;
    }

    void reset() {
        s1_.reset();
        s2_.reset();
        s3_.reset();
    }

private:
    FirFilter<T> s1_, s2_, s3_;
};

/// One-shot convenience wrappers (zero initial state, length-preserving).
std::vector<double> fir_process(const DesignedFilter& f, std::span<const double> in);
std::vector<cplx> fir_process(const DesignedFilter& f, std::span<const cplx> in);
std::vector<double> cascade_process(const CascadeDesign& c, std::span<const double> in);
std::vector<cplx> cascade_process(const CascadeDesign& c, std::span<const cplx> in);

/// Polynomial convolution of the three zero-stuffed stage coefficient sets;
/// for the standard cascade this is the 171-tap overall impulse response.
std::vector<double> expand_impulse_response(const CascadeDesign& c);

} // namespace ldacs
