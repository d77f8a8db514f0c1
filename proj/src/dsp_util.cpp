// SPDX-License-Identifier: Apache-2.0
#include "ldacs/dsp_util.hpp"

namespace ldacs {

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

cplx dtft_at(std::span<const double> h, double freq_norm) {
    const double w = M_PI * freq_norm;
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < h.size(); ++n) {
        const double ph = w * static_cast<double>(n);
        acc += h[n] * cplx{std::cos(ph), -std::sin(ph)};
    }
    return acc;
}

cplx dtft_at(std::span<const cplx> h, double freq_norm) {
    const double w = M_PI * freq_norm;
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < h.size(); ++n) {
        const double ph = w * static_cast<double>(n);
        acc += h[n] * cplx{std::cos(ph), -std::sin(ph)};
    }
    return acc;
}

} // namespace ldacs
