// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace ldacs {

using cplx = std::complex<double>;

/// Magnitude floor used whenever responses are reported in dB; keeps nulls
/// out of logs and CSV files.
inline constexpr double kDbFloor = -200.0;

inline double to_db(double magnitude) {
    const double floor_mag = std::pow(10.0, kDbFloor / 20.0);
    return 20.0 * std::log10(std::max(magnitude, floor_mag));
}

inline double mean_power(std::span<const cplx> x) {
    double acc = 0.0;
    for (const auto& v : x) acc += std::norm(v);
    return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

inline double mean_power(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

/// Linear convolution of two real sequences.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// DTFT of a real sequence at a single normalized frequency (Nyquist = 1).
cplx dtft_at(std::span<const double> h, double freq_norm);

/// DTFT of a complex sequence at a single normalized frequency.
cplx dtft_at(std::span<const cplx> h, double freq_norm);

/// Gaussian tail probability Q(x).
inline double q_func(double x) { return 0.5 * std::erfc(x / M_SQRT2); }

} // namespace ldacs
