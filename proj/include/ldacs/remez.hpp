// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace ldacs {

/// Raised when an equiripple exchange fails to converge or the band/order
/// combination is structurally infeasible.
class design_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One approximation band for the exchange: [lo, hi] in normalized frequency
/// (Nyquist = 1), with the desired amplitude and Chebyshev weight on it.
struct RemezBand {
    double lo;
    double hi;
    double desired;
    double weight;
};

struct RemezResult {
    std::vector<double> taps; // full symmetric impulse response, length order+1
    double delta;             // final weighted ripple
    int iterations;
};

/// Weighted-Chebyshev linear-phase FIR design by Remez exchange.
/// Supports symmetric type-I (even order) and type-II (odd order) filters.
/// Grid density: 16·(order+1) points per band; convergence when the excess
/// of the worst grid error over the reference ripple drops below 1e-6
/// relative; at most 250 exchange iterations.
RemezResult remez_design(int order, std::span<const RemezBand> bands);

} // namespace ldacs
