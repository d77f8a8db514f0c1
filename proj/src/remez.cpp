// SPDX-License-Identifier: Apache-2.0
#include "ldacs/remez.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace ldacs {

namespace {

constexpr int kGridDensity = 16;
constexpr int kMaxIterations = 250;
constexpr double kConvergenceTol = 1e-6;

struct Grid {
    std::vector<double> omega; // radian frequency, ascending
    std::vector<double> x;     // cos(omega)
    std::vector<double> des;   // desired (after type-II transform)
    std::vector<double> wt;    // weight (after type-II transform)
};

Grid build_grid(int order, std::span<const RemezBand> bands, bool type2) {
    Grid g;
    const int per_band = kGridDensity * (order + 1);
    for (const auto& b : bands) {
        for (int i = 0; i < per_band; ++i) {
            const double f = b.lo + (b.hi - b.lo) * static_cast<double>(i) /
                                        static_cast<double>(per_band - 1);
            double w = M_PI * f;
            double des = b.desired;
            double wt = b.weight;
            if (type2) {
                // A(w) = cos(w/2) P(w): absorb the factor into D and W.
                // cos(w/2) -> 0 at Nyquist, so nudge grid points off pi.
                if (w > M_PI - 1e-9) w = M_PI - 1e-9;
                const double c = std::cos(0.5 * w);
                des /= c;
                wt *= c;
            }
            g.omega.push_back(w);
            g.x.push_back(std::cos(w));
            g.des.push_back(des);
            g.wt.push_back(wt);
        }
    }
    return g;
}

/// Barycentric weights 1/prod(x_k - x_j). The factor-of-2 scaling keeps the
/// products in range for node counts up to a few hundred.
std::vector<double> bary_weights(const std::vector<double>& xs) {
    const std::size_t m = xs.size();
    std::vector<double> w(m, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != k) prod *= 2.0 * (xs[k] - xs[j]);
        }
        w[k] = 1.0 / prod;
    }
    return w;
}

struct Interpolant {
    std::vector<double> x;  // nodes (cos omega)
    std::vector<double> y;  // A(x) at nodes
    std::vector<double> bw; // barycentric weights

    double eval(double xq) const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double dx = xq - x[k];
            if (std::abs(dx) < 1e-14) return y[k];
            const double t = bw[k] / dx;
            num += t * y[k];
            den += t;
        }
        return num / den;
    }
};

} // namespace

RemezResult remez_design(int order, std::span<const RemezBand> bands) {
    if (order < 1) throw design_error("remez: order must be positive");
    if (bands.empty()) throw design_error("remez: no bands");
    for (const auto& b : bands) {
        if (!(b.lo >= 0.0 && b.hi <= 1.0 && b.lo < b.hi)) {
            throw design_error("remez: invalid band edges");
        }
        if (b.weight <= 0.0) throw design_error("remez: weight must be positive");
    }
    for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i].lo <= bands[i - 1].hi) throw design_error("remez: bands overlap");
    }

    const bool type2 = (order % 2) != 0;
    // Cosine-polynomial degree r-1; r coefficients; r+1 alternations.
    const int r = type2 ? (order + 1) / 2 : order / 2 + 1;

    Grid grid = build_grid(order, bands, type2);
    const std::size_t gsize = grid.omega.size();
    if (gsize < static_cast<std::size_t>(r + 1)) {
        throw design_error("remez: grid smaller than extremal count");
    }

    // Initial reference: uniform in frequency across the band union (per-band
    // node counts proportional to bandwidth). A uniform-in-index spread would
    // cluster nodes in narrow bands and wreck the barycentric ripple
    // computation at high orders.
    std::vector<std::size_t> ext;
    {
        const int per_band = kGridDensity * (order + 1);
        double total_width = 0.0;
        for (const auto& b : bands) total_width += b.hi - b.lo;
        std::size_t last = 0;
        for (int k = 0; k <= r; ++k) {
            double target = total_width * static_cast<double>(k) / static_cast<double>(r);
            std::size_t idx = gsize - 1;
            double off = 0.0;
            for (std::size_t bi = 0; bi < bands.size(); ++bi) {
                const double w = bands[bi].hi - bands[bi].lo;
                if (target <= off + w + 1e-15) {
                    const double frac = std::clamp((target - off) / w, 0.0, 1.0);
                    idx = bi * static_cast<std::size_t>(per_band) +
                          static_cast<std::size_t>(std::lround(frac * (per_band - 1)));
                    break;
                }
                off += w;
            }
            if (!ext.empty() && idx <= last) idx = last + 1;
            if (idx >= gsize) idx = gsize - 1;
            ext.push_back(idx);
            last = idx;
        }
    }

    Interpolant itp;
    double delta = 0.0;
    int iter = 0;
    std::vector<double> err(gsize);

    for (iter = 1; iter <= kMaxIterations; ++iter) {
        // Reference ripple from the alternation conditions.
        std::vector<double> xs(r + 1), bw;
        for (int k = 0; k <= r; ++k) xs[k] = grid.x[ext[k]];
        bw = bary_weights(xs);

        double num = 0.0, den = 0.0;
        double sign = 1.0;
        for (int k = 0; k <= r; ++k) {
            num += bw[k] * grid.des[ext[k]];
            den += sign * bw[k] / grid.wt[ext[k]];
            sign = -sign;
        }
        if (den == 0.0) throw design_error("remez: degenerate reference set");
        delta = num / den;

        // Interpolate A through r of the r+1 alternation values.
        itp.x.assign(xs.begin(), xs.end() - 1);
        itp.y.resize(r);
        sign = 1.0;
        for (int k = 0; k < r; ++k) {
            itp.y[k] = grid.des[ext[k]] - sign * delta / grid.wt[ext[k]];
            sign = -sign;
        }
        itp.bw = bary_weights(itp.x);

        // Weighted error on the dense grid.
        for (std::size_t i = 0; i < gsize; ++i) {
            err[i] = grid.wt[i] * (itp.eval(grid.x[i]) - grid.des[i]);
        }

        // Candidate extrema: signed local maxima of the weighted error plus
        // every band edge (band edges are generically extremal in the
        // multiband Chebyshev solution, and forcing them keeps alternation
        // alive across transition gaps). Same-signed neighbors collapse to
        // the larger one.
        const int per_band = kGridDensity * (order + 1);
        std::vector<std::size_t> raw;
        for (std::size_t i = 0; i < gsize; ++i) {
            const std::size_t in_band = i % static_cast<std::size_t>(per_band);
            const bool at_lo = (in_band == 0);
            const bool at_hi = (in_band == static_cast<std::size_t>(per_band - 1));
            const double a = std::abs(err[i]);
            const bool rises = at_lo || a >= std::abs(err[i - 1]);
            const bool falls = at_hi || a > std::abs(err[i + 1]);
            if ((rises && falls && a > 0.0) || at_lo || at_hi) raw.push_back(i);
        }
        std::vector<std::size_t> cand;
        for (std::size_t i : raw) {
            if (!cand.empty() && (err[cand.back()] > 0) == (err[i] > 0)) {
                if (std::abs(err[i]) > std::abs(err[cand.back()])) cand.back() = i;
            } else {
                cand.push_back(i);
            }
        }

        if (cand.size() < static_cast<std::size_t>(r + 1)) {
            throw design_error("remez: too few extremal frequencies (order likely too high "
                               "for the band structure)");
        }
        // Trim to r+1, dropping the weaker end repeatedly (keeps alternation).
        while (cand.size() > static_cast<std::size_t>(r + 1)) {
            if (std::abs(err[cand.front()]) < std::abs(err[cand.back()])) {
                cand.erase(cand.begin());
            } else {
                cand.pop_back();
            }
        }
        ext.assign(cand.begin(), cand.end());

        double emax = 0.0;
        for (std::size_t i : ext) emax = std::max(emax, std::abs(err[i]));
        if (emax - std::abs(delta) < kConvergenceTol * std::abs(delta)) break;
        if (iter == kMaxIterations) {
            throw design_error("remez: no convergence after bounded iteration count");
        }
    }

    // Rebuild the interpolant from the final reference so the sampled
    // amplitude matches the converged solution.
    {
        std::vector<double> xs(r + 1);
        for (int k = 0; k <= r; ++k) xs[k] = grid.x[ext[k]];
        auto bw = bary_weights(xs);
        double num = 0.0, den = 0.0, sign = 1.0;
        for (int k = 0; k <= r; ++k) {
            num += bw[k] * grid.des[ext[k]];
            den += sign * bw[k] / grid.wt[ext[k]];
            sign = -sign;
        }
        delta = num / den;
        itp.x.assign(xs.begin(), xs.end() - 1);
        itp.y.resize(r);
        sign = 1.0;
        for (int k = 0; k < r; ++k) {
            itp.y[k] = grid.des[ext[k]] - sign * delta / grid.wt[ext[k]];
            sign = -sign;
        }
        itp.bw = bary_weights(itp.x);
    }

    // Sample the cosine polynomial at 2r-1 uniform frequencies and recover
    // its coefficients by discrete orthogonality, then map to filter taps.
    const int m = 2 * r - 1;
    std::vector<double> a(m);
    for (int j = 0; j < m; ++j) {
        const double w = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m);
        a[j] = itp.eval(std::cos(w));
    }
    std::vector<double> c(r, 0.0);
    for (int k = 0; k < r; ++k) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
            acc += a[j] * std::cos(2.0 * M_PI * static_cast<double>(k * j) /
                                   static_cast<double>(m));
        }
        c[k] = acc * (k == 0 ? 1.0 : 2.0) / static_cast<double>(m);
    }

    RemezResult res;
    res.delta = std::abs(delta);
    res.iterations = iter;
    res.taps.assign(order + 1, 0.0);
    if (!type2) {
        // A(w) = c0 + sum c_k cos(kw); center tap c0, pairs c_k/2.
        const int ctr = order / 2;
        res.taps[ctr] = c[0];
        for (int k = 1; k < r; ++k) {
            res.taps[ctr - k] = 0.5 * c[k];
            res.taps[ctr + k] = 0.5 * c[k];
        }
    } else {
        // A(w) = cos(w/2) P(w) = sum b_m cos((m+1/2) w).
        std::vector<double> b(r, 0.0);
        b[0] = c[0] + 0.5 * (r > 1 ? c[1] : 0.0);
        for (int k = 1; k < r - 1; ++k) b[k] = 0.5 * (c[k] + c[k + 1]);
        if (r > 1) b[r - 1] = 0.5 * c[r - 1];
        // taps length 2r: h[r-1-m] = h[r+m] = b_m / 2.
        for (int k = 0; k < r; ++k) {
            res.taps[r - 1 - k] = 0.5 * b[k];
            res.taps[r + k] = 0.5 * b[k];
        }
    }
    return res;
}

} // namespace ldacs
