// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace ldacs {

/// Deterministic random stream. The raw generator is std::mt19937_64 (its
/// output sequence is pinned by the standard); all distributions are derived
/// here from raw 64-bit draws so that results are reproducible across
/// platforms and library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream for trial `index` under a master seed. SplitMix64
    /// scrambling keeps nearby (seed, index) pairs uncorrelated, so parallel
    /// and serial trial execution draw identical per-trial sequences.
    static Rng for_trial(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1] (safe as a log() argument).
    double uniform_pos() { return 1.0 - uniform(); }

    bool bit() { return (gen_() >> 63) != 0; }

    /// Standard normal via Box-Muller (pair cached).
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 2.0 * M_PI * uniform();
        cached_ = r * std::sin(phi);
        have_cached_ = true;
        return r * std::cos(phi);
    }

    /// Circularly-symmetric complex normal with E|z|^2 = 1.
    std::complex<double> cgaussian() {
        const double r = std::sqrt(-std::log(uniform_pos()));
        const double phi = 2.0 * M_PI * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    /// Exponential with the given mean.
    double exponential(double mean) { return -mean * std::log(uniform_pos()); }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace ldacs
