// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ldacs/dsp_util.hpp"

namespace ldacs {

/// Complex FFT/IFFT backed by FFTW (unnormalized, usual DFT convention:
/// forward uses e^{-j2πkn/N}). Plans are cached per size. Not thread-safe;
/// use one instance per thread.
class Fft {
public:
    Fft();
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::span<cplx> data);
    void inverse(std::span<cplx> data); // unnormalized (scale by 1/N yourself)

    std::vector<cplx> forward_copy(std::span<const cplx> data);
    std::vector<cplx> inverse_copy(std::span<const cplx> data);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace ldacs
