// SPDX-License-Identifier: Apache-2.0
#include "ldacs/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <stdexcept>

namespace ldacs {

namespace {
struct PlanEntry {
    std::size_t n;
    int sign;
    fftw_plan plan;
    fftw_complex* buf; // plan is bound to this buffer
};
} // namespace

struct Fft::Impl {
    std::vector<PlanEntry> plans;

    ~Impl() {
        for (auto& e : plans) {
            fftw_destroy_plan(e.plan);
            fftw_free(e.buf);
        }
    }

    PlanEntry& plan_for(std::size_t n, int sign) {
        for (auto& e : plans) {
            if (e.n == n && e.sign == sign) return e;
        }
        auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!buf) throw std::bad_alloc();
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
        if (!p) {
            fftw_free(buf);
            throw std::runtime_error("fftw plan creation failed");
        }
        plans.push_back({n, sign, p, buf});
        return plans.back();
    }

    void run(std::span<cplx> data, int sign) {
        if (data.empty()) return;
        auto& e = plan_for(data.size(), sign);
        std::memcpy(static_cast<void*>(e.buf), static_cast<const void*>(data.data()),
                    data.size() * sizeof(cplx));
        fftw_execute(e.plan);
        std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(e.buf),
                    data.size() * sizeof(cplx));
    }
};

Fft::Fft() : impl_(new Impl) {}
Fft::~Fft() = default;

void Fft::forward(std::span<cplx> data) { impl_->run(data, FFTW_FORWARD); }
void Fft::inverse(std::span<cplx> data) { impl_->run(data, FFTW_BACKWARD); }

std::vector<cplx> Fft::forward_copy(std::span<const cplx> data) {
    std::vector<cplx> out(data.begin(), data.end());
    forward(out);
    return out;
}

std::vector<cplx> Fft::inverse_copy(std::span<const cplx> data) {
    std::vector<cplx> out(data.begin(), data.end());
    inverse(out);
    return out;
}

} // namespace ldacs
