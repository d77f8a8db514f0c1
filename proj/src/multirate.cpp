// SPDX-License-Identifier: Apache-2.0
#include "ldacs/multirate.hpp"

namespace ldacs {

std::vector<double> fir_process(const DesignedFilter& f, std::span<const double> in) {
    FirFilter<double> fir(f);
    return fir.process(in);
}

std::vector<cplx> fir_process(const DesignedFilter& f, std::span<const cplx> in) {
    FirFilter<cplx> fir(f);
    return fir.process(in);
}

std::vector<double> cascade_process(const CascadeDesign& c, std::span<const double> in) {
    CascadeFilter<double> casc(c);
    return casc.process(in);
}

std::vector<cplx> cascade_process(const CascadeDesign& c, std::span<const cplx> in) {
    CascadeFilter<cplx> casc(c);
    return casc.process(in);
}

std::vector<double> expand_impulse_response(const CascadeDesign& c) {
    std::vector<double> h{1.0};
    for (const auto& s : c.stages) h = convolve(h, s.coefficients);
    return h;
}

} // namespace ldacs
