#pragma once

#include "monop/hardy.hpp"
#include "monop/l2poly.hpp"
#include "random_inputs.hpp"

namespace monop::testing {

inline MonomialSum random_monomial_sum(Gen& gen, int max_terms = 8, double re_lo = -0.45, double re_hi = 5.0,
                                       double im_abs = 5.0) {
    MonomialSum f;
    const int n = gen.integer(1, max_terms);
    for (int k = 0; k < n; ++k) f.add(gen.complex_in_box(-2.0, 2.0, 2.0), gen.half_plane(re_lo, re_hi, im_abs));
    return f;
}

inline KernelSum random_kernel_sum(Gen& gen, int max_terms = 8, double re_lo = -0.45, double re_hi = 5.0,
                                   double im_abs = 5.0) {
    KernelSum F;
    const int n = gen.integer(1, max_terms);
    for (int k = 0; k < n; ++k) F.add(gen.complex_in_box(-2.0, 2.0, 2.0), gen.half_plane(re_lo, re_hi, im_abs));
    return F;
}

/// Random polynomial with integer exponents in 0..degree.
inline MonomialSum random_polynomial(Gen& gen, int degree, int terms) {
    MonomialSum f;
    for (int k = 0; k < terms; ++k) f.add(gen.complex_in_box(-1.0, 1.0, 1.0), double(gen.integer(0, degree)));
    return f;
}

}  // namespace monop::testing
