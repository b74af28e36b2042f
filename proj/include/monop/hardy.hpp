#pragma once

// The Hardy space H^2 of the half-plane Re s > -1/2: finite sums of
// reproducing kernels, the unitary U : L^2[0,1] -> H^2 with
// U x^s = k_{conj s} / (1 + s), and the boundary-integral form of the norm
//
//   ||F||^2 = (1/2pi) int |F(-1/2 + it)|^2 / (t^2 + 1/4) dt.
//
// Inner products follow <k_u, k_s> = k(s, u).

#include "monop/halfplane.hpp"
#include "monop/json_support.hpp"
#include "monop/l2poly.hpp"

#include <functional>
#include <vector>

namespace monop {

struct KernelTerm {
    Complex coeff;
    HalfPlanePoint point;
};

/// sum_k coeff_k k_{point_k}. Points that agree after rounding to a 1e-14
/// grid are merged, keeping the first point seen.
class KernelSum {
public:
    KernelSum() = default;
    KernelSum(std::initializer_list<KernelTerm> terms);
    explicit KernelSum(const std::vector<KernelTerm>& terms);

    static KernelSum kernel_at(HalfPlanePoint u, Complex coeff = 1.0) { return KernelSum({{coeff, u}}); }

    KernelSum& add(Complex coeff, HalfPlanePoint point);

    const std::vector<KernelTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// F(s) = sum a_k k(s, u_k). Also valid on the boundary line and beyond,
    /// wherever no denominator vanishes.
    Complex operator()(Complex s) const;

    KernelSum& operator+=(const KernelSum& other);
    KernelSum& operator*=(Complex scalar);

private:
    std::vector<KernelTerm> terms_;
};

KernelSum operator+(KernelSum a, const KernelSum& b);
KernelSum operator*(Complex scalar, KernelSum F);

/// x^s -> k_{conj s} / (1 + s), extended linearly.
KernelSum u_apply(const MonomialSum& f);

/// (Uf)(s) = (1 + s) int_0^1 f(x) x^s dx, computed by quadrature.
Complex u_pointwise(const MonomialSum& f, HalfPlanePoint s);

/// k_u -> (1 + conj u) x^{conj u}, extended linearly.
MonomialSum u_inverse(const KernelSum& F);

/// sum_ij a_i conj(b_j) k(t_j, u_i) for F = sum a_i k_{u_i}, G = sum b_j k_{t_j}.
Complex hardy_inner(const KernelSum& F, const KernelSum& G);

/// ||F||^2 from boundary values, integrated over t = tan(theta)/2 so the whole
/// line is covered without truncation. `peaks` lists boundary ordinates t
/// near which F varies quickly; the integration is split there.
/// Throws QuadratureNoConvergence if the error estimate exceeds 1e-9 relative.
double boundary_norm_sq(const std::function<Complex(Complex)>& F, const std::vector<double>& peaks = {});
double boundary_norm_sq(const KernelSum& F);

void to_json(Json& j, const KernelSum& F);
void from_json(const Json& j, KernelSum& F);

}  // namespace monop
