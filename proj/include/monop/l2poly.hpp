#pragma once

// Finite sums of complex powers x^s in L^2[0,1], with s in the half-plane
// Re s > -1/2, and coordinates of polynomials in the orthonormal shifted
// Legendre basis q_k(x) = sqrt(2k+1) P_k(2x-1).

#include "monop/halfplane.hpp"
#include "monop/json_support.hpp"

#include <Eigen/Dense>

#include <vector>

namespace monop {

struct MonomialTerm {
    Complex coeff;
    HalfPlanePoint exponent;
};

/// sum_k coeff_k x^{exponent_k}. Terms whose exponents agree after rounding
/// to a 1e-14 grid are merged, keeping the first exponent seen.
class MonomialSum {
public:
    MonomialSum() = default;
    MonomialSum(std::initializer_list<MonomialTerm> terms);
    explicit MonomialSum(const std::vector<MonomialTerm>& terms);

    static MonomialSum monomial(HalfPlanePoint exponent, Complex coeff = 1.0) { return MonomialSum({{coeff, exponent}}); }

    MonomialSum& add(Complex coeff, HalfPlanePoint exponent);

    const std::vector<MonomialTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    MonomialSum& operator+=(const MonomialSum& other);
    MonomialSum& operator*=(Complex scalar);

private:
    std::vector<MonomialTerm> terms_;
};

MonomialSum operator+(MonomialSum a, const MonomialSum& b);
MonomialSum operator*(Complex scalar, MonomialSum f);

struct LegendreCoords {
    int degree = 0;
    Eigen::VectorXcd coeffs;
};

/// <f, h> = int_0^1 f conj(h) dx in closed form: sum a_i conj(b_j) / (1 + s_i + conj t_j).
Complex l2_inner(const MonomialSum& f, const MonomialSum& h);

/// The same integral by adaptive Gauss-Kronrod quadrature after x = exp(-v).
/// Absolute error target 1e-10; throws QuadratureNoConvergence beyond it.
Complex quadrature_inner(const MonomialSum& f, const MonomialSum& h);

/// Coordinates of a polynomial with integer exponents 0..N in the orthonormal
/// shifted Legendre basis. Throws ExponentOutOfRange otherwise.
LegendreCoords to_legendre(const MonomialSum& f, int N);

/// <x^n, q_k> for 0 <= k <= n (zero for k > n).
double monomial_legendre_coeff(int n, int k);

/// f(x) with x^s = exp(s ln x). Throws DomainError unless 0 < x <= 1.
Complex eval_monomial_sum(const MonomialSum& f, double x);

void to_json(Json& j, const MonomialSum& f);
void from_json(const Json& j, MonomialSum& f);

}  // namespace monop
