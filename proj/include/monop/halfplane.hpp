#pragma once

// Geometry of the half-plane H = {Re s > -1/2}: the Moebius map onto the
// unit disk, the reproducing kernel of H^2(H), and the automorphisms of H.

#include "monop/bigfloat.hpp"
#include "monop/scalar.hpp"

#include <complex>

namespace monop {

/// Points closer than this to the line Re s = -1/2 are rejected.
inline constexpr double kBoundaryMargin = 1e-12;

/// True when Re z > -1/2 + kBoundaryMargin (and z is finite).
bool in_half_plane(Complex z);

/// A point of H. Construction off H throws DomainError.
class HalfPlanePoint {
public:
    HalfPlanePoint(Complex value);
    HalfPlanePoint(double value) : HalfPlanePoint(Complex(value, 0.0)) {}

    Complex value() const { return value_; }
    double real() const { return value_.real(); }
    double imag() const { return value_.imag(); }

    friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

private:
    Complex value_;
};

/// lambda(s) = s / (s + 1), mapping H onto the unit disk.
Complex moebius_lambda(HalfPlanePoint s);
/// lambda^{-1}(z) = z / (1 - z). Throws DomainError unless |z| < 1.
HalfPlanePoint moebius_lambda_inv(Complex z);

/// Reproducing kernel k(s,u) = (1+s)(1+conj u)/(1+s+conj u) = <k_u, k_s>.
Complex kernel_eval(HalfPlanePoint s, HalfPlanePoint u);
/// Same formula without the domain check.
inline Complex kernel(Complex s, Complex u) {
    const Complex ub = std::conj(u);
    return (1.0 + s) * (1.0 + ub) / (1.0 + s + ub);
}

/// Automorphism of H obtained by conjugating the disk automorphism
/// b(z) = e^{i rotation} (z - a) / (1 - conj(a) z) with lambda.
class HalfPlaneAutomorphism {
public:
    /// Throws DomainError unless |a| < 1. The rotation is reduced to [0, 2pi).
    HalfPlaneAutomorphism(double rotation, Complex a);

    static HalfPlaneAutomorphism identity() { return {0.0, 0.0}; }

    double rotation() const { return rotation_; }
    Complex a() const { return a_; }

    /// b(z) on the disk side.
    Complex disk_map(Complex z) const;

    HalfPlanePoint operator()(HalfPlanePoint s) const;
    Complex eval(Complex s) const;
    BigComplex eval(const BigComplex& s) const;

    /// The automorphism with parameters (-rotation, -a e^{i rotation}).
    HalfPlaneAutomorphism inverse() const;

    /// beta^{-1}(0) = a / (1 - a), in closed form.
    HalfPlanePoint preimage_of_zero() const;

    /// phi(s) = (1+beta(s))/(1+s) * psi(lambda(s)), psi(z) = sqrt(1-|a|^2)/(1 - conj(a) z),
    /// so that (1 + beta(s) + conj beta(t)) / (1 + s + conj t) = phi(s) conj phi(t),
    /// with the phase fixed by psi(0) > 0.
    Complex factor(Complex s) const;

    /// Moebius coefficients (A, B, C, D) with beta(s) = (A s + B) / (C s + D).
    struct Coefficients {
        Complex A, B, C, D;
    };
    Coefficients coefficients() const;

private:
    template <class Scalar>
    Scalar eval_impl(const Scalar& s) const;

    double rotation_;
    Complex a_;
};

HalfPlanePoint automorphism_eval(const HalfPlaneAutomorphism& A, HalfPlanePoint s);
Complex automorphism_factor(const HalfPlaneAutomorphism& A, HalfPlanePoint s);

}  // namespace monop
