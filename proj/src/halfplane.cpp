#include "monop/halfplane.hpp"

#include "monop/errors.hpp"

#include <cmath>
#include <numbers>

namespace monop {

namespace {

Complex phase_like(double theta, const Complex&) { return std::polar(1.0, theta); }
BigComplex phase_like(double theta, const BigComplex& like) { return unit_phase(theta, like.precision()); }

}  // namespace

bool in_half_plane(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) && z.real() > -0.5 + kBoundaryMargin;
}

HalfPlanePoint::HalfPlanePoint(Complex value) : value_(value) {
    if (!in_half_plane(value)) throw DomainError("point " + format_complex(value) + " is not in Re s > -1/2");
}

Complex moebius_lambda(HalfPlanePoint s) { return s.value() / (s.value() + 1.0); }

HalfPlanePoint moebius_lambda_inv(Complex z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("lambda^{-1} needs |z| < 1, got " + format_complex(z));
    return HalfPlanePoint(z / (1.0 - z));
}

Complex kernel_eval(HalfPlanePoint s, HalfPlanePoint u) { return kernel(s.value(), u.value()); }

HalfPlaneAutomorphism::HalfPlaneAutomorphism(double rotation, Complex a) : a_(a) {
    if (!std::isfinite(rotation)) throw DomainError("automorphism rotation must be finite");
    if (!(std::abs(a) < 1.0)) throw DomainError("automorphism parameter needs |a| < 1, got " + format_complex(a));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    rotation_ = std::fmod(rotation, two_pi);
    if (rotation_ < 0.0) rotation_ += two_pi;
    if (rotation_ >= two_pi) rotation_ = 0.0;
}

Complex HalfPlaneAutomorphism::disk_map(Complex z) const {
    return std::polar(1.0, rotation_) * (z - a_) / (1.0 - std::conj(a_) * z);
}

template <class Scalar>
Scalar HalfPlaneAutomorphism::eval_impl(const Scalar& s) const {
    const Scalar one = lift(1.0, s);
    const Scalar a = lift(a_, s);
    const Scalar z = s / (s + one);
    const Scalar b = phase_like(rotation_, s) * (z - a) / (one - conj_of(a) * z);
    return b / (one - b);
}

Complex HalfPlaneAutomorphism::eval(Complex s) const { return eval_impl(s); }
BigComplex HalfPlaneAutomorphism::eval(const BigComplex& s) const { return eval_impl(s); }

HalfPlanePoint HalfPlaneAutomorphism::operator()(HalfPlanePoint s) const { return HalfPlanePoint(eval(s.value())); }

HalfPlaneAutomorphism HalfPlaneAutomorphism::inverse() const {
    return {-rotation_, -a_ * std::polar(1.0, rotation_)};
}

HalfPlanePoint HalfPlaneAutomorphism::preimage_of_zero() const { return HalfPlanePoint(a_ / (1.0 - a_)); }

Complex HalfPlaneAutomorphism::factor(Complex s) const {
    const Complex z = s / (s + 1.0);
    const Complex psi = std::sqrt(1.0 - std::norm(a_)) / (1.0 - std::conj(a_) * z);
    return (1.0 + eval(s)) / (1.0 + s) * psi;
}

HalfPlaneAutomorphism::Coefficients HalfPlaneAutomorphism::coefficients() const {
    const Complex e = std::polar(1.0, rotation_);
    return {e * (1.0 - a_), -e * a_, (1.0 - std::conj(a_)) - e * (1.0 - a_), 1.0 + e * a_};
}

HalfPlanePoint automorphism_eval(const HalfPlaneAutomorphism& A, HalfPlanePoint s) { return A(s); }

Complex automorphism_factor(const HalfPlaneAutomorphism& A, HalfPlanePoint s) { return A.factor(s.value()); }

}  // namespace monop
