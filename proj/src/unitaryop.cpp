#include "monop/unitaryop.hpp"

#include <algorithm>
#include <cmath>

namespace monop {

namespace {

std::string literal(Complex z) { return format_complex(z); }

}  // namespace

Complex unitary_coeff(const HalfPlaneAutomorphism& A, double theta, HalfPlanePoint s) {
    const Complex b0 = A.eval(0.0);
    return std::polar(1.0, theta) / std::sqrt(1.0 + 2.0 * b0.real()) * (1.0 + std::conj(b0) + A.eval(s.value())) /
           (1.0 + s.value());
}

MonomialOperatorSpec build_unitary(const HalfPlaneAutomorphism& A, double theta) {
    const Complex b0 = A.eval(0.0);
    const Complex K = std::polar(1.0, theta) / std::sqrt(1.0 + 2.0 * b0.real());
    // beta = (a s + b) / (c s + d), so (1 + conj b0 + beta) / (1 + beta) = (P s + Q) / (R s + S).
    const auto m = A.coefficients();
    const Complex P = (1.0 + std::conj(b0)) * m.C + m.A, Q = (1.0 + std::conj(b0)) * m.D + m.B;
    const Complex R = m.C + m.A, S = m.D + m.B;

    const bool identity = A.rotation() == 0.0 && A.a() == Complex(0.0);
    const std::string text = identity ? (theta == 0.0 ? std::string("1") : literal(K))
                                      : literal(K) + "*(" + literal(P) + "*s+" + literal(Q) + ")/(" + literal(R) +
                                            "*s+" + literal(S) + ")";
    const BetaMap beta = identity ? BetaMap::flat(0.0) : BetaMap::automorphism(A);
    return {beta, Weight::expression(FuncExpr::parse(text)), "unitary"};
}

double isometry_check(const MonomialOperatorSpec& T, const std::vector<PointPair>& samples) {
    double worst = 0.0;
    for (const auto& [s, t] : samples) {
        const Complex lhs = 1.0 / (1.0 + s.value() + std::conj(t.value()));
        const Complex rhs = T.coefficient(s.value()) * std::conj(T.coefficient(t.value())) /
                            (1.0 + T.beta()(s.value()) + std::conj(T.beta()(t.value())));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

FuncExpr bourdon_narayan_weight(const HalfPlaneAutomorphism& A, double theta) {
    const Complex s0 = A.preimage_of_zero().value();
    // k_{s0}(s) = (1 + s)(1 + conj s0) / (1 + s + conj s0), ||k_{s0}||^2 = k(s0, s0).
    const Complex K = std::polar(1.0, theta) * (1.0 + std::conj(s0)) / std::sqrt(kernel(s0, s0).real());
    return FuncExpr::parse(literal(K) + "*(1+s)/(" + literal(1.0 + std::conj(s0)) + "+s)");
}

double factorization_residual(const HalfPlaneAutomorphism& A, const std::vector<PointPair>& samples) {
    double worst = 0.0;
    for (const auto& [s, t] : samples) {
        const Complex lhs = (1.0 + A.eval(s.value()) + std::conj(A.eval(t.value()))) / (1.0 + s.value() + std::conj(t.value()));
        worst = std::max(worst, std::abs(lhs - A.factor(s.value()) * std::conj(A.factor(t.value()))));
    }
    return worst;
}

}  // namespace monop
