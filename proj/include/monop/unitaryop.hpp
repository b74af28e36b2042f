#pragma once

// Unitary monomial operators x^s -> c(s) x^{beta(s)} with beta an
// automorphism of the half-plane and
//
//   c(s) = e^{i theta} / sqrt(1 + 2 Re beta(0)) * (1 + conj beta(0) + beta(s)) / (1 + s).

#include "monop/funcexpr.hpp"
#include "monop/halfplane.hpp"
#include "monop/monop.hpp"

#include <utility>
#include <vector>

namespace monop {

using PointPair = std::pair<HalfPlanePoint, HalfPlanePoint>;

Complex unitary_coeff(const HalfPlaneAutomorphism& A, double theta, HalfPlanePoint s);

/// Spec with beta = A and g(s) = c(s) (1 + s) / (1 + beta(s)), written as a
/// closed-form expression. The identity automorphism gives beta = flat 0.
MonomialOperatorSpec build_unitary(const HalfPlaneAutomorphism& A, double theta);

/// max over pairs of |1/(1 + s + conj t) - c(s) conj c(t) / (1 + beta(s) + conj beta(t))|,
/// with c the coefficient of T.
double isometry_check(const MonomialOperatorSpec& T, const std::vector<PointPair>& samples);

/// e^{i theta} k_{s0} / ||k_{s0}|| with s0 = A^{-1}(0).
FuncExpr bourdon_narayan_weight(const HalfPlaneAutomorphism& A, double theta);

/// max over pairs of |(1 + beta(s) + conj beta(t)) / (1 + s + conj t) - phi(s) conj phi(t)|
/// with phi = A.factor.
double factorization_residual(const HalfPlaneAutomorphism& A, const std::vector<PointPair>& samples);

}  // namespace monop
