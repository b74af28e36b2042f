#pragma once

// Monomial operators T x^s = (1 + beta(s)) / (1 + s) * g(s) * x^{beta(s)},
// described by a self-map beta of the half-plane and a weight g, together
// with the conjugated operator U T U* on H^2, its adjoint, and Galerkin
// estimates of ||T||.

#include "monop/funcexpr.hpp"
#include "monop/halfplane.hpp"
#include "monop/hardy.hpp"
#include "monop/json_support.hpp"
#include "monop/l2poly.hpp"
#include "monop/pick.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace monop {

/// beta(s) = s + tau with Re tau >= 0.
struct FlatShift {
    Complex tau;
};

class BetaMap {
public:
    enum class Kind { Flat, Automorphism, Interpolant, Expression };

    static BetaMap flat(Complex tau);
    static BetaMap automorphism(const HalfPlaneAutomorphism& A) { return BetaMap(A); }
    static BetaMap interpolant(const NPInterpolant& beta) { return BetaMap(beta); }
    static BetaMap expression(const FuncExpr& e) { return BetaMap(e); }

    Kind kind() const { return static_cast<Kind>(rep_.index()); }

    /// beta(s) without checking that it lies in the half-plane.
    Complex eval(Complex s) const;
    BigComplex eval(const BigComplex& s) const;
    /// beta(s); throws BetaRangeError if the image is not in the half-plane.
    Complex operator()(Complex s) const;

    const FlatShift* as_flat() const { return std::get_if<FlatShift>(&rep_); }
    const HalfPlaneAutomorphism* as_automorphism() const { return std::get_if<HalfPlaneAutomorphism>(&rep_); }
    const NPInterpolant* as_interpolant() const { return std::get_if<NPInterpolant>(&rep_); }
    const FuncExpr* as_expression() const { return std::get_if<FuncExpr>(&rep_); }

private:
    using Rep = std::variant<FlatShift, HalfPlaneAutomorphism, NPInterpolant, FuncExpr>;
    explicit BetaMap(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

/// A weight given by an expression, or tabulated on 0, 1, 2, ... . A table
/// answers only at its own integer points unless an interpolating expression
/// has been attached explicitly.
class Weight {
public:
    enum class Kind { Expression, Table };

    static Weight expression(const FuncExpr& e);
    static Weight table(std::vector<Complex> values);

    /// Attach an interpolant for off-table queries. Throws DomainError unless
    /// it reproduces every tabulated value to 1e-10.
    Weight with_interpolant(const FuncExpr& e) const;

    Kind kind() const { return kind_; }
    Complex operator()(Complex s) const;
    BigComplex eval(const BigComplex& s) const;

    const std::optional<FuncExpr>& expr() const { return expr_; }
    const std::vector<Complex>& values() const { return values_; }

private:
    Kind kind_ = Kind::Expression;
    std::optional<FuncExpr> expr_;
    std::vector<Complex> values_;
};

class MonomialOperatorSpec {
public:
    MonomialOperatorSpec(BetaMap beta, Weight g, std::string provenance = {})
        : beta_(std::move(beta)), g_(std::move(g)), provenance_(std::move(provenance)) {}

    const BetaMap& beta() const { return beta_; }
    const Weight& weight() const { return g_; }
    const std::string& provenance() const { return provenance_; }

    /// (1 + beta(s)) / (1 + s) * g(s), the coefficient of x^{beta(s)} in T x^s.
    Complex coefficient(Complex s) const;

private:
    BetaMap beta_;
    Weight g_;
    std::string provenance_;
};

/// Termwise image of f. Throws BetaRangeError if some beta(s) leaves the half-plane.
MonomialSum apply(const MonomialOperatorSpec& T, const MonomialSum& f);

/// g(n) = c_n (1 + n) / (1 + p_n) as a table on 0..len-1.
Weight weight_from_coeffs(const std::vector<Complex>& c, const std::vector<HalfPlanePoint>& p);

/// T~ k_s = g(conj s) k_{conj beta(conj s)}, where T~ = U T U*.
KernelSum conjugated_apply_kernel(const MonomialOperatorSpec& T, HalfPlanePoint s);

/// s -> conj(g(conj s)) F(conj beta(conj s)), the adjoint of T~ applied to F.
std::function<Complex(Complex)> adjoint_apply(const MonomialOperatorSpec& T, const KernelSum& F);

/// The operator with beta = NP interpolant of n -> p_n on the first `size`
/// integers and coefficients c_n = (1 + p_n) / (1 + n), i.e. g = 1.
/// Throws NotInterpolable when the Pick matrix is not strictly positive.
MonomialOperatorSpec operator_from_powers(const std::vector<HalfPlanePoint>& p, int size);

/// Norm of T restricted to span{1, x, ..., x^N}. Computed in the orthonormal
/// shifted Legendre frame with the frame change carried out in extended
/// precision. Throws BetaRangeError if beta(n) leaves the half-plane and
/// EigenFailure if the eigensolver fails.
double norm_estimate(const MonomialOperatorSpec& T, int N);

struct NormPoint {
    int N;
    double estimate;
};

/// norm_estimate for every N in Ns, sharing one extended-precision assembly.
std::vector<NormPoint> norm_curve(const MonomialOperatorSpec& T, const std::vector<int>& Ns);

/// hardy, volterra, mult_x, identity. Throws UnknownBuiltin otherwise.
MonomialOperatorSpec builtin(const std::string& name);

Json spec_to_json(const MonomialOperatorSpec& T);
/// Accepts the spec schema, or {"builtin": name}.
MonomialOperatorSpec spec_from_json(const Json& j);

}  // namespace monop
