#include "monop/errors.hpp"
#include "monop/monop.hpp"
#include "random_sums.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace monop;
using monop::testing::Gen;

namespace {

MonomialSum power(Complex s, Complex c = 1.0) { return MonomialSum::monomial(s, c); }

void check_single(const MonomialSum& f, Complex coeff, Complex exponent, double tol = 1e-15) {
    REQUIRE(f.size() == 1);
    CHECK(std::abs(f.terms()[0].coeff - coeff) <= tol * std::max(1.0, std::abs(coeff)));
    CHECK(std::abs(f.terms()[0].exponent.value() - exponent) <= tol * std::max(1.0, std::abs(exponent)));
}

/// ||T restricted to polynomials of degree <= N|| straight from the monomial
/// Gram matrices in double precision. Only usable for small N.
double direct_restricted_norm(const MonomialOperatorSpec& T, int N) {
    Eigen::MatrixXcd G(N + 1, N + 1), H(N + 1, N + 1);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= N; ++n) {
            G(m, n) = l2_inner(power(double(n)), power(double(m)));
            H(m, n) = l2_inner(apply(T, power(double(n))), apply(T, power(double(m))));
        }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, G, Eigen::EigenvaluesOnly);
    return std::sqrt(es.eigenvalues().maxCoeff());
}

}  // namespace

TEST_CASE("builtin operators act on monomials as expected") {
    for (int n = 0; n < 30; ++n) {
        check_single(apply(builtin("hardy"), power(double(n))), 1.0 / (n + 1.0), double(n));
        check_single(apply(builtin("volterra"), power(double(n))), 1.0 / (n + 1.0), n + 1.0);
        check_single(apply(builtin("mult_x"), power(double(n))), 1.0, n + 1.0);
        check_single(apply(builtin("identity"), power(double(n))), 1.0, double(n));
    }
    check_single(apply(builtin("hardy"), power(2.0)), 1.0 / 3.0, 2.0);
    check_single(apply(builtin("volterra"), power(0.0)), 1.0, 1.0);
    const auto id = builtin("identity");
    REQUIRE(id.beta().as_flat() != nullptr);
    CHECK(id.beta().as_flat()->tau == Complex(0.0));
    CHECK(id.weight()(Complex(3.0, -2.0)) == Complex(1.0));
    CHECK_THROWS_AS(builtin("cesaro"), UnknownBuiltin);
}

TEST_CASE("weights from coefficient sequences") {
    std::vector<HalfPlanePoint> n, n1;
    std::vector<Complex> inv, ones;
    for (int k = 0; k < 20; ++k) {
        n.emplace_back(double(k));
        n1.emplace_back(k + 1.0);
        inv.push_back(1.0 / (k + 1.0));
        ones.push_back(1.0);
    }
    const auto hardy = weight_from_coeffs(inv, n), volterra = weight_from_coeffs(inv, n1), mx = weight_from_coeffs(ones, n1);
    for (int k = 0; k < 20; ++k) {
        CHECK(std::abs(hardy(double(k)) - 1.0 / (k + 1.0)) < 1e-15);
        CHECK(std::abs(volterra(double(k)) - 1.0 / (k + 2.0)) < 1e-15);
        CHECK(std::abs(mx(double(k)) - (k + 1.0) / (k + 2.0)) < 1e-15);
    }

    // A spec built from (c_n, p_n) reproduces c_n on N.
    Gen gen(61);
    std::vector<Complex> c;
    std::vector<HalfPlanePoint> p;
    for (int k = 0; k < 15; ++k) {
        c.push_back(gen.complex_in_box(-2, 2, 2));
        p.emplace_back(double(k) + Complex(0.7, gen.uniform(-3, 3)));
    }
    for (int k = 0; k < 15; ++k) {
        const MonomialOperatorSpec Tk(BetaMap::flat(p[k].value() - double(k)), weight_from_coeffs(c, p));
        CHECK(std::abs(Tk.coefficient(double(k)) - c[k]) < 1e-10 * std::abs(c[k]));
    }
    CHECK_THROWS_AS(weight_from_coeffs({1.0}, {}), DomainError);
}

TEST_CASE("tabulated weights refuse silent extrapolation") {
    const auto w = Weight::table({1.0, 0.5, 1.0 / 3.0});
    CHECK(w(1.0) == Complex(0.5));
    CHECK_THROWS_AS(w(0.5), OffTableQuery);
    CHECK_THROWS_AS(w(3.0), OffTableQuery);
    CHECK_THROWS_AS(w(Complex(1.0, 1e-300)), OffTableQuery);
    CHECK_THROWS_AS(w.eval(BigComplex(Complex(0.5), 128)), OffTableQuery);

    const auto wi = w.with_interpolant(FuncExpr::parse("1/(1+s)"));
    CHECK(std::abs(wi(0.5) - 1.0 / 1.5) < 1e-15);
    CHECK(wi(2.0) == Complex(1.0 / 3.0));
    CHECK_THROWS_AS(w.with_interpolant(FuncExpr::parse("1/(2+s)")), DomainError);

    const MonomialOperatorSpec T(BetaMap::flat(0.0), w);
    CHECK_NOTHROW(apply(T, power(2.0)));
    CHECK_THROWS_AS(apply(T, power(2.5)), OffTableQuery);
}

TEST_CASE("beta must stay in the half-plane") {
    const MonomialOperatorSpec T(BetaMap::expression(FuncExpr::parse("s-1")), Weight::expression(FuncExpr::parse("1")));
    CHECK_NOTHROW(apply(T, power(2.0)));
    try {
        apply(T, power(0.0));
        FAIL("expected BetaRangeError");
    } catch (const BetaRangeError& e) {
        CHECK(e.argument() == Complex(0.0));
        CHECK(e.image() == Complex(-1.0));
    }
    CHECK_THROWS_AS(BetaMap::flat(-0.1), DomainError);
}

TEST_CASE("conjugated operator on kernels") {
    Gen gen(62);
    const auto id = builtin("identity");
    for (int k = 0; k < 20; ++k) {
        const Complex s = gen.half_plane();
        const auto K = conjugated_apply_kernel(id, s);
        REQUIRE(K.size() == 1);
        CHECK(std::abs(K.terms()[0].coeff - 1.0) < 1e-15);
        CHECK(std::abs(K.terms()[0].point.value() - s) < 1e-15);
    }
    const auto K0 = conjugated_apply_kernel(builtin("hardy"), 0.0);
    CHECK(std::abs(K0.terms()[0].coeff - 1.0) < 1e-15);
    CHECK(K0.terms()[0].point == HalfPlanePoint(0.0));

    // Through U: U T U^{-1} k_s, computed termwise on the L^2 side.
    std::vector<MonomialOperatorSpec> specs{builtin("hardy"), builtin("volterra"), builtin("mult_x"),
                                            MonomialOperatorSpec(BetaMap::automorphism(HalfPlaneAutomorphism(1.0, {0.3, 0.4})),
                                                                 Weight::expression(FuncExpr::parse("(2,1)/(3+s)")))};
    for (const auto& T : specs)
        for (int k = 0; k < 20; ++k) {
            const Complex s = gen.half_plane();
            const auto direct = conjugated_apply_kernel(T, s);
            const auto routed = u_apply(apply(T, u_inverse(KernelSum::kernel_at(s))));
            REQUIRE(routed.size() == 1);
            CHECK(std::abs(routed.terms()[0].coeff - direct.terms()[0].coeff) < 1e-12 * (1 + std::abs(direct.terms()[0].coeff)));
            CHECK(std::abs(routed.terms()[0].point.value() - direct.terms()[0].point.value()) < 1e-12);
        }
}

TEST_CASE("adjoint of the conjugated operator") {
    Gen gen(63);
    const auto F = testing::random_kernel_sum(gen);
    const auto idF = adjoint_apply(builtin("identity"), F);
    for (int k = 0; k < 20; ++k) {
        const Complex s = gen.half_plane();
        CHECK(std::abs(idF(s) - F(s)) < 1e-14 * (1 + std::abs(F(s))));
    }

    for (int k = 0; k < 20; ++k) {
        const Complex s = gen.half_plane(), u = gen.half_plane();
        const Complex expected = 1.0 / (1.0 + s) * kernel(s, u);
        CHECK(std::abs(adjoint_apply(builtin("hardy"), KernelSum::kernel_at(u))(s) - expected) < 1e-14 * (1 + std::abs(expected)));
    }

    for (const char* name : {"hardy", "volterra", "mult_x"}) {
        const auto T = builtin(name);
        for (int k = 0; k < 50; ++k) {
            const Complex s = gen.half_plane(), u = gen.half_plane();
            const Complex lhs = hardy_inner(conjugated_apply_kernel(T, s), KernelSum::kernel_at(u));
            const Complex rhs = std::conj(adjoint_apply(T, KernelSum::kernel_at(u))(s));
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }

    // <T~ F, G> = <F, T~* G> for finite kernel sums, the right side through the
    // reproducing property at the points of F.
    const MonomialOperatorSpec A(BetaMap::automorphism(HalfPlaneAutomorphism(2.0, {-0.2, 0.5})),
                                 Weight::expression(FuncExpr::parse("1/(2+s)^0.5")));
    for (const auto& T : {builtin("hardy"), builtin("volterra"), A}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto F = testing::random_kernel_sum(gen, 5), G = testing::random_kernel_sum(gen, 5);
            KernelSum TF;
            for (const auto& t : F.terms()) TF += t.coeff * conjugated_apply_kernel(T, t.point);
            const auto TG = adjoint_apply(T, G);
            Complex rhs = 0.0;
            for (const auto& t : F.terms()) rhs += t.coeff * std::conj(TG(t.point.value()));
            const Complex lhs = hardy_inner(TF, G);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("flat specs compose on monomials") {
    Gen gen(64);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex t1(gen.uniform(0, 3), gen.uniform(-3, 3)), t2(gen.uniform(0, 3), gen.uniform(-3, 3));
        const MonomialOperatorSpec T1(BetaMap::flat(t1), Weight::expression(FuncExpr::parse("1/(2+s)")));
        const MonomialOperatorSpec T2(BetaMap::flat(t2), Weight::expression(FuncExpr::parse("(1+s)/(3+s)")));
        const int n = gen.integer(0, 20);
        const auto out = apply(T2, apply(T1, power(double(n))));
        REQUIRE(out.size() == 1);
        CHECK(out.terms()[0].exponent.value() == double(n) + t1 + t2);
        CHECK(out.terms()[0].coeff == T1.coefficient(double(n)) * T2.coefficient(double(n) + t1));
    }
}

TEST_CASE("a purely imaginary shift is unimodular") {
    Gen gen(65);
    std::vector<Complex> c;
    std::vector<HalfPlanePoint> p0, p1;
    const double t1 = 2.5;
    for (int n = 0; n <= 30; ++n) {
        c.push_back(1.0 / (n + 1.0));
        p0.emplace_back(double(n));
        p1.emplace_back(Complex(double(n), t1));
    }
    const MonomialOperatorSpec T0(BetaMap::flat(0.0), weight_from_coeffs(c, p0));
    const MonomialOperatorSpec T1(BetaMap::flat(Complex(0, t1)), weight_from_coeffs(c, p1));
    for (int n = 0; n <= 30; ++n)
        CHECK(std::abs(std::abs(T1.coefficient(double(n)) / T0.coefficient(double(n))) - 1.0) < 1e-14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = testing::random_polynomial(gen, 30, 6);
        const double a = l2_inner(apply(T0, f), apply(T0, f)).real(), b = l2_inner(apply(T1, f), apply(T1, f)).real();
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, a));
    }
    // Norms use the analytic weight: tabulated values carry independent
    // rounding errors that the restricted norm amplifies exponentially in N.
    const MonomialOperatorSpec S1(BetaMap::flat(Complex(0, t1)), Weight::expression(FuncExpr::parse("1/(1+s+(0,2.5))")));
    const auto curve0 = norm_curve(builtin("hardy"), {5, 15, 30, 60}), curve1 = norm_curve(S1, {5, 15, 30, 60});
    for (int k = 0; k < 4; ++k) CHECK(std::abs(curve0[k].estimate - curve1[k].estimate) < 1e-12);
    CHECK(std::abs(norm_estimate(T0, 8) - norm_estimate(builtin("hardy"), 8)) < 1e-8);
}

TEST_CASE("norm estimates: closed-form and direct cross-checks") {
    for (int N : {0, 1, 5, 30, 80}) CHECK(norm_estimate(builtin("identity"), N) == 1.0);

    // Volterra: ||V|| = 2/pi, reached quickly by the polynomial restrictions.
    CHECK(std::abs(norm_estimate(builtin("volterra"), 40) - 2.0 / std::numbers::pi) < 1e-12);

    // Multiplication by x: restrictions increase towards sup|x| = 1.
    const auto mx = norm_curve(builtin("mult_x"), {1, 5, 20, 60});
    for (std::size_t k = 0; k < mx.size(); ++k) {
        CHECK(mx[k].estimate <= 1.0 + 1e-12);
        if (k) CHECK(mx[k].estimate >= mx[k - 1].estimate);
    }
    CHECK(mx.back().estimate > 0.99);

    const MonomialOperatorSpec A(BetaMap::automorphism(HalfPlaneAutomorphism(0.7, {0.2, -0.3})),
                                 Weight::expression(FuncExpr::parse("(1,1)/(2+s)")));
    const MonomialOperatorSpec E(BetaMap::expression(FuncExpr::parse("s+(1,2)")),
                                 Weight::expression(FuncExpr::parse("1/(s+0.5)^0.3")));
    for (const auto& T : {builtin("hardy"), builtin("volterra"), A, E})
        for (int N : {0, 1, 3, 6}) {
            const double direct = direct_restricted_norm(T, N);
            CHECK(std::abs(norm_estimate(T, N) - direct) < 1e-7 * direct);
        }
}

TEST_CASE("Hardy operator norms increase towards 2") {
    const std::vector<int> Ns{1, 2, 5, 10, 20, 40, 80, 120};
    const auto curve = norm_curve(builtin("hardy"), Ns);
    for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].estimate >= curve[k - 1].estimate);
    for (const auto& p : curve) CHECK(p.estimate <= 2.0 + 1e-6);
    CHECK(curve.back().estimate > 1.8);
    // Ordering of the requested degrees is preserved.
    const auto rev = norm_curve(builtin("hardy"), {20, 5});
    CHECK(rev[0].N == 20);
    CHECK(rev[1].N == 5);
    CHECK(rev[0].estimate > rev[1].estimate);
    CHECK_THROWS_AS(norm_curve(builtin("hardy"), {-1}), DomainError);
}

TEST_CASE("operators from feasible power sequences") {
    std::vector<HalfPlanePoint> p;
    for (int n = 0; n < 4; ++n) p.emplace_back(n + 1.0);
    const auto T = operator_from_powers(p, 4);
    for (int n = 0; n < 4; ++n) {
        CHECK(std::abs(T.beta()(double(n)) - (n + 1.0)) < 1e-8);
        CHECK(std::abs(T.coefficient(double(n)) - (n + 2.0) / (n + 1.0)) < 1e-8);
    }
    std::vector<HalfPlanePoint> bad{-0.3, 0.7};
    CHECK_THROWS_AS(operator_from_powers(bad, 2), NotInterpolable);
}

TEST_CASE("spec JSON round trip") {
    Gen gen(66);
    std::vector<MonomialOperatorSpec> specs{
        builtin("hardy"), builtin("volterra"),
        MonomialOperatorSpec(BetaMap::automorphism(HalfPlaneAutomorphism(1.25, {0.1, -0.6})),
                             Weight::expression(FuncExpr::parse("(0.5,2)*s/(3+s)"))),
        MonomialOperatorSpec(BetaMap::expression(FuncExpr::parse("2*s+1")), Weight::table({1.0, {2.0, -1.0}, 0.25})),
        MonomialOperatorSpec(BetaMap::flat({1.0, 2.0}),
                             Weight::table({1.0, 0.5}).with_interpolant(FuncExpr::parse("1/(1+s)"))),
        operator_from_powers({1.0, 2.0, 3.0}, 3)};
    for (const auto& T : specs) {
        const Json j = spec_to_json(T);
        const auto back = spec_from_json(Json::parse(j.dump()));
        CHECK(spec_to_json(back) == j);
        for (int n = 0; n < 2; ++n) CHECK(std::abs(back.coefficient(double(n)) - T.coefficient(double(n))) < 1e-12);
    }
    CHECK(spec_to_json(spec_from_json(Json::parse(R"({"builtin": "mult_x"})"))) == spec_to_json(builtin("mult_x")));
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"g": {"kind": "expr", "text": "1"}})")), DomainError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"beta": {"kind": "spiral"}, "g": {"kind": "expr", "text": "1"}})")), DomainError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"beta": {"kind": "flat", "tau": -1}, "g": {"kind": "expr", "text": "1"}})")), DomainError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"beta": {"kind": "flat", "tau": 0}, "g": {"kind": "expr", "text": "1/("}})")), ParseError);
}
