#include "monop/errors.hpp"
#include "monop/halfplane.hpp"
#include "random_inputs.hpp"

#include <Eigen/Dense>
#include <doctest.h>

using namespace monop;
using monop::testing::Gen;

TEST_CASE("lambda maps the half-plane into the disk") {
    CHECK(moebius_lambda(0.0) == Complex(0.0));
    CHECK(std::abs(moebius_lambda(1.0) - 0.5) < 1e-16);
    for (int n = 0; n < 50; ++n) CHECK(std::abs(moebius_lambda(double(n)) - double(n) / (n + 1.0)) < 1e-15);

    Gen gen(11);
    for (int k = 0; k < 1000; ++k) {
        const Complex s = gen.half_plane(-0.4999, 50.0, 100.0);
        CHECK(std::abs(moebius_lambda(s)) < 1.0);
        CHECK(std::abs(moebius_lambda_inv(moebius_lambda(s)).value() - s) < 1e-12 * (1.0 + std::abs(s)));
        const Complex z = gen.disk(0.99);
        CHECK(std::abs(moebius_lambda(moebius_lambda_inv(z)) - z) < 1e-12);
    }
}

TEST_CASE("lambda inverse") {
    CHECK(moebius_lambda_inv(0.0).value() == Complex(0.0));
    CHECK(std::abs(moebius_lambda_inv(0.5).value() - 1.0) < 1e-15);
    CHECK(std::abs(moebius_lambda_inv(-0.5).value() + 1.0 / 3.0) < 1e-15);
    CHECK_THROWS_AS(moebius_lambda_inv(1.0), DomainError);
    CHECK_THROWS_AS(moebius_lambda_inv(Complex(0.0, -1.5)), DomainError);
}

TEST_CASE("half-plane points near or beyond the boundary are rejected") {
    CHECK_THROWS_AS(HalfPlanePoint(-0.5), DomainError);
    CHECK_THROWS_AS(HalfPlanePoint(Complex(-0.5 + 5e-13, 3.0)), DomainError);
    CHECK_THROWS_AS(HalfPlanePoint(Complex(-1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(HalfPlanePoint(Complex(std::nan(""), 0.0)), DomainError);
    CHECK_NOTHROW(HalfPlanePoint(Complex(-0.5 + 1e-9, -7.0)));
}

TEST_CASE("reproducing kernel values") {
    Gen gen(12);
    for (int k = 0; k < 200; ++k) {
        const HalfPlanePoint s = gen.half_plane();
        CHECK(std::abs(kernel_eval(s, 0.0) - 1.0) < 1e-15);
        const Complex diag = kernel_eval(s, s);
        const double expected = std::norm(1.0 + s.value()) / (1.0 + 2.0 * s.real());
        CHECK(std::abs(diag.imag()) < 1e-15 * expected);
        CHECK(diag.real() > 0.0);
        CHECK(std::abs(diag.real() - expected) < 1e-14 * expected);

        const HalfPlanePoint u = gen.half_plane();
        CHECK(std::abs(kernel_eval(s, u) - std::conj(kernel_eval(u, s))) < 1e-14);
    }
    CHECK(std::abs(kernel_eval(1.0, 1.0) - 4.0 / 3.0) < 1e-15);
}

TEST_CASE("kernel Gram matrices are positive semidefinite") {
    Gen gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = gen.integer(1, 12);
        std::vector<Complex> pts;
        for (int i = 0; i < n; ++i) pts.push_back(gen.half_plane(-0.49, 10.0, 10.0));
        Eigen::MatrixXcd G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) G(i, j) = kernel(pts[i], pts[j]);
        const double trace = G.trace().real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * trace);
    }
}

TEST_CASE("automorphism evaluation") {
    const auto id = HalfPlaneAutomorphism::identity();
    Gen gen(14);
    for (int k = 0; k < 50; ++k) {
        const Complex s = gen.half_plane();
        CHECK(std::abs(id.eval(s) - s) < 1e-14 * (1.0 + std::abs(s)));
    }

    const HalfPlaneAutomorphism half(0.0, 0.5);
    CHECK(std::abs(half(0.0).value() + 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(half.preimage_of_zero().value() - 1.0) < 1e-15);
    CHECK(std::abs(half.eval(1.0)) < 1e-15);

    CHECK_THROWS_AS(HalfPlaneAutomorphism(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(HalfPlaneAutomorphism(0.0, Complex(0.8, 0.8)), DomainError);
}

TEST_CASE("automorphisms are bijections of the half-plane") {
    Gen gen(15);
    for (int trial = 0; trial < 50; ++trial) {
        const HalfPlaneAutomorphism A(gen.uniform(-10.0, 10.0), gen.disk(0.9));
        const auto B = A.inverse();
        CHECK(A.rotation() >= 0.0);
        CHECK(A.rotation() < 6.283185307179587);
        for (int k = 0; k < 20; ++k) {
            const Complex s = gen.half_plane(-0.45, 5.0, 5.0);
            const Complex image = A.eval(s);
            CHECK(image.real() > -0.5);
            CHECK(std::abs(B.eval(image) - s) < 1e-9 * (1.0 + std::abs(s)));
            CHECK(std::abs(A.eval(B.eval(s)) - s) < 1e-9 * (1.0 + std::abs(s)));
        }
        CHECK(std::abs(A.eval(A.preimage_of_zero().value())) < 1e-12);

        const auto c = A.coefficients();
        for (int k = 0; k < 5; ++k) {
            const Complex s = gen.half_plane();
            CHECK(std::abs((c.A * s + c.B) / (c.C * s + c.D) - A.eval(s)) < 1e-11 * (1.0 + std::abs(A.eval(s))));
        }
    }
}

TEST_CASE("automorphism factorization of the kernel ratio") {
    CHECK(std::abs(HalfPlaneAutomorphism::identity().factor(Complex(2.0, 3.0)) - 1.0) < 1e-15);

    Gen gen(16);
    auto residual = [](const HalfPlaneAutomorphism& A, Complex s, Complex t) {
        const Complex lhs = (1.0 + A.eval(s) + std::conj(A.eval(t))) / (1.0 + s + std::conj(t));
        return std::abs(lhs - A.factor(s) * std::conj(A.factor(t)));
    };
    const HalfPlaneAutomorphism half(0.0, 0.5);
    double worst = 0.0;
    std::vector<Complex> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(gen.half_plane());
    for (Complex s : grid)
        for (Complex t : grid) worst = std::max(worst, residual(half, s, t));
    CHECK(worst < 1e-10);

    for (int trial = 0; trial < 20; ++trial) {
        const HalfPlaneAutomorphism A(gen.uniform(0.0, 6.28), gen.disk(0.9));
        const Complex s = gen.half_plane(), t = gen.half_plane();
        CHECK(residual(A, s, t) < 1e-9 * (1.0 + std::abs(A.factor(s) * A.factor(t))));
        const double diag = (1.0 + 2.0 * A.eval(s).real()) / (1.0 + 2.0 * s.real());
        CHECK(std::abs(std::norm(A.factor(s)) - diag) < 1e-10 * (1.0 + diag));
    }
    // psi(0) > 0 fixes the phase: phi(0) = (1 + beta(0)) sqrt(1 - |a|^2).
    const HalfPlaneAutomorphism A(1.0, Complex(0.3, -0.2));
    CHECK(std::abs(A.factor(0.0) - (1.0 + A.eval(0.0)) * std::sqrt(1.0 - 0.13)) < 1e-14);
}

TEST_CASE("extended-precision evaluation agrees with double precision") {
    Gen gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const HalfPlaneAutomorphism A(gen.uniform(0.0, 6.28), gen.disk(0.9));
        const Complex s = gen.half_plane();
        const Complex hi = A.eval(BigComplex(s, 256)).to_complex();
        CHECK(std::abs(hi - A.eval(s)) < 1e-12 * (1.0 + std::abs(hi)));
    }
}
