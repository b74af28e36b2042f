#include "monop/errors.hpp"
#include "monop/l2poly.hpp"
#include "random_sums.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace monop;
using monop::testing::Gen;

namespace {

MonomialSum power(double s, Complex c = 1.0) { return MonomialSum::monomial(s, c); }

}  // namespace

TEST_CASE("closed-form inner products of monomials") {
    CHECK(std::abs(l2_inner(power(0), power(0)) - 1.0) < 1e-16);
    CHECK(std::abs(l2_inner(power(1), power(1)) - 1.0 / 3.0) < 1e-16);
    CHECK(std::abs(l2_inner(power(1), power(2)) - 0.25) < 1e-16);
    // int_0^1 x^i conj(x^{-i}) dx = int x^{2i} dx = 1/(1+2i)
    CHECK(std::abs(l2_inner(MonomialSum::monomial(Complex(0, 1)), MonomialSum::monomial(Complex(0, -1))) -
                   1.0 / Complex(1.0, 2.0)) < 1e-16);
    CHECK(l2_inner(MonomialSum(), power(1)) == Complex(0.0));
}

TEST_CASE("sesquilinearity, positivity and Cauchy-Schwarz") {
    Gen gen(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = testing::random_monomial_sum(gen), h = testing::random_monomial_sum(gen);
        const Complex c = gen.complex_in_box(-2, 2, 2);
        CHECK(std::abs(l2_inner(c * f, h) - c * l2_inner(f, h)) < 1e-12 * (1 + std::abs(l2_inner(f, h))));
        CHECK(std::abs(l2_inner(f, c * h) - std::conj(c) * l2_inner(f, h)) < 1e-12 * (1 + std::abs(l2_inner(f, h))));
        CHECK(std::abs(l2_inner(h, f) - std::conj(l2_inner(f, h))) < 1e-12 * (1 + std::abs(l2_inner(f, h))));
        const Complex ff = l2_inner(f, f), hh = l2_inner(h, h);
        CHECK(ff.real() >= 0.0);
        CHECK(std::abs(ff.imag()) < 1e-12 * ff.real());
        CHECK(std::norm(l2_inner(f, h)) <= ff.real() * hh.real() * (1 + 1e-12));
    }
}

TEST_CASE("Gram matrices of distinct exponents are positive semidefinite") {
    Gen gen(32);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = gen.integer(1, 10);
        std::vector<Complex> s;
        for (int i = 0; i < n; ++i) s.push_back(gen.half_plane());
        Eigen::MatrixXcd G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) G(i, j) = l2_inner(MonomialSum::monomial(s[i]), MonomialSum::monomial(s[j]));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * G.trace().real());
    }
}

TEST_CASE("quadrature oracle") {
    CHECK(std::abs(quadrature_inner(power(0), power(0)) - 1.0) < 1e-12);
    CHECK(std::abs(quadrature_inner(power(-0.4), power(-0.4)) - 5.0) < 1e-8);
    CHECK(std::abs(quadrature_inner(power(-0.45), power(-0.45)) - 10.0) < 1e-8);

    Gen gen(33);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = testing::random_monomial_sum(gen), h = testing::random_monomial_sum(gen);
        worst = std::max(worst, std::abs(l2_inner(f, h) - quadrature_inner(f, h)));
    }
    CHECK(worst < 1e-9);

    // Exponents with Re in (-0.45, 0) exercise the singular endpoint.
    worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = testing::random_monomial_sum(gen, 4, -0.45, 0.0), h = testing::random_monomial_sum(gen, 4, -0.45, 0.0);
        worst = std::max(worst, std::abs(l2_inner(f, h) - quadrature_inner(f, h)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("duplicate exponents are merged") {
    MonomialSum f{{1.0, 2.0}, {3.0, 2.0 + 1e-16}, {1.0, 1.0}};
    REQUIRE(f.size() == 2);
    CHECK(f.terms()[0].coeff == Complex(4.0));
    CHECK(f.terms()[0].exponent == HalfPlanePoint(2.0));
    f += power(1.0, -1.0);
    CHECK(f.size() == 2);
    CHECK(f.terms()[1].coeff == Complex(0.0));
    CHECK_THROWS_AS(power(-0.5), DomainError);
}

TEST_CASE("shifted Legendre coordinates") {
    auto c = to_legendre(power(0), 5);
    CHECK(c.degree == 5);
    CHECK(std::abs(c.coeffs[0] - 1.0) < 1e-16);
    CHECK(c.coeffs.tail(5).norm() == 0.0);
    c = to_legendre(power(1), 3);
    CHECK(std::abs(c.coeffs.squaredNorm() - 1.0 / 3.0) < 1e-15);

    CHECK_THROWS_AS(to_legendre(power(1.5), 3), ExponentOutOfRange);
    CHECK_THROWS_AS(to_legendre(power(4), 3), ExponentOutOfRange);
    CHECK_THROWS_AS(to_legendre(MonomialSum::monomial(Complex(1, 1)), 3), ExponentOutOfRange);

    Gen gen(34);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = gen.integer(0, 40);
        const auto f = testing::random_polynomial(gen, N, gen.integer(1, 10));
        const auto coords = to_legendre(f, N);
        const double norm2 = l2_inner(f, f).real();
        CHECK(std::abs(coords.coeffs.squaredNorm() - norm2) < 1e-10 * std::max(1.0, norm2));

        // Pointwise: sum_k c_k sqrt(2k+1) P_k(2x-1) reproduces f(x).
        for (double x : {0.05, 0.3, 0.77, 1.0}) {
            Complex series = 0.0;
            for (int k = 0; k <= N; ++k)
                series += coords.coeffs[k] * std::sqrt(2.0 * k + 1.0) * std::legendre(unsigned(k), 2.0 * x - 1.0);
            CHECK(std::abs(series - eval_monomial_sum(f, x)) < 1e-9);
        }
    }
}

TEST_CASE("pointwise evaluation") {
    CHECK(std::abs(eval_monomial_sum(MonomialSum::monomial(Complex(1, 1)), 1.0) - 1.0) < 1e-16);
    CHECK(std::abs(eval_monomial_sum(power(2.0, 3.0), 0.5) - 0.75) < 1e-16);
    Gen gen(35);
    for (int k = 0; k < 100; ++k) {
        const double tau = gen.uniform(-50, 50), x = gen.uniform(1e-12, 1.0);
        CHECK(std::abs(std::abs(eval_monomial_sum(MonomialSum::monomial(Complex(0, tau)), x)) - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(eval_monomial_sum(power(1), 0.0), DomainError);
    CHECK_THROWS_AS(eval_monomial_sum(power(1), 1.5), DomainError);
}

TEST_CASE("JSON form") {
    Gen gen(36);
    const auto f = testing::random_monomial_sum(gen);
    const Json j = f;
    CHECK(j.at("terms").size() == f.size());
    const auto back = j.get<MonomialSum>();
    REQUIRE(back.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        CHECK(back.terms()[k].coeff == f.terms()[k].coeff);
        CHECK(back.terms()[k].exponent == f.terms()[k].exponent);
    }
    const auto g = Json::parse(R"({"terms": [{"coeff": [1, 0], "exp": 2}, {"coeff": 3, "exp": [0.5, -1]}]})").get<MonomialSum>();
    CHECK(g.size() == 2);
    CHECK_THROWS_AS(Json::parse(R"({"terms": [{"coeff": 1}]})").get<MonomialSum>(), DomainError);
    CHECK_THROWS_AS(Json::parse(R"({"terms": [{"coeff": 1, "exp": -0.7}]})").get<MonomialSum>(), DomainError);
}
