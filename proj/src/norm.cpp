// Galerkin norm of a monomial operator on span{1, x, ..., x^N}.
//
// With q_k = sqrt(2k+1) P_k(2x-1) = sqrt(2k+1) sum_n I[n][k] x^n, where
// I[n][k] = (-1)^{n+k} C(k,n) C(k+n,n), the restricted operator has Gram
// matrix M[j][k] = <T q_k, T q_j> = sqrt((2j+1)(2k+1)) (Y* G Y)[j][k] with
// Y[n][k] = c_n I[n][k] and G[m][n] = 1 / (1 + conj p_m + p_n). The entries of
// I grow like 5.83^N, so the products are formed in MPFR at a precision that
// covers the cancellation, and only M is rounded to double.

#include "monop/monop.hpp"

#include "monop/errors.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace monop {

namespace {

constexpr int kMaxNormDegree = 2000;

struct Data {
    mpfr_prec_t bits;
    bool real;
    std::vector<BigComplex> c, p;
};

double log2_binomial(int n, int k) {
    return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

Data assemble_data(const MonomialOperatorSpec& T, int N) {
    // Double-precision pass: range checks and magnitudes for the precision budget.
    double max_c2 = 0.0, min_re_p = INFINITY;
    for (int n = 0; n <= N; ++n) {
        const Complex p = T.beta()(double(n));
        max_c2 = std::max(max_c2, std::norm(T.coefficient(double(n))));
        min_re_p = std::min(min_re_p, p.real());
    }
    if (!std::isfinite(max_c2)) throw DomainError("operator coefficients are not finite on 0..N");
    double log2_I = 0.0;
    for (int n = 0; n <= N; ++n) log2_I = std::max(log2_I, log2_binomial(N, n) + log2_binomial(N + n, n));
    const double log2_G = std::max(0.0, -std::log2(1.0 + 2.0 * min_re_p));
    const double budget =
        2.0 * log2_I + std::max(0.0, std::log2(max_c2)) + log2_G + 2.0 * std::log2(N + 1.0) + 96.0;

    Data d;
    d.bits = static_cast<mpfr_prec_t>(std::ceil(budget));
    d.real = true;
    for (int n = 0; n <= N; ++n) {
        const BigComplex s(Complex(n, 0.0), d.bits);
        const BigComplex one(Complex(1.0), d.bits);
        BigComplex p = T.beta().eval(s);
        BigComplex c = (one + p) / (one + s) * T.weight().eval(s);
        d.real = d.real && p.im.is_zero() && c.im.is_zero();
        d.p.push_back(std::move(p));
        d.c.push_back(std::move(c));
    }
    return d;
}

/// Lower triangle (j <= k stored at [k][j]) of M in double precision.
Eigen::MatrixXcd gram_in_legendre_frame(const Data& d, int N) {
    const int n1 = N + 1;
    const mpfr_prec_t bits = d.bits;
    auto idx = [n1](int r, int c) { return std::size_t(r) * n1 + c; };

    // I[n][k] for n <= k, exact.
    std::vector<BigReal> I(std::size_t(n1) * n1, BigReal(bits));
    {
        mpz_t a, b;
        mpz_init(a);
        mpz_init(b);
        for (int k = 0; k < n1; ++k)
            for (int n = 0; n <= k; ++n) {
                mpz_bin_uiui(a, k, n);
                mpz_bin_uiui(b, k + n, n);
                mpz_mul(a, a, b);
                if ((n + k) % 2) mpz_neg(a, a);
                mpfr_set_z(I[idx(n, k)].raw(), a, MPFR_RNDN);
            }
        mpz_clear(a);
        mpz_clear(b);
    }

    // W[m][n] = c_n / (1 + conj p_m + p_n).
    const BigComplex one(Complex(1.0), bits);
    std::vector<BigReal> Wr(std::size_t(n1) * n1, BigReal(bits)), Wi(d.real ? 0 : std::size_t(n1) * n1, BigReal(bits));
    for (int m = 0; m < n1; ++m)
        for (int n = 0; n < n1; ++n) {
            BigComplex w = d.c[n] / (one + conj(d.p[m]) + d.p[n]);
            Wr[idx(m, n)] = std::move(w.re);
            if (!d.real) Wi[idx(m, n)] = std::move(w.im);
        }

    // Z[m][k] = sum_{n <= k} W[m][n] I[n][k], then scaled by conj c_m.
    std::vector<BigReal> Zr(std::size_t(n1) * n1, BigReal(bits)), Zi(d.real ? 0 : std::size_t(n1) * n1, BigReal(bits));
    for (int m = 0; m < n1; ++m)
        for (int k = 0; k < n1; ++k) {
            mpfr_ptr zr = Zr[idx(m, k)].raw();
            mpfr_set_zero(zr, 1);
            for (int n = 0; n <= k; ++n) mpfr_fma(zr, Wr[idx(m, n)].raw(), I[idx(n, k)].raw(), zr, MPFR_RNDN);
            if (!d.real) {
                mpfr_ptr zi = Zi[idx(m, k)].raw();
                mpfr_set_zero(zi, 1);
                for (int n = 0; n <= k; ++n) mpfr_fma(zi, Wi[idx(m, n)].raw(), I[idx(n, k)].raw(), zi, MPFR_RNDN);
            }
        }
    for (int m = 0; m < n1; ++m)
        for (int k = 0; k < n1; ++k) {
            if (d.real) {
                Zr[idx(m, k)] *= d.c[m].re;
            } else {
                BigComplex z(std::move(Zr[idx(m, k)]), std::move(Zi[idx(m, k)]));
                z = conj(d.c[m]) * z;
                Zr[idx(m, k)] = std::move(z.re);
                Zi[idx(m, k)] = std::move(z.im);
            }
        }

    // M[j][k] = sqrt((2j+1)(2k+1)) sum_{m <= j} I[m][j] Z[m][k] for j <= k.
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n1, n1);
    BigReal acc_r(bits), acc_i(bits), scale(bits);
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j <= k; ++j) {
            mpfr_set_zero(acc_r.raw(), 1);
            mpfr_set_zero(acc_i.raw(), 1);
            for (int m = 0; m <= j; ++m) {
                mpfr_fma(acc_r.raw(), I[idx(m, j)].raw(), Zr[idx(m, k)].raw(), acc_r.raw(), MPFR_RNDN);
                if (!d.real) mpfr_fma(acc_i.raw(), I[idx(m, j)].raw(), Zi[idx(m, k)].raw(), acc_i.raw(), MPFR_RNDN);
            }
            mpfr_set_ui(scale.raw(), (2ul * j + 1) * (2ul * k + 1), MPFR_RNDN);
            mpfr_sqrt(scale.raw(), scale.raw(), MPFR_RNDN);
            acc_r *= scale;
            acc_i *= scale;
            const Complex v(acc_r.to_double(), acc_i.to_double());
            M(j, k) = v;
            M(k, j) = std::conj(v);
        }
    // The precision budget leaves about 96 correct bits relative to the
    // largest entry; anything below that is rounding noise.
    double scale_max = 0.0;
    for (int j = 0; j < n1; ++j) scale_max = std::max(scale_max, std::abs(M(j, j).real()));
    const double floor = std::ldexp(scale_max, -90);
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n1; ++j) {
            if (std::abs(M(j, k).real()) < floor) M(j, k).real(0.0);
            if (std::abs(M(j, k).imag()) < floor || j == k) M(j, k).imag(0.0);
        }
    return M;
}

double top_eigenvalue(const Eigen::MatrixXcd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw EigenFailure("eigensolver failed on the Galerkin Gram matrix");
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

}  // namespace

std::vector<NormPoint> norm_curve(const MonomialOperatorSpec& T, const std::vector<int>& Ns) {
    if (Ns.empty()) return {};
    std::vector<int> sorted = Ns;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.front() < 0 || sorted.back() > kMaxNormDegree)
        throw DomainError("degrees must lie in 0.." + std::to_string(kMaxNormDegree));

    const int Nmax = sorted.back();
    const Eigen::MatrixXcd M = gram_in_legendre_frame(assemble_data(T, Nmax), Nmax);

    // Restrictions to nested subspaces have nondecreasing norms; the running
    // maximum removes eigensolver rounding from that ordering.
    std::vector<NormPoint> out;
    double running = 0.0;
    for (int N : sorted) {
        running = std::max(running, std::sqrt(std::max(0.0, top_eigenvalue(M.topLeftCorner(N + 1, N + 1)))));
        out.push_back({N, running});
    }
    std::vector<NormPoint> ordered;
    for (int N : Ns)
        ordered.push_back(*std::find_if(out.begin(), out.end(), [N](const NormPoint& p) { return p.N == N; }));
    return ordered;
}

double norm_estimate(const MonomialOperatorSpec& T, int N) { return norm_curve(T, {N}).front().estimate; }

}  // namespace monop
