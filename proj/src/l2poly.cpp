#include "monop/l2poly.hpp"

#include "monop/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

namespace monop {

namespace {

constexpr double kMergeGrid = 1e-14;

bool same_exponent(Complex a, Complex b) {
    return std::nearbyint(a.real() / kMergeGrid) == std::nearbyint(b.real() / kMergeGrid) &&
           std::nearbyint(a.imag() / kMergeGrid) == std::nearbyint(b.imag() / kMergeGrid);
}

}  // namespace

MonomialSum::MonomialSum(std::initializer_list<MonomialTerm> terms) {
    for (const auto& t : terms) add(t.coeff, t.exponent);
}

MonomialSum::MonomialSum(const std::vector<MonomialTerm>& terms) {
    for (const auto& t : terms) add(t.coeff, t.exponent);
}

MonomialSum& MonomialSum::add(Complex coeff, HalfPlanePoint exponent) {
    for (auto& t : terms_) {
        if (same_exponent(t.exponent.value(), exponent.value())) {
            t.coeff += coeff;
            return *this;
        }
    }
    terms_.push_back({coeff, exponent});
    return *this;
}

MonomialSum& MonomialSum::operator+=(const MonomialSum& other) {
    for (const auto& t : other.terms_) add(t.coeff, t.exponent);
    return *this;
}

MonomialSum& MonomialSum::operator*=(Complex scalar) {
    for (auto& t : terms_) t.coeff *= scalar;
    return *this;
}

MonomialSum operator+(MonomialSum a, const MonomialSum& b) { return a += b; }
MonomialSum operator*(Complex scalar, MonomialSum f) { return f *= scalar; }

Complex l2_inner(const MonomialSum& f, const MonomialSum& h) {
    Complex sum = 0.0;
    for (const auto& a : f.terms())
        for (const auto& b : h.terms())
            sum += a.coeff * std::conj(b.coeff) / (1.0 + a.exponent.value() + std::conj(b.exponent.value()));
    return sum;
}

Complex quadrature_inner(const MonomialSum& f, const MonomialSum& h) {
    if (f.empty() || h.empty()) return 0.0;
    // With x = exp(-v) each product of terms becomes a_i conj(b_j) exp(-v (1 + s_i + conj t_j)),
    // all of which decay since Re(1 + s_i + conj t_j) > 0.
    double weight = 0.0, rate = INFINITY;
    for (const auto& a : f.terms())
        for (const auto& b : h.terms()) {
            weight += std::abs(a.coeff) * std::abs(b.coeff);
            rate = std::min(rate, 1.0 + a.exponent.real() + b.exponent.real());
        }
    if (weight == 0.0) return 0.0;

    auto integrand = [&](double v) -> Complex {
        Complex fv = 0.0, hv = 0.0;
        for (const auto& a : f.terms()) fv += a.coeff * std::exp(-v * a.exponent.value());
        for (const auto& b : h.terms()) hv += b.coeff * std::exp(-v * b.exponent.value());
        return fv * std::conj(hv) * std::exp(-v);
    };

    constexpr double target = 1e-10;
    // Tail beyond V is at most weight * exp(-rate V) / rate; keep it near rounding level.
    const double V = std::max(1.0, std::log(weight / (rate * 1e-16)) / rate);
    const int panels = static_cast<int>(std::ceil(V));

    Complex total = 0.0;
    double error = 0.0, l1 = 0.0;
    for (int p = 0; p < panels; ++p) {
        double panel_error = 0.0, panel_l1 = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, double(p), double(p + 1), 15,
                                                                                1e-11, &panel_error, &panel_l1);
        error += panel_error;
        l1 += panel_l1;
    }
    error += weight * std::exp(-rate * panels) / rate;
    if (error > target * std::max(1.0, l1))
        throw QuadratureNoConvergence("L2 inner product quadrature did not reach its target", error);
    return total;
}

double monomial_legendre_coeff(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    // <x^n, P_k(2x-1)> = n!^2 / ((n-k)! (n+k+1)!); successive ratios are (n-k)/(n+k+2).
    double c = 1.0 / (n + 1.0);
    for (int j = 0; j < k; ++j) c *= double(n - j) / double(n + j + 2);
    return c * std::sqrt(2.0 * k + 1.0);
}

LegendreCoords to_legendre(const MonomialSum& f, int N) {
    if (N < 0) throw ExponentOutOfRange("degree must be nonnegative");
    LegendreCoords out{N, Eigen::VectorXcd::Zero(N + 1)};
    for (const auto& t : f.terms()) {
        const Complex s = t.exponent.value();
        const double n = std::round(s.real());
        if (s.imag() != 0.0 || s.real() != n || n < 0.0 || n > N)
            throw ExponentOutOfRange("exponent " + format_complex(s) + " is not an integer in 0.." + std::to_string(N));
        const int ni = static_cast<int>(n);
        for (int k = 0; k <= ni; ++k) out.coeffs[k] += t.coeff * monomial_legendre_coeff(ni, k);
    }
    return out;
}

Complex eval_monomial_sum(const MonomialSum& f, double x) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("monomial sums are evaluated on (0,1], got " + format_double(x));
    const double lx = std::log(x);
    Complex sum = 0.0;
    for (const auto& t : f.terms()) sum += t.coeff * std::exp(t.exponent.value() * lx);
    return sum;
}

void to_json(Json& j, const MonomialSum& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"exp", complex_to_json(t.exponent.value())}});
    j = Json{{"terms", terms}};
}

void from_json(const Json& j, MonomialSum& f) {
    const Json& terms = require_field(j, "terms");
    if (!terms.is_array()) throw DomainError("\"terms\" must be an array");
    f = MonomialSum();
    for (const auto& t : terms)
        f.add(complex_from_json(require_field(t, "coeff")), complex_from_json(require_field(t, "exp")));
}

}  // namespace monop
