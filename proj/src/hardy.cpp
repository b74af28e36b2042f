#include "monop/hardy.hpp"

#include "monop/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace monop {

namespace {

constexpr double kMergeGrid = 1e-14;

bool same_point(Complex a, Complex b) {
    return std::nearbyint(a.real() / kMergeGrid) == std::nearbyint(b.real() / kMergeGrid) &&
           std::nearbyint(a.imag() / kMergeGrid) == std::nearbyint(b.imag() / kMergeGrid);
}

}  // namespace

KernelSum::KernelSum(std::initializer_list<KernelTerm> terms) {
    for (const auto& t : terms) add(t.coeff, t.point);
}

KernelSum::KernelSum(const std::vector<KernelTerm>& terms) {
    for (const auto& t : terms) add(t.coeff, t.point);
}

KernelSum& KernelSum::add(Complex coeff, HalfPlanePoint point) {
    for (auto& t : terms_) {
        if (same_point(t.point.value(), point.value())) {
            t.coeff += coeff;
            return *this;
        }
    }
    terms_.push_back({coeff, point});
    return *this;
}

Complex KernelSum::operator()(Complex s) const {
    Complex sum = 0.0;
    for (const auto& t : terms_) sum += t.coeff * kernel(s, t.point.value());
    return sum;
}

KernelSum& KernelSum::operator+=(const KernelSum& other) {
    for (const auto& t : other.terms_) add(t.coeff, t.point);
    return *this;
}

KernelSum& KernelSum::operator*=(Complex scalar) {
    for (auto& t : terms_) t.coeff *= scalar;
    return *this;
}

KernelSum operator+(KernelSum a, const KernelSum& b) { return a += b; }
KernelSum operator*(Complex scalar, KernelSum F) { return F *= scalar; }

KernelSum u_apply(const MonomialSum& f) {
    KernelSum F;
    for (const auto& t : f.terms()) {
        const Complex s = t.exponent.value();
        F.add(t.coeff / (1.0 + s), std::conj(s));
    }
    return F;
}

Complex u_pointwise(const MonomialSum& f, HalfPlanePoint s) {
    // int f(x) x^s dx = <f, x^{conj s}>
    return (1.0 + s.value()) * quadrature_inner(f, MonomialSum::monomial(std::conj(s.value())));
}

MonomialSum u_inverse(const KernelSum& F) {
    MonomialSum f;
    for (const auto& t : F.terms()) {
        const Complex ub = std::conj(t.point.value());
        f.add(t.coeff * (1.0 + ub), ub);
    }
    return f;
}

Complex hardy_inner(const KernelSum& F, const KernelSum& G) {
    Complex sum = 0.0;
    for (const auto& a : F.terms())
        for (const auto& b : G.terms()) sum += a.coeff * std::conj(b.coeff) * kernel(b.point.value(), a.point.value());
    return sum;
}

double boundary_norm_sq(const std::function<Complex(Complex)>& F, const std::vector<double>& peaks) {
    // t = tan(theta)/2 turns dt / (t^2 + 1/4) into 2 d(theta).
    constexpr double half_pi = std::numbers::pi / 2;
    auto integrand = [&](double theta) { return std::norm(F(Complex(-0.5, 0.5 * std::tan(theta)))); };

    std::vector<double> cuts{-half_pi, half_pi};
    for (double t : peaks)
        if (std::isfinite(t)) cuts.push_back(std::atan(2.0 * t));
    for (int k = -3; k <= 3; ++k) cuts.push_back(k * half_pi / 4);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-15; }), cuts.end());

    double total = 0.0, error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double e = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[k], cuts[k + 1], 12,
                                                                                1e-11, &e);
        error += e;
    }
    if (!std::isfinite(total) || error > 1e-9 * std::max(1.0, total))
        throw QuadratureNoConvergence("boundary norm quadrature did not converge", error);
    return total / std::numbers::pi;
}

double boundary_norm_sq(const KernelSum& F) {
    std::vector<double> peaks;
    for (const auto& t : F.terms()) peaks.push_back(t.point.imag());
    return boundary_norm_sq([&](Complex s) { return F(s); }, peaks);
}

void to_json(Json& j, const KernelSum& F) {
    Json terms = Json::array();
    for (const auto& t : F.terms())
        terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"point", complex_to_json(t.point.value())}});
    j = Json{{"terms", terms}};
}

void from_json(const Json& j, KernelSum& F) {
    const Json& terms = require_field(j, "terms");
    if (!terms.is_array()) throw DomainError("\"terms\" must be an array");
    F = KernelSum();
    for (const auto& t : terms)
        F.add(complex_from_json(require_field(t, "coeff")), complex_from_json(require_field(t, "point")));
}

}  // namespace monop
