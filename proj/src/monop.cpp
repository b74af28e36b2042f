#include "monop/monop.hpp"

#include "monop/errors.hpp"

#include <cmath>

namespace monop {

namespace {

/// Integer n with s == n exactly, if any.
std::optional<long> exact_integer(Complex s) {
    if (s.imag() != 0.0 || s.real() != std::floor(s.real()) || std::abs(s.real()) > 1e15) return std::nullopt;
    return static_cast<long>(s.real());
}

}  // namespace

BetaMap BetaMap::flat(Complex tau) {
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || tau.real() < 0.0)
        throw DomainError("flat shift needs Re tau >= 0, got " + format_complex(tau));
    return BetaMap(FlatShift{tau});
}

Complex BetaMap::eval(Complex s) const {
    switch (kind()) {
        case Kind::Flat: return s + std::get<FlatShift>(rep_).tau;
        case Kind::Automorphism: return std::get<HalfPlaneAutomorphism>(rep_).eval(s);
        case Kind::Interpolant: return std::get<NPInterpolant>(rep_).eval(s);
        case Kind::Expression: return std::get<FuncExpr>(rep_).eval(s);
    }
    return {};
}

BigComplex BetaMap::eval(const BigComplex& s) const {
    switch (kind()) {
        case Kind::Flat: return s + lift(std::get<FlatShift>(rep_).tau, s);
        case Kind::Automorphism: return std::get<HalfPlaneAutomorphism>(rep_).eval(s);
        case Kind::Interpolant: return std::get<NPInterpolant>(rep_).eval(s);
        case Kind::Expression: return std::get<FuncExpr>(rep_).eval(s);
    }
    return s;
}

Complex BetaMap::operator()(Complex s) const {
    const Complex image = eval(s);
    if (!in_half_plane(image)) throw BetaRangeError(s, image);
    return image;
}

Weight Weight::expression(const FuncExpr& e) {
    Weight w;
    w.kind_ = Kind::Expression;
    w.expr_ = e;
    return w;
}

Weight Weight::table(std::vector<Complex> values) {
    Weight w;
    w.kind_ = Kind::Table;
    w.values_ = std::move(values);
    return w;
}

Weight Weight::with_interpolant(const FuncExpr& e) const {
    if (kind_ != Kind::Table) throw DomainError("only tabulated weights take an interpolant");
    for (std::size_t n = 0; n < values_.size(); ++n) {
        const Complex v = e(double(n));
        if (std::abs(v - values_[n]) > 1e-10 * std::max(1.0, std::abs(values_[n])))
            throw DomainError("interpolant misses the table at n = " + std::to_string(n));
    }
    Weight w = *this;
    w.expr_ = e;
    return w;
}

Complex Weight::operator()(Complex s) const {
    if (kind_ == Kind::Table) {
        if (const auto n = exact_integer(s); n && *n >= 0 && *n < long(values_.size())) return values_[*n];
        if (!expr_) throw OffTableQuery("tabulated weight queried at " + format_complex(s) + " without an interpolant");
    }
    return expr_->eval(s);
}

BigComplex Weight::eval(const BigComplex& s) const {
    if (kind_ == Kind::Table) {
        const Complex d = s.to_complex();
        if (const auto n = exact_integer(d); n && *n >= 0 && *n < long(values_.size()) &&
                                             (s.re - BigReal(double(*n), s.precision())).is_zero() && s.im.is_zero())
            return lift(values_[*n], s);
        if (!expr_) throw OffTableQuery("tabulated weight queried at " + format_complex(d) + " without an interpolant");
    }
    return expr_->eval(s);
}

Complex MonomialOperatorSpec::coefficient(Complex s) const { return (1.0 + beta_(s)) / (1.0 + s) * g_(s); }

MonomialSum apply(const MonomialOperatorSpec& T, const MonomialSum& f) {
    MonomialSum out;
    for (const auto& t : f.terms()) {
        const Complex s = t.exponent.value();
        const Complex b = T.beta()(s);
        out.add(t.coeff * ((1.0 + b) / (1.0 + s) * T.weight()(s)), b);
    }
    return out;
}

Weight weight_from_coeffs(const std::vector<Complex>& c, const std::vector<HalfPlanePoint>& p) {
    if (c.size() != p.size()) throw DomainError("coefficient and power sequences differ in length");
    std::vector<Complex> g(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) g[n] = c[n] * (1.0 + double(n)) / (1.0 + p[n].value());
    return Weight::table(std::move(g));
}

KernelSum conjugated_apply_kernel(const MonomialOperatorSpec& T, HalfPlanePoint s) {
    const Complex sb = std::conj(s.value());
    return KernelSum::kernel_at(std::conj(T.beta()(sb)), T.weight()(sb));
}

std::function<Complex(Complex)> adjoint_apply(const MonomialOperatorSpec& T, const KernelSum& F) {
    return [T, F](Complex s) {
        const Complex sb = std::conj(s);
        return std::conj(T.weight()(sb)) * F(std::conj(T.beta()(sb)));
    };
}

MonomialOperatorSpec operator_from_powers(const std::vector<HalfPlanePoint>& p, int size) {
    if (size < 1 || std::size_t(size) > p.size()) throw DomainError("size out of range for the power sequence");
    std::vector<HalfPlanePoint> nodes, targets(p.begin(), p.begin() + size);
    std::vector<Complex> c;
    for (int n = 0; n < size; ++n) {
        nodes.emplace_back(double(n));
        c.push_back((1.0 + p[n].value()) / (1.0 + n));
    }
    const auto beta = np_interpolate(nodes, targets);
    return {BetaMap::interpolant(beta), weight_from_coeffs(c, targets).with_interpolant(FuncExpr::parse("1")),
            "powers"};
}

MonomialOperatorSpec builtin(const std::string& name) {
    auto flat = [&](double tau, const char* g) {
        return MonomialOperatorSpec(BetaMap::flat(tau), Weight::expression(FuncExpr::parse(g)), "builtin:" + name);
    };
    if (name == "hardy") return flat(0.0, "1/(1+s)");
    if (name == "volterra") return flat(1.0, "1/(s+2)");
    if (name == "mult_x") return flat(1.0, "(1+s)/(2+s)");
    if (name == "identity") return flat(0.0, "1");
    throw UnknownBuiltin("unknown builtin operator \"" + name + "\" (expected hardy, volterra, mult_x or identity)");
}

namespace {

Json points_to_json(const std::vector<HalfPlanePoint>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(complex_to_json(p.value()));
    return a;
}

std::vector<HalfPlanePoint> points_from_json(const Json& a) {
    if (!a.is_array()) throw DomainError("expected an array of points");
    std::vector<HalfPlanePoint> out;
    for (const auto& p : a) out.emplace_back(complex_from_json(p));
    return out;
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_string()) throw DomainError(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

double number_field(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_number()) throw DomainError(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

}  // namespace

Json spec_to_json(const MonomialOperatorSpec& T) {
    Json beta;
    const BetaMap& b = T.beta();
    if (const auto* f = b.as_flat()) {
        beta = {{"kind", "flat"}, {"tau", complex_to_json(f->tau)}};
    } else if (const auto* A = b.as_automorphism()) {
        beta = {{"kind", "auto"}, {"theta", A->rotation()}, {"a", complex_to_json(A->a())}};
    } else if (const auto* I = b.as_interpolant()) {
        beta = {{"kind", "interpolant"}, {"nodes", points_to_json(I->nodes())}, {"targets", points_to_json(I->targets())}};
    } else {
        beta = {{"kind", "expr"}, {"text", b.as_expression()->print()}};
    }
    Json g;
    const Weight& w = T.weight();
    if (w.kind() == Weight::Kind::Expression) {
        g = {{"kind", "expr"}, {"text", w.expr()->print()}};
    } else {
        Json values = Json::array();
        for (Complex v : w.values()) values.push_back(complex_to_json(v));
        g = {{"kind", "table"}, {"values", values}};
        if (w.expr()) g["interpolant"] = w.expr()->print();
    }
    Json j{{"beta", beta}, {"g", g}};
    if (!T.provenance().empty()) j["provenance"] = T.provenance();
    return j;
}

MonomialOperatorSpec spec_from_json(const Json& j) {
    if (j.is_object() && j.contains("builtin")) return builtin(string_field(j, "builtin"));

    const Json& bj = require_field(j, "beta");
    const std::string bk = string_field(bj, "kind");
    std::optional<BetaMap> beta;
    if (bk == "flat") {
        beta = BetaMap::flat(complex_from_json(require_field(bj, "tau")));
    } else if (bk == "auto") {
        beta = BetaMap::automorphism(HalfPlaneAutomorphism(number_field(bj, "theta"), complex_from_json(require_field(bj, "a"))));
    } else if (bk == "interpolant") {
        beta = BetaMap::interpolant(
            np_interpolate(points_from_json(require_field(bj, "nodes")), points_from_json(require_field(bj, "targets"))));
    } else if (bk == "expr") {
        beta = BetaMap::expression(FuncExpr::parse(string_field(bj, "text")));
    } else {
        throw DomainError("unknown beta kind \"" + bk + "\" (expected flat, auto, interpolant or expr)");
    }

    const Json& gj = require_field(j, "g");
    const std::string gk = string_field(gj, "kind");
    std::optional<Weight> g;
    if (gk == "expr") {
        g = Weight::expression(FuncExpr::parse(string_field(gj, "text")));
    } else if (gk == "table") {
        const Json& vals = require_field(gj, "values");
        if (!vals.is_array()) throw DomainError("\"values\" must be an array");
        std::vector<Complex> v;
        for (const auto& x : vals) v.push_back(complex_from_json(x));
        g = Weight::table(std::move(v));
        if (gj.contains("interpolant")) g = g->with_interpolant(FuncExpr::parse(string_field(gj, "interpolant")));
    } else {
        throw DomainError("unknown weight kind \"" + gk + "\" (expected expr or table)");
    }
    const std::string provenance = j.contains("provenance") ? string_field(j, "provenance") : std::string();
    return {*beta, *g, provenance};
}

}  // namespace monop
