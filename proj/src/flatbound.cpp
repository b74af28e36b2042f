#include "monop/flatbound.hpp"

#include "monop/errors.hpp"
#include "monop/scalar.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace monop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAbsTarget = 1e-8;
constexpr double kDivergence = 1e8;
constexpr double kGrowth = 1e-3;

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
Estimate tanh_sinh_unit(F f) {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    Estimate e;
    try {
        e.value = integrator.integrate(f, 0.0, 1.0, 1e-12, &e.error);
    } catch (const std::exception&) {
        e.value = kInf;
        e.error = kInf;
    }
    if (!std::isfinite(e.value)) e.error = kInf;
    return e;
}

// A cut of the tangent-substituted line: theta and the exact ordinate it maps to.
struct Cut {
    double theta;
    double y;
    bool infinite;
};

// Integral over the line of gsq(y) * P_sigma(y - t) after y = t + L tan(theta).
// Each piece between consecutive cuts is integrated with its endpoint
// distances kept exact, so singularities at cut ordinates are resolved.
Estimate poisson_pieces(const BoundaryProfile& profile, double sigma, double t) {
    const double L = std::max(sigma, 1.0);
    std::vector<Cut> cuts{{-kPi / 2, -kInf, true}, {0.0, t, false}, {kPi / 2, kInf, true}};
    auto add = [&](double y) {
        if (std::isfinite(y)) cuts.push_back({std::atan((y - t) / L), y, false});
    };
    for (double b : profile.breakpoints) add(b);
    if (sigma < 1.0)
        for (double k : {-4.0, -1.0, 1.0, 4.0}) add(t + k * sigma);
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.theta < b.theta; });
    // Prefer breakpoint ordinates over derived ones when thetas collide.
    std::vector<Cut> unique;
    for (const Cut& c : cuts) {
        if (!unique.empty() && c.theta - unique.back().theta <= 1e-15) continue;
        unique.push_back(c);
    }

    const double scale = sigma * L / kPi;
    auto integrand = [&](const Cut& a, const Cut& b, double d, bool from_left) {
        double c, s, y;
        if (from_left) {
            if (a.infinite) {
                c = std::sin(d);
                s = -std::cos(d);
                y = t + L * s / c;
            } else {
                const double th = a.theta + d;
                c = std::cos(th);
                s = std::sin(th);
                y = a.y + L * std::sin(d) / (c * std::cos(a.theta));
            }
        } else {
            if (b.infinite) {
                c = std::sin(d);
                s = std::cos(d);
                y = t + L * s / c;
            } else {
                const double th = b.theta - d;
                c = std::cos(th);
                s = std::sin(th);
                y = b.y - L * std::sin(d) / (c * std::cos(b.theta));
            }
        }
        const double w = scale / (sigma * sigma * c * c + L * L * s * s);
        if (w == 0.0) return 0.0;
        return profile.gsq(y) * w;
    };

    Estimate total;
    for (std::size_t k = 0; k + 1 < unique.size(); ++k) {
        const Cut& a = unique[k];
        const Cut& b = unique[k + 1];
        const double h = b.theta - a.theta;
        const Estimate piece = tanh_sinh_unit([&](double u, double uc) {
            if (uc <= 0.0) return integrand(a, b, h * u, true);
            return integrand(a, b, h * uc, false);
        });
        total.value += h * piece.value;
        total.error += h * piece.error;
    }
    return total;
}

// int_lo^hi gsq(y) dy split at breakpoints, endpoint distances exact.
Estimate mass_between(const BoundaryProfile& profile, double lo, double hi) {
    std::vector<double> cuts{lo, hi};
    for (double b : profile.breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    Estimate total;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1], h = b - a;
        if (h <= 0.0) continue;
        const Estimate piece = tanh_sinh_unit([&](double u, double uc) {
            return uc <= 0.0 ? profile.gsq(a + h * u) : profile.gsq(b - h * uc);
        });
        total.value += h * piece.value;
        total.error += h * piece.error;
    }
    return total;
}

void check_decay(const BoundaryProfile& profile) {
    for (double sign : {-1.0, 1.0}) {
        const double a = profile.gsq(sign * 1e8), b = profile.gsq(sign * 1e9);
        if (!std::isfinite(a) || !std::isfinite(b) || b > a * std::pow(10.0, -profile.decay) * (1.0 + kGrowth) + 1e-300)
            throw TailBoundViolated("boundary profile decays slower than |y|^-" + format_double(profile.decay));
    }
}

// Bounds for the Poisson integral outside a finite scan, valid for every sigma > 0:
// for |t| >= T, P <= mass(T/2)/(pi T) + C (T/2)^-d; for sigma >= S and any t,
// P <= mass(Y)/(pi S) + C Y^-d with Y >= y0 chosen on a geometric list.
struct TailBounds {
    TailModel model;
    double t_tail(double T) const;
    double sigma_tail(double S) const;
    const BoundaryProfile* profile;
};

double TailBounds::t_tail(double T) const {
    if (!(T > 0.0) || T / 2 < model.y0 || model.decay < 0.0) return kInf;
    const Estimate m = mass_between(*profile, -T / 2, T / 2);
    if (!std::isfinite(m.value) || m.error > kAbsTarget * std::max(1.0, m.value)) return kInf;
    return (m.value + m.error) / (kPi * T) + model.C * std::pow(T / 2, -model.decay);
}

double TailBounds::sigma_tail(double S) const {
    if (model.decay < 0.0) return kInf;
    double best = kInf, mass = 0.0, lo = 0.0;
    double Y = model.y0;
    for (int k = 0; k <= 24; ++k, Y *= 2.0) {
        const Estimate a = mass_between(*profile, -Y, -lo), b = mass_between(*profile, lo, Y);
        if (!std::isfinite(a.value + b.value)) return best;
        mass += a.value + a.error + b.value + b.error;
        lo = Y;
        best = std::min(best, mass / (kPi * S) + model.C * std::pow(Y, -model.decay));
    }
    return best;
}

template <class F>
void parallel_for(std::size_t n, int jobs, F body) {
    std::vector<std::exception_ptr> errors(n);
    auto run = [&](std::size_t first, std::size_t step) {
        for (std::size_t i = first; i < n; i += step) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::size_t(std::clamp(jobs, 1, 64));
    if (workers == 1 || n < 2) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<double> logspace(double lo, double hi, int n) {
    if (n <= 1 || hi <= lo) return {lo};
    std::vector<double> out(static_cast<std::size_t>(n));
    const double a = std::log(lo), b = std::log(hi);
    for (int k = 0; k < n; ++k) out[std::size_t(k)] = std::exp(a + (b - a) * k / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace

BoundaryProfile BoundaryProfile::constant(double value) {
    if (!(value >= 0.0)) throw DomainError("boundary profile must be nonnegative");
    return {[value](double) { return value; }, 0.0, {}};
}

BoundaryProfile BoundaryProfile::from_weight(const FuncExpr& g, std::optional<double> decay) {
    BoundaryProfile p;
    p.gsq = [g](double y) {
        try {
            return std::norm(g(Complex(-0.5, y)));
        } catch (const EvalError&) {
            return kInf;
        }
    };
    for (Complex z : g.affine_singularities()) {
        if (std::find(p.breakpoints.begin(), p.breakpoints.end(), z.imag()) == p.breakpoints.end())
            p.breakpoints.push_back(z.imag());
    }
    if (decay) {
        p.decay = *decay;
    } else {
        double d = kInf;
        for (double sign : {-1.0, 1.0}) {
            const double a = p.gsq(sign * 1e6), b = p.gsq(sign * 2e6);
            if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)) d = std::min(d, std::log2(a / b));
        }
        d -= kGrowth;
        // Bounded profiles tending to a nonzero limit.
        if (std::abs(d) < 1e-2) d = 0.0;
        p.decay = std::isfinite(d) ? d : 0.0;
    }
    return p;
}

TailModel fit_tail(const BoundaryProfile& profile) {
    TailModel m;
    m.decay = profile.decay;
    m.y0 = 1.0;
    for (double b : profile.breakpoints) m.y0 = std::max(m.y0, 2.0 * std::abs(b));
    std::vector<double> scaled;
    double y = m.y0;
    for (int k = 0; k <= 30; ++k, y *= 2.0) {
        const double v = std::max(profile.gsq(y), profile.gsq(-y)) * std::pow(y, m.decay);
        if (!std::isfinite(v)) throw TailBoundViolated("boundary profile is not finite at |y| = " + format_double(y));
        scaled.push_back(v);
        m.C = std::max(m.C, v);
    }
    const std::size_t n = scaled.size();
    bool growing = true;
    for (std::size_t k = n - 3; k + 1 < n; ++k) growing = growing && scaled[k + 1] > scaled[k] * (1.0 + kGrowth);
    if (growing) throw TailBoundViolated("boundary profile decays slower than |y|^-" + format_double(m.decay));
    return m;
}

double poisson_kernel(double sigma, double t, double y) {
    if (!(sigma > 0.0)) throw DomainError("Poisson kernel needs sigma > 0");
    const double d = y - t;
    return sigma / (kPi * (sigma * sigma + d * d));
}

double poisson_integral(const BoundaryProfile& profile, double sigma, double t) {
    if (!(sigma > 0.0)) throw DomainError("Poisson integral needs sigma > 0");
    if (!std::isfinite(t)) throw DomainError("Poisson integral needs finite t");
    check_decay(profile);
    const Estimate e = poisson_pieces(profile, sigma, t);
    if (!(e.error <= kAbsTarget))
        throw QuadratureNoConvergence("Poisson integral at sigma = " + format_double(sigma) + ", t = " + format_double(t),
                                      e.error);
    return e.value;
}

double profile_mass(const BoundaryProfile& profile, double Y) {
    if (!(Y >= 0.0) || !std::isfinite(Y)) throw DomainError("profile mass needs finite Y >= 0");
    const Estimate e = mass_between(profile, -Y, Y);
    if (!(e.error <= kAbsTarget * std::max(1.0, e.value)))
        throw QuadratureNoConvergence("profile mass on [-" + format_double(Y) + ", " + format_double(Y) + "]", e.error);
    return e.value;
}

std::vector<double> ScanSpec::sigmas() const { return logspace(sigma_lo, sigma_hi, n_sigma); }

std::vector<double> ScanSpec::ts() const {
    if (n_t <= 1 || t_hi <= t_lo) return {t_lo};
    std::vector<double> out(static_cast<std::size_t>(n_t));
    for (int k = 0; k < n_t; ++k) out[std::size_t(k)] = t_lo + (t_hi - t_lo) * k / (n_t - 1);
    out.back() = t_hi;
    return out;
}

Json ScanSpec::to_json() const {
    return {{"sigma_lo", sigma_lo}, {"sigma_hi", sigma_hi}, {"n_sigma", n_sigma}, {"t_lo", t_lo},
            {"t_hi", t_hi},         {"n_t", n_t},           {"layers", layers}};
}

ScanSpec ScanSpec::from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("scan must be a JSON object");
    ScanSpec s;
    auto real = [&](const char* key, double& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number()) throw DomainError(std::string("scan field \"") + key + "\" must be a number");
        out = j.at(key).get<double>();
    };
    auto count = [&](const char* key, int& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number_integer()) throw DomainError(std::string("scan field \"") + key + "\" must be an integer");
        out = j.at(key).get<int>();
    };
    real("sigma_lo", s.sigma_lo);
    real("sigma_hi", s.sigma_hi);
    count("n_sigma", s.n_sigma);
    real("t_lo", s.t_lo);
    real("t_hi", s.t_hi);
    count("n_t", s.n_t);
    count("layers", s.layers);
    if (!(s.sigma_lo > 0.0) || !(s.sigma_hi >= s.sigma_lo) || s.n_sigma < 1 || s.n_sigma > 10000 || s.n_t < 1 ||
        s.n_t > 100000 || !(s.t_hi >= s.t_lo) || s.layers < 3 || s.layers > 60)
        throw DomainError("invalid scan grid " + j.dump());
    return s;
}

double carleson_integral(const BoundaryProfile& profile, double tau, double sigma, double t) {
    if (!(tau > 0.0)) throw DomainError("Carleson integral needs tau > 0");
    if (!(sigma > 0.0)) throw DomainError("Carleson integral needs sigma > 0");
    return kPi * sigma / (tau + sigma) * poisson_integral(profile, tau + sigma, t);
}

CarlesonResult carleson_sup(const BoundaryProfile& profile, double tau, const ScanSpec& scan) {
    if (!(tau > 0.0)) throw DomainError("Carleson supremum needs tau > 0");
    check_decay(profile);
    const auto sig = scan.sigmas();
    const auto ts = scan.ts();
    CarlesonResult r;
    r.samples.resize(sig.size() * ts.size());
    parallel_for(r.samples.size(), scan.jobs, [&](std::size_t i) {
        const double s = sig[i / ts.size()], t = ts[i % ts.size()];
        r.samples[i] = {s, t, carleson_integral(profile, tau, s, t)};
    });
    for (const auto& g : r.samples) r.sup = std::max(r.sup, g.value);

    const TailBounds tails{fit_tail(profile), &profile};
    // C(sigma, t) <= pi P(tau + sigma, t).
    r.sigma_tail = kPi * tails.sigma_tail(tau + scan.sigma_hi);
    const double T = (scan.t_lo <= 0.0 && scan.t_hi >= 0.0) ? std::min(-scan.t_lo, scan.t_hi) : 0.0;
    r.t_tail = kPi * tails.t_tail(T);
    return r;
}

std::string to_string(Boundedness b) {
    switch (b) {
        case Boundedness::Bounded: return "Bounded";
        case Boundedness::Unbounded: return "Unbounded";
        case Boundedness::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

BoundednessVerdict poisson_verdict(const FuncExpr& g, double rho, const ScanSpec& scan) {
    BoundednessVerdict v;
    v.grid = scan;
    v.rho = rho;
    const auto profile = BoundaryProfile::from_weight(g);
    if (profile.decay <= -1.0) {
        v.status = Boundedness::Unbounded;
        v.sup = kInf;
        v.witness = Complex(-0.5 + rho, 0.0);
        v.reason = "|g|^2 grows like |y|^" + format_double(-profile.decay) + " on the boundary line; the Poisson integral diverges";
        return v;
    }
    const auto sig = logspace(rho, std::max(scan.sigma_hi, rho), scan.n_sigma);
    const auto ts = scan.ts();
    std::vector<Estimate> est(sig.size() * ts.size());
    parallel_for(est.size(), scan.jobs, [&](std::size_t i) { est[i] = poisson_pieces(profile, sig[i / ts.size()], ts[i % ts.size()]); });

    std::size_t arg = 0;
    bool unconverged = false;
    for (std::size_t i = 0; i < est.size(); ++i) {
        v.samples.push_back({sig[i / ts.size()], ts[i % ts.size()], est[i].value});
        if (!(est[i].value <= v.samples[arg].value)) arg = i;
        if (!(est[i].error <= kAbsTarget)) unconverged = true;
    }
    v.sup = v.samples[arg].value;
    v.witness = Complex(-0.5 + v.samples[arg].sigma, v.samples[arg].t);
    if (!(v.sup <= kDivergence)) {
        v.status = Boundedness::Unbounded;
        v.reason = "Poisson integral of |g|^2 exceeds " + format_double(kDivergence) + " on the scan grid";
        return v;
    }
    if (unconverged) {
        v.status = Boundedness::Inconclusive;
        v.reason = "Poisson quadrature did not reach its error target on the scan grid";
        return v;
    }
    try {
        const TailBounds tails{fit_tail(profile), &profile};
        v.sigma_tail = tails.sigma_tail(sig.back());
        const double T = (scan.t_lo <= 0.0 && scan.t_hi >= 0.0) ? std::min(-scan.t_lo, scan.t_hi) : 0.0;
        v.t_tail = tails.t_tail(T);
    } catch (const TailBoundViolated& e) {
        v.sigma_tail = v.t_tail = kInf;
    }
    if (std::isfinite(v.sigma_tail) && std::isfinite(v.t_tail)) {
        v.status = Boundedness::Bounded;
        v.reason = "Poisson integral of |g|^2 bounded on the scan grid and by the tail estimates beyond it";
    } else {
        v.status = Boundedness::Inconclusive;
        v.reason = "no finite bound for the Poisson integral outside the scan window";
    }
    return v;
}

BoundednessVerdict sup_verdict(const FuncExpr& g, const ScanSpec& scan) {
    BoundednessVerdict v;
    v.grid = scan;
    auto ts = scan.ts();
    for (Complex z : g.affine_singularities())
        if (z.imag() > scan.t_lo && z.imag() < scan.t_hi) ts.push_back(z.imag());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    // Offsets from the boundary: 2^-j for j = layers..0 (boundary approach), then 2^k outward.
    std::vector<double> xs;
    for (int j = scan.layers; j >= 0; --j) xs.push_back(std::ldexp(1.0, -j));
    for (int k = 1; k <= 20; ++k) xs.push_back(std::ldexp(1.0, k));

    std::vector<double> vals(xs.size() * ts.size());
    parallel_for(vals.size(), scan.jobs, [&](std::size_t i) {
        try {
            vals[i] = std::abs(g(Complex(-0.5 + xs[i / ts.size()], ts[i % ts.size()])));
        } catch (const EvalError&) {
            vals[i] = kInf;
        }
        if (std::isnan(vals[i])) vals[i] = kInf;
    });

    std::size_t arg = 0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] > vals[arg]) arg = i;
    v.sup = vals[arg];
    v.witness = Complex(-0.5 + xs[arg / ts.size()], ts[arg % ts.size()]);

    const std::size_t n_inner = std::size_t(scan.layers) + 1;
    std::vector<double> layer_max(xs.size(), 0.0);
    for (std::size_t i = 0; i < vals.size(); ++i) layer_max[i / ts.size()] = std::max(layer_max[i / ts.size()], vals[i]);
    for (std::size_t j = 0; j < n_inner; ++j) v.samples.push_back({xs[j], 0.0, layer_max[j]});

    if (!(v.sup <= kDivergence)) {
        v.status = Boundedness::Unbounded;
        v.reason = "|g| exceeds " + format_double(kDivergence) + " on the sample grid";
        return v;
    }
    // Running max from the outermost boundary-approach layer inward.
    std::vector<double> running(n_inner);
    double r = 0.0;
    for (std::size_t k = n_inner; k-- > 0;) running[k] = r = std::max(r, layer_max[k]);
    if (n_inner >= 3 && running[0] > running[1] * (1.0 + kGrowth) && running[1] > running[2] * (1.0 + kGrowth)) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (vals[i] > vals[w]) w = i;
        v.witness = Complex(-0.5 + xs[0], ts[w]);
        v.sup = std::max(v.sup, vals[w]);
        v.status = Boundedness::Unbounded;
        v.reason = "running max of |g| grows across the three finest boundary layers";
        return v;
    }
    // Growth toward the outer edges of the grid: the maximum sits on the t edges or
    // the outermost layer and clearly exceeds everything inside.
    const std::size_t nx = xs.size(), nt = ts.size();
    double edge = 0.0, inside = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t t = 0; t < nt; ++t) {
            const double val = vals[x * nt + t];
            const bool on_edge = x + 1 == nx || (nt >= 3 && (t == 0 || t + 1 == nt));
            (on_edge ? edge : inside) = std::max(on_edge ? edge : inside, val);
        }
    const bool edge_growth = edge > inside * (1.0 + kGrowth);
    if (edge_growth) {
        v.status = Boundedness::Inconclusive;
        v.reason = "|g| still grows at the edge of the sample grid";
        return v;
    }
    v.status = Boundedness::Bounded;
    v.reason = "sup |g| on the sample grid is finite and stable toward the boundary";
    return v;
}

}  // namespace

BoundednessVerdict flat_verdict(const FuncExpr& g, Complex tau, const ScanSpec& scan) {
    if (tau.real() < 0.0 || std::isnan(tau.real()))
        throw ReTauNegative("Re tau < 0: route to pick-check; no bounded flat operator exists for this shift");
    if (scan.n_sigma < 1 || scan.n_t < 1 || scan.layers < 3 || !(scan.sigma_lo > 0.0) || !(scan.sigma_hi >= scan.sigma_lo))
        throw DomainError("invalid scan grid");
    if (tau.real() == 0.0) return sup_verdict(g, scan);
    return poisson_verdict(g, tau.real(), scan);
}

Json verdict_to_json(const BoundednessVerdict& v) {
    Json j{{"status", to_string(v.status)},
           {"sup", v.sup},
           {"grid", v.grid.to_json()},
           {"witness", complex_to_json(v.witness)},
           {"reason", v.reason}};
    if (v.rho > 0.0) {
        j["rho"] = v.rho;
        j["sigma_tail"] = v.sigma_tail;
        j["t_tail"] = v.t_tail;
    }
    return j;
}

std::string samples_to_csv(const std::vector<GridSample>& samples) {
    std::ostringstream out;
    out << "sigma,t,value\n";
    char buf[96];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", s.sigma, s.t, s.value);
        out << buf;
    }
    return out.str();
}

double halfplane_comparison(double rho, double sigma, const std::vector<double>& offsets) {
    if (!(rho > 0.0) || !(sigma >= rho)) throw DomainError("comparison needs 0 < rho <= sigma");
    const double factor = (sigma * sigma) / (rho * rho);
    double worst = -kInf;
    for (double d : offsets) {
        const double lhs = rho / (kPi * (rho * rho + d * d));
        const double rhs = factor * sigma / (kPi * (sigma * sigma + d * d));
        worst = std::max(worst, lhs - rhs);
    }
    return worst;
}

double halfplane_comparison(double rho, double sigma) {
    std::vector<double> offsets(2001);
    for (int k = 0; k <= 2000; ++k) offsets[std::size_t(k)] = -1000.0 + k;
    return halfplane_comparison(rho, sigma, offsets);
}

FuncExpr example_weight(double c) { return parse("1/((1+s)*(s+0.5)^" + format_double(c) + ")"); }

double example_poisson_bound(double c, double sigma) { return (8.0 / (1.0 - 2.0 * c) + 2.0 * kPi) / (kPi * sigma); }

}  // namespace monop
