// Command-line front end: JSON in, JSON or CSV out.
// Exit codes: 0 success or affirmative verdict, 2 negative verdict, 1 error.

#include "monop/errors.hpp"
#include "monop/flatbound.hpp"
#include "monop/funcexpr.hpp"
#include "monop/halfplane.hpp"
#include "monop/json_support.hpp"
#include "monop/l2poly.hpp"
#include "monop/monop.hpp"
#include "monop/pick.hpp"
#include "monop/unitaryop.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace monop;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

struct Globals {
    std::string out = "auto";
    std::optional<double> tol;
    std::uint64_t seed = 0;
    int jobs = 1;

    bool csv(bool csv_by_default) const { return out == "csv" || (out == "auto" && csv_by_default); }
    double tolerance(double fallback) const { return tol.value_or(fallback); }
};

Json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw DomainError("cannot open \"" + path + "\"");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DomainError("malformed JSON in \"" + path + "\": " + e.what());
    }
}

/// "x", "x,y" or "(x,y)".
Complex parse_complex_arg(std::string text) {
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
    const auto comma = text.find(',');
    auto number = [&](const std::string& part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size() || !std::isfinite(v)) throw DomainError("not a complex number: \"" + text + "\"");
        return v;
    };
    if (comma == std::string::npos) return {number(text), 0.0};
    return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

std::vector<HalfPlanePoint> points_field(const Json& j, const char* key) {
    const Json& a = require_field(j, key);
    if (!a.is_array()) throw DomainError(std::string("field \"") + key + "\" must be an array");
    std::vector<HalfPlanePoint> out;
    for (const auto& v : a) out.emplace_back(complex_from_json(v));
    return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

int cmd_pick_check(const Globals& g, const std::string& input) {
    const Json j = read_json(input);
    const auto p = points_field(j, "p");
    std::vector<int> sizes;
    if (j.contains("sizes")) {
        if (!j.at("sizes").is_array()) throw DomainError("field \"sizes\" must be an array");
        for (const auto& s : j.at("sizes")) {
            if (!s.is_number_integer()) throw DomainError("field \"sizes\" must hold integers");
            sizes.push_back(s.get<int>());
        }
    } else {
        sizes.push_back(int(p.size()));
    }
    const double tol = g.tolerance(1e-10);
    Json verdicts = Json::array();
    std::string csv = "size,status,min_eig,boundary\n";
    bool all_psd = true;
    for (int n : sizes) {
        const auto v = psd_check(pick_matrix(p, n), tol);
        all_psd = all_psd && v.status == PsdStatus::PSD;
        Json e = verdict_to_json(v);
        e["size"] = n;
        verdicts.push_back(e);
        csv += std::to_string(n) + "," + (v.status == PsdStatus::PSD ? "psd" : "notpsd") + "," + csv_number(v.min_eigenvalue) +
               "," + (v.boundary ? "1" : "0") + "\n";
    }
    if (g.csv(false))
        std::cout << csv;
    else
        print_json({{"verdicts", verdicts}});
    return all_psd ? kOk : kNegative;
}

int cmd_np_interp(const Globals& g, const std::string& input) {
    const Json j = read_json(input);
    const auto nodes = points_field(j, "nodes");
    const auto targets = points_field(j, "targets");
    std::vector<Complex> at;
    if (j.contains("eval"))
        for (const auto& v : j.at("eval")) at.push_back(complex_from_json(v));
    try {
        const auto beta = np_interpolate(nodes, targets, g.tolerance(1e-10));
        double residual = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            residual = std::max(residual, std::abs(beta(nodes[i].value()) - targets[i].value()));
        Json values = Json::array();
        std::string csv = "re_s,im_s,re_beta,im_beta\n";
        for (Complex s : at) {
            const Complex b = beta(HalfPlanePoint(s).value());
            values.push_back({{"s", complex_to_json(s)}, {"beta", complex_to_json(b)}});
            csv += csv_number(s.real()) + "," + csv_number(s.imag()) + "," + csv_number(b.real()) + "," + csv_number(b.imag()) + "\n";
        }
        if (g.csv(false)) {
            std::cout << csv;
        } else {
            Json gamma = Json::array();
            for (Complex c : beta.schur_parameters()) gamma.push_back(complex_to_json(c));
            Json nj = Json::array(), tj = Json::array();
            for (const auto& n : nodes) nj.push_back(complex_to_json(n.value()));
            for (const auto& t : targets) tj.push_back(complex_to_json(t.value()));
            print_json({{"beta", {{"kind", "interpolant"}, {"nodes", nj}, {"targets", tj}}},
                        {"schur_parameters", gamma},
                        {"node_residual", residual},
                        {"values", values}});
        }
        return kOk;
    } catch (const NotInterpolable& e) {
        print_json({{"status", "not_interpolable"}, {"message", e.what()}, {"verdict", verdict_to_json(e.verdict())}});
        return kNegative;
    }
}

MonomialOperatorSpec read_spec(const std::string& path) { return spec_from_json(read_json(path)); }

int cmd_apply(const Globals&, const std::string& spec_path, const std::string& f_path) {
    const auto T = read_spec(spec_path);
    const auto f = read_json(f_path).get<MonomialSum>();
    print_json(Json(apply(T, f)));
    return kOk;
}

int cmd_norm(const Globals& g, const std::string& spec_path, const std::vector<int>& Ns) {
    const auto T = read_spec(spec_path);
    const auto curve = norm_curve(T, Ns);
    if (g.csv(true)) {
        std::cout << "N,estimate\n";
        for (const auto& p : curve) std::cout << p.N << "," << csv_number(p.estimate) << "\n";
    } else {
        Json pts = Json::array();
        for (const auto& p : curve) pts.push_back({{"N", p.N}, {"estimate", p.estimate}});
        print_json({{"points", pts}});
    }
    return kOk;
}

ScanSpec read_scan(const std::string& path, int jobs) {
    ScanSpec s = path.empty() ? ScanSpec{} : ScanSpec::from_json(read_json(path));
    s.jobs = jobs;
    return s;
}

int cmd_flat_check(const Globals& g, const std::string& expr, const std::string& tau_text, const std::string& scan_path,
                   const std::string& csv_path) {
    const auto weight = parse(expr);
    const Complex tau = parse_complex_arg(tau_text);
    if (tau.real() < 0.0)
        throw ReTauNegative("Re(tau) < 0: route to pick-check; the shifted powers fail the Pick test, so no bounded operator exists");
    const auto v = flat_verdict(weight, tau, read_scan(scan_path, g.jobs));
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw DomainError("cannot write \"" + csv_path + "\"");
        out << samples_to_csv(v.samples);
    }
    if (g.csv(false))
        std::cout << samples_to_csv(v.samples);
    else
        print_json(verdict_to_json(v));
    return v.status == Boundedness::Bounded ? kOk : kNegative;
}

int cmd_poisson_sweep(const Globals& g, const std::string& expr, const std::string& scan_path, std::optional<double> carleson_tau) {
    const auto profile = BoundaryProfile::from_weight(parse(expr));
    const auto scan = read_scan(scan_path, g.jobs);
    std::vector<GridSample> samples;
    double sup = 0.0;
    Json tails;
    if (carleson_tau) {
        const auto r = carleson_sup(profile, *carleson_tau, scan);
        samples = r.samples;
        sup = r.sup;
        tails = {{"sigma_tail", r.sigma_tail}, {"t_tail", r.t_tail}};
    } else {
        const auto sig = scan.sigmas();
        const auto ts = scan.ts();
        for (double s : sig)
            for (double t : ts) {
                samples.push_back({s, t, poisson_integral(profile, s, t)});
                sup = std::max(sup, samples.back().value);
            }
    }
    if (g.csv(true)) {
        std::cout << samples_to_csv(samples);
    } else {
        Json rows = Json::array();
        for (const auto& s : samples) rows.push_back({s.sigma, s.t, s.value});
        Json j{{"samples", rows}, {"sup", sup}, {"grid", scan.to_json()}};
        if (carleson_tau) j.update(tails);
        print_json(j);
    }
    return kOk;
}

int cmd_unitary(const Globals& g, double theta, const std::string& a_text, const std::string& action, int pairs) {
    const HalfPlaneAutomorphism A(theta, parse_complex_arg(a_text));
    const auto T = build_unitary(A, theta);
    if (action == "build") {
        print_json(spec_to_json(T));
        return kOk;
    }
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> re(-0.45, 5.0), im(-5.0, 5.0);
    std::vector<PointPair> samples;
    for (int k = 0; k < pairs; ++k) {
        const Complex s(re(rng), im(rng));
        const Complex u(re(rng), im(rng));
        samples.emplace_back(HalfPlanePoint(s), HalfPlanePoint(u));
    }
    const double iso = isometry_check(T, samples);
    const double fac = factorization_residual(A, samples);
    const double tol = g.tolerance(1e-10);
    if (g.csv(false))
        std::cout << "pairs,isometry_residual,factorization_residual\n" << pairs << "," << csv_number(iso) << "," << csv_number(fac) << "\n";
    else
        print_json({{"pairs", pairs}, {"isometry_residual", iso}, {"factorization_residual", fac}, {"tol", tol}});
    return iso <= tol && fac <= tol ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monomial operators on L2[0,1]: Pick checks, interpolation, norms, boundedness and unitary operators"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    double tol_flag = 0.0;
    app.add_option("--out", g.out, "Output format (csv or json; default depends on the command)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    auto* tol_opt = app.add_option("--tol", tol_flag, "Tolerance for verdicts (default: MONOP_TOL or the command's own)");
    app.add_option("--seed", g.seed, "Seed for randomized sampling");
    app.add_option("--jobs", g.jobs, "Worker threads for grid sweeps")->check(CLI::Range(1, 64));

    std::string input, spec_path, f_path, expr, tau_text = "0", scan_path, csv_path, a_text = "0", action = "check";
    std::vector<int> Ns{10, 50, 200};
    double theta = 0.0;
    int pairs = 1000;
    std::optional<double> carleson_tau;

    auto* pick = app.add_subcommand("pick-check", "Pick-matrix positivity for a power sequence {\"p\": [...], \"sizes\": [...]}");
    pick->add_option("input", input, "JSON file or - for stdin")->required();
    auto* np = app.add_subcommand("np-interp", "Interpolate nodes to targets by a self-map of the half-plane");
    np->add_option("input", input, "JSON {\"nodes\": [...], \"targets\": [...], \"eval\": [...]}")->required();
    auto* ap = app.add_subcommand("apply", "Apply an operator spec to a monomial sum");
    ap->add_option("spec", spec_path, "Operator spec JSON")->required();
    ap->add_option("f", f_path, "Monomial sum JSON")->required();
    auto* nm = app.add_subcommand("norm", "Norm estimates on the first N+1 Legendre polynomials");
    nm->add_option("spec", spec_path, "Operator spec JSON")->required();
    nm->add_option("--N", Ns, "Truncation degrees")->delimiter(',');
    auto* fc = app.add_subcommand("flat-check", "Boundedness of x^n -> c_n x^{n+tau} with weight g");
    fc->add_option("--g", expr, "Weight expression in s")->required();
    fc->add_option("--tau", tau_text, "Shift tau as x or x,y");
    fc->add_option("--scan", scan_path, "Scan grid JSON");
    fc->add_option("--csv", csv_path, "Also write the sample sweep as CSV");
    auto* un = app.add_subcommand("unitary", "Build or check the unitary operator of an automorphism");
    un->add_option("--theta", theta, "Rotation angle");
    un->add_option("--a", a_text, "Disk parameter a as x or x,y");
    un->add_option("--action", action, "build or check")->check(CLI::IsMember({"build", "check"}));
    un->add_option("--pairs", pairs, "Random point pairs for check")->check(CLI::Range(1, 1000000));
    auto* ps = app.add_subcommand("poisson-sweep", "Poisson integral of |g|^2 on a (sigma, t) grid");
    ps->add_option("--g", expr, "Weight expression in s")->required();
    ps->add_option("--scan", scan_path, "Scan grid JSON");
    ps->add_option("--carleson", carleson_tau, "Report Carleson integrals at this tau instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (tol_opt->count() > 0) {
            g.tol = tol_flag;
        } else if (const char* env = std::getenv("MONOP_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end == env || *end != '\0' || !(v > 0.0)) throw DomainError(std::string("invalid MONOP_TOL \"") + env + "\"");
            g.tol = v;
        }
        if (g.tol && !(*g.tol > 0.0)) throw DomainError("--tol must be positive");

        if (*pick) return cmd_pick_check(g, input);
        if (*np) return cmd_np_interp(g, input);
        if (*ap) return cmd_apply(g, spec_path, f_path);
        if (*nm) return cmd_norm(g, spec_path, Ns);
        if (*fc) return cmd_flat_check(g, expr, tau_text, scan_path, csv_path);
        if (*un) return cmd_unitary(g, theta, a_text, action, pairs);
        if (*ps) return cmd_poisson_sweep(g, expr, scan_path, carleson_tau);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
