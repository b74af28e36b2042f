#pragma once

// Boundedness of flat monomial operators x^n -> c_n x^{n+tau} through the
// boundary behaviour of the weight g: the Poisson integral of |g|^2 on the
// line Re s = -1/2 when Re tau > 0, and sup |g| on the half-plane when
// Re tau = 0.

#include "monop/funcexpr.hpp"
#include "monop/json_support.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace monop {

/// y -> |g(-1/2 + iy)|^2 with tail and singularity information.
struct BoundaryProfile {
    std::function<double(double)> gsq;
    /// gsq(y) = O(|y|^{-decay}) as |y| -> infinity.
    double decay = 0.0;
    /// Ordinates where gsq may be singular or sharply peaked.
    std::vector<double> breakpoints;

    static BoundaryProfile constant(double value);
    /// Profile of a weight expression. The decay exponent is estimated from
    /// samples far out on the line unless given.
    static BoundaryProfile from_weight(const FuncExpr& g, std::optional<double> decay = std::nullopt);
};

/// Bound gsq(y) <= C |y|^{-decay} for |y| >= y0, fitted on the samples
/// |y| = y0 2^k, k <= 30. Throws TailBoundViolated if gsq |y|^decay keeps
/// growing across the outermost samples.
struct TailModel {
    double C = 0.0;
    double y0 = 0.0;
    double decay = 0.0;
};
TailModel fit_tail(const BoundaryProfile& profile);

/// (1/pi) sigma / (sigma^2 + (y - t)^2). Throws DomainError unless sigma > 0.
double poisson_kernel(double sigma, double t, double y);

/// P[gsq](-1/2 + sigma + it). Tangent substitution y = t + L tan(theta) with
/// L = max(sigma, 1), tanh-sinh on pieces split at the profile breakpoints.
/// Absolute error target 1e-8; throws QuadratureNoConvergence beyond it.
double poisson_integral(const BoundaryProfile& profile, double sigma, double t);

/// int_{-Y}^{Y} gsq(y) dy.
double profile_mass(const BoundaryProfile& profile, double Y);

struct ScanSpec {
    double sigma_lo = 1e-3, sigma_hi = 1e3;
    int n_sigma = 25;
    double t_lo = -10.0, t_hi = 10.0;
    int n_t = 41;
    /// Boundary-approach layers Re s = -1/2 + 2^{-j}, j = 0..layers.
    int layers = 40;
    /// Worker threads for grid sweeps.
    int jobs = 1;

    std::vector<double> sigmas() const;
    std::vector<double> ts() const;
    Json to_json() const;
    /// Missing keys keep their defaults.
    static ScanSpec from_json(const Json& j);
};

struct GridSample {
    double sigma, t, value;
};

/// sup over the scan of int sigma / ((tau + sigma)^2 + (y - t)^2) gsq(y) dy,
/// together with analytic bounds for sigma beyond the grid and |t| beyond the window.
struct CarlesonResult {
    double sup = 0.0;
    double sigma_tail = 0.0;
    double t_tail = 0.0;
    std::vector<GridSample> samples;
};

/// pi sigma / (tau + sigma) * P[gsq](tau + sigma, t), the Carleson integral at one point.
double carleson_integral(const BoundaryProfile& profile, double tau, double sigma, double t);
CarlesonResult carleson_sup(const BoundaryProfile& profile, double tau, const ScanSpec& scan = {});

enum class Boundedness { Bounded, Unbounded, Inconclusive };
std::string to_string(Boundedness b);

struct BoundednessVerdict {
    Boundedness status = Boundedness::Inconclusive;
    /// Largest scanned value: sup P[|g|^2] on Re s >= -1/2 + Re tau, or sup |g|.
    double sup = 0.0;
    /// Point (as s) where the largest value was seen.
    Complex witness;
    std::string reason;
    ScanSpec grid;
    double rho = 0.0;
    /// Poisson samples (case Re tau > 0) or layer maxima as (2^{-j}, 0, max) (case Re tau = 0).
    std::vector<GridSample> samples;
    double sigma_tail = 0.0, t_tail = 0.0;
};

/// Verdict for the flat operator with weight g and shift tau. Complex tau is
/// reduced to Re tau. Throws ReTauNegative when Re tau < 0.
BoundednessVerdict flat_verdict(const FuncExpr& g, Complex tau, const ScanSpec& scan = {});

Json verdict_to_json(const BoundednessVerdict& v);
/// Rows "sigma,t,value" with 9 significant digits.
std::string samples_to_csv(const std::vector<GridSample>& samples);

/// max over offsets d = y - t of (1/pi) rho/(rho^2+d^2) - (sigma^2/rho^2)(1/pi) sigma/(sigma^2+d^2).
/// Throws DomainError unless 0 < rho <= sigma.
double halfplane_comparison(double rho, double sigma, const std::vector<double>& offsets);
/// Offsets on a uniform grid of 2001 points in [-1000, 1000].
double halfplane_comparison(double rho, double sigma);

/// The weight 1/((1+s)(s+1/2)^c) and its closed-form Poisson bound
/// (1/(pi sigma)) (8/(1-2c) + 2 pi).
FuncExpr example_weight(double c);
double example_poisson_bound(double c, double sigma);

}  // namespace monop
