#pragma once

// Pick matrices for power sequences and diagonal operators, a tolerance-aware
// positive-semidefiniteness test, and Nevanlinna-Pick interpolation into the
// half-plane by the Schur algorithm.

#include "monop/errors.hpp"
#include "monop/halfplane.hpp"
#include "monop/json_support.hpp"

#include <Eigen/Dense>

#include <vector>

namespace monop {

/// Largest matrix accepted by the Pick-matrix builders.
inline constexpr int kMaxPickSize = 500;

/// M[m][n] = (p_m + conj(p_n) + 1) / (m + n + 1) for 0 <= m, n < size.
Eigen::MatrixXcd pick_matrix(const std::vector<HalfPlanePoint>& p, int size);

/// M[m][n] = (1 - c_m conj(c_n)) / (1 + m + n) for 0 <= m, n < size.
Eigen::MatrixXcd diag_pick_matrix(const std::vector<Complex>& c, int size);

/// (1 + w_i + conj w_j) / (1 + z_i + conj z_j): the half-plane Pick matrix of
/// the interpolation problem z_j -> w_j.
Eigen::MatrixXcd interpolation_pick_matrix(const std::vector<HalfPlanePoint>& nodes,
                                           const std::vector<HalfPlanePoint>& targets);

enum class PsdStatus { PSD, NotPSD };

struct PsdVerdict {
    PsdStatus status = PsdStatus::PSD;
    double min_eigenvalue = 0.0;
    /// Set when |min eigenvalue| <= tol (1 + trace): positive semidefinite but
    /// singular to working accuracy.
    bool boundary = false;
    double threshold = 0.0;
    /// Unit vector with witness* M witness = min eigenvalue; empty when PSD.
    Eigen::VectorXcd witness;
};

/// PSD iff the smallest eigenvalue is >= -tol (1 + trace M).
/// Throws EigenFailure if the eigensolver does not converge.
PsdVerdict psd_check(const Eigen::MatrixXcd& M, double tol = 1e-10);

/// v* M v.
Complex quadratic_form(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& v);

/// Pivoted Cholesky with long double accumulation. True when every pivot
/// exceeds tol (1 + trace M).
bool strictly_positive(const Eigen::MatrixXcd& M, double tol = 1e-10);

class NotInterpolable : public Error {
public:
    NotInterpolable(const std::string& what, PsdVerdict verdict) : Error(what), verdict_(std::move(verdict)) {}
    const PsdVerdict& verdict() const { return verdict_; }

private:
    PsdVerdict verdict_;
};

/// A holomorphic self-map of the half-plane through prescribed points,
/// beta = lambda^{-1} o phi o lambda with phi a rational Schur function built
/// from one Schur step per node.
class NPInterpolant {
public:
    Complex operator()(Complex s) const { return eval(s); }
    Complex eval(Complex s) const;
    BigComplex eval(const BigComplex& s) const;

    /// phi(z) on the disk side.
    Complex disk_eval(Complex z) const;

    const std::vector<HalfPlanePoint>& nodes() const { return nodes_; }
    const std::vector<HalfPlanePoint>& targets() const { return targets_; }
    /// Schur parameters gamma_1..gamma_k.
    const std::vector<Complex>& schur_parameters() const { return gamma_; }

private:
    friend NPInterpolant np_interpolate(const std::vector<HalfPlanePoint>&, const std::vector<HalfPlanePoint>&, double);
    template <class Scalar>
    Scalar disk_eval_impl(const Scalar& z) const;

    std::vector<HalfPlanePoint> nodes_, targets_;
    std::vector<Complex> disk_nodes_, gamma_;
};

/// Throws DegenerateNodes for coincident nodes, DomainError for mismatched or
/// empty input, and NotInterpolable (carrying the verdict on the half-plane
/// Pick matrix) unless that matrix is strictly positive.
NPInterpolant np_interpolate(const std::vector<HalfPlanePoint>& nodes, const std::vector<HalfPlanePoint>& targets,
                             double tol = 1e-10);

Json verdict_to_json(const PsdVerdict& v);

}  // namespace monop
