#include "monop/pick.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace monop {

namespace {

void check_size(int size, std::size_t available) {
    if (size < 1 || size > kMaxPickSize)
        throw DomainError("Pick matrix size must be in 1.." + std::to_string(kMaxPickSize) + ", got " + std::to_string(size));
    if (available < static_cast<std::size_t>(size))
        throw DomainError("sequence has " + std::to_string(available) + " entries, size " + std::to_string(size) +
                          " requested");
}

}  // namespace

Eigen::MatrixXcd pick_matrix(const std::vector<HalfPlanePoint>& p, int size) {
    check_size(size, p.size());
    Eigen::MatrixXcd M(size, size);
    for (int m = 0; m < size; ++m)
        for (int n = 0; n < size; ++n) M(m, n) = (p[m].value() + std::conj(p[n].value()) + 1.0) / double(m + n + 1);
    return M;
}

Eigen::MatrixXcd diag_pick_matrix(const std::vector<Complex>& c, int size) {
    check_size(size, c.size());
    Eigen::MatrixXcd M(size, size);
    for (int m = 0; m < size; ++m)
        for (int n = 0; n < size; ++n) M(m, n) = (1.0 - c[m] * std::conj(c[n])) / double(1 + m + n);
    return M;
}

Eigen::MatrixXcd interpolation_pick_matrix(const std::vector<HalfPlanePoint>& nodes,
                                           const std::vector<HalfPlanePoint>& targets) {
    if (nodes.size() != targets.size()) throw DomainError("nodes and targets differ in length");
    const int k = static_cast<int>(nodes.size());
    Eigen::MatrixXcd M(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            M(i, j) = (1.0 + targets[i].value() + std::conj(targets[j].value())) /
                      (1.0 + nodes[i].value() + std::conj(nodes[j].value()));
    return M;
}

PsdVerdict psd_check(const Eigen::MatrixXcd& M, double tol) {
    if (M.rows() != M.cols() || M.rows() == 0) throw DomainError("psd_check needs a nonempty square matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success) throw EigenFailure("Hermitian eigensolver did not converge");
    PsdVerdict v;
    v.min_eigenvalue = es.eigenvalues()(0);
    v.threshold = tol * (1.0 + std::abs(M.trace().real()));
    v.boundary = std::abs(v.min_eigenvalue) <= v.threshold;
    if (v.min_eigenvalue < -v.threshold) {
        v.status = PsdStatus::NotPSD;
        v.witness = es.eigenvectors().col(0);
    }
    return v;
}

Complex quadratic_form(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& v) { return v.dot(M * v); }

bool strictly_positive(const Eigen::MatrixXcd& M, double tol) {
    using LComplex = std::complex<long double>;
    const long n = M.rows();
    const long double threshold = tol * (1.0L + std::abs(M.trace().real()));
    std::vector<LComplex> a(n * n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) a[i * n + j] = LComplex(M(i, j).real(), M(i, j).imag());
    std::vector<long> perm(n);
    for (long i = 0; i < n; ++i) perm[i] = i;
    auto at = [&](long i, long j) -> LComplex& { return a[perm[i] * n + perm[j]]; };
    for (long k = 0; k < n; ++k) {
        long best = k;
        for (long i = k + 1; i < n; ++i)
            if (at(i, i).real() > at(best, best).real()) best = i;
        std::swap(perm[k], perm[best]);
        const long double pivot = at(k, k).real();
        if (!(pivot > threshold)) return false;
        const long double root = std::sqrt(pivot);
        for (long i = k + 1; i < n; ++i) at(i, k) /= root;
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j <= i; ++j) {
                at(i, j) -= at(i, k) * std::conj(at(j, k));
                at(j, i) = std::conj(at(i, j));
            }
    }
    return true;
}

template <class Scalar>
Scalar NPInterpolant::disk_eval_impl(const Scalar& z) const {
    const Scalar one = lift(1.0, z);
    Scalar phi = lift(0.0, z);
    for (std::size_t j = gamma_.size(); j-- > 0;) {
        const Scalar zj = lift(disk_nodes_[j], z);
        const Scalar g = lift(gamma_[j], z);
        const Scalar Bphi = (z - zj) / (one - conj_of(zj) * z) * phi;
        phi = (g + Bphi) / (one + conj_of(g) * Bphi);
    }
    return phi;
}

Complex NPInterpolant::disk_eval(Complex z) const { return disk_eval_impl(z); }

Complex NPInterpolant::eval(Complex s) const {
    const Complex phi = disk_eval_impl(s / (s + 1.0));
    return phi / (1.0 - phi);
}

BigComplex NPInterpolant::eval(const BigComplex& s) const {
    const BigComplex one = lift(1.0, s);
    const BigComplex phi = disk_eval_impl(s / (s + one));
    return phi / (one - phi);
}

NPInterpolant np_interpolate(const std::vector<HalfPlanePoint>& nodes, const std::vector<HalfPlanePoint>& targets,
                             double tol) {
    if (nodes.empty()) throw DomainError("interpolation needs at least one node");
    if (nodes.size() != targets.size()) throw DomainError("nodes and targets differ in length");
    const std::size_t k = nodes.size();

    NPInterpolant out;
    out.nodes_ = nodes;
    out.targets_ = targets;
    std::vector<Complex> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.disk_nodes_.push_back(moebius_lambda(nodes[i]));
        w[i] = moebius_lambda(targets[i]);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(out.disk_nodes_[i] - out.disk_nodes_[j]) <= 1e-12)
                throw DegenerateNodes("nodes " + std::to_string(j) + " and " + std::to_string(i) + " coincide");

    const Eigen::MatrixXcd H = interpolation_pick_matrix(nodes, targets);
    if (!strictly_positive(H, tol))
        throw NotInterpolable("Pick matrix of the interpolation data is not strictly positive", psd_check(H, tol));

    const auto& z = out.disk_nodes_;
    for (std::size_t j = 0; j < k; ++j) {
        const Complex g = w[j];
        if (!(std::abs(g) < 1.0))
            throw NotInterpolable("Schur parameter left the open disk at step " + std::to_string(j), psd_check(H, tol));
        out.gamma_.push_back(g);
        for (std::size_t i = j + 1; i < k; ++i) {
            const Complex B = (z[i] - z[j]) / (1.0 - std::conj(z[j]) * z[i]);
            w[i] = (w[i] - g) / (1.0 - std::conj(g) * w[i]) / B;
        }
    }
    return out;
}

Json verdict_to_json(const PsdVerdict& v) {
    Json j{{"status", v.status == PsdStatus::PSD ? "psd" : "notpsd"},
           {"min_eig", v.min_eigenvalue},
           {"boundary", v.boundary},
           {"threshold", v.threshold}};
    if (v.status == PsdStatus::NotPSD) {
        Json w = Json::array();
        for (Eigen::Index i = 0; i < v.witness.size(); ++i) w.push_back(complex_to_json(v.witness(i)));
        j["witness"] = w;
    }
    return j;
}

}  // namespace monop
