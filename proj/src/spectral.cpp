#include "gwip/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "gwip/common.hpp"

namespace gwip {

namespace {

void check_signal(const GraphSignal& f, int n, const char* what) {
    if (int(f.size()) != n)
        throw std::invalid_argument(std::string(what) + ": signal length mismatch");
}

} // namespace

SpectralBasis eigendecompose(const SparseMat& laplacian, int cap) {
    const int n = int(laplacian.rows());
    if (laplacian.cols() != n)
        throw std::invalid_argument("eigendecompose: matrix must be square");
    if (n > cap)
        throw std::invalid_argument(
            "eigendecompose: graph exceeds the exact-mode cap; use the "
            "Chebyshev path");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(laplacian));
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: solver failed to converge");

    SpectralBasis basis;
    basis.eigenvalues = solver.eigenvalues();
    basis.eigenvectors = solver.eigenvectors();

    for (int l = 0; l < n; ++l) {
        double& lambda = basis.eigenvalues[l];
        if (lambda < 1e-10) {
            if (lambda < -1e-8)
                throw NumericalError("eigendecompose: input is not PSD");
            lambda = 0.0;
        }
        // Sign convention: first nonzero entry positive.
        for (int i = 0; i < n; ++i) {
            const double v = basis.eigenvectors(i, l);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) basis.eigenvectors.col(l) = -basis.eigenvectors.col(l);
                break;
            }
        }
    }
    return basis;
}

GraphSignal gft(const GraphSignal& f, const SpectralBasis& basis) {
    check_signal(f, basis.n_vertices(), "gft");
    return basis.eigenvectors.transpose() * f;
}

GraphSignal igft(const GraphSignal& fhat, const SpectralBasis& basis) {
    check_signal(fhat, basis.n_vertices(), "igft");
    return basis.eigenvectors * fhat;
}

double quadratic_form(const GraphSignal& f, const SparseMat& laplacian) {
    check_signal(f, int(laplacian.rows()), "quadratic_form");
    const double q2 = f.dot(laplacian * f);
    return std::sqrt(std::max(q2, 0.0));
}

double quadratic_form_spectral(const GraphSignal& fhat, const SpectralBasis& basis) {
    check_signal(fhat, basis.n_vertices(), "quadratic_form_spectral");
    const double q2 = fhat.cwiseAbs2().dot(basis.eigenvalues);
    return std::sqrt(std::max(q2, 0.0));
}

double estimate_lambda_max(const SparseMat& laplacian) {
    const int n = int(laplacian.rows());
    if (n == 0) return 0.0;

    auto gershgorin = [&] {
        double max_deg = 0.0;
        for (int j = 0; j < n; ++j)
            max_deg = std::max(max_deg, laplacian.coeff(j, j));
        return 2.0 * max_deg;
    };

    // Deterministic pseudo-random start; the all-ones vector would sit in
    // the Laplacian's null space.
    GraphSignal v(n);
    for (int i = 0; i < n; ++i) {
        const double s = std::sin((i + 1) * 12.9898) * 43758.5453;
        v[i] = (s - std::floor(s)) - 0.5;
    }
    if (v.norm() == 0.0) return gershgorin();
    v.normalize();

    double estimate = 0.0;
    for (int it = 0; it < 500; ++it) {
        GraphSignal lv = laplacian * v;
        const double norm = lv.norm();
        if (norm == 0.0) return gershgorin();
        const double rayleigh = v.dot(lv);
        if (it > 0 && std::abs(rayleigh - estimate) <= 1e-6 * std::abs(rayleigh))
            return 1.01 * rayleigh;
        estimate = rayleigh;
        v = lv / norm;
    }
    return gershgorin();
}

} // namespace gwip
