#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace gwip {

using GraphSignal = Eigen::VectorXd;
using SparseMat = Eigen::SparseMatrix<double>;

// Full eigendecomposition of a graph Laplacian: eigenvalues ascending
// (lambda_0 = 0 up to round-off), eigenvector columns orthonormal with the
// first nonzero entry of each made positive so dumps are reproducible.
struct SpectralBasis {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    int n_vertices() const { return int(eigenvalues.size()); }
};

inline constexpr int kDefaultExactCap = 5000;

// Dense decomposition; refuses graphs above `cap` vertices
// (std::invalid_argument) — large inputs take the Chebyshev path instead.
SpectralBasis eigendecompose(const SparseMat& laplacian, int cap = kDefaultExactCap);

// Forward / inverse graph Fourier transform.
GraphSignal gft(const GraphSignal& f, const SpectralBasis& basis);
GraphSignal igft(const GraphSignal& fhat, const SpectralBasis& basis);

// sqrt(f' L f), the global smoothness of f on the graph; tiny negative
// round-off clamps to zero.
double quadratic_form(const GraphSignal& f, const SparseMat& laplacian);

// Same quantity evaluated in the spectral domain: sqrt(sum fhat_l^2 lambda_l).
double quadratic_form_spectral(const GraphSignal& fhat, const SpectralBasis& basis);

// Upper bound on the largest Laplacian eigenvalue: power iteration
// (tolerance 1e-6, at most 500 iterations) inflated by 1%, falling back to
// the Gershgorin bound 2 * max degree when the iteration fails to settle.
double estimate_lambda_max(const SparseMat& laplacian);

} // namespace gwip
