#pragma once

#include <functional>
#include <vector>

#include "gwip/spectral.hpp"

namespace gwip {

// Band-pass wavelet kernel: x^2 below 1, the cubic -5 + 11x - 6x^2 + x^3 on
// [1,2], and 4/x^2 above 2. Continuously differentiable, g(0) = 0, g -> 0 at
// infinity.
double kernel_g(double x);

// Maximum of kernel_g, attained inside the cubic segment.
double kernel_g_max();

// Log-spaced scales t_1 > ... > t_J covering [x1/lambda_max, x2/lambda_min]
// with lambda_min = lambda_max / 20. Throws std::invalid_argument when
// lambda_max is 0 (edgeless graph).
std::vector<double> select_scales(double lambda_max, int n_scales);

// Wavelet scales plus the low-pass companion kernel
// h(x) = gamma * exp(-(x / (0.6 lambda_min))^4), gamma = max g.
struct KernelSpec {
    int n_scales = 0;           // J >= 1
    std::vector<double> scales; // strictly descending, positive
    double lambda_min = 0.0;
    double gamma = 0.0;
    double h_width = 0.0;

    static constexpr double kSpectrumDivisor = 20.0;

    static KernelSpec for_spectrum(double lambda_max, int n_scales);

    double h(double x) const;
    // tau = 0 is the scaling kernel, tau in [1, J] the wavelet at scale t_tau.
    double kernel(int tau, double x) const;
    int n_planes() const { return n_scales + 1; }
};

// Scaling plane first, then one wavelet plane per scale, descending t.
struct WaveletCoefficients {
    std::vector<GraphSignal> planes;
    int channel = -1;

    int n_scales() const { return int(planes.size()) - 1; }
    int n_vertices() const { return planes.empty() ? 0 : int(planes[0].size()); }
};

// Truncated shifted-Chebyshev expansion of `kernel` on [0, lambda_bound],
// computed by trapezoid quadrature over the cosine substitution. The k = 0
// coefficient is the mean (no separate halving convention).
std::vector<double> chebyshev_coeffs(const std::function<double(double)>& kernel,
                                     int order, double lambda_bound);

struct ChebyshevApprox {
    int order = 0;          // M >= 3
    double lambda_bound = 0.0;
    std::vector<std::vector<double>> coeffs; // n_planes lists of order+1 entries
};

ChebyshevApprox chebyshev_approx(const KernelSpec& spec, int order,
                                 double lambda_bound);

// Forward analysis, adjoint, and least-squares inverse of the wavelet frame
// over one fixed graph. Exact mode filters through the eigenbasis; Chebyshev
// mode runs the three-term recurrence on the shifted Laplacian, sharing its
// matrix-vector products across all kernels.
class SgwtTransform {
public:
    static SgwtTransform exact(const SparseMat& laplacian, const KernelSpec& spec,
                               int cap = kDefaultExactCap);
    static SgwtTransform exact(SpectralBasis basis, const KernelSpec& spec);
    static SgwtTransform chebyshev(SparseMat laplacian, double lambda_bound,
                                   const KernelSpec& spec, int order);

    WaveletCoefficients forward(const GraphSignal& f) const;
    GraphSignal adjoint(const WaveletCoefficients& coeffs) const;

    // Conjugate gradient on the normal equations T'T f = T'c. Throws
    // NumericalError when the frame is degenerate or CG fails to reach the
    // relative-residual tolerance.
    GraphSignal inverse(const WaveletCoefficients& coeffs, double tol = 1e-8,
                        int max_iter = 2000) const;

    const KernelSpec& kernels() const { return spec_; }
    int n_vertices() const { return n_; }
    bool is_exact() const { return exact_; }

private:
    SgwtTransform() = default;

    bool exact_ = false;
    int n_ = 0;
    KernelSpec spec_;
    // Exact path.
    SpectralBasis basis_;
    Eigen::MatrixXd kernel_values_; // n_planes x N
    double frame_lower_ = 0.0;
    // Chebyshev path.
    SparseMat laplacian_;
    ChebyshevApprox approx_;
};

// Quadratic form of every coefficient plane on the same graph, scaling
// plane first.
std::vector<double> per_scale_quadratic_forms(const WaveletCoefficients& coeffs,
                                              const SparseMat& laplacian);

} // namespace gwip
