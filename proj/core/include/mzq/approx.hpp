#pragma once

#include <Eigen/Dense>
#include <functional>

#include "mzq/coeff_function.hpp"
#include "mzq/gram.hpp"
#include "mzq/spectral.hpp"

namespace mzq {

// Element of P_n in the canonical coefficient ordering.
struct PolyCoeffs {
    int n = 0;
    Eigen::VectorXcd a;
    // Set for coefficients obtained by numerical integration rather than
    // exact truncation or a least-squares solve.
    bool approximate = false;

    cplx eval(const Basis& basis, double x) const;
};

// Orthogonal projection: truncation of f's coefficients to lambda_j <= n.
PolyCoeffs project(const CoeffFunction& f, int n);

// Projection of a black-box function by quadrature against the basis
// measure, resolved well past the product bandwidth; coefficients are
// flagged approximate.
PolyCoeffs project_function(const Basis& basis,
                            const std::function<cplx(double)>& f, int n);

// Weighted least-squares fit in P_n to samples taken on the layer of
// `gram`: solves T a = U^* y with y_k = sqrt(tau_k) samples_k. Throws
// IllConditionedError when a_n <= floor or the factorization fails,
// ShapeError on length mismatch, NumericError when the residual
// orthogonality check ||U^*(U a - y)|| <= 1e-8 ||y|| fails.
PolyCoeffs quasi_interpolant(const GramSystem& gram,
                             const Eigen::VectorXcd& samples,
                             double floor = 1e-8);
PolyCoeffs quasi_interpolant(const GramSystem& gram,
                             std::span<const double> samples,
                             double floor = 1e-8);

// Measured quantities and bounds for one least-squares fit. All L2 norms
// live in coefficient space against the truncated f; `tail_l2` is the
// certified bound on what the truncation hides from them.
struct ErrorBreakdown {
    double err_proj = 0.0;   // ||f - P_n f||
    double err_mid = 0.0;    // ||P_n f - p_n||
    double err_total = 0.0;  // ||f - p_n||
    double sampled_residual = 0.0;  // sum_k tau_k |f(x_k) - P_n f(x_k)|^2
    double bound_residual = 0.0;    // a^-2 b * sampled_residual, vs err_mid^2
    double bound_chain = 0.0;       // kappa^2 norm^2 phi^2, vs err_mid^2
    double bound_total = 0.0;       // sqrt(1+kappa^2) norm phi, vs err_total
    double phi = 0.0;        // phi_sigma(n) used by the bounds
    double norm = 0.0;       // H^sigma norm used by the bounds
    double tail_l2 = 0.0;
};

struct ErrorChainOptions {
    const PhiValue* phi = nullptr;      // must use lambda_cut >= f's
    const SobolevNorm* norm = nullptr;
    int grid_size = 512;
};

ErrorBreakdown error_chain(const CoeffFunction& f, const GramSystem& gram,
                           const PolyCoeffs& p, double sigma,
                           const ErrorChainOptions& opts = {});

}  // namespace mzq
