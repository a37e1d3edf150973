#pragma once

#include <span>
#include <vector>

#include "mzq/basis.hpp"

namespace mzq {

// Power-law fit sup_x S_n(x) ~ c n^d of the kernel diagonal, with c inflated
// so the fitted curve covers every sample: sup_n <= c n^d on the whole range.
struct WeylFit {
    double d = 0.0;         // growth exponent
    double c = 0.0;         // covering constant
    double residual = 0.0;  // max |log residual| of the least-squares fit
    int grid_size = 0;
    std::vector<double> n_values;
    std::vector<double> sup_values;
};

// Fit from precomputed diagonal sups. Throws DegenerateFitError when fewer
// than two points, zero spread in n, or a non-positive fitted exponent.
WeylFit fit_weyl_values(std::span<const double> n_values,
                        std::span<const double> sup_values);

// Measures sup_x S_n(x) on a domain grid for each n, then fits.
WeylFit fit_weyl(const Basis& basis, std::span<const double> n_values,
                 int grid_size = 512);

// Certified bound on sum over lambda_j > cut of (1 + lambda_j^2)^-sigma,
// by dyadic blocks counted with the covering fit. Requires sigma > d/2.
double weyl_tail_sq_bound(const WeylFit& fit, double sigma, double cut);

// One evaluation of the degree-n error function: the grid sup of the
// truncated tail sum, with a certified cap on what truncation discarded.
struct PhiValue {
    double n = 0.0;
    double value = 0.0;       // sqrt of the grid-sup partial tail sum
    double tail_bound = 0.0;  // certified bound on the sqrt-scale gap
    double lambda_cut = 0.0;  // modes with lambda <= lambda_cut retained
    int k_max = 0;            // retained index count
};

struct TailOptions {
    int grid_size = 512;
    // 0 selects the default cut max(4n, 64); otherwise modes with
    // lambda <= lambda_cut are summed explicitly.
    double lambda_cut = 0.0;
    // When positive, require tail_sq <= tail_rel_tol * partial_sq and throw
    // TruncationError otherwise. Zero disables the check (the certified
    // tail_bound is still reported).
    double tail_rel_tol = 0.0;
    // Reuse a precomputed covering fit; nullptr fits the default dyadic
    // range {8,...,128} internally.
    const WeylFit* weyl = nullptr;
};

// phi_sigma(n): sup_x sqrt(sum over lambda_j > n of |phi_j(x)|^2
// (1+lambda_j^2)^-sigma), evaluated as a grid sup of the explicit partial
// sum plus a certified dyadic tail. Throws DivergenceError for
// sigma <= sigma_crit of the basis.
PhiValue error_function_phi(const Basis& basis, double sigma, double n,
                            const TailOptions& opts = {});

// Embedding constant C_sigma = phi_sigma(-1) (no modes excluded): for any f
// in the smoothness class, sup |f| <= C_sigma * H^sigma norm.
PhiValue embedding_constant(const Basis& basis, double sigma,
                            const TailOptions& opts = {});

struct SpectralProfile {
    double sigma = 0.0;
    PhiValue c_sigma;
    WeylFit weyl;
    std::vector<PhiValue> entries;  // one per requested degree, ascending n
};

SpectralProfile spectral_profile(const Basis& basis, double sigma,
                                 std::span<const double> degrees,
                                 const TailOptions& opts = {});

}  // namespace mzq
