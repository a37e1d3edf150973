#include "mzq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mzq/errors.hpp"

namespace mzq {

namespace {

const std::vector<double> kDefaultWeylRange = {8, 16, 32, 64, 128};

void require_convergent(const Basis& basis, double sigma) {
    if (!(sigma > basis.sigma_crit()))
        throw DivergenceError(std::string(basis.name()) +
                              " tail sums need sigma > " +
                              std::to_string(basis.sigma_crit()));
}

}  // namespace

WeylFit fit_weyl_values(std::span<const double> n_values,
                        std::span<const double> sup_values) {
    if (n_values.size() != sup_values.size())
        throw ShapeError("fit_weyl_values: size mismatch");
    size_t m = n_values.size();
    if (m < 2) throw DegenerateFitError("covering fit needs at least two degrees");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(m), ly(m);
    for (size_t i = 0; i < m; ++i) {
        if (!(n_values[i] > 0.0) || !(sup_values[i] > 0.0))
            throw DegenerateFitError("covering fit needs positive degrees and sups");
        lx[i] = std::log(n_values[i]);
        ly[i] = std::log(sup_values[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * m * sxx)
        throw DegenerateFitError("covering fit needs spread in the degrees");

    WeylFit fit;
    fit.d = (m * sxy - sx * sy) / denom;
    double intercept = (sy - fit.d * sx) / m;
    if (!(fit.d > 0.0))
        throw DegenerateFitError("fitted growth exponent is not positive");
    double rmax = 0.0;
    for (size_t i = 0; i < m; ++i)
        rmax = std::max(rmax, std::abs(ly[i] - intercept - fit.d * lx[i]));
    fit.residual = rmax;
    // Lift the intercept so every sample sits on or below the curve.
    fit.c = std::exp(intercept + rmax);
    fit.n_values.assign(n_values.begin(), n_values.end());
    fit.sup_values.assign(sup_values.begin(), sup_values.end());
    return fit;
}

WeylFit fit_weyl(const Basis& basis, std::span<const double> n_values,
                 int grid_size) {
    std::vector<double> sups(n_values.size());
    std::vector<double> grid = basis.grid(grid_size);
    for (size_t i = 0; i < n_values.size(); ++i) {
        double s = 0.0;
        for (double x : grid) s = std::max(s, basis.spectral(n_values[i], x));
        sups[i] = s;
    }
    WeylFit fit = fit_weyl_values(n_values, sups);
    fit.grid_size = grid_size;
    return fit;
}

double weyl_tail_sq_bound(const WeylFit& fit, double sigma, double cut) {
    if (!(2.0 * sigma > fit.d))
        throw DivergenceError("tail estimate needs sigma > d/2 = " +
                              std::to_string(fit.d / 2.0));
    if (!(cut >= 1.0)) throw DomainError("tail cut must be >= 1");
    // Block [2^m, 2^{m+1}) holds at most c 2^{d(m+1)} eigenvalues, each
    // contributing at most 2^{-2 m sigma}; geometric sum from the block
    // containing the cut.
    double q = fit.d - 2.0 * sigma;  // negative
    return fit.c * std::pow(2.0, 2.0 * sigma) * std::pow(cut, q) /
           (1.0 - std::pow(2.0, q));
}

namespace {

PhiValue phi_impl(const Basis& basis, double sigma, double n,
                  const TailOptions& opts) {
    require_convergent(basis, sigma);
    if (opts.grid_size < 2) throw DomainError("grid_size must be >= 2");

    PhiValue out;
    out.n = n;
    out.lambda_cut =
        opts.lambda_cut > 0.0 ? opts.lambda_cut : std::max(4.0 * n, 64.0);
    if (out.lambda_cut <= n)
        throw DomainError("lambda_cut must exceed the excluded degree");
    out.k_max = basis.dim(out.lambda_cut);

    int k = out.k_max;
    std::vector<double> weight(k);
    for (int j = 1; j <= k; ++j) {
        double lam = basis.lambda(j);
        weight[j - 1] =
            lam > n ? std::pow(1.0 + lam * lam, -sigma) : 0.0;
    }

    std::vector<cplx> vals(k);
    double sup_sq = 0.0;
    for (double x : basis.grid(opts.grid_size)) {
        basis.eval_all(k, x, vals);
        double s = 0.0;
        for (int j = 0; j < k; ++j)
            if (weight[j] != 0.0) s += weight[j] * std::norm(vals[j]);
        sup_sq = std::max(sup_sq, s);
    }

    WeylFit local;
    const WeylFit* fit = opts.weyl;
    if (fit == nullptr) {
        local = fit_weyl(basis, kDefaultWeylRange, opts.grid_size);
        fit = &local;
    }
    double tail_sq = weyl_tail_sq_bound(*fit, sigma, out.lambda_cut);
    if (opts.tail_rel_tol > 0.0 && !(tail_sq <= opts.tail_rel_tol * sup_sq))
        throw TruncationError(
            "certified tail " + std::to_string(tail_sq) +
            " exceeds tolerance at lambda_cut " + std::to_string(out.lambda_cut));

    out.value = std::sqrt(sup_sq);
    // sqrt(S + t) - sqrt(S) <= min(sqrt(t), t / (2 sqrt(S))).
    out.tail_bound = std::sqrt(tail_sq);
    if (sup_sq > 0.0)
        out.tail_bound = std::min(out.tail_bound, tail_sq / (2.0 * out.value));
    return out;
}

}  // namespace

PhiValue error_function_phi(const Basis& basis, double sigma, double n,
                            const TailOptions& opts) {
    if (!(n >= 0.0)) throw DomainError("degree must be non-negative");
    return phi_impl(basis, sigma, n, opts);
}

PhiValue embedding_constant(const Basis& basis, double sigma,
                            const TailOptions& opts) {
    TailOptions o = opts;
    if (o.lambda_cut <= 0.0) o.lambda_cut = 64.0;
    return phi_impl(basis, sigma, -1.0, o);
}

SpectralProfile spectral_profile(const Basis& basis, double sigma,
                                 std::span<const double> degrees,
                                 const TailOptions& opts) {
    SpectralProfile profile;
    profile.sigma = sigma;

    TailOptions local = opts;
    WeylFit fit;
    if (local.weyl == nullptr) {
        fit = fit_weyl(basis, kDefaultWeylRange, local.grid_size);
        local.weyl = &fit;
    }
    profile.weyl = *local.weyl;
    profile.c_sigma = embedding_constant(basis, sigma, local);

    std::vector<double> sorted(degrees.begin(), degrees.end());
    std::sort(sorted.begin(), sorted.end());
    for (double n : sorted)
        profile.entries.push_back(error_function_phi(basis, sigma, n, local));
    return profile;
}

}  // namespace mzq
