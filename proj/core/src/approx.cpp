#include "mzq/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mzq/errors.hpp"

namespace mzq {

cplx PolyCoeffs::eval(const Basis& basis, double x) const {
    int d = static_cast<int>(a.size());
    std::vector<cplx> vals(d);
    basis.eval_all(d, x, vals);
    cplx s = 0.0;
    for (int j = 0; j < d; ++j) s += a(j) * vals[j];
    return s;
}

PolyCoeffs project(const CoeffFunction& f, int n) {
    if (n < 0) throw DomainError("degree must be non-negative");
    int d = f.basis().dim(n);
    PolyCoeffs p;
    p.n = n;
    p.a = Eigen::VectorXcd::Zero(d);
    int keep = std::min(d, f.k_max());
    p.a.head(keep) = f.coeffs().head(keep);
    return p;
}

PolyCoeffs project_function(const Basis& basis,
                            const std::function<cplx(double)>& f, int n) {
    if (n < 0) throw DomainError("degree must be non-negative");
    int d = basis.dim(n);
    PolyCoeffs p;
    p.n = n;
    p.a.resize(d);
    p.approximate = true;
    for (int j = 1; j <= d; ++j) {
        auto integrand = [&](double x) {
            return f(x) * std::conj(basis.eval(j, x));
        };
        p.a(j - 1) = integrate_measure(basis, 4 * (n + 1), integrand);
    }
    return p;
}

PolyCoeffs quasi_interpolant(const GramSystem& gram,
                             const Eigen::VectorXcd& samples, double floor) {
    if (samples.size() != gram.layer.size())
        throw ShapeError("quasi_interpolant: expected " +
                         std::to_string(gram.layer.size()) + " samples, got " +
                         std::to_string(samples.size()));
    if (!(gram.a_n > floor))
        throw IllConditionedError(
            "layer for degree " + std::to_string(gram.layer.n) +
            " is not certified: a_n = " + std::to_string(gram.a_n));

    Eigen::VectorXcd y(samples.size());
    for (int k = 0; k < samples.size(); ++k)
        y(k) = std::sqrt(gram.layer.tau[k]) * samples(k);

    Eigen::LLT<Eigen::MatrixXcd> llt(gram.t);
    if (llt.info() != Eigen::Success)
        throw IllConditionedError("Gram factorization failed for degree " +
                                  std::to_string(gram.layer.n));
    PolyCoeffs p;
    p.n = gram.layer.n;
    p.a = llt.solve(gram.u.adjoint() * y);

    double defect = (gram.u.adjoint() * (gram.u * p.a - y)).norm();
    if (!(defect <= 1e-8 * y.norm() + 1e-14))
        throw NumericError("normal equations residual " + std::to_string(defect) +
                           " above tolerance");
    return p;
}

PolyCoeffs quasi_interpolant(const GramSystem& gram,
                             std::span<const double> samples, double floor) {
    Eigen::VectorXcd s(samples.size());
    for (size_t k = 0; k < samples.size(); ++k) s(k) = samples[k];
    return quasi_interpolant(gram, s, floor);
}

ErrorBreakdown error_chain(const CoeffFunction& f, const GramSystem& gram,
                           const PolyCoeffs& p, double sigma,
                           const ErrorChainOptions& opts) {
    const Basis& basis = f.basis();
    if (!(basis == gram.basis) || p.n != gram.layer.n)
        throw ShapeError("error_chain: mismatched basis or degree");
    int d = basis.dim(p.n);
    if (p.a.size() != d) throw ShapeError("error_chain: coefficient length");

    ErrorBreakdown out;
    int k = std::max(f.k_max(), d);
    double proj_sq = 0.0, mid_sq = 0.0, total_sq = 0.0;
    for (int j = 1; j <= k; ++j) {
        cplx fj = f.coeff(j);
        cplx aj = j <= d ? p.a(j - 1) : cplx(0.0);
        total_sq += std::norm(fj - aj);
        if (j <= d)
            mid_sq += std::norm(fj - aj);
        else
            proj_sq += std::norm(fj);
    }
    out.err_proj = std::sqrt(proj_sq);
    out.err_mid = std::sqrt(mid_sq);
    out.err_total = std::sqrt(total_sq);

    // Residual of the projection's samples, in the weighted geometry of U.
    Eigen::VectorXcd y = f.sample(gram.layer);
    for (int i = 0; i < y.size(); ++i) y(i) *= std::sqrt(gram.layer.tau[i]);
    Eigen::VectorXcd pf = Eigen::VectorXcd::Zero(d);
    pf.head(std::min(d, f.k_max())) = f.coeffs().head(std::min(d, f.k_max()));
    out.sampled_residual = (y - gram.u * pf).squaredNorm();
    out.bound_residual =
        gram.b_n / (gram.a_n * gram.a_n) * out.sampled_residual;

    PhiValue local_phi;
    if (opts.phi == nullptr) {
        TailOptions to;
        to.grid_size = opts.grid_size;
        to.lambda_cut = std::max(f.lambda_cut(), std::max(4.0 * p.n, 64.0));
        local_phi = error_function_phi(basis, sigma, p.n, to);
    } else if (opts.phi->lambda_cut < f.lambda_cut()) {
        throw ShapeError("error_chain: phi truncated before the function");
    }
    const PhiValue& phi = opts.phi ? *opts.phi : local_phi;

    SobolevNorm local_norm;
    if (opts.norm == nullptr) local_norm = sobolev_norm(f, sigma);
    const SobolevNorm& norm = opts.norm ? *opts.norm : local_norm;

    out.phi = phi.value;
    out.norm = norm.value;
    double kappa = gram.kappa();
    out.bound_chain = kappa * kappa * norm.value * norm.value * phi.value * phi.value;
    out.bound_total = std::sqrt(1.0 + kappa * kappa) * norm.value * phi.value;
    out.tail_l2 = std::sqrt(std::max(0.0, f.tail_l2_sq(f.lambda_cut())));
    return out;
}

}  // namespace mzq
