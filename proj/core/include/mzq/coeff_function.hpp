#pragma once

#include <Eigen/Dense>

#include "mzq/basis.hpp"
#include "mzq/layer.hpp"

namespace mzq {

enum class CoeffKind { sobolev, analytic, hat, custom };

// A function given by its basis coefficients. Catalog kinds follow a
// closed-form magnitude per eigenvalue level, so every truncation tail
// (sup, plain l2, weighted l2) has a certified bound; evaluation always
// uses the truncated series with lambda <= lambda_cut.
//
//   sobolev(sigma, eps): coeff = (1+lambda)^(-sigma-1/2-eps)
//   analytic(a):         coeff = r^lambda / sqrt(a^2-1), r = a - sqrt(a^2-1)
//   hat:                 coeff = (1+lambda)^(-2)
//   custom:              explicit finite coefficient vector, zero tail
class CoeffFunction {
public:
    static CoeffFunction sobolev(const Basis& basis, double sigma,
                                 double eps = 0.05, double lambda_cut = 0.0);
    static CoeffFunction analytic(const Basis& basis, double a,
                                  double lambda_cut = 0.0);
    static CoeffFunction hat(const Basis& basis, double lambda_cut = 0.0);
    static CoeffFunction custom(const Basis& basis, Eigen::VectorXcd coeff);
    // Catalog kind by name: "sobolev", "analytic", "hat".
    static CoeffFunction from_name(const Basis& basis, std::string_view name,
                                   double sigma, double eps, double a,
                                   double lambda_cut = 0.0);

    const Basis& basis() const { return basis_; }
    CoeffKind kind() const { return kind_; }
    const char* kind_name() const;
    int k_max() const { return static_cast<int>(coeff_.size()); }
    double lambda_cut() const { return lambda_cut_; }

    cplx coeff(int j) const;  // j >= 1; zero beyond k_max
    const Eigen::VectorXcd& coeffs() const { return coeff_; }
    // Coefficient of phi_1, i.e. the integral of f against the measure.
    cplx integral() const { return coeff_.size() > 0 ? coeff_(0) : cplx(0.0); }

    cplx eval(double x) const;
    Eigen::VectorXcd sample(const Layer& layer) const;

    // Certified bounds on what modes with lambda > cut contribute.
    // cut >= lambda_cut describes the evaluation truncation; smaller cuts
    // give projection tails. Custom functions have zero tail beyond their
    // own lambda_cut.
    double tail_sup(double cut) const;
    double tail_l2_sq(double cut) const;
    // Tail of the weighted sum with (1 + lambda^2)^sigma, sigma >= 0.
    double tail_hs_sq(double sigma, double cut) const;

    double tail_sup_bound() const { return tail_sup(lambda_cut_); }
    // Supremum of exponents with finite weighted norm; +inf when every
    // sigma is admissible.
    double sup_admissible_sigma() const;

    // Per-level magnitude of catalog kinds (throws for custom).
    double level_coeff(double lambda) const;

    // Parameters (meaningful per kind).
    double param_sigma() const { return sigma_; }
    double param_eps() const { return eps_; }
    double param_a() const { return a_; }
    double decay_ratio() const { return r_; }

private:
    CoeffFunction(const Basis& basis, CoeffKind kind) : basis_(basis), kind_(kind) {}
    void fill_coeffs();

    Basis basis_;
    CoeffKind kind_;
    double lambda_cut_ = 0.0;
    double sigma_ = 0.0, eps_ = 0.0;     // sobolev
    double a_ = 0.0, r_ = 0.0, t_ = 0.0; // analytic
    Eigen::VectorXcd coeff_;
};

struct SobolevNorm {
    double value = 0.0;      // sqrt(partial_sq + tail_sq), certified
    double partial_sq = 0.0;
    double tail_sq = 0.0;
    double lambda_cut = 0.0; // levels summed explicitly
};

// Weighted coefficient norm of the untruncated function. The explicit sum
// extends dyadically until the certified tail is negligible (1e-9 relative)
// or the level cap 2^22 is reached; the tail bound is included either way.
SobolevNorm sobolev_norm(const CoeffFunction& f, double sigma);

}  // namespace mzq
