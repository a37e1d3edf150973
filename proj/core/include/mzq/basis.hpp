#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace mzq {

using cplx = std::complex<double>;

enum class BasisFamily { fourier_torus, chebyshev, legendre };

// Orthonormal system on a probability space, enumerated with phi_1 == 1 and
// non-decreasing eigenvalues lambda_j.
//
//   fourier:   torus (-1/2, 1/2], Lebesgue measure. j=1 is frequency 0,
//              j=2m is +m, j=2m+1 is -m; lambda_j = |frequency|.
//   chebyshev: [-1,1] with dx / (pi sqrt(1-x^2)); phi_1 = 1 and
//              phi_{k+1} = sqrt(2) cos(k arccos x) for k >= 1; lambda = k.
//   legendre:  [-1,1] with dx/2; phi_{k+1} = sqrt(2k+1) P_k; lambda = k.
//
// The space P_n collects every phi_j with lambda_j <= n.
class Basis {
public:
    static Basis fourier() { return Basis(BasisFamily::fourier_torus); }
    static Basis chebyshev() { return Basis(BasisFamily::chebyshev); }
    static Basis legendre() { return Basis(BasisFamily::legendre); }
    // Accepts "fourier", "chebyshev", "legendre"; throws ConfigError otherwise.
    static Basis from_name(std::string_view name);

    BasisFamily family() const { return family_; }
    const char* name() const;

    double domain_lo() const;
    double domain_hi() const;
    bool in_domain(double x) const;

    // Eigenvalue of phi_j, j >= 1.
    double lambda(int j) const;
    // dim P_n = #\{ j : lambda_j <= n \}; zero for n < 0.
    int dim(double n) const;

    // Signed frequency (fourier) or polynomial degree (chebyshev, legendre)
    // of phi_j; inverse of the enumeration.
    int mode_of(int j) const;

    cplx eval(int j, double x) const;
    // phi_1 .. phi_count at x in one recurrence pass. out.size() == count.
    void eval_all(int count, double x, std::span<cplx> out) const;
    std::vector<cplx> eval_all(int count, double x) const;

    // Reproducing kernel of P_n: sum over lambda_j <= n of conj(phi_j(x)) phi_j(y).
    cplx kernel(double n, double x, double y) const;
    // Kernel diagonal: sum over lambda_j <= n of |phi_j(x)|^2.
    double spectral(double n, double x) const;

    // Largest exponent for which the weighted tail sums diverge; tail
    // machinery requires sigma strictly above this value.
    double sigma_crit() const;
    // Envelope sup_x |phi_j(x)| <= sup_phi_coef() * (1 + lambda_j)^sup_phi_pow().
    double sup_phi_coef() const;
    double sup_phi_pow() const;
    // Number of basis elements sharing one eigenvalue (2 on the torus for
    // m >= 1, else 1); used as a crude per-level count in tail estimates.
    int max_multiplicity() const;

    // Evaluation grid of `count` points covering the domain. Endpoint
    // handling differs per family: the torus grid is half-open, the interval
    // grids include both endpoints.
    std::vector<double> grid(int count) const;

    bool operator==(const Basis&) const = default;

private:
    explicit Basis(BasisFamily f) : family_(f) {}
    BasisFamily family_;
};

// Integral of g against the basis measure by composite Gauss-Legendre,
// accurate for integrands resolvable with max_mode oscillations (products of
// basis elements up to that mode). Chebyshev integrates in the angle variable.
cplx integrate_measure(const Basis& basis, int max_mode,
                       const std::function<cplx(double)>& g);

}  // namespace mzq
