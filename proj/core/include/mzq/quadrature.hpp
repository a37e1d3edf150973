#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "mzq/approx.hpp"
#include "mzq/coeff_function.hpp"
#include "mzq/gram.hpp"

namespace mzq {

// Quadrature rule exact on P_n, built from the frame dual of the constant.
struct QuadRule {
    Layer layer;
    Eigen::VectorXcd w;
    double exactness_defect = 0.0;  // max_j |sum_k w_k phi_j(x_k) - delta_j1|
    double dual_energy = 0.0;       // sum_k |w_k|^2 / tau_k, <= 1/a_n
    double max_imag = 0.0;          // largest |Im w_k|
    double a_n = 0.0;               // frame bounds of the generating system
    double b_n = 0.0;

    int n() const { return layer.n; }
    double kappa() const { return b_n / a_n; }
};

// Solves T c = e1 and sets w_k = sqrt(tau_k) conj((U c)_k). The rule
// integrates every element of P_n exactly up to the stored defect.
QuadRule dual_weights(const GramSystem& gram, double floor = 1e-8);

cplx integrate(const QuadRule& rule, const Eigen::VectorXcd& samples);
cplx integrate(const QuadRule& rule, std::span<const double> samples);

// Measured error and certified bounds for one rule applied to a catalog
// function. The reference value is the coefficient of phi_1.
struct QuadReport {
    cplx i_exact;
    cplx i_n;
    double err = 0.0;           // |i_exact - i_n|
    double bound_smooth = 0.0;  // (1 + sqrt(kappa)) norm phi_sigma(n)
    double bound_best = 0.0;    // (1 + sqrt(kappa)) grid-sup |f - P_n f|
    double stability_lhs = 0.0; // |i_n|^2
    double stability_rhs = 0.0; // a_n^-1 sum_k |f(x_k)|^2 tau_k
    double phi = 0.0;
    double norm = 0.0;
};

struct QuadReportOptions {
    const PhiValue* phi = nullptr;  // must use lambda_cut >= f's
    const SobolevNorm* norm = nullptr;
    int grid_size = 512;
};

QuadReport quad_error_report(const CoeffFunction& f, const QuadRule& rule,
                             double sigma, const QuadReportOptions& opts = {});

// Rule files: header "n,k,x,w_re,w_im", 17 significant digits, layers
// grouped by n. Values round-trip bit-identically.
struct RuleEntry {
    int n = 0;
    std::vector<double> x;
    std::vector<cplx> w;
};

void write_rule_file(std::ostream& os, std::span<const QuadRule> rules);
void write_rule_file(const std::string& path, std::span<const QuadRule> rules);
std::vector<RuleEntry> read_rule_file(std::istream& is);
std::vector<RuleEntry> read_rule_file(const std::string& path);

}  // namespace mzq
