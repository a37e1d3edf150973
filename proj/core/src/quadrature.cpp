#include "mzq/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "mzq/errors.hpp"

namespace mzq {

QuadRule dual_weights(const GramSystem& gram, double floor) {
    if (!(gram.a_n > floor))
        throw IllConditionedError(
            "layer for degree " + std::to_string(gram.layer.n) +
            " is not certified: a_n = " + std::to_string(gram.a_n));
    int d = gram.dim();
    int l = gram.layer.size();

    Eigen::LLT<Eigen::MatrixXcd> llt(gram.t);
    if (llt.info() != Eigen::Success)
        throw IllConditionedError("Gram factorization failed for degree " +
                                  std::to_string(gram.layer.n));
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(d);
    e1(0) = 1.0;
    Eigen::VectorXcd c = llt.solve(e1);

    QuadRule rule;
    rule.layer = gram.layer;
    rule.a_n = gram.a_n;
    rule.b_n = gram.b_n;
    rule.w.resize(l);
    Eigen::VectorXcd uc = gram.u * c;
    for (int k = 0; k < l; ++k) {
        rule.w(k) = std::sqrt(gram.layer.tau[k]) * std::conj(uc(k));
        rule.max_imag = std::max(rule.max_imag, std::abs(rule.w(k).imag()));
        rule.dual_energy += std::norm(rule.w(k)) / gram.layer.tau[k];
    }

    // Exactness on P_n: sum_k w_k phi_j(x_k) = delta_j1. With
    // v_k = w_k / sqrt(tau_k) this is U^T v in the canonical ordering.
    Eigen::VectorXcd v(l);
    for (int k = 0; k < l; ++k) v(k) = rule.w(k) / std::sqrt(gram.layer.tau[k]);
    Eigen::VectorXcd moments = gram.u.transpose() * v;
    moments(0) -= 1.0;
    rule.exactness_defect = moments.cwiseAbs().maxCoeff();
    return rule;
}

cplx integrate(const QuadRule& rule, const Eigen::VectorXcd& samples) {
    if (samples.size() != rule.layer.size())
        throw ShapeError("integrate: expected " +
                         std::to_string(rule.layer.size()) + " samples, got " +
                         std::to_string(samples.size()));
    cplx s = 0.0;
    for (int k = 0; k < samples.size(); ++k) s += samples(k) * rule.w(k);
    return s;
}

cplx integrate(const QuadRule& rule, std::span<const double> samples) {
    Eigen::VectorXcd s(samples.size());
    for (size_t k = 0; k < samples.size(); ++k) s(k) = samples[k];
    return integrate(rule, s);
}

QuadReport quad_error_report(const CoeffFunction& f, const QuadRule& rule,
                             double sigma, const QuadReportOptions& opts) {
    const Basis& basis = f.basis();
    QuadReport rep;
    rep.i_exact = f.integral();
    Eigen::VectorXcd samples = f.sample(rule.layer);
    rep.i_n = integrate(rule, samples);
    rep.err = std::abs(rep.i_exact - rep.i_n);

    PhiValue local_phi;
    if (opts.phi == nullptr) {
        TailOptions to;
        to.grid_size = opts.grid_size;
        to.lambda_cut =
            std::max(f.lambda_cut(), std::max(4.0 * rule.n(), 64.0));
        local_phi = error_function_phi(basis, sigma, rule.n(), to);
    } else if (opts.phi->lambda_cut < f.lambda_cut()) {
        throw ShapeError("quad_error_report: phi truncated before the function");
    }
    const PhiValue& phi = opts.phi ? *opts.phi : local_phi;

    SobolevNorm local_norm;
    if (opts.norm == nullptr) local_norm = sobolev_norm(f, sigma);
    const SobolevNorm& norm = opts.norm ? *opts.norm : local_norm;

    rep.phi = phi.value;
    rep.norm = norm.value;
    double root_kappa = std::sqrt(rule.kappa());
    rep.bound_smooth = (1.0 + root_kappa) * norm.value * phi.value;

    // Grid sup of |f - P_n f| for the best-approximation proxy.
    PolyCoeffs pn = project(f, rule.n());
    double sup = 0.0;
    for (double x : basis.grid(opts.grid_size))
        sup = std::max(sup, std::abs(f.eval(x) - pn.eval(basis, x)));
    rep.bound_best = (1.0 + root_kappa) * sup;

    rep.stability_lhs = std::norm(rep.i_n);
    double sampled_sq = 0.0;
    for (int k = 0; k < samples.size(); ++k)
        sampled_sq += std::norm(samples(k)) * rule.layer.tau[k];
    rep.stability_rhs = sampled_sq / rule.a_n;
    return rep;
}

void write_rule_file(std::ostream& os, std::span<const QuadRule> rules) {
    os << "n,k,x,w_re,w_im\n";
    char buf[160];
    for (const QuadRule& rule : rules) {
        for (int k = 0; k < rule.layer.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n",
                          rule.layer.n, k, rule.layer.nodes[k],
                          rule.w(k).real(), rule.w(k).imag());
            os << buf;
        }
    }
}

void write_rule_file(const std::string& path, std::span<const QuadRule> rules) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open rule file for writing: " + path);
    write_rule_file(os, rules);
}

std::vector<RuleEntry> read_rule_file(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("rule file: empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "n,k,x,w_re,w_im")
        throw ConfigError("rule file: expected header 'n,k,x,w_re,w_im'");
    std::vector<RuleEntry> entries;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        int n = 0, k = 0;
        double x = 0, wr = 0, wi = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &n, &k, &x, &wr,
                        &wi) != 5)
            throw ConfigError("rule file: malformed row " + std::to_string(row));
        if (entries.empty() || entries.back().n != n)
            entries.push_back(RuleEntry{n, {}, {}});
        entries.back().x.push_back(x);
        entries.back().w.emplace_back(wr, wi);
    }
    return entries;
}

std::vector<RuleEntry> read_rule_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open rule file: " + path);
    return read_rule_file(is);
}

}  // namespace mzq
