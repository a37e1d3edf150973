// Acceptance gate: prints one PASS/FAIL line per criterion and exits with
// the number of failures. argv[1] is the CLI binary, used by the
// determinism check. Every tolerance is pinned here, not configurable.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mzq/approx.hpp"
#include "mzq/errors.hpp"
#include "mzq/experiment.hpp"
#include "mzq/quadrature.hpp"
#include "support/oracles.hpp"

using namespace mzq;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("%s %2d %-18s %s\n", pass ? "PASS" : "FAIL", idx, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class Fn>
void criterion(int idx, const char* name, Fn fn) {
    try {
        Outcome out = fn();
        report(idx, name, out.pass, out.detail);
    } catch (const std::exception& e) {
        report(idx, name, false, std::string("exception: ") + e.what());
    }
}

// Worst signed slack (measured minus limit; <= 0 passes) with its location.
struct Worst {
    double slack = -std::numeric_limits<double>::infinity();
    std::string where;

    void update(double s, const std::string& w) {
        if (s > slack) {
            slack = s;
            where = w;
        }
    }
    bool ok() const { return slack <= 0.0; }
};

// ---------------------------------------------------------------------
// Criteria 1 and 2 share one sweep over the critically sampled layers.

struct UniformSweep {
    double t_dev = 0.0;       // max |T - I|
    double ab_dev = 0.0;      // max |A-1|, |B-1|
    double w_dev = 0.0;       // max |w_k - 1/L|
    double defect = 0.0;      // max exactness defect
};

const UniformSweep& uniform_sweep() {
    static const UniformSweep sweep = [] {
        UniformSweep s;
        Basis basis = Basis::fourier();
        for (int n = 2; n <= 128; ++n) {
            Layer layer = generate_uniform(basis, n, 1.0);
            GramSystem g = assemble(basis, layer);
            int d = g.dim();
            s.t_dev = std::max(
                s.t_dev,
                (g.t - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff());
            s.ab_dev = std::max({s.ab_dev, std::abs(g.a_n - 1.0),
                                 std::abs(g.b_n - 1.0)});
            QuadRule rule = dual_weights(g);
            double expected = 1.0 / layer.size();
            for (int k = 0; k < layer.size(); ++k)
                s.w_dev = std::max(s.w_dev,
                                   std::abs(rule.w(k) - cplx(expected)));
            s.defect = std::max(s.defect, rule.exactness_defect);
        }
        return s;
    }();
    return sweep;
}

// ---------------------------------------------------------------------
// Criteria 3, 4, 5, and 8 share the full test matrix: every basis, every
// generator, every catalog function, dyadic degrees up to 128.

struct MatrixStats {
    int cells = 0;
    int uncertified = 0;
    Worst pythagoras;  // relative defect of the orthogonal split - 1e-8
    Worst residual;    // err_mid^2 - (bound_residual + 1e-10)
    Worst total;       // err_total - (bound_total (1 + 1e-6) + 1e-12)
    Worst quad;        // quad err - (bound (1 + 1e-6) + 1e-12)
    Worst stability;   // |I_n|^2 - (rhs + 1e-10)
    Worst energy;      // dual energy - (1/a_n + 1e-10)
};

const MatrixStats& matrix_stats() {
    static const MatrixStats stats = [] {
        MatrixStats m;
        const double sigma = 1.2;
        const double cut = 1024.0;
        static const std::vector<double> weyl_range = {8, 16, 32, 64, 128};
        const int degrees[] = {8, 16, 32, 64, 128};
        const char* fn_names[] = {"sobolev", "analytic", "hat"};
        const char* gen_names[] = {"uniform", "jittered", "random"};

        for (Basis basis :
             {Basis::fourier(), Basis::chebyshev(), Basis::legendre()}) {
            WeylFit weyl = fit_weyl(basis, weyl_range, 512);
            TailOptions topt;
            topt.grid_size = 512;
            topt.lambda_cut = cut;
            topt.weyl = &weyl;
            std::vector<PhiValue> phis;
            for (int n : degrees)
                phis.push_back(error_function_phi(basis, sigma, n, topt));

            std::vector<CoeffFunction> fns;
            std::vector<SobolevNorm> norms;
            for (const char* name : fn_names) {
                fns.push_back(CoeffFunction::from_name(basis, name, sigma,
                                                       0.05, 1.25, cut));
                norms.push_back(sobolev_norm(fns.back(), sigma));
            }

            for (int gi = 0; gi < 3; ++gi) {
                for (size_t ni = 0; ni < std::size(degrees); ++ni) {
                    int n = degrees[ni];
                    Layer layer =
                        gi == 0 ? generate_uniform(basis, n, 2.0)
                        : gi == 1
                            ? generate_jittered(basis, n, 2.0, 0.25, 7)
                            : generate_random(basis, n, 2.0, 7);
                    GramSystem gram = assemble(basis, layer);
                    if (!(gram.a_n > 1e-8)) {
                        ++m.uncertified;
                        continue;
                    }
                    QuadRule rule = dual_weights(gram);
                    m.energy.update(
                        rule.dual_energy - (1.0 / gram.a_n + 1e-10),
                        fmt("%s/%s n=%d", basis.name(), gen_names[gi], n));

                    for (size_t fi = 0; fi < fns.size(); ++fi) {
                        std::string where = fmt("%s/%s/%s n=%d", basis.name(),
                                                gen_names[gi], fn_names[fi], n);
                        const CoeffFunction& f = fns[fi];
                        PolyCoeffs q = quasi_interpolant(gram, f.sample(layer));
                        ErrorChainOptions eo;
                        eo.phi = &phis[ni];
                        eo.norm = &norms[fi];
                        ErrorBreakdown e = error_chain(f, gram, q, sigma, eo);

                        double tot_sq = e.err_total * e.err_total;
                        double split = e.err_proj * e.err_proj +
                                       e.err_mid * e.err_mid;
                        m.pythagoras.update(
                            std::abs(tot_sq - split) / tot_sq - 1e-8, where);
                        m.residual.update(e.err_mid * e.err_mid -
                                              (e.bound_residual + 1e-10),
                                          where);
                        m.total.update(
                            e.err_total -
                                (e.bound_total * (1.0 + 1e-6) + 1e-12),
                            where);

                        QuadReportOptions qo;
                        qo.phi = &phis[ni];
                        qo.norm = &norms[fi];
                        QuadReport quad = quad_error_report(f, rule, sigma, qo);
                        m.quad.update(
                            quad.err -
                                (quad.bound_smooth * (1.0 + 1e-6) + 1e-12),
                            where);
                        m.stability.update(quad.stability_lhs -
                                               (quad.stability_rhs + 1e-10),
                                           where);
                        ++m.cells;
                    }
                }
            }
        }
        return m;
    }();
    return stats;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string mzq_bin = argc > 1 ? argv[1] : "";

    criterion(1, "identity gram", [] {
        const UniformSweep& s = uniform_sweep();
        return Outcome{s.t_dev < 1e-12 && s.ab_dev <= 1e-10,
                       fmt("max|T-I|=%.3g max|A-1|,|B-1|=%.3g (n=2..128)",
                           s.t_dev, s.ab_dev)};
    });

    criterion(2, "trapezoid recovery", [] {
        const UniformSweep& s = uniform_sweep();
        return Outcome{s.w_dev < 1e-12 && s.defect < 1e-12,
                       fmt("max|w-1/L|=%.3g max defect=%.3g (n=2..128)",
                           s.w_dev, s.defect)};
    });

    criterion(3, "orthogonal split", [] {
        const MatrixStats& m = matrix_stats();
        return Outcome{m.pythagoras.ok() && m.cells > 0,
                       fmt("worst rel defect=%.3g at %s (%d cells, %d "
                           "uncertified layers)",
                           m.pythagoras.slack + 1e-8, m.pythagoras.where.c_str(),
                           m.cells, m.uncertified)};
    });

    criterion(4, "residual domination", [] {
        const MatrixStats& m = matrix_stats();
        return Outcome{m.residual.ok(),
                       fmt("worst slack=%.3g at %s", m.residual.slack,
                           m.residual.where.c_str())};
    });

    criterion(5, "l2 error bound", [] {
        const MatrixStats& m = matrix_stats();
        return Outcome{m.total.ok(), fmt("worst slack=%.3g at %s",
                                         m.total.slack, m.total.where.c_str())};
    });

    criterion(6, "algebraic rate", [] {
        ExperimentConfig cfg;
        cfg.generator = GeneratorKind::jittered;
        cfg.degrees = {8, 16, 32, 64, 128, 256};
        ConvergenceReport report = run_approx_experiment(cfg);
        const RateFit& fit = report.lsq_loglog;
        bool pass = fit.points >= 2 && fit.slope <= -0.6 &&
                    !report.any_violation();
        return Outcome{pass, fmt("slope=%.4f (limit -0.6, %d points)",
                                 fit.slope, fit.points)};
    });

    criterion(7, "geometric rate", [] {
        ExperimentConfig cfg;
        cfg.generator = GeneratorKind::jittered;
        cfg.fn = "analytic";
        cfg.degrees = parse_degrees("4:40:+4");
        ConvergenceReport report = run_quad_experiment(cfg);
        double target = -std::log10(2.0);
        double tol = 0.15 * std::abs(target);
        const RateFit& lsq = report.lsq_semilog;
        const RateFit& quad = report.quad_semilog;
        bool pass = lsq.points >= 2 && quad.points >= 2 &&
                    std::abs(lsq.slope - target) <= tol &&
                    std::abs(quad.slope - target) <= tol;
        return Outcome{pass,
                       fmt("lsq slope=%.5f quad slope=%.5f (target %.5f "
                           "+-%.5f)",
                           lsq.slope, quad.slope, target, tol)};
    });

    criterion(8, "quadrature bounds", [] {
        const MatrixStats& m = matrix_stats();
        bool pass = m.quad.ok() && m.stability.ok() && m.energy.ok();
        return Outcome{
            pass, fmt("worst slack: err=%.3g (%s) stability=%.3g energy=%.3g",
                      m.quad.slack, m.quad.where.c_str(), m.stability.slack,
                      m.energy.slack)};
    });

    criterion(9, "growth exponents", [] {
        struct Window {
            const char* basis;
            double center, tol, sigma;
        };
        const Window windows[] = {{"fourier", 1.0, 0.05, 1.0},
                                  {"chebyshev", 1.0, 0.15, 1.0},
                                  {"legendre", 2.0, 0.15, 1.5}};
        bool pass = true;
        std::string detail;
        for (const Window& w : windows) {
            ExperimentConfig cfg;
            cfg.basis = w.basis;
            cfg.sigma = w.sigma;
            WeylExperiment exp = run_weyl_experiment(cfg);
            bool in_window = std::abs(exp.fit.d - w.center) <= w.tol;
            bool dominated = true;
            for (const WeylRow& row : exp.rows)
                dominated = dominated && row.phi_sigma <= row.phi_bound * 1.1;
            pass = pass && in_window && dominated;
            detail += fmt("%s d=%.4f%s ", w.basis, exp.fit.d,
                          in_window && dominated ? "" : "(!)");
        }
        return Outcome{pass, detail};
    });

    criterion(10, "torus envelope", [] {
        Basis basis = Basis::fourier();
        Worst worst;
        for (double sigma : {0.75, 1.0, 2.0}) {
            for (int n = 8; n <= 512; n *= 2) {
                PhiValue phi = error_function_phi(basis, sigma, n);
                double envelope = std::pow(sigma - 0.5, -0.5) *
                                  std::pow(n, 0.5 - sigma);
                worst.update(phi.value / envelope - 1.0,
                             fmt("sigma=%g n=%d", sigma, n));
            }
        }
        return Outcome{worst.ok(), fmt("worst phi/envelope=%.6f at %s",
                                       worst.slack + 1.0, worst.where.c_str())};
    });

    criterion(11, "oracle equivalence", [] {
        struct Case {
            Basis basis;
            int n;
        };
        const Case cases[] = {{Basis::fourier(), 1},
                              {Basis::fourier(), 2},
                              {Basis::fourier(), 3},
                              {Basis::chebyshev(), 7},
                              {Basis::legendre(), 7}};
        Worst worst;
        for (const Case& c : cases) {
            Layer layer = generate_jittered(c.basis, c.n, 2.0, 0.25, 7);
            GramSystem gram = assemble(c.basis, layer);
            int d = gram.dim();
            int l = layer.size();
            std::string where = fmt("%s n=%d", c.basis.name(), c.n);

            oracle::Mat phi(l, oracle::Vec(d));
            for (int k = 0; k < l; ++k)
                for (int j = 1; j <= d; ++j)
                    phi[k][j - 1] = c.basis.eval(j, layer.nodes[k]);
            oracle::Mat t(d, oracle::Vec(d));
            double radius = 0.0;
            for (int i = 0; i < d; ++i) {
                double row_sum = 0.0;
                for (int j = 0; j < d; ++j) {
                    oracle::cd s = 0.0;
                    for (int k = 0; k < l; ++k)
                        s += std::conj(phi[k][i]) * phi[k][j] * layer.tau[k];
                    t[i][j] = s;
                    row_sum += std::abs(s);
                }
                radius = std::max(radius, row_sum);
            }

            auto roots = oracle::char_poly_roots(t, -0.5, radius + 0.5);
            if (static_cast<int>(roots.size()) != d) {
                worst.update(1.0, where + " (root count)");
                continue;
            }
            worst.update(std::abs(roots.front() - gram.a_n) - 1e-8,
                         where + " (lower bound)");
            worst.update(std::abs(roots.back() - gram.b_n) - 1e-8,
                         where + " (upper bound)");

            CoeffFunction f = CoeffFunction::analytic(c.basis, 1.25);
            Eigen::VectorXcd samples = f.sample(layer);
            oracle::Vec rhs(d);
            for (int j = 0; j < d; ++j) {
                oracle::cd s = 0.0;
                for (int k = 0; k < l; ++k)
                    s += std::conj(phi[k][j]) * samples(k) * layer.tau[k];
                rhs[j] = s;
            }
            oracle::Vec a = oracle::solve(t, rhs);
            PolyCoeffs q = quasi_interpolant(gram, samples);
            for (int j = 0; j < d; ++j)
                worst.update(std::abs(a[j] - q.a(j)) - 1e-8,
                             where + " (coefficients)");

            oracle::Vec w = oracle::least_norm_weights(phi, layer.tau);
            QuadRule rule = dual_weights(gram);
            for (int k = 0; k < l; ++k)
                worst.update(std::abs(w[k] - rule.w(k)) - 1e-8,
                             where + " (weights)");
        }
        return Outcome{worst.ok(), fmt("worst deviation=%.3g at %s",
                                       worst.slack + 1e-8, worst.where.c_str())};
    });

    criterion(12, "determinism", [&mzq_bin] {
        if (mzq_bin.empty())
            return Outcome{false, "CLI binary path not passed as argv[1]"};
        const std::string base = "/tmp/mzq_accept_";
        auto run = [&](const std::string& args, const std::string& out) {
            std::string cmd = "\"" + mzq_bin + "\" " + args + " --out " + out +
                              " >/dev/null 2>&1";
            return std::system(cmd.c_str());
        };
        const std::string approx_args =
            "approx --generator jittered --degrees 8,16,32 --seed 7";
        const std::string quad_args =
            "quad --basis legendre --generator random --degrees 4,8 --seed 11"
            " --rules-out ";
        int rc = 0;
        rc |= run(approx_args, base + "a1.csv");
        rc |= run(approx_args, base + "a2.csv");
        rc |= run(quad_args + base + "r1.csv", base + "q1.csv");
        rc |= run(quad_args + base + "r2.csv", base + "q2.csv");

        std::string a1 = slurp(base + "a1.csv"), a2 = slurp(base + "a2.csv");
        std::string q1 = slurp(base + "q1.csv"), q2 = slurp(base + "q2.csv");
        std::string r1 = slurp(base + "r1.csv"), r2 = slurp(base + "r2.csv");
        for (const char* stem : {"a1", "a2", "q1", "q2", "r1", "r2"})
            std::remove((base + stem + ".csv").c_str());

        bool pass = rc == 0 && !a1.empty() && !q1.empty() && !r1.empty() &&
                    a1 == a2 && q1 == q2 && r1 == r2;
        return Outcome{pass, fmt("rc=%d approx %zu bytes %s, quad %zu bytes "
                                 "%s, rules %zu bytes %s",
                                 rc, a1.size(), a1 == a2 ? "equal" : "DIFFER",
                                 q1.size(), q1 == q2 ? "equal" : "DIFFER",
                                 r1.size(), r1 == r2 ? "equal" : "DIFFER")};
    });

    std::printf("%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures;
}
