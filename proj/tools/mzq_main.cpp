// Command-line front end: frame certification, approximation and quadrature
// convergence sweeps, spectral growth fits, and node-file generation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mzq/approx.hpp"
#include "mzq/errors.hpp"
#include "mzq/experiment.hpp"

namespace {

struct CliOptions {
    mzq::ExperimentConfig cfg;
    std::string config_path;
    std::string generator_name;
    std::string degrees_text;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path,
                    "key=value config file, overridden by flags");
    cmd->add_option("--basis", opt.cfg.basis, "fourier | chebyshev | legendre");
    cmd->add_option("--generator", opt.generator_name,
                    "uniform | jittered | random | file");
    cmd->add_option("--nodes", opt.cfg.nodes_path,
                    "node file path (generator 'file')");
    cmd->add_option("--oversampling", opt.cfg.oversampling, "nodes per dim, >= 1");
    cmd->add_option("--jitter", opt.cfg.jitter, "relative displacement in [0, 1/2)");
    cmd->add_option("--seed", opt.cfg.seed, "generator seed");
    cmd->add_option("--degrees", opt.degrees_text,
                    "schedule: '8,16,32' | '8:128' dyadic | '4:40:+4'");
    cmd->add_option("--fn", opt.cfg.fn, "sobolev | analytic | hat");
    cmd->add_option("--sigma", opt.cfg.sigma, "smoothness exponent");
    cmd->add_option("--eps", opt.cfg.eps, "sobolev kind margin");
    cmd->add_option("--a", opt.cfg.a, "analytic kind parameter, > 1");
    cmd->add_option("--floor", opt.cfg.floor, "certification floor for a_n");
    cmd->add_option("--grid", opt.cfg.grid, "sup-norm grid size");
    cmd->add_option("--lambda-cut", opt.cfg.lambda_cut,
                    "truncation level (0: max(4 max_degree, 64))");
    cmd->add_flag("--strict", opt.cfg.strict,
                  "exit 3 when any layer is uncertified");
    cmd->add_option("--out", opt.cfg.out, "CSV output path (default stdout)");
}

// Config file first, then every flag the user passed on top.
mzq::ExperimentConfig resolve(const CLI::App* cmd, const CliOptions& opt) {
    mzq::ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = mzq::load_config(opt.config_path);

    auto passed = [cmd](const std::string& flag) {
        const CLI::Option* o = cmd->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
    };
    if (passed("--basis")) cfg.basis = opt.cfg.basis;
    if (passed("--generator"))
        mzq::apply_config_entry(cfg, "generator", opt.generator_name);
    if (passed("--nodes")) mzq::apply_config_entry(cfg, "nodes", opt.cfg.nodes_path);
    if (passed("--oversampling")) cfg.oversampling = opt.cfg.oversampling;
    if (passed("--jitter")) cfg.jitter = opt.cfg.jitter;
    if (passed("--seed")) cfg.seed = opt.cfg.seed;
    if (passed("--degrees")) cfg.degrees = mzq::parse_degrees(opt.degrees_text);
    if (passed("--fn")) cfg.fn = opt.cfg.fn;
    if (passed("--sigma")) cfg.sigma = opt.cfg.sigma;
    if (passed("--eps")) cfg.eps = opt.cfg.eps;
    if (passed("--a")) cfg.a = opt.cfg.a;
    if (passed("--floor")) cfg.floor = opt.cfg.floor;
    if (passed("--grid")) cfg.grid = opt.cfg.grid;
    if (passed("--lambda-cut")) cfg.lambda_cut = opt.cfg.lambda_cut;
    if (passed("--strict")) cfg.strict = opt.cfg.strict;
    if (passed("--out")) cfg.out = opt.cfg.out;
    if (passed("--rules-out")) cfg.rules_out = opt.cfg.rules_out;
    return cfg;
}

template <class Report, class Writer>
void write_csv(const std::string& path, const Report& report, Writer writer) {
    if (path.empty()) {
        writer(std::cout, report);
        return;
    }
    std::ofstream os(path);
    if (!os) throw mzq::ConfigError("cannot open output file: " + path);
    writer(os, report);
}

void print_fit(const char* label, const mzq::RateFit& fit) {
    if (fit.points < 2) {
        std::printf("%s: not fitted (fewer than 2 points above floor)\n", label);
        return;
    }
    std::printf("%s: slope=%.6g intercept=%.6g max_residual=%.3g points=%d\n",
                label, fit.slope, fit.intercept, fit.max_residual, fit.points);
}

int finish_convergence(const mzq::ExperimentConfig& cfg,
                       const mzq::ConvergenceReport& report) {
    write_csv(cfg.out, report, mzq::write_report_csv);
    print_fit("rate err_lsq  log10(err) vs log10(n)", report.lsq_loglog);
    print_fit("rate err_lsq  log10(err) vs n       ", report.lsq_semilog);
    print_fit("rate quad_err log10(err) vs log10(n)", report.quad_loglog);
    print_fit("rate quad_err log10(err) vs n       ", report.quad_semilog);
    for (const mzq::ReportRow& row : report.rows) {
        if (!row.certified)
            std::fprintf(stderr, "uncertified layer: n=%d a_n=%.3g\n", row.n,
                         row.a_n);
        if (row.violated)
            std::fprintf(stderr, "bound violation: n=%d\n", row.n);
    }
    return mzq::report_exit_code(report, cfg.strict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling-family certification and convergence experiments"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* frame = app.add_subcommand("frame", "certify layers, report bounds");
    CLI::App* approx = app.add_subcommand("approx", "least-squares convergence sweep");
    CLI::App* quad = app.add_subcommand("quad", "quadrature convergence sweep");
    CLI::App* weyl = app.add_subcommand("weyl", "spectral growth fit and phi table");
    CLI::App* gen = app.add_subcommand("gen-nodes", "emit a node file");
    for (CLI::App* cmd : {frame, approx, quad, weyl, gen})
        add_common_options(cmd, opt);
    quad->add_option("--rules-out", opt.cfg.rules_out,
                     "write the quadrature rules to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 4;
    }

    try {
        if (frame->parsed()) {
            mzq::ExperimentConfig cfg = resolve(frame, opt);
            mzq::FrameReport report = mzq::run_frame_experiment(cfg);
            write_csv(cfg.out, report, mzq::write_frame_csv);
            std::printf("A=%.17g B=%.17g kappa=%.17g floor=%.3g\n", report.a,
                        report.b, report.kappa(), report.floor);
            bool uncertified = !report.all_certified();
            if (uncertified)
                std::fprintf(stderr, "some layers fall below the floor\n");
            return cfg.strict && uncertified ? 3 : 0;
        }
        if (approx->parsed()) {
            mzq::ExperimentConfig cfg = resolve(approx, opt);
            return finish_convergence(cfg, mzq::run_approx_experiment(cfg));
        }
        if (quad->parsed()) {
            mzq::ExperimentConfig cfg = resolve(quad, opt);
            return finish_convergence(cfg, mzq::run_quad_experiment(cfg));
        }
        if (weyl->parsed()) {
            mzq::ExperimentConfig cfg = resolve(weyl, opt);
            mzq::WeylExperiment report = mzq::run_weyl_experiment(cfg);
            write_csv(cfg.out, report, mzq::write_weyl_csv);
            std::printf(
                "d=%.17g c=%.17g max_residual=%.3g sigma_crit=%.17g sigma=%.17g\n",
                report.fit.d, report.fit.c, report.fit.residual,
                report.sigma_crit_est, report.sigma);
            return 0;
        }
        if (gen->parsed()) {
            mzq::ExperimentConfig cfg = resolve(gen, opt);
            mzq::Basis basis = mzq::Basis::from_name(cfg.basis);
            if (cfg.generator == mzq::GeneratorKind::file)
                throw mzq::ConfigError("gen-nodes needs a generating kind");
            std::vector<mzq::Layer> layers = mzq::make_layers(cfg, basis);
            if (cfg.out.empty())
                mzq::write_node_file(std::cout, layers);
            else
                mzq::write_node_file(cfg.out, layers);
            return 0;
        }
    } catch (const mzq::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 4;
}
