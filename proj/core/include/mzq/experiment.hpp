#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mzq/gram.hpp"
#include "mzq/quadrature.hpp"
#include "mzq/spectral.hpp"

namespace mzq {

enum class GeneratorKind { uniform, jittered, random, file };

struct ExperimentConfig {
    std::string basis = "fourier";
    GeneratorKind generator = GeneratorKind::uniform;
    std::string nodes_path;  // generator == file
    double oversampling = 2.0;
    double jitter = 0.25;
    std::uint64_t seed = 7;
    std::vector<int> degrees = {8, 16, 32, 64, 128};
    std::string fn = "sobolev";  // sobolev | analytic | hat
    double sigma = 1.2;
    double eps = 0.05;
    double a = 1.25;
    double floor = 1e-8;
    int grid = 512;
    double lambda_cut = 0.0;  // 0: max(4 * max degree, 64)
    bool strict = false;
    std::string out;        // CSV path; empty writes to stdout
    std::string rules_out;  // quad experiment: optional rule file
};

// Degree schedules: "8,16,32" explicit, "8:128" dyadic, "4:40:+4" linear.
std::vector<int> parse_degrees(const std::string& text);

// Flat key=value file; keys match the CLI flag names. '#' starts a comment.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);
ExperimentConfig load_config(const std::string& path);

struct ReportRow {
    int n = 0;
    int size = 0;
    double a_n = 0.0;
    double b_n = 0.0;
    double kappa = 0.0;
    double err_proj = 0.0;
    double err_lsq = 0.0;
    double bound_l2 = 0.0;
    double quad_err = 0.0;
    double bound_quad = 0.0;
    double defect = 0.0;
    bool certified = false;
    bool violated = false;  // some bound check failed on this row
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    int points = 0;  // zero when not enough data above the floor
};

// log10(err) against log10(n) (algebraic) or against n (geometric);
// uncertified rows and errors below 1e-13 are dropped.
RateFit fit_rate_loglog(std::span<const ReportRow> rows,
                        double ReportRow::*column);
RateFit fit_rate_semilog(std::span<const ReportRow> rows,
                         double ReportRow::*column);

struct ConvergenceReport {
    std::vector<ReportRow> rows;
    RateFit lsq_loglog, lsq_semilog, quad_loglog, quad_semilog;

    bool any_violation() const;
    bool any_uncertified() const;
};

ConvergenceReport run_approx_experiment(const ExperimentConfig& cfg);
ConvergenceReport run_quad_experiment(const ExperimentConfig& cfg);

struct WeylRow {
    double n = 0.0;
    double sup_spectral = 0.0;
    double phi_sigma = 0.0;
    double phi_bound = 0.0;  // covering-fit comparison curve at n
};

struct WeylExperiment {
    WeylFit fit;
    double sigma = 0.0;
    double sigma_crit_est = 0.0;  // d / 2 from the fit
    std::vector<WeylRow> rows;
};

WeylExperiment run_weyl_experiment(const ExperimentConfig& cfg);

FrameReport run_frame_experiment(const ExperimentConfig& cfg);

// Layers for the configured generator and degree schedule.
std::vector<Layer> make_layers(const ExperimentConfig& cfg, const Basis& basis);

void write_report_csv(std::ostream& os, const ConvergenceReport& report);
void write_frame_csv(std::ostream& os, const FrameReport& report);
void write_weyl_csv(std::ostream& os, const WeylExperiment& report);

// Exit code: 0 clean, 2 bound violation, 3 uncertified row under strict.
int report_exit_code(const ConvergenceReport& report, bool strict);

}  // namespace mzq
