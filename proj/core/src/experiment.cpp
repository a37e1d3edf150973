#include "mzq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mzq/approx.hpp"
#include "mzq/errors.hpp"

namespace mzq {

namespace {

constexpr double kFitFloor = 1e-13;

GeneratorKind parse_generator(const std::string& name) {
    if (name == "uniform") return GeneratorKind::uniform;
    if (name == "jittered") return GeneratorKind::jittered;
    if (name == "random") return GeneratorKind::random;
    if (name == "file") return GeneratorKind::file;
    throw ConfigError("unknown generator '" + name +
                      "' (expected uniform, jittered, random, or file)");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

std::vector<int> parse_degrees(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() < 2 || parts.size() > 3)
            throw ConfigError("degree range must be lo:hi or lo:hi:+step");
        long long lo = parse_int("degrees", parts[0]);
        long long hi = parse_int("degrees", parts[1]);
        long long step = 0;
        if (parts.size() == 3) {
            if (parts[2].empty() || parts[2][0] != '+')
                throw ConfigError("degree range step must look like +4");
            step = parse_int("degrees", parts[2].substr(1));
            if (step <= 0) throw ConfigError("degree range step must be positive");
        }
        if (lo <= 0 || hi < lo) throw ConfigError("degree range must be 0 < lo <= hi");
        for (long long n = lo; n <= hi; n += step > 0 ? step : n)
            out.push_back(static_cast<int>(n));
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(static_cast<int>(parse_int("degrees", trim(item))));
    }
    if (out.empty()) throw ConfigError("empty degree schedule");
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i] <= 0) throw ConfigError("degrees must be positive");
        if (i > 0 && out[i] <= out[i - 1])
            throw ConfigError("degree schedule must be strictly increasing");
    }
    return out;
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "basis") cfg.basis = value;
    else if (key == "generator") cfg.generator = parse_generator(value);
    else if (key == "nodes") { cfg.generator = GeneratorKind::file; cfg.nodes_path = value; }
    else if (key == "oversampling") cfg.oversampling = parse_double(key, value);
    else if (key == "jitter") cfg.jitter = parse_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "degrees") cfg.degrees = parse_degrees(value);
    else if (key == "fn") cfg.fn = value;
    else if (key == "sigma") cfg.sigma = parse_double(key, value);
    else if (key == "eps") cfg.eps = parse_double(key, value);
    else if (key == "a") cfg.a = parse_double(key, value);
    else if (key == "floor") cfg.floor = parse_double(key, value);
    else if (key == "grid") cfg.grid = static_cast<int>(parse_int(key, value));
    else if (key == "lambda-cut") cfg.lambda_cut = parse_double(key, value);
    else if (key == "strict") cfg.strict = value == "1" || value == "true";
    else if (key == "out") cfg.out = value;
    else if (key == "rules-out") cfg.rules_out = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int row = 0;
    while (std::getline(is, line)) {
        ++row;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(row) +
                              ": expected key=value");
        apply_config_entry(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

std::vector<Layer> make_layers(const ExperimentConfig& cfg, const Basis& basis) {
    if (cfg.generator == GeneratorKind::file) {
        if (cfg.nodes_path.empty())
            throw ConfigError("generator 'file' needs a nodes path");
        return read_node_file(cfg.nodes_path, basis, nullptr);
    }
    std::vector<Layer> layers;
    for (int n : cfg.degrees) {
        switch (cfg.generator) {
            case GeneratorKind::uniform:
                layers.push_back(generate_uniform(basis, n, cfg.oversampling));
                break;
            case GeneratorKind::jittered:
                layers.push_back(generate_jittered(basis, n, cfg.oversampling,
                                                   cfg.jitter, cfg.seed));
                break;
            case GeneratorKind::random:
                layers.push_back(
                    generate_random(basis, n, cfg.oversampling, cfg.seed));
                break;
            case GeneratorKind::file:
                break;
        }
    }
    return layers;
}

namespace {

struct RunOutput {
    ConvergenceReport report;
    std::vector<QuadRule> rules;
};

RunOutput run_rows(const ExperimentConfig& cfg, bool trapezoid_check) {
    Basis basis = Basis::from_name(cfg.basis);
    std::vector<Layer> layers = make_layers(cfg, basis);
    std::sort(layers.begin(), layers.end(),
              [](const Layer& a, const Layer& b) { return a.n < b.n; });

    int n_max = 0;
    for (const Layer& layer : layers) n_max = std::max(n_max, layer.n);
    double cut = cfg.lambda_cut > 0.0
                     ? cfg.lambda_cut
                     : std::max(4.0 * n_max, 64.0);

    CoeffFunction f =
        CoeffFunction::from_name(basis, cfg.fn, cfg.sigma, cfg.eps, cfg.a, cut);
    if (!(cfg.sigma > basis.sigma_crit()))
        throw ConfigError("sigma must exceed " +
                          std::to_string(basis.sigma_crit()) + " for " +
                          std::string(basis.name()));
    SobolevNorm norm = sobolev_norm(f, cfg.sigma);
    static const std::vector<double> weyl_range = {8, 16, 32, 64, 128};
    WeylFit weyl = fit_weyl(basis, weyl_range, cfg.grid);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    RunOutput out;
    for (const Layer& layer : layers) {
        GramSystem gram = assemble(basis, layer);
        ReportRow row;
        row.n = layer.n;
        row.size = layer.size();
        row.a_n = gram.a_n;
        row.b_n = gram.b_n;
        row.kappa = gram.a_n > 0.0 ? gram.b_n / gram.a_n
                                   : std::numeric_limits<double>::infinity();
        row.certified = gram.a_n > cfg.floor;
        if (!row.certified) {
            row.err_proj = row.err_lsq = row.bound_l2 = nan;
            row.quad_err = row.bound_quad = row.defect = nan;
            out.report.rows.push_back(row);
            continue;
        }

        TailOptions to;
        to.grid_size = cfg.grid;
        to.lambda_cut = cut;
        to.weyl = &weyl;
        PhiValue phi = error_function_phi(basis, cfg.sigma, layer.n, to);

        Eigen::VectorXcd samples = f.sample(layer);
        PolyCoeffs p = quasi_interpolant(gram, samples, cfg.floor);
        ErrorChainOptions eo;
        eo.phi = &phi;
        eo.norm = &norm;
        eo.grid_size = cfg.grid;
        ErrorBreakdown chain = error_chain(f, gram, p, cfg.sigma, eo);

        QuadRule rule = dual_weights(gram, cfg.floor);
        QuadReportOptions qo;
        qo.phi = &phi;
        qo.norm = &norm;
        qo.grid_size = cfg.grid;
        QuadReport quad = quad_error_report(f, rule, cfg.sigma, qo);

        row.err_proj = chain.err_proj;
        row.err_lsq = chain.err_total;
        row.bound_l2 = chain.bound_total;
        row.quad_err = quad.err;
        row.bound_quad = quad.bound_smooth;
        row.defect = rule.exactness_defect;

        double mid_sq = chain.err_mid * chain.err_mid;
        bool ok = mid_sq <= chain.bound_residual + 1e-10 &&
                  chain.err_total <= chain.bound_total * (1.0 + 1e-6) + 1e-12 &&
                  quad.err <= quad.bound_smooth * (1.0 + 1e-6) + 1e-12 &&
                  quad.stability_lhs <= quad.stability_rhs + 1e-10 &&
                  rule.dual_energy <= 1.0 / gram.a_n + 1e-10 &&
                  rule.exactness_defect < 1e-10;
        if (trapezoid_check && cfg.generator == GeneratorKind::uniform &&
            basis.family() == BasisFamily::fourier_torus) {
            double expected = 1.0 / layer.size();
            for (int k = 0; k < layer.size(); ++k)
                ok = ok && std::abs(rule.w(k) - cplx(expected)) < 1e-12;
        }
        row.violated = !ok;
        out.report.rows.push_back(row);
        out.rules.push_back(std::move(rule));
    }

    out.report.lsq_loglog = fit_rate_loglog(out.report.rows, &ReportRow::err_lsq);
    out.report.lsq_semilog =
        fit_rate_semilog(out.report.rows, &ReportRow::err_lsq);
    out.report.quad_loglog =
        fit_rate_loglog(out.report.rows, &ReportRow::quad_err);
    out.report.quad_semilog =
        fit_rate_semilog(out.report.rows, &ReportRow::quad_err);
    return out;
}

RateFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    RateFit fit;
    size_t m = xs.size();
    if (m < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * (1.0 + m * sxx)) return fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    for (size_t i = 0; i < m; ++i)
        fit.max_residual = std::max(
            fit.max_residual, std::abs(ys[i] - fit.intercept - fit.slope * xs[i]));
    fit.points = static_cast<int>(m);
    return fit;
}

RateFit fit_rate(std::span<const ReportRow> rows, double ReportRow::*column,
                 bool log_x) {
    std::vector<double> xs, ys;
    for (const ReportRow& row : rows) {
        double err = row.*column;
        if (!row.certified || !std::isfinite(err) || err < kFitFloor) continue;
        xs.push_back(log_x ? std::log10(static_cast<double>(row.n)) : row.n);
        ys.push_back(std::log10(err));
    }
    return fit_line(xs, ys);
}

}  // namespace

RateFit fit_rate_loglog(std::span<const ReportRow> rows,
                        double ReportRow::*column) {
    return fit_rate(rows, column, true);
}

RateFit fit_rate_semilog(std::span<const ReportRow> rows,
                         double ReportRow::*column) {
    return fit_rate(rows, column, false);
}

bool ConvergenceReport::any_violation() const {
    for (const ReportRow& row : rows)
        if (row.violated) return true;
    return false;
}

bool ConvergenceReport::any_uncertified() const {
    for (const ReportRow& row : rows)
        if (!row.certified) return true;
    return false;
}

ConvergenceReport run_approx_experiment(const ExperimentConfig& cfg) {
    return run_rows(cfg, false).report;
}

ConvergenceReport run_quad_experiment(const ExperimentConfig& cfg) {
    RunOutput out = run_rows(cfg, true);
    if (!cfg.rules_out.empty()) write_rule_file(cfg.rules_out, out.rules);
    return out.report;
}

WeylExperiment run_weyl_experiment(const ExperimentConfig& cfg) {
    Basis basis = Basis::from_name(cfg.basis);
    WeylExperiment exp;
    exp.sigma = cfg.sigma;

    std::vector<double> degrees(cfg.degrees.begin(), cfg.degrees.end());
    exp.fit = fit_weyl(basis, degrees, cfg.grid);
    exp.sigma_crit_est = exp.fit.d / 2.0;

    TailOptions to;
    to.grid_size = cfg.grid;
    to.weyl = &exp.fit;
    for (size_t i = 0; i < degrees.size(); ++i) {
        WeylRow row;
        row.n = degrees[i];
        row.sup_spectral = exp.fit.sup_values[i];
        row.phi_sigma = error_function_phi(basis, cfg.sigma, row.n, to).value;
        row.phi_bound =
            std::sqrt(weyl_tail_sq_bound(exp.fit, cfg.sigma, row.n));
        exp.rows.push_back(row);
    }
    return exp;
}

FrameReport run_frame_experiment(const ExperimentConfig& cfg) {
    Basis basis = Basis::from_name(cfg.basis);
    std::vector<Layer> layers = make_layers(cfg, basis);
    std::sort(layers.begin(), layers.end(),
              [](const Layer& a, const Layer& b) { return a.n < b.n; });
    return frame_report(basis, layers, cfg.floor);
}

namespace {

void append(std::string& line, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    line += buf;
}

}  // namespace

void write_report_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "n,L,A,B,kappa,err_proj,err_lsq,bound_l2,quad_err,bound_quad,defect,"
          "certified\n";
    for (const ReportRow& row : report.rows) {
        std::string line = std::to_string(row.n) + "," + std::to_string(row.size);
        append(line, row.a_n);
        append(line, row.b_n);
        append(line, row.kappa);
        append(line, row.err_proj);
        append(line, row.err_lsq);
        append(line, row.bound_l2);
        append(line, row.quad_err);
        append(line, row.bound_quad);
        append(line, row.defect);
        line += row.certified ? ",1" : ",0";
        os << line << "\n";
    }
}

void write_frame_csv(std::ostream& os, const FrameReport& report) {
    os << "n,L,A,B,kappa,certified\n";
    for (const FrameRow& row : report.rows) {
        std::string line = std::to_string(row.n) + "," + std::to_string(row.size);
        append(line, row.a_n);
        append(line, row.b_n);
        append(line, row.kappa);
        line += row.certified ? ",1" : ",0";
        os << line << "\n";
    }
}

void write_weyl_csv(std::ostream& os, const WeylExperiment& report) {
    os << "n,sup_spectral,phi_sigma,phi_bound\n";
    char buf[64];
    for (const WeylRow& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.n);
        std::string line = buf;
        append(line, row.sup_spectral);
        append(line, row.phi_sigma);
        append(line, row.phi_bound);
        os << line << "\n";
    }
}

int report_exit_code(const ConvergenceReport& report, bool strict) {
    if (strict && report.any_uncertified()) return 3;
    if (report.any_violation()) return 2;
    return 0;
}

}  // namespace mzq
