#include "mzq/coeff_function.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mzq/errors.hpp"

namespace mzq {

namespace {

constexpr double kDefaultLambdaCut = 1024.0;

// Sum over integer m > cut of (1+m)^q, q < -1, bounded by the integral.
double power_tail(double q, double cut) {
    double m0 = std::floor(cut) + 1.0;
    return std::pow(m0, q + 1.0) / (-q - 1.0);
}

// Sum over integer m > cut of w(m) r^m for a ratio-tested weight. The terms
// are accumulated until the one-step ratio certifies a geometric remainder.
template <class Weight, class Ratio>
double ratio_tail(double r, double cut, Weight w, Ratio step_ratio) {
    if (!(r < 1.0)) throw DivergenceError("geometric tail needs ratio < 1");
    long long m = static_cast<long long>(std::floor(cut)) + 1;
    double term = w(static_cast<double>(m)) * std::pow(r, static_cast<double>(m));
    double sum = 0.0;
    for (int guard = 0; guard < 100000; ++guard) {
        if (term == 0.0) return sum;
        double q = r * step_ratio(static_cast<double>(m));
        if (q < 1.0) {
            double rem = term * q / (1.0 - q);
            if (rem <= 1e-16 * (sum + term) || q <= 0.9)
                return sum + term + rem;
        }
        sum += term;
        term *= q;  // >= true next term, keeps the bound one-sided
        ++m;
    }
    throw NumericError("geometric tail did not certify");
}

}  // namespace

CoeffFunction CoeffFunction::sobolev(const Basis& basis, double sigma,
                                     double eps, double lambda_cut) {
    if (!(sigma >= 0.0) || !(eps > 0.0))
        throw DomainError("sobolev kind needs sigma >= 0 and eps > 0");
    CoeffFunction f(basis, CoeffKind::sobolev);
    f.sigma_ = sigma;
    f.eps_ = eps;
    f.lambda_cut_ = lambda_cut > 0.0 ? lambda_cut : kDefaultLambdaCut;
    f.fill_coeffs();
    return f;
}

CoeffFunction CoeffFunction::analytic(const Basis& basis, double a,
                                      double lambda_cut) {
    if (!(a > 1.0)) throw DomainError("analytic kind needs a > 1");
    CoeffFunction f(basis, CoeffKind::analytic);
    f.a_ = a;
    f.r_ = a - std::sqrt(a * a - 1.0);
    f.t_ = 1.0 / std::sqrt(a * a - 1.0);
    f.lambda_cut_ = lambda_cut > 0.0 ? lambda_cut : kDefaultLambdaCut;
    f.fill_coeffs();
    return f;
}

CoeffFunction CoeffFunction::hat(const Basis& basis, double lambda_cut) {
    CoeffFunction f(basis, CoeffKind::hat);
    f.lambda_cut_ = lambda_cut > 0.0 ? lambda_cut : kDefaultLambdaCut;
    f.fill_coeffs();
    return f;
}

CoeffFunction CoeffFunction::custom(const Basis& basis, Eigen::VectorXcd coeff) {
    CoeffFunction f(basis, CoeffKind::custom);
    f.coeff_ = std::move(coeff);
    f.lambda_cut_ =
        f.coeff_.size() > 0 ? basis.lambda(static_cast<int>(f.coeff_.size())) : 0.0;
    return f;
}

CoeffFunction CoeffFunction::from_name(const Basis& basis, std::string_view name,
                                       double sigma, double eps, double a,
                                       double lambda_cut) {
    if (name == "sobolev") return sobolev(basis, sigma, eps, lambda_cut);
    if (name == "analytic") return analytic(basis, a, lambda_cut);
    if (name == "hat") return hat(basis, lambda_cut);
    throw ConfigError("unknown test function '" + std::string(name) +
                      "' (expected sobolev, analytic, or hat)");
}

const char* CoeffFunction::kind_name() const {
    switch (kind_) {
        case CoeffKind::sobolev: return "sobolev";
        case CoeffKind::analytic: return "analytic";
        case CoeffKind::hat: return "hat";
        case CoeffKind::custom: return "custom";
    }
    return "?";
}

double CoeffFunction::level_coeff(double lambda) const {
    switch (kind_) {
        case CoeffKind::sobolev:
            return std::pow(1.0 + lambda, -sigma_ - 0.5 - eps_);
        case CoeffKind::analytic:
            return t_ * std::pow(r_, lambda);
        case CoeffKind::hat:
            return std::pow(1.0 + lambda, -2.0);
        case CoeffKind::custom:
            throw DomainError("custom functions have no level law");
    }
    return 0.0;
}

void CoeffFunction::fill_coeffs() {
    int k = basis_.dim(lambda_cut_);
    coeff_.resize(k);
    for (int j = 1; j <= k; ++j) coeff_(j - 1) = level_coeff(basis_.lambda(j));
}

cplx CoeffFunction::coeff(int j) const {
    if (j < 1) throw DomainError("coefficient index must be >= 1");
    return j <= k_max() ? coeff_(j - 1) : cplx(0.0);
}

cplx CoeffFunction::eval(double x) const {
    int k = k_max();
    std::vector<cplx> vals(k);
    basis_.eval_all(k, x, vals);
    cplx s = 0.0;
    for (int j = 0; j < k; ++j) s += coeff_(j) * vals[j];
    return s;
}

Eigen::VectorXcd CoeffFunction::sample(const Layer& layer) const {
    Eigen::VectorXcd out(layer.size());
    for (int k = 0; k < layer.size(); ++k) out(k) = eval(layer.nodes[k]);
    return out;
}

double CoeffFunction::sup_admissible_sigma() const {
    switch (kind_) {
        case CoeffKind::sobolev: return sigma_ + eps_;
        case CoeffKind::hat: return 1.5;
        case CoeffKind::analytic:
        case CoeffKind::custom:
            return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double CoeffFunction::tail_sup(double cut) const {
    if (kind_ == CoeffKind::custom) {
        double s = 0.0;
        for (int j = 1; j <= k_max(); ++j) {
            double lam = basis_.lambda(j);
            if (lam > cut)
                s += std::abs(coeff_(j - 1)) * basis_.sup_phi_coef() *
                     std::pow(1.0 + lam, basis_.sup_phi_pow());
        }
        return s;
    }
    double mult = basis_.max_multiplicity();
    double cb = basis_.sup_phi_coef();
    double pb = basis_.sup_phi_pow();
    if (kind_ == CoeffKind::analytic) {
        auto w = [pb](double m) { return std::pow(1.0 + m, pb); };
        auto ratio = [pb](double m) {
            return std::pow((2.0 + m) / (1.0 + m), pb);
        };
        return mult * cb * t_ * ratio_tail(r_, cut, w, ratio);
    }
    double s = kind_ == CoeffKind::sobolev ? sigma_ + 0.5 + eps_ : 2.0;
    if (!(s - pb > 1.0))
        throw DivergenceError("sup tail diverges for this basis and kind");
    return mult * cb * power_tail(pb - s, cut);
}

double CoeffFunction::tail_l2_sq(double cut) const {
    return tail_hs_sq(0.0, cut);
}

double CoeffFunction::tail_hs_sq(double sigma, double cut) const {
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    if (kind_ == CoeffKind::custom) {
        double s = 0.0;
        for (int j = 1; j <= k_max(); ++j) {
            double lam = basis_.lambda(j);
            if (lam > cut)
                s += std::norm(coeff_(j - 1)) * std::pow(1.0 + lam * lam, sigma);
        }
        return s;
    }
    double mult = basis_.max_multiplicity();
    if (kind_ == CoeffKind::analytic) {
        auto w = [sigma](double m) { return std::pow(1.0 + m * m, sigma); };
        auto ratio = [sigma](double m) {
            double num = 1.0 + (m + 1.0) * (m + 1.0);
            return std::pow(num / (1.0 + m * m), sigma);
        };
        return mult * t_ * t_ * ratio_tail(r_ * r_, cut, w, ratio);
    }
    double s = kind_ == CoeffKind::sobolev ? sigma_ + 0.5 + eps_ : 2.0;
    if (!(sigma < s - 0.5))
        throw DivergenceError("norm diverges: admissible sigma < " +
                              std::to_string(s - 0.5));
    // (1 + m^2)^sigma <= (1 + m)^(2 sigma).
    return mult * power_tail(2.0 * sigma - 2.0 * s, cut);
}

SobolevNorm sobolev_norm(const CoeffFunction& f, double sigma) {
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    SobolevNorm out;
    if (f.kind() == CoeffKind::custom) {
        const Basis& basis = f.basis();
        for (int j = 1; j <= f.k_max(); ++j) {
            double lam = basis.lambda(j);
            out.partial_sq +=
                std::norm(f.coeff(j)) * std::pow(1.0 + lam * lam, sigma);
        }
        out.lambda_cut = f.lambda_cut();
        out.value = std::sqrt(out.partial_sq);
        return out;
    }
    if (!(sigma < f.sup_admissible_sigma()))
        throw DivergenceError("norm diverges: admissible sigma < " +
                              std::to_string(f.sup_admissible_sigma()));

    double mult0 = 1.0;
    double mult = f.basis().max_multiplicity();
    double cut = std::max(f.lambda_cut(), 4096.0);
    constexpr double kCap = 4194304.0;  // 2^22 levels

    double partial = 0.0;
    double level = 0.0;
    auto extend = [&](double to) {
        for (; level <= to; ++level) {
            double g = f.level_coeff(level);
            double m = level == 0.0 ? mult0 : mult;
            partial += m * g * g * std::pow(1.0 + level * level, sigma);
        }
    };
    extend(cut);
    double tail = f.tail_hs_sq(sigma, level - 1.0);
    while (tail > 1e-9 * partial && level <= kCap) {
        extend(std::min(2.0 * (level - 1.0), kCap));
        tail = f.tail_hs_sq(sigma, level - 1.0);
    }
    out.partial_sq = partial;
    out.tail_sq = tail;
    out.lambda_cut = level - 1.0;
    out.value = std::sqrt(partial + tail);
    return out;
}

}  // namespace mzq
