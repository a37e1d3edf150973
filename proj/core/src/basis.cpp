#include "mzq/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mzq/errors.hpp"
#include "mzq/gauss.hpp"

namespace mzq {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i t) with the phase reduced to [-1/2, 1/2] first, so large t
// keeps full relative accuracy.
cplx unit_phase(double t) {
    double r = t - std::nearbyint(t);
    return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

}  // namespace

Basis Basis::from_name(std::string_view name) {
    if (name == "fourier") return fourier();
    if (name == "chebyshev") return chebyshev();
    if (name == "legendre") return legendre();
    throw ConfigError("unknown basis '" + std::string(name) +
                      "' (expected fourier, chebyshev, or legendre)");
}

const char* Basis::name() const {
    switch (family_) {
        case BasisFamily::fourier_torus: return "fourier";
        case BasisFamily::chebyshev: return "chebyshev";
        case BasisFamily::legendre: return "legendre";
    }
    return "?";
}

double Basis::domain_lo() const {
    return family_ == BasisFamily::fourier_torus ? -0.5 : -1.0;
}

double Basis::domain_hi() const {
    return family_ == BasisFamily::fourier_torus ? 0.5 : 1.0;
}

bool Basis::in_domain(double x) const {
    return std::isfinite(x) && x >= domain_lo() - kDomainSlack &&
           x <= domain_hi() + kDomainSlack;
}

double Basis::lambda(int j) const {
    if (j < 1) throw DomainError("basis index must be >= 1");
    if (family_ == BasisFamily::fourier_torus) return j / 2;
    return j - 1;
}

int Basis::dim(double n) const {
    if (!std::isfinite(n) || n < 0.0) return 0;
    int m = static_cast<int>(std::floor(n));
    return family_ == BasisFamily::fourier_torus ? 2 * m + 1 : m + 1;
}

int Basis::mode_of(int j) const {
    if (j < 1) throw DomainError("basis index must be >= 1");
    if (family_ != BasisFamily::fourier_torus) return j - 1;
    if (j == 1) return 0;
    return j % 2 == 0 ? j / 2 : -(j / 2);
}

cplx Basis::eval(int j, double x) const {
    if (j < 1) throw DomainError("basis index must be >= 1");
    if (!in_domain(x)) throw DomainError("evaluation point outside the domain");
    switch (family_) {
        case BasisFamily::fourier_torus:
            return unit_phase(static_cast<double>(mode_of(j)) * x);
        case BasisFamily::chebyshev: {
            if (j == 1) return 1.0;
            double xc = std::clamp(x, -1.0, 1.0);
            return std::numbers::sqrt2 * std::cos((j - 1) * std::acos(xc));
        }
        case BasisFamily::legendre: {
            int k = j - 1;
            double p0 = 1.0, p1 = x;
            if (k == 0) return 1.0;
            for (int m = 1; m < k; ++m) {
                double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
                p0 = p1;
                p1 = p2;
            }
            return std::sqrt(2.0 * k + 1.0) * p1;
        }
    }
    throw DomainError("unreachable basis family");
}

void Basis::eval_all(int count, double x, std::span<cplx> out) const {
    if (count < 0 || out.size() != static_cast<size_t>(count))
        throw ShapeError("eval_all: output span size must equal count");
    if (count == 0) return;
    if (!in_domain(x)) throw DomainError("evaluation point outside the domain");
    switch (family_) {
        case BasisFamily::fourier_torus: {
            out[0] = 1.0;
            for (int m = 1; 2 * m - 1 < count; ++m) {
                cplx e = unit_phase(static_cast<double>(m) * x);
                out[2 * m - 1] = e;
                if (2 * m < count) out[2 * m] = std::conj(e);
            }
            return;
        }
        case BasisFamily::chebyshev: {
            double xc = std::clamp(x, -1.0, 1.0);
            // c_k = cos(k theta) by the two-term recurrence.
            double c0 = 1.0, c1 = xc;
            out[0] = 1.0;
            if (count > 1) out[1] = std::numbers::sqrt2 * c1;
            for (int k = 2; k < count; ++k) {
                double c2 = 2.0 * xc * c1 - c0;
                c0 = c1;
                c1 = c2;
                out[k] = std::numbers::sqrt2 * c1;
            }
            return;
        }
        case BasisFamily::legendre: {
            double p0 = 1.0, p1 = x;
            out[0] = 1.0;
            if (count > 1) out[1] = std::sqrt(3.0) * p1;
            for (int k = 2; k < count; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
                out[k] = std::sqrt(2.0 * k + 1.0) * p1;
            }
            return;
        }
    }
}

std::vector<cplx> Basis::eval_all(int count, double x) const {
    std::vector<cplx> out(count);
    eval_all(count, x, out);
    return out;
}

cplx Basis::kernel(double n, double x, double y) const {
    int d = dim(n);
    std::vector<cplx> px = eval_all(d, x);
    std::vector<cplx> py = eval_all(d, y);
    cplx s = 0.0;
    for (int j = 0; j < d; ++j) s += std::conj(px[j]) * py[j];
    return s;
}

double Basis::spectral(double n, double x) const {
    int d = dim(n);
    std::vector<cplx> px = eval_all(d, x);
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += std::norm(px[j]);
    return s;
}

double Basis::sigma_crit() const {
    return family_ == BasisFamily::legendre ? 1.0 : 0.5;
}

double Basis::sup_phi_coef() const {
    return family_ == BasisFamily::fourier_torus ? 1.0 : std::numbers::sqrt2;
}

double Basis::sup_phi_pow() const {
    return family_ == BasisFamily::legendre ? 0.5 : 0.0;
}

int Basis::max_multiplicity() const {
    return family_ == BasisFamily::fourier_torus ? 2 : 1;
}

std::vector<double> Basis::grid(int count) const {
    if (count < 2) throw DomainError("grid needs at least two points");
    std::vector<double> g(count);
    if (family_ == BasisFamily::fourier_torus) {
        for (int i = 0; i < count; ++i)
            g[i] = -0.5 + static_cast<double>(i + 1) / count;
    } else {
        for (int i = 0; i < count; ++i)
            g[i] = -1.0 + 2.0 * i / (count - 1.0);
    }
    return g;
}

cplx integrate_measure(const Basis& basis, int max_mode,
                       const std::function<cplx(double)>& g) {
    if (max_mode < 0) throw DomainError("max_mode must be non-negative");
    constexpr int kPanelPts = 32;
    int need = 4 * (max_mode + 1);
    int panels = (need + kPanelPts - 1) / kPanelPts;
    static const GaussRule rule = gauss_legendre(kPanelPts);

    auto panel_sum = [&](double lo, double hi, auto&& f) {
        cplx s = 0.0;
        double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (int i = 0; i < kPanelPts; ++i) s += rule.w[i] * f(mid + h * rule.x[i]);
        return s * h;
    };

    cplx total = 0.0;
    switch (basis.family()) {
        case BasisFamily::fourier_torus: {
            for (int p = 0; p < panels; ++p) {
                double lo = -0.5 + static_cast<double>(p) / panels;
                double hi = -0.5 + static_cast<double>(p + 1) / panels;
                total += panel_sum(lo, hi, g);
            }
            return total;
        }
        case BasisFamily::chebyshev: {
            // Substitute x = cos(theta): dmu = dtheta / pi on [0, pi].
            auto f = [&](double th) { return g(std::cos(th)); };
            for (int p = 0; p < panels; ++p) {
                double lo = std::numbers::pi * p / panels;
                double hi = std::numbers::pi * (p + 1) / panels;
                total += panel_sum(lo, hi, f);
            }
            return total / std::numbers::pi;
        }
        case BasisFamily::legendre: {
            for (int p = 0; p < panels; ++p) {
                double lo = -1.0 + 2.0 * p / panels;
                double hi = -1.0 + 2.0 * (p + 1) / panels;
                total += panel_sum(lo, hi, g);
            }
            return total / 2.0;
        }
    }
    throw DomainError("unreachable basis family");
}

}  // namespace mzq
