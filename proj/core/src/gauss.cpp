#include "mzq/gauss.hpp"

#include <cmath>
#include <numbers>

#include "mzq/errors.hpp"

namespace mzq {

GaussRule gauss_legendre(int m) {
    if (m < 1) throw DomainError("gauss_legendre: need at least one point");
    GaussRule rule;
    rule.x.resize(m);
    rule.w.resize(m);
    // Newton on P_m from the Chebyshev-angle initial guess; the derivative
    // comes from the standard relation (1-x^2) P_m' = m (P_{m-1} - x P_m).
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pm = 0, dpm = 0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < m; ++k) {
                double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            pm = p1;
            dpm = m * (p0 - x * p1) / (1.0 - x * x);
            double dx = pm / dpm;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dpm * dpm);
        rule.x[i] = x;
        rule.w[i] = w;
        rule.x[m - 1 - i] = -x;
        rule.w[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.x[m / 2] = 0.0;
    return rule;
}

}  // namespace mzq
