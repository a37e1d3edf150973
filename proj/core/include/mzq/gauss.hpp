#pragma once

#include <vector>

namespace mzq {

struct GaussRule {
    std::vector<double> x;  // nodes in (-1,1), ascending
    std::vector<double> w;  // weights for integration against dx, summing to 2
};

// Gauss-Legendre rule with m points, exact on polynomials of degree 2m-1.
GaussRule gauss_legendre(int m);

}  // namespace mzq
