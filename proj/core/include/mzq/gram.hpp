#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "mzq/basis.hpp"
#include "mzq/layer.hpp"

namespace mzq {

// Weighted design matrix U (L x dim, entries sqrt(tau_k) phi_j(x_k)), its
// Gram matrix T = U^* U, and the extreme eigenvalues of T. The sampled
// quadratic form of any p in P_n equals <T a, a>, so [a_n, b_n] are the
// frame bounds realized by the layer.
struct GramSystem {
    Basis basis = Basis::fourier();
    Layer layer;
    Eigen::MatrixXcd u;
    Eigen::MatrixXcd t;
    double a_n = 0.0;
    double b_n = 0.0;

    int dim() const { return static_cast<int>(t.rows()); }
    double kappa() const { return b_n / a_n; }
};

// Validates the layer, builds U and T, computes extreme eigenvalues
// (dense solver up to dim 512, power iteration above). For the fourier
// basis the Toeplitz structure of T is asserted within 1e-10.
GramSystem assemble(const Basis& basis, const Layer& layer);

struct FrameRow {
    int n = 0;
    int size = 0;
    double a_n = 0.0;
    double b_n = 0.0;
    double kappa = 0.0;
    bool certified = false;  // a_n above the floor
};

struct FrameReport {
    std::vector<FrameRow> rows;
    double a = 0.0;  // min over rows
    double b = 0.0;  // max over rows
    double floor = 0.0;

    double kappa() const { return b / a; }
    bool all_certified() const;
};

// Assembles every layer and collects per-layer and global bounds. Layers
// with a_n <= floor are flagged, not dropped.
FrameReport frame_report(const Basis& basis, std::span<const Layer> layers,
                         double floor = 1e-8);

}  // namespace mzq
