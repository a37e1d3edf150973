#include "mzq/gram.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mzq/errors.hpp"

namespace mzq {

namespace {

constexpr int kDenseLimit = 512;

double rayleigh(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
    return (v.adjoint() * (m * v))(0, 0).real();
}

// Largest eigenvalue of a Hermitian PSD matrix by power iteration with a
// deterministic start, relative tolerance 1e-10, cap 10*dim.
double power_largest(const Eigen::MatrixXcd& m) {
    int d = static_cast<int>(m.rows());
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i)
        v(i) = cplx(1.0, 0.0) + 1e-3 * cplx(std::cos(0.7 * i), std::sin(1.3 * i));
    v.normalize();
    double lam = rayleigh(m, v);
    for (int it = 0; it < 10 * d; ++it) {
        Eigen::VectorXcd w = m * v;
        double norm = w.norm();
        if (norm < 1e-300) return 0.0;
        v = w / norm;
        double next = rayleigh(m, v);
        if (std::abs(next - lam) <= 1e-10 * std::max(1.0, std::abs(next))) {
            lam = next;
            break;
        }
        lam = next;
    }
    return lam;
}

void extreme_eigenvalues(const Eigen::MatrixXcd& t, double& a, double& b) {
    if (t.rows() <= kDenseLimit) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t,
                                                           Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericError("eigensolver failed on the Gram matrix");
        a = es.eigenvalues().minCoeff();
        b = es.eigenvalues().maxCoeff();
        return;
    }
    b = power_largest(t);
    // Smallest eigenvalue from the spectrum of b*I - T (largest there is b - a).
    Eigen::MatrixXcd shifted = -t;
    shifted.diagonal().array() += b;
    a = b - power_largest(shifted);
}

}  // namespace

GramSystem assemble(const Basis& basis, const Layer& layer) {
    validate_layer(basis, layer);
    int l = layer.size();
    int d = basis.dim(layer.n);

    GramSystem g;
    g.basis = basis;
    g.layer = layer;
    g.u.resize(l, d);
    std::vector<cplx> row(d);
    for (int k = 0; k < l; ++k) {
        basis.eval_all(d, layer.nodes[k], row);
        double s = std::sqrt(layer.tau[k]);
        for (int j = 0; j < d; ++j) {
            if (!std::isfinite(row[j].real()) || !std::isfinite(row[j].imag()))
                throw NumericError("non-finite basis value at node " +
                                   std::to_string(k));
            g.u(k, j) = s * row[j];
        }
    }
    g.t = g.u.adjoint() * g.u;

    double herm = (g.t - g.t.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm < 1e-12))
        throw NumericError("Gram matrix not Hermitian within 1e-12");
    g.t = 0.5 * (g.t + g.t.adjoint().eval());

    if (basis.family() == BasisFamily::fourier_torus) {
        // T depends only on frequency differences, which makes it Toeplitz
        // in the frequency-sorted order; check diagonals in that order.
        double spread = 0.0;
        for (int dj = 1 - d; dj < d; ++dj) {
            cplx first = 0.0;
            bool seen = false;
            for (int j = 0; j < d; ++j) {
                int fa = basis.mode_of(j + 1);
                int fb = fa + dj;
                if (std::abs(fb) > basis.lambda(d)) continue;
                int jb = fb == 0 ? 0 : (fb > 0 ? 2 * fb - 1 : -2 * fb);
                if (jb >= d) continue;
                cplx e = g.t(j, jb);
                if (!seen) {
                    first = e;
                    seen = true;
                } else {
                    spread = std::max(spread, std::abs(e - first));
                }
            }
        }
        if (!(spread < 1e-10))
            throw NumericError("fourier Gram matrix lost Toeplitz structure");
    }

    extreme_eigenvalues(g.t, g.a_n, g.b_n);
    return g;
}

bool FrameReport::all_certified() const {
    for (const FrameRow& r : rows)
        if (!r.certified) return false;
    return !rows.empty();
}

FrameReport frame_report(const Basis& basis, std::span<const Layer> layers,
                         double floor) {
    if (layers.empty()) throw ShapeError("frame_report needs at least one layer");
    FrameReport report;
    report.floor = floor;
    report.a = std::numeric_limits<double>::infinity();
    report.b = 0.0;
    for (size_t i = 0; i < layers.size(); ++i) {
        GramSystem g;
        try {
            g = assemble(basis, layers[i]);
        } catch (const std::exception& e) {
            throw NumericError("layer " + std::to_string(i) + " (n=" +
                               std::to_string(layers[i].n) + "): " + e.what());
        }
        FrameRow row;
        row.n = layers[i].n;
        row.size = layers[i].size();
        row.a_n = g.a_n;
        row.b_n = g.b_n;
        row.kappa = g.a_n > 0.0 ? g.b_n / g.a_n
                                : std::numeric_limits<double>::infinity();
        row.certified = g.a_n > floor;
        report.rows.push_back(row);
        report.a = std::min(report.a, g.a_n);
        report.b = std::max(report.b, g.b_n);
    }
    return report;
}

}  // namespace mzq
