#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mzq/errors.hpp"
#include "mzq/gauss.hpp"
#include "mzq/gram.hpp"
#include "mzq/rng.hpp"
#include "support/oracles.hpp"

using namespace mzq;

namespace {

// Deterministic unit coefficient vectors for quadratic-form probes.
Eigen::VectorXcd probe_vector(int dim, int trial) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        double re = 2.0 * uniform01(99, trial, 2 * i) - 1.0;
        double im = 2.0 * uniform01(99, trial, 2 * i + 1) - 1.0;
        v(i) = cplx(re, im);
    }
    v.normalize();
    return v;
}

oracle::Mat phi_matrix(const Basis& basis, const Layer& layer) {
    int d = basis.dim(layer.n);
    oracle::Mat phi(layer.size(), oracle::Vec(d));
    for (int k = 0; k < layer.size(); ++k) {
        auto row = basis.eval_all(d, layer.nodes[k]);
        for (int j = 0; j < d; ++j) phi[k][j] = row[j];
    }
    return phi;
}

}  // namespace

TEST_CASE("counter generator is order-independent and uniform-ish") {
    CHECK(uniform01(7, 4, 2) == uniform01(7, 4, 2));
    CHECK(uniform01(7, 4, 2) != uniform01(7, 4, 3));
    CHECK(uniform01(7, 4, 2) != uniform01(8, 4, 2));
    double mean = 0.0;
    for (int k = 0; k < 10000; ++k) {
        double u = uniform01(1, 0, k);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    CHECK(mean / 10000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("uniform generator layouts") {
    Layer f1 = generate_uniform(Basis::fourier(), 4, 1.0);
    REQUIRE(f1.size() == 9);
    for (int k = 0; k < 9; ++k) {
        CHECK(f1.nodes[k] == doctest::Approx(-0.5 + k / 9.0));
        CHECK(f1.tau[k] == doctest::Approx(1.0 / 9.0));
    }
    CHECK(generate_uniform(Basis::fourier(), 4, 2.0).size() == 18);

    // Gauss nodes scaled to the probability measure.
    Layer l6 = generate_uniform(Basis::legendre(), 3, 1.5);
    REQUIRE(l6.size() == 6);
    GaussRule g = gauss_legendre(6);
    double total = 0.0;
    for (int k = 0; k < 6; ++k) {
        CHECK(l6.nodes[k] == doctest::Approx(g.x[k]).epsilon(1e-14));
        CHECK(l6.tau[k] == doctest::Approx(0.5 * g.w[k]).epsilon(1e-14));
        total += l6.tau[k];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

    Layer c5 = generate_uniform(Basis::chebyshev(), 2, 5.0 / 3.0);
    REQUIRE(c5.size() == 5);
    for (int k = 0; k < 5; ++k)
        CHECK(c5.nodes[k] ==
              doctest::Approx(std::cos(std::numbers::pi * (k + 1) / 5.0)));
}

TEST_CASE("jittered generator is deterministic and reduces to uniform") {
    Layer a = generate_jittered(Basis::fourier(), 16, 2.0, 0.25, 1);
    Layer b = generate_jittered(Basis::fourier(), 16, 2.0, 0.25, 1);
    CHECK(a.nodes == b.nodes);
    CHECK(a.tau == b.tau);

    Layer zero = generate_jittered(Basis::legendre(), 8, 2.0, 0.0, 5);
    Layer uni = generate_uniform(Basis::legendre(), 8, 2.0);
    for (int k = 0; k < uni.size(); ++k)
        CHECK(zero.nodes[k] == doctest::Approx(uni.nodes[k]).epsilon(1e-15));

    Layer c = generate_jittered(Basis::fourier(), 16, 2.0, 0.25, 2);
    CHECK(a.nodes != c.nodes);
    CHECK_THROWS_AS(generate_jittered(Basis::fourier(), 4, 2.0, 0.5, 1),
                    DomainError);
}

TEST_CASE("generated layers validate and keep ordering constraints") {
    for (Basis basis : {Basis::fourier(), Basis::chebyshev(), Basis::legendre()}) {
        CAPTURE(basis.name());
        for (int n : {4, 16}) {
            CHECK_NOTHROW(validate_layer(basis, generate_uniform(basis, n, 2.0)));
            CHECK_NOTHROW(
                validate_layer(basis, generate_jittered(basis, n, 2.0, 0.25, 7)));
            Layer r = generate_random(basis, n, 2.0, 7);
            CHECK_NOTHROW(validate_layer(basis, r));
            double total = 0.0;
            for (double t : r.tau) total += t;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("identity Gram on the critical uniform fourier layer") {
    for (int n : {2, 5, 16}) {
        Layer layer = generate_uniform(Basis::fourier(), n, 1.0);
        GramSystem g = assemble(Basis::fourier(), layer);
        int d = g.dim();
        CHECK((g.t - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <
              1e-13);
        CHECK(g.a_n == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(g.b_n == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("three-node layer gives the identity by direct summation") {
    Layer layer;
    layer.n = 1;
    layer.nodes = {0.0, 1.0 / 3.0, -1.0 / 3.0};
    layer.tau = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    GramSystem g = assemble(Basis::fourier(), layer);

    // Brute-force 3x3 sums of conj(phi_i) phi_j tau.
    Basis basis = Basis::fourier();
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += std::conj(basis.eval(i, layer.nodes[k])) *
                     basis.eval(j, layer.nodes[k]) * layer.tau[k];
            CHECK(std::abs(g.t(i - 1, j - 1) - s) < 1e-14);
            CHECK(std::abs(s - cplx(i == j ? 1.0 : 0.0)) < 1e-14);
        }
    }
    CHECK(g.a_n == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.b_n == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extreme eigenvalues match characteristic polynomial roots") {
    // chebyshev degree 2 on five jittered-angle nodes: a 3x3 eigenproblem
    // with simple eigenvalues, tractable for the scan-and-bisect oracle.
    Layer layer = generate_jittered(Basis::chebyshev(), 2, 5.0 / 3.0, 0.3, 11);
    GramSystem g = assemble(Basis::chebyshev(), layer);

    oracle::Mat t(3, oracle::Vec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = g.t(i, j);
    auto roots = oracle::poly_roots(oracle::char_poly(t), -0.5, g.b_n + 1.0);
    REQUIRE(!roots.empty());
    CHECK(g.a_n == doctest::Approx(roots.front()).epsilon(1e-9));
    CHECK(g.b_n == doctest::Approx(roots.back()).epsilon(1e-9));
}

TEST_CASE("quadratic form identity and spectrum sandwich") {
    for (Basis basis : {Basis::fourier(), Basis::legendre()}) {
        CAPTURE(basis.name());
        Layer layer = generate_jittered(basis, 6, 2.0, 0.25, 7);
        GramSystem g = assemble(basis, layer);
        int d = g.dim();
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXcd a = probe_vector(d, trial);
            double form = (a.adjoint() * (g.t * a))(0, 0).real();

            double sampled = 0.0;
            for (int k = 0; k < layer.size(); ++k) {
                auto vals = basis.eval_all(d, layer.nodes[k]);
                cplx p = 0.0;
                for (int j = 0; j < d; ++j) p += a(j) * vals[j];
                sampled += std::norm(p) * layer.tau[k];
            }
            CHECK(form == doctest::Approx(sampled).epsilon(1e-9));
            CHECK(form >= g.a_n - 1e-9);
            CHECK(form <= g.b_n + 1e-9);
        }
    }
}

TEST_CASE("constant function puts the weight sum inside the frame bounds") {
    for (Basis basis : {Basis::fourier(), Basis::chebyshev(), Basis::legendre()}) {
        Layer layer = generate_jittered(basis, 8, 2.0, 0.25, 3);
        GramSystem g = assemble(basis, layer);
        double total = 0.0;
        for (double t : layer.tau) total += t;
        CHECK(total >= g.a_n - 1e-12);
        CHECK(total <= g.b_n + 1e-12);
    }
}

TEST_CASE("assemble rejects underdetermined and invalid layers") {
    Layer short_layer;
    short_layer.n = 2;
    short_layer.nodes = {0.0, 0.25};
    short_layer.tau = {0.5, 0.5};
    CHECK_THROWS_AS(assemble(Basis::fourier(), short_layer),
                    UnderdeterminedLayerError);

    Layer outside;
    outside.n = 0;
    outside.nodes = {1.5};
    outside.tau = {1.0};
    CHECK_THROWS_AS(assemble(Basis::fourier(), outside), DomainError);

    Layer nonpositive;
    nonpositive.n = 0;
    nonpositive.nodes = {0.0};
    nonpositive.tau = {0.0};
    CHECK_THROWS_AS(assemble(Basis::fourier(), nonpositive), DomainError);

    Layer mismatched;
    mismatched.n = 0;
    mismatched.nodes = {0.0};
    mismatched.tau = {0.5, 0.5};
    CHECK_THROWS_AS(assemble(Basis::fourier(), mismatched), ShapeError);
}

TEST_CASE("frame report flags a rank-deficient layer") {
    Layer good;
    good.n = 1;
    good.nodes = {0.0, 1.0 / 3.0, -1.0 / 3.0};
    good.tau = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    Layer degenerate = good;
    degenerate.n = 1;
    degenerate.nodes = {0.0, 1.0 / 3.0, 1.0 / 3.0};  // duplicate kills rank

    std::vector<Layer> layers = {good, degenerate};
    FrameReport report = frame_report(Basis::fourier(), layers);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].certified);
    CHECK(!report.rows[1].certified);
    CHECK(report.rows[1].a_n < 1e-8);
    CHECK(!report.all_certified());
    CHECK(report.b >= report.rows[1].b_n - 1e-12);
}

TEST_CASE("frame report over uniform layers pins kappa to one") {
    std::vector<Layer> layers;
    for (int n = 2; n <= 64; n *= 2)
        layers.push_back(generate_uniform(Basis::fourier(), n, 1.0));
    FrameReport report = frame_report(Basis::fourier(), layers);
    CHECK(report.all_certified());
    CHECK(report.kappa() == doctest::Approx(1.0).epsilon(1e-9));
    for (const FrameRow& row : report.rows)
        CHECK(row.kappa == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("node files round-trip and drop zero weights with a warning") {
    std::vector<Layer> layers = {
        generate_jittered(Basis::fourier(), 2, 2.0, 0.25, 7),
        generate_jittered(Basis::fourier(), 4, 2.0, 0.25, 7)};
    std::stringstream file;
    write_node_file(file, layers);

    std::string first_line;
    std::getline(file, first_line);
    CHECK(first_line == "n,k,x,tau");
    file.seekg(0);

    auto loaded = read_node_file(file, Basis::fourier(), nullptr);
    REQUIRE(loaded.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(loaded[i].n == layers[i].n);
        CHECK(loaded[i].nodes == layers[i].nodes);  // 17 digits round-trip
        CHECK(loaded[i].tau == layers[i].tau);
    }

    std::stringstream with_zero;
    with_zero << "n,k,x,tau\n1,0,0,0.3333\n1,1,0.33,0\n1,2,-0.33,0.3333\n"
              << "1,3,0.11,0.3333\n";
    std::stringstream warnings;
    auto cleaned = read_node_file(with_zero, Basis::fourier(), &warnings);
    REQUIRE(cleaned.size() == 1);
    CHECK(cleaned[0].size() == 3);
    CHECK(warnings.str().find("zero-weight") != std::string::npos);
}

TEST_CASE("node file reader rejects malformed input") {
    std::stringstream bad_header("x,tau\n");
    CHECK_THROWS_AS(read_node_file(bad_header, Basis::fourier(), nullptr),
                    ConfigError);
    std::stringstream bad_row("n,k,x,tau\n1,0,oops,0.5\n");
    CHECK_THROWS_AS(read_node_file(bad_row, Basis::fourier(), nullptr),
                    ConfigError);
    std::stringstream split("n,k,x,tau\n1,0,0.1,0.5\n2,0,0.2,0.5\n1,1,0.3,0.5\n");
    CHECK_THROWS_AS(read_node_file(split, Basis::fourier(), nullptr),
                    ConfigError);
    // Underdetermined after validation: one node for degree 1.
    std::stringstream thin("n,k,x,tau\n1,0,0.1,1\n");
    CHECK_THROWS_AS(read_node_file(thin, Basis::fourier(), nullptr),
                    UnderdeterminedLayerError);
}
