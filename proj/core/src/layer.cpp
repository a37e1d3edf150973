#include "mzq/layer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "mzq/errors.hpp"
#include "mzq/gauss.hpp"
#include "mzq/rng.hpp"

namespace mzq {

namespace {

int layer_size(const Basis& basis, int n, double oversampling) {
    if (n < 0) throw DomainError("degree must be non-negative");
    if (!(oversampling >= 1.0)) throw DomainError("oversampling must be >= 1");
    return static_cast<int>(std::ceil(oversampling * basis.dim(n)));
}

// Wrap into (-1/2, 1/2].
double wrap_torus(double x) {
    double r = x - std::nearbyint(x);
    return r <= -0.5 ? r + 1.0 : r;
}

}  // namespace

void validate_layer(const Basis& basis, const Layer& layer) {
    if (layer.nodes.size() != layer.tau.size())
        throw ShapeError("layer: nodes and tau must have equal length");
    if (layer.size() < basis.dim(layer.n))
        throw UnderdeterminedLayerError(
            "layer for degree " + std::to_string(layer.n) + " has " +
            std::to_string(layer.size()) + " nodes, need at least " +
            std::to_string(basis.dim(layer.n)));
    for (int k = 0; k < layer.size(); ++k) {
        if (!basis.in_domain(layer.nodes[k]))
            throw DomainError("layer node " + std::to_string(k) +
                              " outside the " + basis.name() + " domain");
        if (!(layer.tau[k] > 0.0))
            throw DomainError("layer weight " + std::to_string(k) +
                              " must be strictly positive");
    }
}

Layer generate_uniform(const Basis& basis, int n, double oversampling) {
    int l = layer_size(basis, n, oversampling);
    Layer layer;
    layer.n = n;
    layer.nodes.resize(l);
    layer.tau.assign(l, 1.0 / l);
    switch (basis.family()) {
        case BasisFamily::fourier_torus:
            for (int k = 0; k < l; ++k)
                layer.nodes[k] = -0.5 + static_cast<double>(k) / l;
            break;
        case BasisFamily::chebyshev:
            for (int k = 0; k < l; ++k)
                layer.nodes[k] = std::cos(std::numbers::pi * (k + 1.0) / l);
            break;
        case BasisFamily::legendre: {
            GaussRule rule = gauss_legendre(l);
            layer.nodes = rule.x;
            for (int k = 0; k < l; ++k) layer.tau[k] = 0.5 * rule.w[k];
            break;
        }
    }
    return layer;
}

Layer generate_jittered(const Basis& basis, int n, double oversampling,
                        double jitter, std::uint64_t seed) {
    if (!(jitter >= 0.0) || jitter >= 0.5)
        throw DomainError("jitter must lie in [0, 1/2)");
    Layer layer = generate_uniform(basis, n, oversampling);
    int l = layer.size();
    switch (basis.family()) {
        case BasisFamily::fourier_torus: {
            double h = 1.0 / l;
            for (int k = 0; k < l; ++k) {
                double off = jitter * h * (2.0 * uniform01(seed, n, k) - 1.0);
                layer.nodes[k] = wrap_torus(layer.nodes[k] + off);
            }
            break;
        }
        case BasisFamily::chebyshev: {
            double h = std::numbers::pi / l;
            for (int k = 0; k < l; ++k) {
                double th = std::numbers::pi * (k + 1.0) / l;
                th += jitter * h * (2.0 * uniform01(seed, n, k) - 1.0);
                layer.nodes[k] = std::cos(th);
            }
            break;
        }
        case BasisFamily::legendre: {
            // Local spacing: distance to the nearest Gauss neighbor.
            std::vector<double> base = layer.nodes;
            for (int k = 0; k < l; ++k) {
                double gap = l == 1 ? 2.0
                                    : (k == 0 ? base[1] - base[0]
                                       : k == l - 1
                                           ? base[l - 1] - base[l - 2]
                                           : std::min(base[k] - base[k - 1],
                                                      base[k + 1] - base[k]));
                double off = jitter * gap * (2.0 * uniform01(seed, n, k) - 1.0);
                layer.nodes[k] = base[k] + off;
            }
            break;
        }
    }
    return layer;
}

Layer generate_random(const Basis& basis, int n, double oversampling,
                      std::uint64_t seed) {
    int l = layer_size(basis, n, oversampling);
    Layer layer;
    layer.n = n;
    layer.nodes.resize(l);
    layer.tau.resize(l);
    switch (basis.family()) {
        case BasisFamily::fourier_torus: {
            for (int k = 0; k < l; ++k)
                layer.nodes[k] = uniform01(seed, n, k) - 0.5;
            std::sort(layer.nodes.begin(), layer.nodes.end());
            for (int k = 0; k < l; ++k) {
                double next = k + 1 < l ? layer.nodes[k + 1] : layer.nodes[0] + 1.0;
                double prev = k > 0 ? layer.nodes[k - 1] : layer.nodes[l - 1] - 1.0;
                layer.tau[k] = 0.5 * (next - prev);
            }
            break;
        }
        case BasisFamily::chebyshev: {
            // Draw in the angle variable, where the measure is uniform.
            std::vector<double> th(l);
            for (int k = 0; k < l; ++k)
                th[k] = std::numbers::pi * uniform01(seed, n, k);
            std::sort(th.begin(), th.end(), std::greater<>());  // x ascending
            for (int k = 0; k < l; ++k) {
                double hi = k > 0 ? 0.5 * (th[k - 1] + th[k]) : std::numbers::pi;
                double lo = k + 1 < l ? 0.5 * (th[k] + th[k + 1]) : 0.0;
                layer.nodes[k] = std::cos(th[k]);
                layer.tau[k] = (hi - lo) / std::numbers::pi;
            }
            break;
        }
        case BasisFamily::legendre: {
            for (int k = 0; k < l; ++k)
                layer.nodes[k] = 2.0 * uniform01(seed, n, k) - 1.0;
            std::sort(layer.nodes.begin(), layer.nodes.end());
            for (int k = 0; k < l; ++k) {
                double hi = k + 1 < l ? 0.5 * (layer.nodes[k] + layer.nodes[k + 1])
                                      : 1.0;
                double lo = k > 0 ? 0.5 * (layer.nodes[k - 1] + layer.nodes[k])
                                  : -1.0;
                layer.tau[k] = 0.5 * (hi - lo);
            }
            break;
        }
    }
    return layer;
}

void write_node_file(std::ostream& os, std::span<const Layer> layers) {
    os << "n,k,x,tau\n";
    char buf[128];
    for (const Layer& layer : layers) {
        for (int k = 0; k < layer.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", layer.n, k,
                          layer.nodes[k], layer.tau[k]);
            os << buf;
        }
    }
}

void write_node_file(const std::string& path, std::span<const Layer> layers) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open node file for writing: " + path);
    write_node_file(os, layers);
}

std::vector<Layer> read_node_file(std::istream& is, const Basis& basis,
                                  std::ostream* warnings) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("node file: empty");
    if (line == "n,k,x,tau\r") line.pop_back();
    if (line != "n,k,x,tau")
        throw ConfigError("node file: expected header 'n,k,x,tau', got '" +
                          line + "'");

    std::vector<Layer> layers;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        int n = 0, k = 0;
        double x = 0, tau = 0;
        char extra = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf%c", &n, &k, &x, &tau,
                        &extra) < 4)
            throw ConfigError("node file: malformed row " + std::to_string(row));
        if (tau == 0.0) {
            if (warnings)
                *warnings << "node file row " << row
                          << ": dropping zero-weight node\n";
            continue;
        }
        if (layers.empty() || layers.back().n != n) {
            for (const Layer& done : layers)
                if (done.n == n)
                    throw ConfigError("node file: layer " + std::to_string(n) +
                                      " is not contiguous");
            layers.push_back(Layer{n, {}, {}});
        }
        layers.back().nodes.push_back(x);
        layers.back().tau.push_back(tau);
    }
    for (const Layer& layer : layers) validate_layer(basis, layer);
    return layers;
}

std::vector<Layer> read_node_file(const std::string& path, const Basis& basis,
                                  std::ostream* warnings) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open node file: " + path);
    return read_node_file(is, basis, warnings);
}

}  // namespace mzq
