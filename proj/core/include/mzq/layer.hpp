#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mzq/basis.hpp"

namespace mzq {

// One slice of a sampling family: the nodes and weights used for degree n.
struct Layer {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> tau;

    int size() const { return static_cast<int>(nodes.size()); }
};

// Throws unless: sizes match, L >= dim P_n, nodes in the domain, all tau > 0.
void validate_layer(const Basis& basis, const Layer& layer);

// Reference constructions. L = ceil(oversampling * dim P_n) nodes.
//   fourier:   equispaced x_k = -1/2 + k/L, tau = 1/L.
//   chebyshev: x_k = cos(theta_k) with theta_k equispaced in (0, pi], tau = 1/L.
//   legendre:  L-point Gauss nodes, weights normalized to sum 1.
Layer generate_uniform(const Basis& basis, int n, double oversampling);

// Uniform layout with each node displaced by an independent offset of
// magnitude <= jitter * (local spacing); weights unchanged. Displacement in
// the natural parameter (angle for chebyshev). Deterministic in (seed, n, k).
Layer generate_jittered(const Basis& basis, int n, double oversampling,
                        double jitter, std::uint64_t seed);

// L independent draws from the basis measure, sorted, weighted by the
// measure of the midpoint cell around each node (cyclic on the torus).
Layer generate_random(const Basis& basis, int n, double oversampling,
                      std::uint64_t seed);

// Text node files: header "n,k,x,tau", one row per node, layers grouped by n.
void write_node_file(std::ostream& os, std::span<const Layer> layers);
void write_node_file(const std::string& path, std::span<const Layer> layers);

// Reads and validates. Zero-weight nodes are dropped; each drop appends one
// line to `warnings` when given.
std::vector<Layer> read_node_file(std::istream& is, const Basis& basis,
                                  std::ostream* warnings = nullptr);
std::vector<Layer> read_node_file(const std::string& path, const Basis& basis,
                                  std::ostream* warnings = nullptr);

}  // namespace mzq
