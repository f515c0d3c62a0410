// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <limits>
#include <vector>

#include "cse/mesh.hpp"

namespace cse {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Shortest-path distances over the edge graph, Euclidean edge weights.
// Vertices beyond truncation_radius stay at +inf (unreached).
struct DistanceField {
    int source = 0;
    Eigen::VectorXd distances;
    double truncation_radius = kUnbounded;

    bool reached(Eigen::Index v) const { return std::isfinite(distances[v]); }
};

// Geodesic proximity kernel around a center vertex: normalized nonnegative
// weights over all vertices, maximal at the center.
struct SoftLabelField {
    int center = 0;
    double sigma = 0.0;
    Eigen::VectorXd weights;
};

// Exponent shape for the proximity kernel. The default keeps the distance
// linear inside the exponent; Squared uses the squared distance instead.
enum class KernelKind { Linear, Squared };

// Precomputed adjacency for repeated traversals of one mesh.
using EdgeGraph = std::vector<std::vector<std::pair<int, double>>>;

DistanceField dijkstra(const Mesh& mesh, int source, double radius = kUnbounded);
DistanceField dijkstra(const EdgeGraph& graph, int source, double radius = kUnbounded);

// Independent runs over many sources, executed in parallel with results
// ordered by position in `sources` (identical for any thread count).
std::vector<DistanceField> dijkstra_batch(const Mesh& mesh, const std::vector<int>& sources,
                                          double radius = kUnbounded);

// weights_q = exp(-d(q, k) / (2 sigma^2)) / Z with Z over all K vertices;
// the search is truncated at radius 20 sigma^2 and weights beyond it are
// zero before normalizing. Squared kernel uses d^2 with radius sqrt(20) sigma.
SoftLabelField soft_labels(const Mesh& mesh, int center, double sigma,
                           KernelKind kind = KernelKind::Linear);

std::vector<SoftLabelField> soft_labels_batch(const Mesh& mesh, const std::vector<int>& centers,
                                              double sigma, KernelKind kind = KernelKind::Linear);

// Approximate geodesic diameter from farthest-point-sampled sources
// (deterministic, seeded at vertex 0). Upper-bounded by the true edge-graph
// diameter it samples; 64 seeds are ample at the mesh sizes used here.
double geodesic_diameter(const Mesh& mesh, int sample_count = 64);

// Uniformly rescales the mesh so its approximate geodesic diameter equals
// target_diameter; returns the rescaled mesh and the applied scale.
std::pair<Mesh, double> normalize_mesh(const Mesh& mesh, double target_diameter = 2.5);

} // namespace cse
