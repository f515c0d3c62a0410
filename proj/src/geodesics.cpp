// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/geodesics.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "cse/parallel.hpp"

namespace cse {

DistanceField dijkstra(const EdgeGraph& graph, int source, double radius) {
    const auto K = static_cast<Eigen::Index>(graph.size());
    if (source < 0 || source >= K)
        throw std::invalid_argument("dijkstra: source " + std::to_string(source) +
                                    " out of range [0, " + std::to_string(K) + ")");
    if (!(radius > 0.0))
        throw std::invalid_argument("dijkstra: radius must be positive");

    DistanceField field;
    field.source = source;
    field.truncation_radius = radius;
    field.distances = Eigen::VectorXd::Constant(K, kUnbounded);
    field.distances[source] = 0.0;

    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > field.distances[u]) continue;
        for (const auto& [v, len] : graph[u]) {
            const double cand = d + len;
            if (cand > radius) continue;
            if (cand < field.distances[v]) {
                field.distances[v] = cand;
                heap.emplace(cand, v);
            }
        }
    }
    return field;
}

DistanceField dijkstra(const Mesh& mesh, int source, double radius) {
    return dijkstra(edge_adjacency(mesh), source, radius);
}

std::vector<DistanceField> dijkstra_batch(const Mesh& mesh, const std::vector<int>& sources,
                                          double radius) {
    const EdgeGraph graph = edge_adjacency(mesh);
    std::vector<DistanceField> fields(sources.size());
    parallel_for_blocks(sources.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            fields[i] = dijkstra(graph, sources[i], radius);
    });
    return fields;
}

namespace {

SoftLabelField soft_labels_from_graph(const EdgeGraph& graph, int center, double sigma,
                                      KernelKind kind) {
    if (!(sigma > 0.0)) throw std::invalid_argument("soft_labels: sigma must be positive");

    // Truncate where the unnormalized weight falls to exp(-10).
    const double radius =
        kind == KernelKind::Linear ? 20.0 * sigma * sigma : std::sqrt(20.0) * sigma;
    const DistanceField field = dijkstra(graph, center, radius);

    SoftLabelField out;
    out.center = center;
    out.sigma = sigma;
    out.weights = Eigen::VectorXd::Zero(field.distances.size());
    const double inv = 1.0 / (2.0 * sigma * sigma);
    double z = 0.0;
    for (Eigen::Index q = 0; q < field.distances.size(); ++q) {
        if (!field.reached(q)) continue;
        const double d = field.distances[q];
        const double w = std::exp(-(kind == KernelKind::Linear ? d : d * d) * inv);
        out.weights[q] = w;
        z += w;
    }
    out.weights /= z;
    return out;
}

} // namespace

SoftLabelField soft_labels(const Mesh& mesh, int center, double sigma, KernelKind kind) {
    return soft_labels_from_graph(edge_adjacency(mesh), center, sigma, kind);
}

std::vector<SoftLabelField> soft_labels_batch(const Mesh& mesh, const std::vector<int>& centers,
                                              double sigma, KernelKind kind) {
    const EdgeGraph graph = edge_adjacency(mesh);
    std::vector<SoftLabelField> fields(centers.size());
    parallel_for_blocks(centers.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            fields[i] = soft_labels_from_graph(graph, centers[i], sigma, kind);
    });
    return fields;
}

double geodesic_diameter(const Mesh& mesh, int sample_count) {
    const EdgeGraph graph = edge_adjacency(mesh);
    const auto K = mesh.vertex_count();
    const int seeds = static_cast<int>(std::min<Eigen::Index>(sample_count, K));

    // Farthest-point sampling, then the diameter estimate is the largest
    // distance seen from any seed.
    Eigen::VectorXd to_set = Eigen::VectorXd::Constant(K, kUnbounded);
    Eigen::Index next = 0;
    double diameter = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const DistanceField field = dijkstra(graph, static_cast<int>(next), kUnbounded);
        diameter = std::max(diameter, field.distances.maxCoeff());
        to_set = to_set.cwiseMin(field.distances);
        to_set.maxCoeff(&next);
        if (to_set[next] == 0.0) break; // every vertex already a seed
    }
    return diameter;
}

std::pair<Mesh, double> normalize_mesh(const Mesh& mesh, double target_diameter) {
    if (!(target_diameter > 0.0))
        throw std::invalid_argument("normalize_mesh: target diameter must be positive");
    const double diameter = geodesic_diameter(mesh);
    const double scale = target_diameter / diameter;
    return {scaled_copy(mesh, scale), scale};
}

} // namespace cse
