// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "test_meshes.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cse/geodesics.hpp"
#include "cse/rng.hpp"

namespace cse::testing {

namespace {

Mesh from_lists(const std::vector<Eigen::Vector3d>& vertices,
                const std::vector<Eigen::Vector3i>& faces) {
    Eigen::MatrixX3d v(vertices.size(), 3);
    for (std::size_t i = 0; i < vertices.size(); ++i) v.row(i) = vertices[i];
    Eigen::MatrixX3i f(faces.size(), 3);
    for (std::size_t i = 0; i < faces.size(); ++i) f.row(i) = faces[i];
    return make_mesh(std::move(v), std::move(f));
}

// Smooth seeded scalar field with values in [-1, 1]: a few random plane
// waves, normalized by their worst-case sum.
struct SmoothField {
    std::vector<Eigen::Vector3d> directions;
    std::vector<double> phases;

    explicit SmoothField(std::uint64_t seed) {
        Rng rng(seed);
        for (int i = 0; i < 4; ++i) {
            Eigen::Vector3d d(rng.normal(), rng.normal(), rng.normal());
            directions.push_back(d.normalized() * (1.5 + rng.uniform()));
            phases.push_back(2.0 * M_PI * rng.uniform());
        }
    }

    double operator()(const Eigen::Vector3d& x) const {
        double v = 0.0;
        for (std::size_t i = 0; i < directions.size(); ++i)
            v += std::sin(directions[i].dot(x) + phases[i]);
        return v / static_cast<double>(directions.size());
    }
};

} // namespace

Mesh equilateral_triangle(double side) {
    return from_lists({{0, 0, 0}, {side, 0, 0}, {side / 2, side * std::sqrt(3.0) / 2, 0}},
                      {{0, 1, 2}});
}

Mesh unit_right_triangle() { return from_lists({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}); }

Mesh unit_path_triangle() {
    return from_lists({{-0.8, 0.6, 0}, {0, 0, 0}, {0.8, 0.6, 0}}, {{0, 1, 2}});
}

Mesh icosphere(int subdivisions, double radius) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> vertices = {
        {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
        {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : vertices) v.normalize();
    std::vector<Eigen::Vector3i> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const std::pair<int, int> key = std::minmax(a, b);
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            vertices.push_back(((vertices[a] + vertices[b]) * 0.5).normalized());
            const int idx = static_cast<int>(vertices.size()) - 1;
            midpoint[key] = idx;
            return idx;
        };
        std::vector<Eigen::Vector3i> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = mid(f[0], f[1]);
            const int bc = mid(f[1], f[2]);
            const int ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    for (auto& v : vertices) v *= radius;
    return from_lists(vertices, faces);
}

Mesh noisy_icosphere(int subdivisions, double amplitude, std::uint64_t seed) {
    Mesh base = icosphere(subdivisions, 1.0);
    const SmoothField field(seed);
    Eigen::MatrixX3d vertices = base.vertices;
    for (Eigen::Index v = 0; v < vertices.rows(); ++v)
        vertices.row(v) *= 1.0 + amplitude * field(vertices.row(v));
    return make_mesh(std::move(vertices), base.faces);
}

Mesh unit_grid(int n) {
    if (n < 2) throw std::invalid_argument("unit_grid: n must be >= 2");
    std::vector<Eigen::Vector3d> vertices;
    vertices.reserve(static_cast<std::size_t>(n) * n);
    const double h = 1.0 / (n - 1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) vertices.emplace_back(i * h, j * h, 0.0);
    std::vector<Eigen::Vector3i> faces;
    faces.reserve(static_cast<std::size_t>(n - 1) * (n - 1) * 2);
    auto at = [n](int i, int j) { return j * n + i; };
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    return from_lists(vertices, faces);
}

Mesh strip(int bottom_vertices) {
    if (bottom_vertices < 2) throw std::invalid_argument("strip: need >= 2 bottom vertices");
    std::vector<Eigen::Vector3d> vertices;
    for (int i = 0; i < bottom_vertices; ++i) vertices.emplace_back(i, 0.0, 0.0);
    for (int i = 0; i + 1 < bottom_vertices; ++i) vertices.emplace_back(i + 0.5, 1.0, 0.0);
    std::vector<Eigen::Vector3i> faces;
    const int top = bottom_vertices;
    for (int i = 0; i + 1 < bottom_vertices; ++i) faces.push_back({i, i + 1, top + i});
    for (int i = 0; i + 2 < bottom_vertices; ++i) faces.push_back({i + 1, top + i + 1, top + i});
    return from_lists(vertices, faces);
}

Mesh uv_blob(int nu, int nv, double amplitude, std::uint64_t seed) {
    if (nu < 3 || nv < 3) throw std::invalid_argument("uv_blob: need nu, nv >= 3");
    const SmoothField field(seed);
    std::vector<Eigen::Vector3d> vertices;
    vertices.emplace_back(0, 0, 1);
    for (int j = 1; j < nv; ++j) {
        const double theta = M_PI * j / nv;
        for (int i = 0; i < nu; ++i) {
            const double phi = 2.0 * M_PI * i / nu;
            vertices.emplace_back(std::sin(theta) * std::cos(phi),
                                  std::sin(theta) * std::sin(phi), std::cos(theta));
        }
    }
    vertices.emplace_back(0, 0, -1);
    if (amplitude != 0.0)
        for (auto& v : vertices) v *= 1.0 + amplitude * field(v);

    std::vector<Eigen::Vector3i> faces;
    auto ring = [nu](int j, int i) { return 1 + (j - 1) * nu + (i % nu); };
    const int south = static_cast<int>(vertices.size()) - 1;
    for (int i = 0; i < nu; ++i) faces.push_back({0, ring(1, i), ring(1, i + 1)});
    for (int j = 1; j + 1 < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            faces.push_back({ring(j, i), ring(j + 1, i), ring(j + 1, i + 1)});
            faces.push_back({ring(j, i), ring(j + 1, i + 1), ring(j, i + 1)});
        }
    for (int i = 0; i < nu; ++i) faces.push_back({south, ring(nv - 1, i + 1), ring(nv - 1, i)});
    return from_lists(vertices, faces);
}

Mesh permuted_copy(const Mesh& mesh, const std::vector<int>& perm) {
    const Eigen::Index k = mesh.vertex_count();
    if (static_cast<Eigen::Index>(perm.size()) != k)
        throw std::invalid_argument("permuted_copy: permutation length mismatch");
    std::vector<int> inverse(perm.size());
    for (int i = 0; i < k; ++i) inverse[perm[i]] = i;
    Eigen::MatrixX3d vertices(k, 3);
    for (Eigen::Index i = 0; i < k; ++i) vertices.row(i) = mesh.vertices.row(perm[i]);
    Eigen::MatrixX3i faces(mesh.face_count(), 3);
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f)
        for (int c = 0; c < 3; ++c) faces(f, c) = inverse[mesh.faces(f, c)];
    return make_mesh(std::move(vertices), std::move(faces));
}

std::vector<int> random_permutation(int count, std::uint64_t seed) {
    std::vector<int> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (int i = count - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.uniform_index(static_cast<std::uint64_t>(i) + 1)]);
    return perm;
}

double all_pairs_graph_diameter(const Mesh& mesh) {
    const EdgeGraph graph = edge_adjacency(mesh);
    double diameter = 0.0;
    for (Eigen::Index v = 0; v < mesh.vertex_count(); ++v)
        diameter = std::max(diameter, dijkstra(graph, static_cast<int>(v)).distances.maxCoeff());
    return diameter;
}

} // namespace cse::testing
