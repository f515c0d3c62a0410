// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/mesh.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cse/hash.hpp"

namespace cse {

namespace {

std::string face_str(Eigen::Index f) { return "face " + std::to_string(f); }

} // namespace

int edge_graph_components(const Eigen::MatrixX3i& faces, Eigen::Index vertex_count) {
    std::vector<int> parent(static_cast<std::size_t>(vertex_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (Eigen::Index f = 0; f < faces.rows(); ++f) {
        const int a = find(faces(f, 0));
        const int b = find(faces(f, 1));
        const int c = find(faces(f, 2));
        parent[b] = a;
        parent[find(c)] = find(a);
    }
    int components = 0;
    for (Eigen::Index v = 0; v < vertex_count; ++v)
        if (find(static_cast<int>(v)) == v) ++components;
    return components;
}

Mesh make_mesh(Eigen::MatrixX3d vertices, Eigen::MatrixX3i faces) {
    if (vertices.rows() == 0 || faces.rows() == 0)
        throw std::runtime_error("empty mesh: " + std::to_string(vertices.rows()) +
                                 " vertices, " + std::to_string(faces.rows()) + " faces");

    const Eigen::Index K = vertices.rows();
    if (!vertices.allFinite()) throw std::runtime_error("non-finite vertex coordinate");

    Mesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.faces = std::move(faces);
    mesh.face_areas.resize(mesh.faces.rows());
    mesh.face_normals.resize(mesh.faces.rows(), 3);

    for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f) {
        const int i0 = mesh.faces(f, 0), i1 = mesh.faces(f, 1), i2 = mesh.faces(f, 2);
        for (int c : {i0, i1, i2})
            if (c < 0 || c >= K)
                throw std::runtime_error(face_str(f) + ": vertex index " + std::to_string(c) +
                                         " out of range [0, " + std::to_string(K) + ")");
        if (i0 == i1 || i1 == i2 || i0 == i2)
            throw std::runtime_error(face_str(f) + ": repeated vertex index");

        const Eigen::Vector3d x0 = mesh.vertices.row(i0);
        const Eigen::Vector3d x1 = mesh.vertices.row(i1);
        const Eigen::Vector3d x2 = mesh.vertices.row(i2);
        // Edge vectors opposite each corner: b1 = X3-X2, b2 = X1-X3, b3 = X2-X1.
        const Eigen::Vector3d b1 = x2 - x1;
        const Eigen::Vector3d b2 = x0 - x2;
        const Eigen::Vector3d cross = b1.cross(b2);
        const double area = 0.5 * cross.norm();
        if (!(area > kDegenerateFaceArea))
            throw std::runtime_error(face_str(f) + ": degenerate (area " +
                                     std::to_string(area) + ")");
        mesh.face_areas[f] = area;
        mesh.face_normals.row(f) = cross / (2.0 * area);
    }

    const int components = edge_graph_components(mesh.faces, K);
    if (components != 1)
        throw std::runtime_error("disconnected mesh: " + std::to_string(components) +
                                 " components");
    return mesh;
}

std::vector<std::vector<std::pair<int, double>>> edge_adjacency(const Mesh& mesh) {
    std::vector<std::vector<std::pair<int, double>>> adj(mesh.vertex_count());
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
        for (int e = 0; e < 3; ++e) {
            const int u = mesh.faces(f, e);
            const int v = mesh.faces(f, (e + 1) % 3);
            const double len = (mesh.vertices.row(u) - mesh.vertices.row(v)).norm();
            adj[u].emplace_back(v, len);
            adj[v].emplace_back(u, len);
        }
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end(),
                               [](const auto& a, const auto& b) { return a.first == b.first; }),
                   nbrs.end());
    }
    return adj;
}

double total_area(const Mesh& mesh) { return mesh.face_areas.sum(); }

std::string mesh_content_hash(const Mesh& mesh) {
    Hasher h;
    h.str("mesh");
    h.u64(static_cast<std::uint64_t>(mesh.vertex_count()));
    h.u64(static_cast<std::uint64_t>(mesh.face_count()));
    for (Eigen::Index v = 0; v < mesh.vertex_count(); ++v)
        for (int c = 0; c < 3; ++c)
            h.i64(std::llround(mesh.vertices(v, c) / 1e-6));
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f)
        for (int c = 0; c < 3; ++c)
            h.i64(mesh.faces(f, c));
    return h.hex();
}

Mesh scaled_copy(const Mesh& mesh, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    return make_mesh(mesh.vertices * scale, mesh.faces);
}

void validate_correspondences(const CorrespondenceSet& set, const Mesh& src, const Mesh& dst) {
    const std::string src_hash = mesh_content_hash(src);
    const std::string dst_hash = mesh_content_hash(dst);
    if (set.src_mesh != src_hash)
        throw std::runtime_error("correspondences bound to src mesh " + set.src_mesh +
                                 ", expected " + src_hash);
    if (set.dst_mesh != dst_hash)
        throw std::runtime_error("correspondences bound to dst mesh " + set.dst_mesh +
                                 ", expected " + dst_hash);
    std::vector<bool> seen(static_cast<std::size_t>(src.vertex_count()), false);
    for (const auto& [a, b] : set.pairs) {
        if (a < 0 || a >= src.vertex_count())
            throw std::runtime_error("correspondence src vertex " + std::to_string(a) +
                                     " out of range");
        if (b < 0 || b >= dst.vertex_count())
            throw std::runtime_error("correspondence dst vertex " + std::to_string(b) +
                                     " out of range");
        if (seen[a])
            throw std::runtime_error("duplicate correspondence src vertex " + std::to_string(a));
        seen[a] = true;
    }
}

SymmetryMap symmetry_from_pairs(const std::vector<std::pair<int, int>>& pairs,
                                Eigen::Index vertex_count) {
    SymmetryMap sym;
    sym.pairing.resize(vertex_count);
    for (Eigen::Index v = 0; v < vertex_count; ++v) sym.pairing[v] = static_cast<int>(v);
    for (const auto& [a, b] : pairs) {
        if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count)
            throw std::runtime_error("symmetry pair (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ") out of range");
        const bool a_set = sym.pairing[a] != a && sym.pairing[a] != b;
        const bool b_set = sym.pairing[b] != b && sym.pairing[b] != a;
        if (a_set || b_set)
            throw std::runtime_error("conflicting symmetry pair (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ")");
        sym.pairing[a] = b;
        sym.pairing[b] = a;
    }
    return sym;
}

} // namespace cse
