// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace cse {

// Triangle mesh discretizing a canonical surface. Immutable after
// construction through make_mesh, which validates every invariant
// (index bounds, non-degenerate faces, connected edge graph) and derives
// per-face areas and unit normals from the vertex data.
struct Mesh {
    Eigen::MatrixX3d vertices;     // K x 3
    Eigen::MatrixX3i faces;        // F x 3, oriented consistently with face_normals
    Eigen::VectorXd face_areas;    // F, each > 0
    Eigen::MatrixX3d face_normals; // F x 3, unit rows

    Eigen::Index vertex_count() const { return vertices.rows(); }
    Eigen::Index face_count() const { return faces.rows(); }
};

constexpr double kDegenerateFaceArea = 1e-12;

// Validates and finishes a mesh; throws std::runtime_error describing the
// first violated invariant (bad index, degenerate face, disconnected graph
// with component count, empty mesh).
Mesh make_mesh(Eigen::MatrixX3d vertices, Eigen::MatrixX3i faces);

// Number of connected components of the edge graph.
int edge_graph_components(const Eigen::MatrixX3i& faces, Eigen::Index vertex_count);

// Undirected vertex adjacency with Euclidean edge lengths, deduplicated and
// sorted by neighbor index.
std::vector<std::vector<std::pair<int, double>>> edge_adjacency(const Mesh& mesh);

double total_area(const Mesh& mesh);

// Content identity: FNV-1a over vertex coordinates quantized to a 1e-6 grid
// plus the face list. Stable across runs; used to bind bases, embeddings and
// annotation files to the mesh they were computed from.
std::string mesh_content_hash(const Mesh& mesh);

// Uniformly scaled copy (areas scale by s^2, normals unchanged).
Mesh scaled_copy(const Mesh& mesh, double scale);

// Involution over vertex indices pairing each vertex with its bilateral
// mirror; fixed points map to themselves.
struct SymmetryMap {
    Eigen::VectorXi pairing;
};

// Builds a SymmetryMap from (k, k') orbit pairs; unlisted vertices are fixed
// points. Throws on out-of-range indices or conflicting pairs.
SymmetryMap symmetry_from_pairs(const std::vector<std::pair<int, int>>& pairs,
                                Eigen::Index vertex_count);

// Sparse manual correspondences between two meshes, bound by content hash.
struct CorrespondenceSet {
    std::string src_mesh;
    std::string dst_mesh;
    std::vector<std::pair<int, int>> pairs; // (src vertex, dst vertex)
};

// Checks hash binding, index ranges and src-vertex uniqueness; throws on the
// first violation.
void validate_correspondences(const CorrespondenceSet& set, const Mesh& src, const Mesh& dst);

} // namespace cse
