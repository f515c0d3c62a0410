// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/operators.hpp"

#include <stdexcept>
#include <vector>

namespace cse {

namespace {

Eigen::Matrix3d edge_matrix(const Mesh& mesh, Eigen::Index f) {
    const Eigen::Vector3d x0 = mesh.vertices.row(mesh.faces(f, 0));
    const Eigen::Vector3d x1 = mesh.vertices.row(mesh.faces(f, 1));
    const Eigen::Vector3d x2 = mesh.vertices.row(mesh.faces(f, 2));
    Eigen::Matrix3d b;
    b.col(0) = x2 - x1;
    b.col(1) = x0 - x2;
    b.col(2) = x1 - x0;
    return b;
}

Eigen::Matrix3d hat(const Eigen::Vector3d& a) {
    Eigen::Matrix3d m;
    m << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
    return m;
}

} // namespace

Eigen::Matrix3d face_gradient(const Mesh& mesh, Eigen::Index face) {
    if (face < 0 || face >= mesh.face_count())
        throw std::invalid_argument("face_gradient: face index out of range");
    const Eigen::Matrix3d b = edge_matrix(mesh, face);
    const Eigen::Vector3d normal = mesh.face_normals.row(face);
    return hat(normal) * b / (2.0 * mesh.face_areas[face]);
}

Operators build_operators(const Mesh& mesh) {
    const Eigen::Index K = mesh.vertex_count();
    const Eigen::Index F = mesh.face_count();

    Operators ops;
    ops.lumped_mass = Eigen::VectorXd::Zero(K);

    // Per-face 3x3 blocks are computed first (parallelizable, no shared
    // state), then scattered in face order so duplicate accumulation is
    // reproducible.
    std::vector<Eigen::Matrix3d> local_stiffness(F);
    std::vector<Eigen::Matrix3d> local_gradient(F);
    for (Eigen::Index f = 0; f < F; ++f) {
        const Eigen::Matrix3d b = edge_matrix(mesh, f);
        local_stiffness[f] = b.transpose() * b / (4.0 * mesh.face_areas[f]);
        const Eigen::Vector3d normal = mesh.face_normals.row(f);
        local_gradient[f] = hat(normal) * b / (2.0 * mesh.face_areas[f]);
    }

    std::vector<Eigen::Triplet<double>> w_trip, g_trip, d_trip;
    w_trip.reserve(static_cast<std::size_t>(9 * F));
    g_trip.reserve(static_cast<std::size_t>(9 * F));
    d_trip.reserve(static_cast<std::size_t>(9 * F));

    for (Eigen::Index f = 0; f < F; ++f) {
        const double area = mesh.face_areas[f];
        for (int i = 0; i < 3; ++i) {
            const int vi = mesh.faces(f, i);
            ops.lumped_mass[vi] += area / 3.0;
            for (int j = 0; j < 3; ++j) {
                const int vj = mesh.faces(f, j);
                w_trip.emplace_back(vi, vj, local_stiffness[f](i, j));
                g_trip.emplace_back(static_cast<int>(3 * f + j), vi, local_gradient[f](j, i));
                // divergence = -G' (A_f (x) I_3)
                d_trip.emplace_back(vi, static_cast<int>(3 * f + j),
                                    -local_gradient[f](j, i) * area);
            }
        }
    }

    ops.stiffness.resize(K, K);
    ops.stiffness.setFromTriplets(w_trip.begin(), w_trip.end());
    ops.gradient.resize(3 * F, K);
    ops.gradient.setFromTriplets(g_trip.begin(), g_trip.end());
    ops.divergence.resize(K, 3 * F);
    ops.divergence.setFromTriplets(d_trip.begin(), d_trip.end());
    return ops;
}

} // namespace cse
