// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "cse/mesh.hpp"

namespace cse {

// First-order differential operators of a triangle mesh.
//
//   stiffness   W (K x K): cotangent stiffness, symmetric PSD, W 1 = 0.
//               The Dirichlet energy of a vertex function r is r' W r.
//   lumped_mass A (K): a third of the area of the faces incident on each
//               vertex; sums to the total surface area.
//   gradient    G (3|F| x K): per-face constant gradient, rows grouped in
//               xyz triples per face.
//   divergence  D (K x 3|F|): adjoint of G under the face-area metric,
//               D = -G' (A_f (x) I_3), so r' (-D) g = (G r)' diag(A_f (x) I_3) g.
struct Operators {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd lumped_mass;
    Eigen::SparseMatrix<double> gradient;
    Eigen::SparseMatrix<double> divergence;
};

// Gradient of a linear function on one face: G_f = (1/2A_f) N^ B_f with
// B_f = [b1 b2 b3] the edge vectors opposite each corner and N^ the
// cross-product matrix of the unit normal. Satisfies the edge test
// <b1, G_f r> = r3 - r2.
Eigen::Matrix3d face_gradient(const Mesh& mesh, Eigen::Index face);

Operators build_operators(const Mesh& mesh);

} // namespace cse
