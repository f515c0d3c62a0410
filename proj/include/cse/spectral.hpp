// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <string>

#include "cse/operators.hpp"

namespace cse {

// Truncated eigenbasis of the generalized problem W U = A U diag(Lambda):
// the Fourier basis of the surface. Columns are ordered by ascending
// eigenvalue and are orthonormal in the mass metric, U' A U = I.
struct SpectralBasis {
    Eigen::MatrixXd modes;        // U, K x M
    Eigen::VectorXd eigenvalues;  // Lambda, M, nonnegative nondecreasing
    Eigen::VectorXd lumped_mass;  // A, K (shared with Operators)
    std::string mesh_hash;
    std::string id;

    Eigen::Index vertex_count() const { return modes.rows(); }
    int order() const { return static_cast<int>(modes.cols()); }
};

enum class EigenMethod {
    Auto,        // dense up to kDenseSolveLimit vertices, iterative above
    Dense,       // full symmetric solve after A^{-1/2} symmetrization
    ShiftInvert, // subspace iteration on (S - sigma I)^{-1}, sparse LDLT
};

// Dense solves take O(K^3); past a couple thousand vertices the iterative
// path is much faster for the truncations used here (M <= 1024).
constexpr Eigen::Index kDenseSolveLimit = 2048;

// The M smallest generalized eigenpairs of (W, diag(A)). The diagonal mass
// makes the A^{-1/2} symmetrization exact. Signs are fixed by making the
// largest-magnitude entry of each column positive; within an eigenvalue
// cluster, columns are ordered by the sign-fixed first differing entry.
// Throws on M out of range or iterative non-convergence (cap reported).
SpectralBasis eigenbasis(const Mesh& mesh, const Operators& ops, int order,
                         EigenMethod method = EigenMethod::Auto);

// Fourier analysis r^ = U' A r: coefficients of the A-orthogonal projection.
Eigen::VectorXd analyze(const SpectralBasis& basis, const Eigen::VectorXd& values);
Eigen::MatrixXd analyze(const SpectralBasis& basis, const Eigen::MatrixXd& values);

// Synthesis r = U r^.
Eigen::VectorXd synthesize(const SpectralBasis& basis, const Eigen::VectorXd& coefficients);
Eigen::MatrixXd synthesize(const SpectralBasis& basis, const Eigen::MatrixXd& coefficients);

// Basis with the leading M columns of an existing one (shared mesh hash,
// fresh id). Truncation order must not exceed the source order.
SpectralBasis truncated(const SpectralBasis& basis, int order);

} // namespace cse
