// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cse/hash.hpp"
#include "cse/rng.hpp"

namespace cse {

namespace {

// S = A^{-1/2} W A^{-1/2}; exact because the mass matrix is diagonal.
Eigen::SparseMatrix<double> symmetrized_stiffness(const Operators& ops) {
    const Eigen::VectorXd inv_sqrt = ops.lumped_mass.cwiseSqrt().cwiseInverse();
    Eigen::SparseMatrix<double> s = ops.stiffness;
    for (int k = 0; k < s.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it)
            it.valueRef() *= inv_sqrt[it.row()] * inv_sqrt[it.col()];
    return s;
}

struct SymmetricPairs {
    Eigen::MatrixXd vectors; // K x M, orthonormal in the standard metric
    Eigen::VectorXd values;  // ascending
};

SymmetricPairs solve_dense(const Eigen::SparseMatrix<double>& s, int order) {
    const Eigen::MatrixXd dense(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenbasis: dense symmetric solve failed");
    return {solver.eigenvectors().leftCols(order), solver.eigenvalues().head(order)};
}

// Shift-inverted subspace iteration with Rayleigh-Ritz extraction. The block
// covers eigenvalue multiplicities natively, which matters for symmetric
// shapes (sphere spectra carry clusters of size 2l+1).
SymmetricPairs solve_shift_invert(const Eigen::SparseMatrix<double>& s, int order) {
    const Eigen::Index n = s.rows();
    const Eigen::Index block = std::min<Eigen::Index>(n, order + std::max(16, order / 2));
    const double mean_diag = s.diagonal().sum() / static_cast<double>(n);
    const double shift = std::max(1e-6 * mean_diag, 1e-300);

    Eigen::SparseMatrix<double> shifted = s;
    for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += shift;
    shifted.makeCompressed();
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
    if (factor.info() != Eigen::Success)
        throw std::runtime_error("eigenbasis: LDLT factorization of shifted operator failed");

    Rng rng(0x5eedba515eedba51ULL); // fixed: the solver must be reproducible
    Eigen::MatrixXd basis(n, block);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < block; ++j) basis(i, j) = rng.normal();

    const int max_iterations = 400;
    Eigen::MatrixXd ritz_vectors;
    Eigen::VectorXd ritz_values;
    for (int it = 0; it < max_iterations; ++it) {
        // Power step on (S + shift I)^{-1}, re-orthonormalized.
        basis = factor.solve(basis);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
        basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);

        // Rayleigh-Ritz in the original operator.
        const Eigen::MatrixXd s_basis = s * basis;
        const Eigen::MatrixXd projected = basis.transpose() * s_basis;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(
            0.5 * (projected + projected.transpose()));
        ritz_values = small.eigenvalues();
        ritz_vectors = basis * small.eigenvectors();

        const Eigen::MatrixXd residual =
            s_basis * small.eigenvectors() - ritz_vectors * ritz_values.asDiagonal();
        const double scale = std::max(std::abs(ritz_values[order - 1]), shift);
        bool converged = true;
        for (int i = 0; i < order && converged; ++i)
            converged = residual.col(i).norm() <= 1e-7 * scale;
        if (converged)
            return {ritz_vectors.leftCols(order), ritz_values.head(order)};

        basis = ritz_vectors;
    }
    throw std::runtime_error("eigenbasis: shift-invert iteration did not converge within " +
                             std::to_string(max_iterations) + " iterations");
}

void fix_column_signs(Eigen::MatrixXd& u) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        Eigen::Index at = 0;
        u.col(j).cwiseAbs().maxCoeff(&at);
        if (u(at, j) < 0.0) u.col(j) = -u.col(j);
    }
}

// Deterministic order inside numerically tied eigenvalue clusters: compare
// the sign-fixed columns entrywise.
void order_tied_columns(Eigen::MatrixXd& u, Eigen::VectorXd& values) {
    const Eigen::Index m = values.size();
    std::vector<Eigen::Index> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    auto tied = [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(values[a] - values[b]) <=
               1e-10 * (1.0 + std::abs(values[a]) + std::abs(values[b]));
    };
    std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (!tied(a, b)) return values[a] < values[b];
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            if (u(r, a) == u(r, b)) continue;
            return u(r, a) < u(r, b);
        }
        return false;
    });
    Eigen::MatrixXd u_sorted(u.rows(), m);
    Eigen::VectorXd v_sorted(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        u_sorted.col(j) = u.col(perm[j]);
        v_sorted[j] = values[perm[j]];
    }
    u = std::move(u_sorted);
    values = std::move(v_sorted);
}

std::string basis_identity(const std::string& mesh_hash, const Eigen::MatrixXd& u,
                           const Eigen::VectorXd& values) {
    Hasher h;
    h.str("basis");
    h.str(mesh_hash);
    h.u64(static_cast<std::uint64_t>(u.rows()));
    h.u64(static_cast<std::uint64_t>(u.cols()));
    for (Eigen::Index i = 0; i < values.size(); ++i) h.f64(values[i]);
    for (Eigen::Index j = 0; j < u.cols(); ++j)
        for (Eigen::Index i = 0; i < u.rows(); ++i) h.f64(u(i, j));
    return h.hex();
}

} // namespace

SpectralBasis eigenbasis(const Mesh& mesh, const Operators& ops, int order, EigenMethod method) {
    const Eigen::Index K = mesh.vertex_count();
    if (order < 1 || order > K)
        throw std::invalid_argument("eigenbasis: order " + std::to_string(order) +
                                    " out of range [1, " + std::to_string(K) + "]");

    if (method == EigenMethod::Auto)
        method = K <= kDenseSolveLimit ? EigenMethod::Dense : EigenMethod::ShiftInvert;

    const Eigen::SparseMatrix<double> s = symmetrized_stiffness(ops);
    SymmetricPairs pairs =
        method == EigenMethod::Dense ? solve_dense(s, order) : solve_shift_invert(s, order);

    // Back to the generalized problem: U = A^{-1/2} Y keeps U' A U = I.
    const Eigen::VectorXd inv_sqrt = ops.lumped_mass.cwiseSqrt().cwiseInverse();
    SpectralBasis basis;
    basis.modes = inv_sqrt.asDiagonal() * pairs.vectors;
    basis.eigenvalues = pairs.values.cwiseMax(0.0); // clamp -1e-14 roundoff at the kernel
    basis.lumped_mass = ops.lumped_mass;

    fix_column_signs(basis.modes);
    order_tied_columns(basis.modes, basis.eigenvalues);

    basis.mesh_hash = mesh_content_hash(mesh);
    basis.id = basis_identity(basis.mesh_hash, basis.modes, basis.eigenvalues);
    return basis;
}

Eigen::VectorXd analyze(const SpectralBasis& basis, const Eigen::VectorXd& values) {
    return basis.modes.transpose() * (basis.lumped_mass.asDiagonal() * values);
}

Eigen::MatrixXd analyze(const SpectralBasis& basis, const Eigen::MatrixXd& values) {
    return basis.modes.transpose() * (basis.lumped_mass.asDiagonal() * values);
}

Eigen::VectorXd synthesize(const SpectralBasis& basis, const Eigen::VectorXd& coefficients) {
    return basis.modes * coefficients;
}

Eigen::MatrixXd synthesize(const SpectralBasis& basis, const Eigen::MatrixXd& coefficients) {
    return basis.modes * coefficients;
}

SpectralBasis truncated(const SpectralBasis& basis, int order) {
    if (order < 1 || order > basis.order())
        throw std::invalid_argument("truncated: order out of range");
    SpectralBasis out;
    out.modes = basis.modes.leftCols(order);
    out.eigenvalues = basis.eigenvalues.head(order);
    out.lumped_mass = basis.lumped_mass;
    out.mesh_hash = basis.mesh_hash;
    out.id = basis_identity(out.mesh_hash, out.modes, out.eigenvalues);
    return out;
}

} // namespace cse
