// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <unordered_map>

#include "cse/functional_map.hpp"
#include "cse/geodesics.hpp"
#include "cse/spectral.hpp"

namespace cse {

// Continuous surface embedding in spectral form: per-vertex embeddings are
// E = U coefficients, with coefficients much smaller than E itself.
struct EmbeddingSet {
    Eigen::MatrixXd coefficients; // M x D
    std::string basis_id;

    int order() const { return static_cast<int>(coefficients.rows()); }
    int dimension() const { return static_cast<int>(coefficients.cols()); }
};

// Supervision reduced to (feature, vertex) rows; the stand-in for per-pixel
// network outputs paired with annotated mesh vertices.
struct PixelBatch {
    Eigen::MatrixXd features; // N x D
    Eigen::VectorXi labels;   // N, values in [0, K)

    Eigen::Index size() const { return labels.size(); }
};

// Soft-label fields per annotated vertex, bound to one mesh and one sigma.
struct SoftLabelBank {
    std::string mesh_hash;
    double sigma = 0.0;
    std::unordered_map<int, Eigen::VectorXd> fields; // vertex -> weights (length K)
};

SoftLabelBank make_soft_label_bank(const Mesh& mesh, const std::vector<int>& vertices,
                                   double sigma, KernelKind kind = KernelKind::Linear);

// E = U * coefficients.
Eigen::MatrixXd expand(const EmbeddingSet& embedding, const SpectralBasis& basis);

// Vertex posterior given per-vertex embeddings E and one pixel feature:
// softmax over scores s_k = -<e_k, phi>, max-subtracted; probabilities are
// clamped at 1e-300 before any log.
Eigen::VectorXd posterior(const Eigen::MatrixXd& embeddings, const Eigen::VectorXd& feature);

struct LossValue {
    double loss = 0.0;
    Eigen::MatrixXd grad_coefficients; // M x D (= U' grad_embeddings)
    Eigen::MatrixXd grad_features;     // N x D
};

struct ExpandedLossValue {
    double loss = 0.0;
    Eigen::MatrixXd grad_embeddings; // K x D
    Eigen::MatrixXd grad_features;   // N x D
};

// Mean negative log posterior at the labeled vertex, with analytic
// gradients for both the coefficients and the features.
LossValue loss_hard(const EmbeddingSet& embedding, const SpectralBasis& basis,
                    const PixelBatch& batch);

// Cross-entropy against the geodesic soft labels of each row's vertex;
// degenerates exactly to loss_hard for one-hot fields. Every batch label
// must have a field in the bank, and the bank's mesh must match the basis.
LossValue loss_soft(const EmbeddingSet& embedding, const SpectralBasis& basis,
                    const PixelBatch& batch, const SoftLabelBank& bank);

// Same losses over an unconstrained per-vertex embedding matrix (the
// spectral chain rule is layered on top of these).
ExpandedLossValue loss_hard_expanded(const Eigen::MatrixXd& embeddings, const PixelBatch& batch);
ExpandedLossValue loss_soft_expanded(const Eigen::MatrixXd& embeddings, const PixelBatch& batch,
                                     const SoftLabelBank& bank);

// Embedding transport to another mesh: coefficients' = C * coefficients.
EmbeddingSet transfer(const EmbeddingSet& embedding, const FunctionalMap& map);

} // namespace cse
