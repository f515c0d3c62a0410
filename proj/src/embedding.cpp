// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cse/parallel.hpp"

namespace cse {

namespace {

constexpr double kProbabilityFloor = 1e-300;
constexpr std::size_t kRowBlock = 256;

// Shared softmax-cross-entropy core. target(row) must return a length-K
// distribution (one-hot or soft); accumulation runs over fixed row blocks so
// results do not depend on the thread count.
template <class TargetFn>
ExpandedLossValue cross_entropy(const Eigen::MatrixXd& embeddings, const PixelBatch& batch,
                                TargetFn&& target) {
    const Eigen::Index n = batch.size();
    const Eigen::Index k = embeddings.rows();
    if (n == 0) throw std::invalid_argument("loss: empty batch");
    if (batch.features.rows() != n || batch.features.cols() != embeddings.cols())
        throw std::invalid_argument("loss: feature matrix shape mismatch");
    if (!batch.features.allFinite()) throw std::invalid_argument("loss: non-finite feature");
    if (batch.labels.minCoeff() < 0 || batch.labels.maxCoeff() >= k)
        throw std::invalid_argument("loss: label out of range");

    const std::size_t blocks = block_count(static_cast<std::size_t>(n), kRowBlock);
    std::vector<double> loss_partial(blocks, 0.0);
    std::vector<Eigen::MatrixXd> grad_partial(
        blocks, Eigen::MatrixXd::Zero(embeddings.rows(), embeddings.cols()));

    ExpandedLossValue out;
    out.grad_features.resize(n, embeddings.cols());

    parallel_for_blocks(static_cast<std::size_t>(n), kRowBlock,
                        [&](std::size_t b, std::size_t begin, std::size_t end) {
        const Eigen::Index rows = static_cast<Eigen::Index>(end - begin);
        const auto features = batch.features.middleRows(static_cast<Eigen::Index>(begin), rows);
        // scores s = -E phi, one column per batch row
        Eigen::MatrixXd scores = -(embeddings * features.transpose()); // K x rows
        Eigen::MatrixXd delta(k, rows);                                // p - g
        double loss_sum = 0.0;
        for (Eigen::Index r = 0; r < rows; ++r) {
            auto col = scores.col(r);
            col.array() -= col.maxCoeff();
            Eigen::VectorXd p = col.array().exp();
            p /= p.sum();
            const Eigen::VectorXd g = target(static_cast<Eigen::Index>(begin) + r);
            loss_sum -= (g.array() * p.cwiseMax(kProbabilityFloor).array().log()).sum();
            delta.col(r) = p - g;
        }
        loss_partial[b] = loss_sum;
        // d loss / d E = -(1/N) sum_rows delta phi'
        grad_partial[b].noalias() = -(delta * features);
        // d loss / d phi_r = -(1/N) E' delta_r
        out.grad_features.middleRows(static_cast<Eigen::Index>(begin), rows).noalias() =
            -(delta.transpose() * embeddings);
    });

    out.loss = 0.0;
    out.grad_embeddings = Eigen::MatrixXd::Zero(embeddings.rows(), embeddings.cols());
    for (std::size_t b = 0; b < blocks; ++b) {
        out.loss += loss_partial[b];
        out.grad_embeddings += grad_partial[b];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    out.grad_embeddings *= inv_n;
    out.grad_features *= inv_n;
    return out;
}

LossValue chain_to_coefficients(const SpectralBasis& basis, ExpandedLossValue expanded) {
    LossValue out;
    out.loss = expanded.loss;
    out.grad_coefficients = basis.modes.transpose() * expanded.grad_embeddings;
    out.grad_features = std::move(expanded.grad_features);
    return out;
}

void check_bound(const EmbeddingSet& embedding, const SpectralBasis& basis) {
    if (embedding.basis_id != basis.id)
        throw std::runtime_error("embedding bound to basis " + embedding.basis_id +
                                 ", expected " + basis.id);
    if (embedding.order() != basis.order())
        throw std::runtime_error("embedding order " + std::to_string(embedding.order()) +
                                 " does not match basis order " + std::to_string(basis.order()));
}

} // namespace

SoftLabelBank make_soft_label_bank(const Mesh& mesh, const std::vector<int>& vertices,
                                   double sigma, KernelKind kind) {
    SoftLabelBank bank;
    bank.mesh_hash = mesh_content_hash(mesh);
    bank.sigma = sigma;
    std::vector<int> unique = vertices;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    const auto fields = soft_labels_batch(mesh, unique, sigma, kind);
    for (std::size_t i = 0; i < unique.size(); ++i) bank.fields[unique[i]] = fields[i].weights;
    return bank;
}

Eigen::MatrixXd expand(const EmbeddingSet& embedding, const SpectralBasis& basis) {
    check_bound(embedding, basis);
    return basis.modes * embedding.coefficients;
}

Eigen::VectorXd posterior(const Eigen::MatrixXd& embeddings, const Eigen::VectorXd& feature) {
    if (feature.size() != embeddings.cols())
        throw std::invalid_argument("posterior: feature dimension mismatch");
    if (!feature.allFinite() || !embeddings.allFinite())
        throw std::invalid_argument("posterior: non-finite input");
    Eigen::VectorXd scores = -(embeddings * feature);
    scores.array() -= scores.maxCoeff();
    Eigen::VectorXd p = scores.array().exp();
    return p / p.sum();
}

ExpandedLossValue loss_hard_expanded(const Eigen::MatrixXd& embeddings, const PixelBatch& batch) {
    const Eigen::Index k = embeddings.rows();
    return cross_entropy(embeddings, batch, [&](Eigen::Index row) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(k);
        g[batch.labels[row]] = 1.0;
        return g;
    });
}

ExpandedLossValue loss_soft_expanded(const Eigen::MatrixXd& embeddings, const PixelBatch& batch,
                                     const SoftLabelBank& bank) {
    const Eigen::Index k = embeddings.rows();
    return cross_entropy(embeddings, batch, [&](Eigen::Index row) -> Eigen::VectorXd {
        const auto it = bank.fields.find(batch.labels[row]);
        if (it == bank.fields.end())
            throw std::runtime_error("loss_soft: no soft-label field for vertex " +
                                     std::to_string(batch.labels[row]));
        if (it->second.size() != k)
            throw std::runtime_error("loss_soft: soft-label field length does not match mesh");
        return it->second;
    });
}

LossValue loss_hard(const EmbeddingSet& embedding, const SpectralBasis& basis,
                    const PixelBatch& batch) {
    return chain_to_coefficients(basis, loss_hard_expanded(expand(embedding, basis), batch));
}

LossValue loss_soft(const EmbeddingSet& embedding, const SpectralBasis& basis,
                    const PixelBatch& batch, const SoftLabelBank& bank) {
    if (bank.mesh_hash != basis.mesh_hash)
        throw std::runtime_error("soft-label bank bound to mesh " + bank.mesh_hash +
                                 ", expected " + basis.mesh_hash);
    return chain_to_coefficients(basis, loss_soft_expanded(expand(embedding, basis), batch, bank));
}

EmbeddingSet transfer(const EmbeddingSet& embedding, const FunctionalMap& map) {
    if (embedding.basis_id != map.src_basis_id)
        throw std::runtime_error("transfer: embedding bound to basis " + embedding.basis_id +
                                 ", map expects " + map.src_basis_id);
    if (map.map.cols() != embedding.order())
        throw std::runtime_error("transfer: map takes order " + std::to_string(map.map.cols()) +
                                 ", embedding has " + std::to_string(embedding.order()));
    EmbeddingSet out;
    out.coefficients = map.map * embedding.coefficients;
    out.basis_id = map.dst_basis_id;
    return out;
}

} // namespace cse
