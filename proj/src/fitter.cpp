// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/fitter.hpp"

#include <cmath>
#include <stdexcept>

#include "cse/rng.hpp"

namespace cse {

namespace {

constexpr std::uint64_t kLabelStream = 0x6c6162656c730000ULL;
constexpr std::uint64_t kNoiseStream = 0x6e6f697365000000ULL;
constexpr std::uint64_t kInitStream = 0x696e697400000000ULL;

EmbeddingSet initial_embedding(const SpectralBasis& basis, const FitConfig& config) {
    EmbeddingSet emb;
    emb.basis_id = basis.id;
    emb.coefficients = Eigen::MatrixXd::Zero(basis.order(), config.embedding_dimension);
    if (config.init == InitKind::Random) {
        Rng rng = Rng(config.seed).fork(kInitStream);
        for (Eigen::Index i = 0; i < emb.coefficients.rows(); ++i)
            for (Eigen::Index j = 0; j < emb.coefficients.cols(); ++j)
                emb.coefficients(i, j) = config.init_scale * rng.normal();
    }
    return emb;
}

SoftLabelBank bank_for_batch(const Mesh& mesh, const PixelBatch& batch, const FitConfig& config) {
    std::vector<int> labels(batch.labels.data(), batch.labels.data() + batch.labels.size());
    return make_soft_label_bank(mesh, labels, config.sigma, config.kernel);
}

} // namespace

PixelBatch make_synthetic(const SyntheticConfig& config, const EmbeddingSet& teacher,
                          const SpectralBasis& basis) {
    if (config.samples_per_vertex < 1)
        throw std::invalid_argument("make_synthetic: samples_per_vertex must be >= 1");
    if (config.noise_std < 0.0)
        throw std::invalid_argument("make_synthetic: noise_std must be >= 0");
    if (!(config.label_fraction > 0.0) || config.label_fraction > 1.0)
        throw std::invalid_argument("make_synthetic: label_fraction must be in (0, 1]");

    const Eigen::MatrixXd expanded = expand(teacher, basis);
    const Eigen::Index k = expanded.rows();
    const Eigen::Index d = expanded.cols();

    Rng label_rng = Rng(config.seed).fork(kLabelStream);
    std::vector<int> supervised;
    for (Eigen::Index v = 0; v < k; ++v)
        if (config.label_fraction >= 1.0 || label_rng.bernoulli(config.label_fraction))
            supervised.push_back(static_cast<int>(v));

    Rng noise_rng = Rng(config.seed).fork(kNoiseStream);
    PixelBatch batch;
    const Eigen::Index n = static_cast<Eigen::Index>(supervised.size()) * config.samples_per_vertex;
    batch.features.resize(n, d);
    batch.labels.resize(n);
    Eigen::Index row = 0;
    for (const int v : supervised) {
        for (int s = 0; s < config.samples_per_vertex; ++s, ++row) {
            batch.labels[row] = v;
            for (Eigen::Index c = 0; c < d; ++c)
                batch.features(row, c) =
                    expanded(v, c) + (config.noise_std > 0.0 ? config.noise_std * noise_rng.normal()
                                                             : 0.0);
        }
    }
    return batch;
}

FitResult fit(const SpectralBasis& basis, const PixelBatch& batch, const FitConfig& config,
              const Mesh* mesh) {
    if (config.iterations < 1) throw std::invalid_argument("fit: iterations must be >= 1");
    if (!(config.step_size > 0.0)) throw std::invalid_argument("fit: step_size must be positive");
    if (batch.size() == 0) throw std::invalid_argument("fit: empty batch");

    SoftLabelBank bank;
    if (config.loss == LossKind::Soft) {
        if (mesh == nullptr) throw std::invalid_argument("fit: soft loss needs the mesh");
        bank = bank_for_batch(*mesh, batch, config);
    }

    FitResult result;
    result.embedding = initial_embedding(basis, config);
    result.loss_history.reserve(config.iterations);

    PixelBatch working = batch;
    for (int it = 0; it < config.iterations; ++it) {
        const LossValue value = config.loss == LossKind::Hard
                                    ? loss_hard(result.embedding, basis, working)
                                    : loss_soft(result.embedding, basis, working, bank);
        if (!std::isfinite(value.loss))
            throw std::runtime_error("fit: loss diverged at iteration " + std::to_string(it));
        result.loss_history.push_back(value.loss);
        result.embedding.coefficients -= config.step_size * value.grad_coefficients;
        if (config.update_features) working.features -= config.step_size * value.grad_features;
    }
    result.features = std::move(working.features);
    return result;
}

JointFitResult joint_fit(const std::vector<ClassData>& classes, const EmbeddingSet& source,
                         const std::vector<FunctionalMap>& maps, const FitConfig& config,
                         bool use_transfer_init) {
    if (classes.size() != maps.size())
        throw std::invalid_argument("joint_fit: one functional map per class required");
    if (config.iterations < 1) throw std::invalid_argument("joint_fit: iterations must be >= 1");

    JointFitResult result;
    result.embeddings.reserve(classes.size());
    result.loss_histories.resize(classes.size());

    std::vector<SoftLabelBank> banks(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const ClassData& cls = classes[c];
        if (cls.basis == nullptr || cls.batch == nullptr)
            throw std::invalid_argument("joint_fit: class " + std::to_string(c) + " incomplete");
        if (use_transfer_init) {
            result.embeddings.push_back(transfer(source, maps[c]));
            if (result.embeddings.back().basis_id != cls.basis->id)
                throw std::runtime_error("joint_fit: map of class " + std::to_string(c) +
                                         " does not land on its basis");
        } else {
            FitConfig init_config = config;
            init_config.embedding_dimension = source.dimension();
            result.embeddings.push_back(initial_embedding(*cls.basis, init_config));
        }
        if (config.loss == LossKind::Soft && cls.batch->size() > 0) {
            if (cls.mesh == nullptr)
                throw std::invalid_argument("joint_fit: soft loss needs each class mesh");
            banks[c] = bank_for_batch(*cls.mesh, *cls.batch, config);
        }
    }

    // Round-robin: one step per class per iteration, in class order.
    for (int it = 0; it < config.iterations; ++it) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (classes[c].batch->size() == 0) continue; // keeps its initialization
            const LossValue value =
                config.loss == LossKind::Hard
                    ? loss_hard(result.embeddings[c], *classes[c].basis, *classes[c].batch)
                    : loss_soft(result.embeddings[c], *classes[c].basis, *classes[c].batch,
                                banks[c]);
            if (!std::isfinite(value.loss))
                throw std::runtime_error("joint_fit: loss of class " + std::to_string(c) +
                                         " diverged at iteration " + std::to_string(it));
            result.loss_histories[c].push_back(value.loss);
            result.embeddings[c].coefficients -= config.step_size * value.grad_coefficients;
        }
    }
    return result;
}

} // namespace cse
