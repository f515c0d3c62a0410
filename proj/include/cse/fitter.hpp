// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <cstdint>
#include <vector>

#include "cse/embedding.hpp"

namespace cse {

// Synthetic supervision generator: a desk-scale stand-in for annotated
// imagery. Each supervised vertex emits features equal to its teacher
// embedding row plus Gaussian noise.
struct SyntheticConfig {
    int samples_per_vertex = 1;
    double noise_std = 0.0;
    double label_fraction = 1.0; // Bernoulli per vertex
    std::uint64_t seed = 0;
};

enum class LossKind { Hard, Soft };
enum class InitKind { Zero, Random };

struct FitConfig {
    LossKind loss = LossKind::Hard;
    double sigma = 0.1; // soft loss only
    KernelKind kernel = KernelKind::Linear;
    double step_size = 1.0;
    int iterations = 100;
    InitKind init = InitKind::Zero;
    double init_scale = 0.0625; // random init: Gaussian(0, scale)
    bool update_features = false;
    int embedding_dimension = 16;
    std::uint64_t seed = 0;
};

// Emits samples_per_vertex rows for every supervised vertex (ascending
// vertex order); bit-identical for identical seeds.
PixelBatch make_synthetic(const SyntheticConfig& config, const EmbeddingSet& teacher,
                          const SpectralBasis& basis);

struct FitResult {
    EmbeddingSet embedding;
    Eigen::MatrixXd features;         // final features (== batch's unless updated)
    std::vector<double> loss_history; // loss at the start of each iteration
};

// Full-batch gradient descent on the coefficients (and optionally the
// features) under the selected loss. `mesh` is required for the soft loss
// (geodesic fields are precomputed per distinct label). Throws on a
// non-finite loss, naming the iteration.
FitResult fit(const SpectralBasis& basis, const PixelBatch& batch, const FitConfig& config,
              const Mesh* mesh = nullptr);

struct ClassData {
    const SpectralBasis* basis = nullptr;
    const PixelBatch* batch = nullptr;
    const Mesh* mesh = nullptr; // soft loss only
};

struct JointFitResult {
    std::vector<EmbeddingSet> embeddings;
    std::vector<std::vector<double>> loss_histories;
};

// Multi-class analogue: initialize every class embedding by transferring the
// source through its functional map (or from the FitConfig init when
// use_transfer_init is false), then take one gradient step per class per
// round in class order. Classes with empty batches keep their initialization.
JointFitResult joint_fit(const std::vector<ClassData>& classes, const EmbeddingSet& source,
                         const std::vector<FunctionalMap>& maps, const FitConfig& config,
                         bool use_transfer_init = true);

} // namespace cse
