// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <string>
#include <vector>

#include "cse/cseb.hpp"
#include "cse/embedding.hpp"
#include "cse/functional_map.hpp"
#include "cse/spectral.hpp"

namespace cse {

// Domain objects are persisted as a CSEB container plus a JSON manifest
// sidecar at "<path>.json" recording identities and shape metadata. Loads
// verify the manifest kind and dimensions.

void save_basis(const std::string& path, const SpectralBasis& basis);   // U, Lambda, A
SpectralBasis load_basis(const std::string& path);

void save_functional_map(const std::string& path, const FunctionalMap& map,
                         const std::string& src_mesh_hash, const std::string& dst_mesh_hash);
FunctionalMap load_functional_map(const std::string& path);

void save_embedding(const std::string& path, const EmbeddingSet& embedding,
                    const std::string& mesh_hash);
EmbeddingSet load_embedding(const std::string& path);

// Soft-label cache: one row per center vertex, keyed by (mesh, sigma).
struct SoftLabelCache {
    std::string mesh_hash;
    double sigma = 0.0;
    std::string kernel; // "linear" | "squared"
    std::vector<int> vertices;
    Eigen::MatrixXd weights; // |vertices| x K
};

void save_soft_labels(const std::string& path, const SoftLabelCache& cache);
SoftLabelCache load_soft_labels(const std::string& path);

// Point maps travel as JSON: {"src_mesh", "dst_mesh", "assignment": [...]}.
void save_pointmap(const std::string& path, const PointMap& pm, const std::string& src_mesh_hash,
                   const std::string& dst_mesh_hash);
PointMap load_pointmap(const std::string& path);

} // namespace cse
