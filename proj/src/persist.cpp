// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/persist.hpp"

#include <stdexcept>

#include <json.hpp>

#include "cse/mesh_io.hpp"

namespace cse {

namespace {

using json = nlohmann::json;

std::string manifest_path(const std::string& path) { return path + ".json"; }

json load_manifest(const std::string& path, const std::string& kind) {
    json doc;
    try {
        doc = json::parse(read_file(manifest_path(path)));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("manifest " + manifest_path(path) + ": " + e.what());
    }
    if (doc.value("kind", "") != kind)
        throw std::runtime_error("manifest " + manifest_path(path) + ": kind '" +
                                 doc.value("kind", "") + "', expected '" + kind + "'");
    return doc;
}

void store(const std::string& path, const std::vector<Tensor>& tensors, const json& manifest) {
    write_cseb(path, tensors);
    write_file(manifest_path(path), manifest.dump(2) + "\n");
}

} // namespace

void save_basis(const std::string& path, const SpectralBasis& basis) {
    json manifest;
    manifest["kind"] = "basis";
    manifest["mesh"] = basis.mesh_hash;
    manifest["basis"] = basis.id;
    manifest["vertex_count"] = basis.vertex_count();
    manifest["order"] = basis.order();
    manifest["eigenvalues"] = std::vector<double>(
        basis.eigenvalues.data(), basis.eigenvalues.data() + basis.eigenvalues.size());
    store(path,
          {Tensor::from_matrix(basis.modes), Tensor::from_vector(basis.eigenvalues),
           Tensor::from_vector(basis.lumped_mass)},
          manifest);
}

SpectralBasis load_basis(const std::string& path) {
    const json manifest = load_manifest(path, "basis");
    const auto tensors = read_cseb(path);
    if (tensors.size() != 3) throw std::runtime_error("basis container must hold 3 tensors");
    SpectralBasis basis;
    basis.modes = tensors[0].to_matrix();
    basis.eigenvalues = tensors[1].to_vector();
    basis.lumped_mass = tensors[2].to_vector();
    basis.mesh_hash = manifest.at("mesh").get<std::string>();
    basis.id = manifest.at("basis").get<std::string>();
    if (basis.modes.cols() != basis.eigenvalues.size() ||
        basis.modes.rows() != basis.lumped_mass.size() ||
        basis.order() != manifest.at("order").get<int>())
        throw std::runtime_error("basis container is inconsistent with its manifest");
    return basis;
}

void save_functional_map(const std::string& path, const FunctionalMap& map,
                         const std::string& src_mesh_hash, const std::string& dst_mesh_hash) {
    json manifest;
    manifest["kind"] = "functional_map";
    manifest["src_mesh"] = src_mesh_hash;
    manifest["dst_mesh"] = dst_mesh_hash;
    manifest["src_basis"] = map.src_basis_id;
    manifest["dst_basis"] = map.dst_basis_id;
    manifest["rows"] = map.map.rows();
    manifest["cols"] = map.map.cols();
    store(path, {Tensor::from_matrix(map.map)}, manifest);
}

FunctionalMap load_functional_map(const std::string& path) {
    const json manifest = load_manifest(path, "functional_map");
    const auto tensors = read_cseb(path);
    if (tensors.size() != 1) throw std::runtime_error("map container must hold 1 tensor");
    FunctionalMap map;
    map.map = tensors[0].to_matrix();
    map.src_basis_id = manifest.at("src_basis").get<std::string>();
    map.dst_basis_id = manifest.at("dst_basis").get<std::string>();
    return map;
}

void save_embedding(const std::string& path, const EmbeddingSet& embedding,
                    const std::string& mesh_hash) {
    json manifest;
    manifest["kind"] = "embedding";
    manifest["mesh"] = mesh_hash;
    manifest["basis"] = embedding.basis_id;
    manifest["order"] = embedding.order();
    manifest["dimension"] = embedding.dimension();
    store(path, {Tensor::from_matrix(embedding.coefficients)}, manifest);
}

EmbeddingSet load_embedding(const std::string& path) {
    const json manifest = load_manifest(path, "embedding");
    const auto tensors = read_cseb(path);
    if (tensors.size() != 1) throw std::runtime_error("embedding container must hold 1 tensor");
    EmbeddingSet embedding;
    embedding.coefficients = tensors[0].to_matrix();
    embedding.basis_id = manifest.at("basis").get<std::string>();
    return embedding;
}

void save_soft_labels(const std::string& path, const SoftLabelCache& cache) {
    if (cache.weights.rows() != static_cast<Eigen::Index>(cache.vertices.size()))
        throw std::invalid_argument("soft-label cache rows must match its vertex list");
    json manifest;
    manifest["kind"] = "soft_labels";
    manifest["mesh"] = cache.mesh_hash;
    manifest["sigma"] = cache.sigma;
    manifest["kernel"] = cache.kernel;
    manifest["vertices"] = cache.vertices;
    store(path, {Tensor::from_matrix(cache.weights)}, manifest);
}

SoftLabelCache load_soft_labels(const std::string& path) {
    const json manifest = load_manifest(path, "soft_labels");
    const auto tensors = read_cseb(path);
    if (tensors.size() != 1) throw std::runtime_error("soft-label container must hold 1 tensor");
    SoftLabelCache cache;
    cache.mesh_hash = manifest.at("mesh").get<std::string>();
    cache.sigma = manifest.at("sigma").get<double>();
    cache.kernel = manifest.value("kernel", "linear");
    cache.vertices = manifest.at("vertices").get<std::vector<int>>();
    cache.weights = tensors[0].to_matrix();
    if (cache.weights.rows() != static_cast<Eigen::Index>(cache.vertices.size()))
        throw std::runtime_error("soft-label container is inconsistent with its manifest");
    return cache;
}

void save_pointmap(const std::string& path, const PointMap& pm, const std::string& src_mesh_hash,
                   const std::string& dst_mesh_hash) {
    json doc;
    doc["src_mesh"] = src_mesh_hash;
    doc["dst_mesh"] = dst_mesh_hash;
    doc["assignment"] =
        std::vector<int>(pm.assignment.data(), pm.assignment.data() + pm.assignment.size());
    write_file(path, doc.dump(2) + "\n");
}

PointMap load_pointmap(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("pointmap " + path + ": " + e.what());
    }
    const auto values = doc.at("assignment").get<std::vector<int>>();
    PointMap pm;
    pm.assignment = Eigen::Map<const Eigen::VectorXi>(values.data(),
                                                      static_cast<Eigen::Index>(values.size()));
    return pm;
}

} // namespace cse
