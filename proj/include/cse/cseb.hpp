// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace cse {

// CSEB tensor container. Layout, all little-endian:
//   magic "CSEB" | u32 version = 1 | u32 tensor count
//   per tensor: u8 rank | rank x u64 dims | row-major f64 payload
struct Tensor {
    std::vector<std::uint64_t> dims;
    std::vector<double> data; // row-major

    static Tensor from_matrix(const Eigen::MatrixXd& m);
    static Tensor from_vector(const Eigen::VectorXd& v);
    Eigen::MatrixXd to_matrix() const; // rank 2
    Eigen::VectorXd to_vector() const; // rank 1
    std::uint64_t element_count() const;
};

std::string encode_cseb(const std::vector<Tensor>& tensors);
std::vector<Tensor> decode_cseb(std::string_view bytes);

void write_cseb(const std::string& path, const std::vector<Tensor>& tensors);
std::vector<Tensor> read_cseb(const std::string& path);

} // namespace cse
