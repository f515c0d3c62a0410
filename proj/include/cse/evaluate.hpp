// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <map>
#include <vector>

#include "cse/geodesics.hpp"

namespace cse {

// Geodesic-error summary of predicted vertex correspondences against ground
// truth, on a mesh normalized to diameter 2.5.
struct EvalReport {
    double mean_geodesic_error = 0.0;
    std::map<double, double> accuracy_at;   // threshold -> fraction within it
    std::vector<double> per_point_errors;   // one per prediction
    bool normalized_diameter_ok = true;     // diameter within 5% of 2.5
};

// Per-point error is the geodesic distance between predicted and true
// vertex. Warns (and flags the report) when the mesh diameter is far from
// the expected normalization. Throws on length mismatch.
EvalReport evaluate(const Mesh& mesh, const std::vector<int>& predicted,
                    const std::vector<int>& truth,
                    const std::vector<double>& thresholds = {0.1, 0.2, 0.3});

} // namespace cse
