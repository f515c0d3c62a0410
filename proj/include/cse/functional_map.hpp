// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <optional>
#include <vector>

#include "cse/spectral.hpp"

namespace cse {

// Linear map between truncated spectral coefficient spaces of two meshes:
// dst coefficients = map * src coefficients. Dimensions are at most the
// bound bases' orders; a smaller map lives in their leading truncation.
struct FunctionalMap {
    Eigen::MatrixXd map; // M_dst x M_src
    std::string src_basis_id;
    std::string dst_basis_id;
};

// Per-vertex correspondence transporting functions from src to dst by
// backward warping: r_dst[i] = r_src[assignment[i]].
struct PointMap {
    Eigen::VectorXi assignment; // length K_dst, values in [0, K_src)
};

// Spectral encoding of a point map: C = U_dst' A_dst Pi U_src, the least
// squares solution of ||U_dst C - Pi U_src||_{A_dst}. A positive
// commutativity weight divides each entry by 1 + w (lambda_dst_i -
// lambda_src_j)^2, shrinking entries that mix distant frequencies; weight 0
// is the plain closed form.
FunctionalMap cfrom_pointmap(const SpectralBasis& src, const SpectralBasis& dst,
                             const PointMap& pointmap, double commutativity_weight = 0.0);

// Greedy decode: each dst vertex takes the src vertex whose spectral
// signature row of U_src best matches its row of U_dst C (exact nearest row
// in L2, ties to the smallest index).
PointMap pointmap_from_c(const SpectralBasis& src, const SpectralBasis& dst,
                         const FunctionalMap& c);

// Least squares map at a small order from seed correspondences only:
//   sum_j ||(U_dst C)_{k'_j} - (U_src)_{k_j}||^2
//   + commutativity_weight sum_ij (lambda'_i - lambda_j)^2 C_ij^2
//   + ridge ||C||^2
// Warns to stderr when fewer seeds than unknown columns.
FunctionalMap seed_cinit(const SpectralBasis& src, const SpectralBasis& dst,
                         const CorrespondenceSet& seeds, int order,
                         double commutativity_weight = 1e-2, double ridge = 1e-6);

struct ZoomOutOptions {
    int start = 12;
    int stop = 256;
    int step = 4;
    double alpha = 1.0;  // symmetry-commutation weight
    double beta = 1e-2;  // eigenvalue-commutativity weight in re-encoding
    double gamma = 1.0;  // cycle-consistency weight
    int projection_steps = 10;
    double projection_step_size = 1.0; // initial; each step backtracks to a decrease
    std::optional<SymmetryMap> sym_src;
    std::optional<SymmetryMap> sym_dst;
    std::optional<Eigen::MatrixXd> initial_backward; // default: transpose of the forward init
};

struct ZoomOutLevel {
    int order = 0;
    double forward_changed = 1.0;   // fraction of dst vertices whose match moved
    double symmetry_residual = -1.; // rms of  Gamma'C - C Gamma  after projection, -1 if off
    double cycle_residual = -1.;    // rms of  C C' - I           after projection
    PointMap forward_pointmap;      // decoded at this level's order
};

struct ZoomOutResult {
    FunctionalMap forward;  // src -> dst at the final order
    FunctionalMap backward; // dst -> src
    PointMap pointmap;      // final decode of `forward`
    std::vector<ZoomOutLevel> levels;
};

// Multi-scale refinement: alternate point-map decoding with re-encoding at
// the next order of the schedule, one forward and one backward sweep per
// level. After each closed-form re-encode, `projection_steps` descent steps
// (with backtracking, so the penalty never increases) pull the map toward
// symmetry commutation and cycle consistency, holding the reverse map fixed.
// Bases must carry at least `stop` eigenpairs of area-normalized meshes.
ZoomOutResult zoomout(const SpectralBasis& src, const SpectralBasis& dst,
                      const FunctionalMap& initial, const ZoomOutOptions& options = {});

} // namespace cse
