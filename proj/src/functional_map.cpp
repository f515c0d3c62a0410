// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/functional_map.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "cse/parallel.hpp"

namespace cse {

namespace {

// Decode against explicit mode blocks; no identity checks.
Eigen::VectorXi decode_block(const Eigen::Ref<const Eigen::MatrixXd>& src_modes,
                             const Eigen::Ref<const Eigen::MatrixXd>& dst_modes,
                             const Eigen::Ref<const Eigen::MatrixXd>& c) {
    const Eigen::Index k_src = src_modes.rows();
    const Eigen::Index k_dst = dst_modes.rows();
    const Eigen::MatrixXd query = dst_modes * c; // K_dst x M_src
    const Eigen::VectorXd norms = src_modes.rowwise().squaredNorm();

    Eigen::VectorXi assignment(k_dst);
    constexpr std::size_t kBlock = 512;
    parallel_for_blocks(static_cast<std::size_t>(k_dst), kBlock,
                        [&](std::size_t, std::size_t begin, std::size_t end) {
        const Eigen::Index nb = static_cast<Eigen::Index>(end - begin);
        // ||t_k - q||^2 = ||t_k||^2 - 2 <t_k, q> + const; the query norm is
        // constant per column and dropped.
        Eigen::MatrixXd scores =
            -2.0 * (src_modes * query.middleRows(static_cast<Eigen::Index>(begin), nb).transpose());
        scores.colwise() += norms;
        for (Eigen::Index c_idx = 0; c_idx < nb; ++c_idx) {
            Eigen::Index best = 0;
            double best_score = scores(0, c_idx);
            for (Eigen::Index k = 1; k < k_src; ++k)
                if (scores(k, c_idx) < best_score) {
                    best_score = scores(k, c_idx);
                    best = k;
                }
            assignment[static_cast<Eigen::Index>(begin) + c_idx] = static_cast<int>(best);
        }
    });
    return assignment;
}

// Closed-form re-encoding at a given order with the commutativity shrink.
Eigen::MatrixXd encode_block(const SpectralBasis& src, const SpectralBasis& dst, int order,
                             const Eigen::VectorXi& assignment, double commutativity_weight) {
    const Eigen::Index k_dst = dst.vertex_count();
    Eigen::MatrixXd permuted(k_dst, order); // rows of U_src selected by the point map
    for (Eigen::Index i = 0; i < k_dst; ++i)
        permuted.row(i) = src.modes.row(assignment[i]).head(order);
    Eigen::MatrixXd c = dst.modes.leftCols(order).transpose() *
                        (dst.lumped_mass.asDiagonal() * permuted);
    if (commutativity_weight > 0.0) {
        for (Eigen::Index i = 0; i < order; ++i)
            for (Eigen::Index j = 0; j < order; ++j) {
                const double gap = dst.eigenvalues[i] - src.eigenvalues[j];
                c(i, j) /= 1.0 + commutativity_weight * gap * gap;
            }
    }
    return c;
}

// Truncated spectral form of a vertex symmetry: U' A (Gamma U).
Eigen::MatrixXd symmetry_spectral(const SpectralBasis& basis, const SymmetryMap& sym, int order) {
    const Eigen::Index k = basis.vertex_count();
    Eigen::MatrixXd permuted(k, order);
    for (Eigen::Index v = 0; v < k; ++v)
        permuted.row(v) = basis.modes.row(sym.pairing[v]).head(order);
    return basis.modes.leftCols(order).transpose() * (basis.lumped_mass.asDiagonal() * permuted);
}

struct Penalty {
    double alpha = 0.0;
    double gamma = 0.0;
    const Eigen::MatrixXd* sym_src = nullptr; // spectral symmetry of the map's source side
    const Eigen::MatrixXd* sym_dst = nullptr;
    const Eigen::MatrixXd* reverse = nullptr; // reverse-direction map, held fixed

    // Terms are normalized by their entry counts.
    double value(const Eigen::MatrixXd& c) const {
        double v = 0.0;
        const double scale = 1.0 / static_cast<double>(c.size());
        if (sym_src && alpha > 0.0)
            v += alpha * scale * (*sym_dst * c - c * *sym_src).squaredNorm();
        if (reverse && gamma > 0.0) {
            Eigen::MatrixXd cyc = c * *reverse;
            cyc.diagonal().array() -= 1.0;
            v += gamma * scale * cyc.squaredNorm();
        }
        return v;
    }

    Eigen::MatrixXd gradient(const Eigen::MatrixXd& c) const {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(c.rows(), c.cols());
        const double scale = 2.0 / static_cast<double>(c.size());
        if (sym_src && alpha > 0.0) {
            const Eigen::MatrixXd r = *sym_dst * c - c * *sym_src;
            g += alpha * scale * (sym_dst->transpose() * r - r * sym_src->transpose());
        }
        if (reverse && gamma > 0.0) {
            Eigen::MatrixXd cyc = c * *reverse;
            cyc.diagonal().array() -= 1.0;
            g += gamma * scale * (cyc * reverse->transpose());
        }
        return g;
    }
};

// Plain descent with per-step backtracking; the penalty is nonincreasing
// across steps by construction.
void project(Eigen::MatrixXd& c, const Penalty& penalty, int steps, double& step_size) {
    if ((penalty.alpha <= 0.0 || !penalty.sym_src) && (penalty.gamma <= 0.0 || !penalty.reverse))
        return;
    double value = penalty.value(c);
    for (int s = 0; s < steps; ++s) {
        const Eigen::MatrixXd grad = penalty.gradient(c);
        const double grad_norm2 = grad.squaredNorm();
        if (grad_norm2 == 0.0) return;
        bool moved = false;
        for (int half = 0; half < 40; ++half) {
            const Eigen::MatrixXd candidate = c - step_size * grad;
            const double cand_value = penalty.value(candidate);
            if (cand_value <= value) {
                c = candidate;
                value = cand_value;
                moved = true;
                step_size *= 1.5; // optimistic growth, clipped by the next backtrack
                break;
            }
            step_size *= 0.5;
        }
        if (!moved) return;
    }
}

void check_bound(const SpectralBasis& src, const SpectralBasis& dst, const FunctionalMap& c) {
    if (c.src_basis_id != src.id)
        throw std::runtime_error("functional map bound to src basis " + c.src_basis_id +
                                 ", expected " + src.id);
    if (c.dst_basis_id != dst.id)
        throw std::runtime_error("functional map bound to dst basis " + c.dst_basis_id +
                                 ", expected " + dst.id);
    if (c.map.rows() > dst.order() || c.map.cols() > src.order())
        throw std::runtime_error("functional map of size " + std::to_string(c.map.rows()) + "x" +
                                 std::to_string(c.map.cols()) +
                                 " exceeds the bases' truncation orders");
    if (!c.map.allFinite()) throw std::runtime_error("functional map has non-finite entries");
}

} // namespace

FunctionalMap cfrom_pointmap(const SpectralBasis& src, const SpectralBasis& dst,
                             const PointMap& pointmap, double commutativity_weight) {
    if (pointmap.assignment.size() != dst.vertex_count())
        throw std::runtime_error("point map length " + std::to_string(pointmap.assignment.size()) +
                                 " does not match dst vertex count " +
                                 std::to_string(dst.vertex_count()));
    if (pointmap.assignment.size() == 0 || pointmap.assignment.minCoeff() < 0 ||
        pointmap.assignment.maxCoeff() >= src.vertex_count())
        throw std::runtime_error("point map refers to vertices outside the src mesh");

    FunctionalMap c;
    c.map = encode_block(src, dst, std::min(src.order(), dst.order()), pointmap.assignment,
                         commutativity_weight);
    c.src_basis_id = src.id;
    c.dst_basis_id = dst.id;
    return c;
}

PointMap pointmap_from_c(const SpectralBasis& src, const SpectralBasis& dst,
                         const FunctionalMap& c) {
    check_bound(src, dst, c);
    PointMap pm;
    pm.assignment = decode_block(src.modes.leftCols(c.map.cols()),
                                 dst.modes.leftCols(c.map.rows()), c.map);
    return pm;
}

FunctionalMap seed_cinit(const SpectralBasis& src, const SpectralBasis& dst,
                         const CorrespondenceSet& seeds, int order, double commutativity_weight,
                         double ridge) {
    if (seeds.pairs.empty()) throw std::runtime_error("seed_cinit: empty seed set");
    if (seeds.src_mesh != src.mesh_hash)
        throw std::runtime_error("seeds bound to src mesh " + seeds.src_mesh + ", expected " +
                                 src.mesh_hash);
    if (seeds.dst_mesh != dst.mesh_hash)
        throw std::runtime_error("seeds bound to dst mesh " + seeds.dst_mesh + ", expected " +
                                 dst.mesh_hash);
    if (order < 1 || order > src.order() || order > dst.order())
        throw std::invalid_argument("seed_cinit: order exceeds the bases' truncations");

    const auto q = static_cast<Eigen::Index>(seeds.pairs.size());
    if (q < order)
        std::cerr << "seed_cinit: " << q << " seeds for order " << order
                  << "; relying on regularization\n";

    Eigen::MatrixXd dst_rows(q, order), src_rows(q, order);
    for (Eigen::Index j = 0; j < q; ++j) {
        const auto& [sk, dk] = seeds.pairs[j];
        if (sk < 0 || sk >= src.vertex_count() || dk < 0 || dk >= dst.vertex_count())
            throw std::runtime_error("seed pair (" + std::to_string(sk) + ", " +
                                     std::to_string(dk) + ") out of range");
        src_rows.row(j) = src.modes.row(sk).head(order);
        dst_rows.row(j) = dst.modes.row(dk).head(order);
    }

    const Eigen::MatrixXd gram = dst_rows.transpose() * dst_rows;
    const Eigen::MatrixXd rhs = dst_rows.transpose() * src_rows;

    // Columns decouple: the commutativity and ridge penalties are diagonal
    // in each column's unknowns.
    FunctionalMap c;
    c.map.resize(order, order);
    for (Eigen::Index col = 0; col < order; ++col) {
        Eigen::MatrixXd lhs = gram;
        for (Eigen::Index i = 0; i < order; ++i) {
            const double gap = dst.eigenvalues[i] - src.eigenvalues[col];
            lhs(i, i) += commutativity_weight * gap * gap + ridge;
        }
        c.map.col(col) = Eigen::LDLT<Eigen::MatrixXd>(lhs).solve(rhs.col(col));
    }
    c.src_basis_id = src.id;
    c.dst_basis_id = dst.id;
    return c;
}

ZoomOutResult zoomout(const SpectralBasis& src, const SpectralBasis& dst,
                      const FunctionalMap& initial, const ZoomOutOptions& options) {
    check_bound(src, dst, initial);
    if (options.start < 1 || options.stop < options.start || options.step < 1)
        throw std::invalid_argument("zoomout: bad schedule");
    if (options.stop > src.order() || options.stop > dst.order())
        throw std::runtime_error("zoomout: schedule stop " + std::to_string(options.stop) +
                                 " exceeds available eigenpairs (" +
                                 std::to_string(std::min(src.order(), dst.order())) + ")");
    if (initial.map.rows() != options.start || initial.map.cols() != options.start)
        throw std::invalid_argument("zoomout: initial map must be start x start");
    if (options.sym_src.has_value() != options.sym_dst.has_value())
        throw std::invalid_argument("zoomout: symmetry maps must come in pairs");

    std::vector<int> schedule;
    for (int m = options.start; m <= options.stop; m += options.step) schedule.push_back(m);
    if (schedule.back() != options.stop) schedule.push_back(options.stop);

    Eigen::MatrixXd forward = initial.map;
    Eigen::MatrixXd backward;
    if (options.initial_backward)
        backward = *options.initial_backward;
    else
        backward = initial.map.transpose();
    if (backward.rows() != options.start || backward.cols() != options.start)
        throw std::invalid_argument("zoomout: initial backward map must be start x start");

    ZoomOutResult result;
    result.levels.reserve(schedule.size());
    Eigen::VectorXi previous_forward;
    double fwd_step = options.projection_step_size;
    double bwd_step = options.projection_step_size;

    for (const int order : schedule) {
        // Decode both directions at the current order, then re-encode at `order`.
        const Eigen::VectorXi pm_f = decode_block(src.modes.leftCols(forward.cols()),
                                                  dst.modes.leftCols(forward.rows()), forward);
        const Eigen::VectorXi pm_b = decode_block(dst.modes.leftCols(backward.cols()),
                                                  src.modes.leftCols(backward.rows()), backward);
        forward = encode_block(src, dst, order, pm_f, options.beta);
        backward = encode_block(dst, src, order, pm_b, options.beta);
        if (!forward.allFinite() || !backward.allFinite())
            throw std::runtime_error("zoomout: non-finite map at order " + std::to_string(order));

        Eigen::MatrixXd sym_src_hat, sym_dst_hat;
        const bool with_symmetry = options.sym_src && options.alpha > 0.0;
        if (with_symmetry) {
            sym_src_hat = symmetry_spectral(src, *options.sym_src, order);
            sym_dst_hat = symmetry_spectral(dst, *options.sym_dst, order);
        }

        Penalty fwd_penalty{options.alpha, options.gamma,
                            with_symmetry ? &sym_src_hat : nullptr,
                            with_symmetry ? &sym_dst_hat : nullptr, &backward};
        project(forward, fwd_penalty, options.projection_steps, fwd_step);
        Penalty bwd_penalty{options.alpha, options.gamma,
                            with_symmetry ? &sym_dst_hat : nullptr,
                            with_symmetry ? &sym_src_hat : nullptr, &forward};
        project(backward, bwd_penalty, options.projection_steps, bwd_step);

        ZoomOutLevel level;
        level.order = order;
        level.forward_pointmap.assignment =
            decode_block(src.modes.leftCols(order), dst.modes.leftCols(order), forward);
        if (previous_forward.size() == level.forward_pointmap.assignment.size()) {
            level.forward_changed =
                (level.forward_pointmap.assignment.array() != previous_forward.array())
                    .cast<double>()
                    .mean();
        }
        previous_forward = level.forward_pointmap.assignment;

        const double entries = static_cast<double>(forward.size());
        if (with_symmetry)
            level.symmetry_residual =
                std::sqrt((sym_dst_hat * forward - forward * sym_src_hat).squaredNorm() / entries);
        Eigen::MatrixXd cyc = forward * backward;
        cyc.diagonal().array() -= 1.0;
        level.cycle_residual = std::sqrt(cyc.squaredNorm() / entries);
        result.levels.push_back(std::move(level));
    }

    result.forward = FunctionalMap{forward, src.id, dst.id};
    result.backward = FunctionalMap{backward, dst.id, src.id};
    result.pointmap = result.levels.back().forward_pointmap;
    return result;
}

} // namespace cse
