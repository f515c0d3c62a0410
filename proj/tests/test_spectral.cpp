// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cse/rng.hpp"
#include "cse/spectral.hpp"
#include "test_meshes.hpp"

using namespace cse;

namespace {

SpectralBasis basis_of(const Mesh& mesh, int order, EigenMethod method = EigenMethod::Auto) {
    return eigenbasis(mesh, build_operators(mesh), order, method);
}

double orthonormality_defect(const SpectralBasis& b) {
    const Eigen::MatrixXd gram =
        b.modes.transpose() * (b.lumped_mass.asDiagonal() * b.modes);
    return (gram - Eigen::MatrixXd::Identity(b.order(), b.order())).cwiseAbs().maxCoeff();
}

double worst_column_residual(const Mesh& mesh, const SpectralBasis& b) {
    const Operators ops = build_operators(mesh);
    double worst = 0.0;
    for (int j = 0; j < b.order(); ++j) {
        const Eigen::VectorXd lhs = ops.stiffness * b.modes.col(j);
        const Eigen::VectorXd rhs =
            b.eigenvalues[j] * (ops.lumped_mass.asDiagonal() * b.modes.col(j));
        const double denom = std::max(rhs.norm(), 1e-12);
        if (b.eigenvalues[j] < 1e-8)
            worst = std::max(worst, lhs.norm()); // kernel column: absolute residual
        else
            worst = std::max(worst, (lhs - rhs).norm() / denom);
    }
    return worst;
}

} // namespace

TEST_CASE("order one: zero eigenvalue and the constant column") {
    const Mesh blob = testing::uv_blob(10, 8, 0.2, 41);
    const SpectralBasis b = basis_of(blob, 1);
    CHECK(b.eigenvalues[0] < 1e-8);
    const double expected = 1.0 / std::sqrt(total_area(blob));
    for (Eigen::Index v = 0; v < blob.vertex_count(); ++v)
        CHECK(b.modes(v, 0) == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("icosphere spectrum clusters at l(l+1) with the right multiplicities") {
    const Mesh sphere = testing::icosphere(4); // K = 2562
    const SpectralBasis b = basis_of(sphere, 16, EigenMethod::ShiftInvert);

    // l = 0..3: values 0, 2, 6, 12 with multiplicities 1, 3, 5, 7.
    const std::vector<std::pair<double, int>> bands = {{0, 1}, {2, 3}, {6, 5}, {12, 7}};
    int at = 0;
    for (const auto& [value, multiplicity] : bands) {
        for (int i = 0; i < multiplicity; ++i, ++at) {
            if (value == 0.0)
                CHECK(b.eigenvalues[at] < 1e-8);
            else
                CHECK(b.eigenvalues[at] == doctest::Approx(value).epsilon(0.05));
        }
    }
    CHECK(at == 16);
    CHECK(orthonormality_defect(b) < 1e-8);
    CHECK(worst_column_residual(sphere, b) < 1e-6);
}

TEST_CASE("flat square grid: first nonzero eigenvalue is pi^2") {
    const Mesh grid = testing::unit_grid(64); // K = 4096
    const SpectralBasis b = basis_of(grid, 4, EigenMethod::ShiftInvert);
    CHECK(b.eigenvalues[0] < 1e-8);
    CHECK(b.eigenvalues[1] == doctest::Approx(M_PI * M_PI).epsilon(0.03));
    CHECK(b.eigenvalues[2] == doctest::Approx(M_PI * M_PI).epsilon(0.03));
    CHECK(b.eigenvalues[3] == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.03));
}

TEST_CASE("dense and shift-invert solvers agree") {
    const Mesh blob = testing::uv_blob(16, 12, 0.3, 63); // irregular, simple spectrum
    const SpectralBasis dense = basis_of(blob, 48, EigenMethod::Dense);
    const SpectralBasis iterative = basis_of(blob, 48, EigenMethod::ShiftInvert);
    for (int j = 0; j < 48; ++j)
        CHECK(iterative.eigenvalues[j] ==
              doctest::Approx(dense.eigenvalues[j]).epsilon(1e-8).scale(1.0));
    CHECK(orthonormality_defect(iterative) < 1e-8);
    CHECK(worst_column_residual(blob, iterative) < 1e-6);
}

TEST_CASE("eigenbasis is deterministic across runs") {
    const Mesh blob = testing::uv_blob(12, 9, 0.25, 77);
    const SpectralBasis a = basis_of(blob, 32);
    const SpectralBasis b = basis_of(blob, 32);
    CHECK(a.modes == b.modes);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.id == b.id);
}

TEST_CASE("sign convention: largest-magnitude entry of each column positive") {
    const Mesh blob = testing::uv_blob(12, 9, 0.25, 78);
    const SpectralBasis b = basis_of(blob, 24);
    for (int j = 0; j < b.order(); ++j) {
        Eigen::Index at = 0;
        b.modes.col(j).cwiseAbs().maxCoeff(&at);
        CHECK(b.modes(at, j) > 0.0);
    }
}

TEST_CASE("spectrum is invariant under vertex permutation") {
    const Mesh blob = testing::uv_blob(11, 8, 0.3, 90);
    const Mesh shuffled =
        testing::permuted_copy(blob, testing::random_permutation(
                                         static_cast<int>(blob.vertex_count()), 4));
    const SpectralBasis a = basis_of(blob, 24);
    const SpectralBasis b = basis_of(shuffled, 24);
    for (int j = 0; j < 24; ++j)
        CHECK(a.eigenvalues[j] == doctest::Approx(b.eigenvalues[j]).epsilon(1e-8).scale(1.0));
}

TEST_CASE("uniform scaling: eigenvalues by 1/s^2, mass by s^2") {
    const Mesh blob = testing::uv_blob(10, 7, 0.2, 91);
    const double s = 1.7;
    const SpectralBasis a = basis_of(blob, 12);
    const SpectralBasis b = basis_of(scaled_copy(blob, s), 12);
    for (int j = 1; j < 12; ++j)
        CHECK(b.eigenvalues[j] == doctest::Approx(a.eigenvalues[j] / (s * s)).epsilon(1e-8));
    CHECK(b.lumped_mass.sum() == doctest::Approx(a.lumped_mass.sum() * s * s).epsilon(1e-10));
}

TEST_CASE("analyze: coefficients of basis columns are unit vectors") {
    const Mesh blob = testing::uv_blob(10, 8, 0.25, 92);
    const SpectralBasis b = basis_of(blob, 16);
    for (int j = 0; j < 16; ++j) {
        const Eigen::VectorXd rhat = analyze(b, Eigen::VectorXd(b.modes.col(j)));
        Eigen::VectorXd expected = Eigen::VectorXd::Zero(16);
        expected[j] = 1.0;
        CHECK((rhat - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("analyze: constant function concentrates on the first coefficient") {
    const Mesh blob = testing::uv_blob(10, 8, 0.25, 93);
    const SpectralBasis b = basis_of(blob, 16);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(blob.vertex_count());
    const Eigen::VectorXd rhat = analyze(b, ones);
    CHECK(rhat[0] == doctest::Approx(std::sqrt(total_area(blob))).epsilon(1e-6));
    CHECK(rhat.tail(15).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("analyze-synthesize projector identity") {
    const Mesh blob = testing::uv_blob(9, 7, 0.2, 94);
    const SpectralBasis b = basis_of(blob, 20);
    Rng rng(5);
    Eigen::VectorXd rhat(20);
    for (Eigen::Index i = 0; i < 20; ++i) rhat[i] = rng.normal();
    const Eigen::VectorXd back = analyze(b, synthesize(b, rhat));
    CHECK((back - rhat).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("low-pass reconstruction error is nonincreasing in the order") {
    const Mesh blob = testing::uv_blob(12, 10, 0.3, 95);
    const int max_order = 40;
    const SpectralBasis full = basis_of(blob, max_order);
    Rng rng(6);
    Eigen::VectorXd r(blob.vertex_count());
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal();

    double previous = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= max_order; ++m) {
        const SpectralBasis b = truncated(full, m);
        const Eigen::VectorXd residual = synthesize(b, analyze(b, r)) - r;
        const double err = std::sqrt(residual.dot(b.lumped_mass.asDiagonal() * residual));
        CHECK(err <= previous + 1e-12);
        previous = err;
    }
}

TEST_CASE("order bounds are enforced") {
    const Mesh tri = testing::equilateral_triangle();
    const Operators ops = build_operators(tri);
    CHECK_THROWS_AS(eigenbasis(tri, ops, 0), std::invalid_argument);
    CHECK_THROWS_AS(eigenbasis(tri, ops, 4), std::invalid_argument);
    CHECK_NOTHROW(eigenbasis(tri, ops, 3));
}
