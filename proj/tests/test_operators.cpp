// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cse/operators.hpp"
#include "cse/rng.hpp"
#include "test_meshes.hpp"

using namespace cse;

TEST_CASE("face gradient of a constant is zero") {
    const Mesh tri = testing::equilateral_triangle();
    const Eigen::Vector3d r(3.7, 3.7, 3.7);
    CHECK((face_gradient(tri, 0) * r).norm() < 1e-12);
}

TEST_CASE("face gradient reproduces a linear function exactly") {
    // r is the coordinate function x on the unit right triangle; its
    // gradient is (1, 0, 0). Cross-checked by in-plane finite differences.
    const Mesh tri = testing::unit_right_triangle();
    const Eigen::Vector3d r(0.0, 1.0, 0.0);
    const Eigen::Vector3d grad = face_gradient(tri, 0) * r;
    CHECK((grad - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);

    auto linear = [](const Eigen::Vector3d& p) { return p.x(); };
    const double h = 1e-6;
    const Eigen::Vector3d base(0.25, 0.25, 0.0);
    const double fd_x = (linear(base + Eigen::Vector3d(h, 0, 0)) - linear(base)) / h;
    const double fd_y = (linear(base + Eigen::Vector3d(0, h, 0)) - linear(base)) / h;
    CHECK(grad.x() == doctest::Approx(fd_x).epsilon(1e-6));
    CHECK(grad.y() == doctest::Approx(fd_y).epsilon(1e-6));
}

TEST_CASE("edge test: gradient dotted with an edge gives the value change") {
    Rng rng(7);
    const Mesh blob = testing::uv_blob(10, 8, 0.3, 21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = static_cast<Eigen::Index>(rng.uniform_index(blob.face_count()));
        const Eigen::Vector3d r(rng.normal(), rng.normal(), rng.normal());
        const Eigen::Matrix3d g = face_gradient(blob, f);
        const Eigen::Vector3d x0 = blob.vertices.row(blob.faces(f, 0));
        const Eigen::Vector3d x1 = blob.vertices.row(blob.faces(f, 1));
        const Eigen::Vector3d x2 = blob.vertices.row(blob.faces(f, 2));
        const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
        CHECK(std::abs((x2 - x1).dot(g * r) - (r[2] - r[1])) < 1e-12 * scale);
        CHECK(std::abs((x0 - x2).dot(g * r) - (r[0] - r[2])) < 1e-12 * scale);
        CHECK(std::abs((x1 - x0).dot(g * r) - (r[1] - r[0])) < 1e-12 * scale);
    }
}

TEST_CASE("equilateral triangle stiffness matches the cotangent formula") {
    const Mesh tri = testing::equilateral_triangle();
    const Operators ops = build_operators(tri);
    const Eigen::MatrixXd w(ops.stiffness);
    const double off = -1.0 / (2.0 * std::sqrt(3.0)); // -cot(60 deg)/2
    const double diag = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(w(i, j) == doctest::Approx(i == j ? diag : off).epsilon(1e-10));
}

TEST_CASE("stiffness row sums vanish and the matrix is symmetric PSD") {
    const Mesh blob = testing::uv_blob(16, 12, 0.25, 5);
    const Operators ops = build_operators(blob);
    const Eigen::MatrixXd w(ops.stiffness);
    CHECK((w.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((w - w.transpose()).cwiseAbs().maxCoeff() < 1e-10);

    Rng rng(3);
    Eigen::VectorXd r(blob.vertex_count());
    for (int trial = 0; trial < 1000; ++trial) {
        for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal();
        CHECK(r.dot(ops.stiffness * r) >= -1e-9);
    }
}

TEST_CASE("lumped mass distributes each face area in thirds") {
    const Mesh sphere = testing::icosphere(2);
    const Operators ops = build_operators(sphere);
    CHECK(ops.lumped_mass.minCoeff() > 0.0);
    CHECK(ops.lumped_mass.sum() == doctest::Approx(total_area(sphere)).epsilon(1e-12));
}

TEST_CASE("stiffness equals the assembled sum of face energies") {
    const Mesh blob = testing::uv_blob(9, 7, 0.3, 9);
    const Operators ops = build_operators(blob);
    Eigen::MatrixXd assembled = Eigen::MatrixXd::Zero(blob.vertex_count(), blob.vertex_count());
    for (Eigen::Index f = 0; f < blob.face_count(); ++f) {
        const Eigen::Matrix3d gf = face_gradient(blob, f);
        const Eigen::Matrix3d wf = blob.face_areas[f] * gf.transpose() * gf;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                assembled(blob.faces(f, i), blob.faces(f, j)) += wf(i, j);
    }
    CHECK((Eigen::MatrixXd(ops.stiffness) - assembled).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dirichlet energy of x on the flat grid equals the area integral") {
    const Mesh grid = testing::unit_grid(24); // any resolution: exact for linear r
    const Operators ops = build_operators(grid);
    const Eigen::VectorXd r = grid.vertices.col(0);
    CHECK(r.dot(ops.stiffness * r) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gradient operator: constants to zero, stacked faces match") {
    const Mesh blob = testing::uv_blob(8, 6, 0.2, 13);
    const Operators ops = build_operators(blob);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(blob.vertex_count());
    CHECK((ops.gradient * ones).cwiseAbs().maxCoeff() < 1e-12);

    Rng rng(17);
    Eigen::VectorXd r(blob.vertex_count());
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal();
    const Eigen::VectorXd g = ops.gradient * r;
    for (Eigen::Index f = 0; f < blob.face_count(); ++f) {
        Eigen::Vector3d rf(r[blob.faces(f, 0)], r[blob.faces(f, 1)], r[blob.faces(f, 2)]);
        const Eigen::Vector3d expected = face_gradient(blob, f) * rf;
        CHECK((g.segment<3>(3 * f) - expected).norm() < 1e-12);
    }
}

TEST_CASE("divergence is the negative adjoint of the gradient") {
    const Mesh blob = testing::uv_blob(11, 9, 0.35, 29);
    const Operators ops = build_operators(blob);
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd r(blob.vertex_count());
        for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal();
        Eigen::VectorXd g(3 * blob.face_count());
        for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng.normal();

        Eigen::VectorXd face_metric(3 * blob.face_count());
        for (Eigen::Index f = 0; f < blob.face_count(); ++f)
            face_metric.segment<3>(3 * f).setConstant(blob.face_areas[f]);

        const double lhs = r.dot(-(ops.divergence * g));
        const double rhs = (ops.gradient * r).dot(face_metric.asDiagonal() * g);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("divergence of any face field sums to zero over a closed mesh") {
    const Mesh sphere = testing::icosphere(1);
    const Operators ops = build_operators(sphere);
    Rng rng(31);
    Eigen::VectorXd g(3 * sphere.face_count());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng.normal();
    CHECK(std::abs((ops.divergence * g).sum()) < 1e-10 * g.norm());
}

TEST_CASE("degenerate faces are rejected by face_gradient preconditions") {
    const Mesh tri = testing::equilateral_triangle();
    CHECK_THROWS_AS(face_gradient(tri, 5), std::invalid_argument);
}
