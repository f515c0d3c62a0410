// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <cstdint>
#include <vector>

#include "cse/mesh.hpp"

namespace cse::testing {

// Single-triangle meshes.
Mesh equilateral_triangle(double side = 1.0);
Mesh unit_right_triangle(); // (0,0,0), (1,0,0), (0,1,0)

// Isoceles triangle with two unit edges meeting at vertex 1 (the middle):
// distances from vertex 1 over the edge graph are exactly (1, 0, 1).
Mesh unit_path_triangle();

// Icosahedron subdivided `subdivisions` times, projected to a sphere.
// Vertex counts: 12, 42, 162, 642, 2562, ...
Mesh icosphere(int subdivisions, double radius = 1.0);

// Icosphere with a smooth seeded radial field of the given relative
// amplitude; vertex v moves to (1 + amplitude * g(x_v)) x_v with |g| <= 1.
Mesh noisy_icosphere(int subdivisions, double amplitude, std::uint64_t seed);

// Flat triangulated grid over the unit square [0,1]^2 (n x n vertices).
Mesh unit_grid(int n);

// Triangle strip whose bottom row lies on the x-axis with unit spacing; the
// top row is lifted so no shortcut beats walking the bottom edge chain.
Mesh strip(int bottom_vertices);

// UV sphere (nu meridians, nv polar bands; K = nu*(nv-1) + 2) with an
// optional smooth radial field, for irregular genus-0 test shapes.
Mesh uv_blob(int nu, int nv, double amplitude, std::uint64_t seed);

// Copy with vertices relabeled by `perm`: new vertex i is old perm[i].
Mesh permuted_copy(const Mesh& mesh, const std::vector<int>& perm);

std::vector<int> random_permutation(int count, std::uint64_t seed);

// Brute-force edge-graph diameter: max over every source vertex.
double all_pairs_graph_diameter(const Mesh& mesh);

} // namespace cse::testing
