// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cse/mesh.hpp"

namespace cse {

// Wavefront OBJ subset: `v` and `f` records only. Face records may carry
// v/vt/vn slashes (only the vertex index is used), 1-based or negative
// indices; polygons are fan-triangulated from the first vertex. Everything
// else is ignored. Malformed records report their line number.
Mesh parse_obj(std::string_view text);

// ASCII PLY subset: element vertex with float/double x,y,z properties (extra
// scalar properties are skipped), element face with a vertex index list.
// Binary PLY is rejected as unsupported.
Mesh parse_ply_ascii(std::string_view text);

// Loads a mesh by file extension (.obj / .ply); other formats are rejected.
Mesh load_mesh(const std::string& path);

// ASCII PLY writer; vertex coordinates at 9 significant digits, so export
// followed by parse_ply_ascii is an exact decimal round trip. With colors
// present, uchar red/green/blue vertex properties are emitted; `colors` must
// then be K x 3 with components in [0, 255].
std::string export_ply(const Mesh& mesh,
                       const std::optional<Eigen::MatrixX3i>& colors = std::nullopt);

// Per-vertex color export (the Figures 2-5 style display path).
std::string export_vertex_colors(const Mesh& mesh, const Eigen::MatrixX3i& colors);

// JSON wire format shared by correspondence and symmetry annotations:
//   {"src_mesh": "<hash>", "dst_mesh": "<hash>", "pairs": [[k, k'], ...]}
CorrespondenceSet parse_correspondences(std::string_view json_text);
std::string write_correspondences(const CorrespondenceSet& set);

// A symmetry file is a correspondence set whose two hashes both name the one
// mesh; pairs list each orbit once and unlisted vertices are fixed points.
SymmetryMap parse_symmetry(std::string_view json_text, const Mesh& mesh);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace cse
