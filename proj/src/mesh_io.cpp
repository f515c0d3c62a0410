// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace cse {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail_line(const char* format_name, std::size_t line, const std::string& what) {
    throw std::runtime_error(std::string(format_name) + " line " + std::to_string(line) + ": " +
                             what);
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

bool parse_double(std::string_view s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, long& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Fan-triangulates a polygon given as resolved 0-based vertex indices.
void emit_fan(const std::vector<int>& poly, std::vector<Eigen::Vector3i>& faces) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
        faces.emplace_back(poly[0], poly[i], poly[i + 1]);
}

Mesh finish(std::vector<Eigen::Vector3d>& vertices, std::vector<Eigen::Vector3i>& faces) {
    Eigen::MatrixX3d V(vertices.size(), 3);
    for (std::size_t i = 0; i < vertices.size(); ++i) V.row(i) = vertices[i];
    Eigen::MatrixX3i F(faces.size(), 3);
    for (std::size_t i = 0; i < faces.size(); ++i) F.row(i) = faces[i];
    return make_mesh(std::move(V), std::move(F));
}

} // namespace

Mesh parse_obj(std::string_view text) {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Eigen::Vector3i> faces;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto fields = split_ws(line);
        if (fields.empty() || fields[0][0] == '#') continue;

        if (fields[0] == "v") {
            if (fields.size() < 4)
                fail_line("OBJ", line_no, "vertex record needs 3 coordinates");
            Eigen::Vector3d p;
            for (int c = 0; c < 3; ++c)
                if (!parse_double(fields[c + 1], p[c]))
                    fail_line("OBJ", line_no, "bad coordinate '" + std::string(fields[c + 1]) + "'");
            vertices.push_back(p);
        } else if (fields[0] == "f") {
            if (fields.size() < 4)
                fail_line("OBJ", line_no, "face record needs at least 3 vertices");
            std::vector<int> poly;
            for (std::size_t i = 1; i < fields.size(); ++i) {
                std::string_view ref = fields[i];
                const std::size_t slash = ref.find('/');
                if (slash != std::string_view::npos) ref = ref.substr(0, slash);
                long idx = 0;
                if (!parse_int(ref, idx) || idx == 0)
                    fail_line("OBJ", line_no, "bad vertex reference '" + std::string(fields[i]) + "'");
                // OBJ: 1-based, negative counts back from the latest vertex.
                const long resolved = idx > 0 ? idx - 1 : static_cast<long>(vertices.size()) + idx;
                if (resolved < 0 || resolved >= static_cast<long>(vertices.size()))
                    fail_line("OBJ", line_no,
                              "vertex index " + std::to_string(idx) + " out of range (have " +
                                  std::to_string(vertices.size()) + " vertices)");
                poly.push_back(static_cast<int>(resolved));
            }
            emit_fan(poly, faces);
        }
        // All other record types (vt, vn, g, o, s, usemtl, ...) are ignored.
    }
    return finish(vertices, faces);
}

namespace {

struct PlyProperty {
    std::string name;
    bool is_list = false;
};

} // namespace

Mesh parse_ply_ascii(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        if (required) fail_line("PLY", line_no, "unexpected end of file");
        return false;
    };

    if (!next_line(true) || split_ws(line) != std::vector<std::string_view>{"ply"})
        fail_line("PLY", line_no, "missing 'ply' magic");

    long vertex_count = -1, face_count = -1;
    std::vector<PlyProperty> vertex_props;
    std::string current_element;
    bool format_seen = false;

    while (true) {
        next_line(true);
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields[0] == "comment") continue;
        if (fields[0] == "format") {
            if (fields.size() < 2 || fields[1] != "ascii")
                fail_line("PLY", line_no, "unsupported format '" +
                                              (fields.size() > 1 ? std::string(fields[1]) : "") +
                                              "' (only ascii 1.0)");
            format_seen = true;
        } else if (fields[0] == "element") {
            if (fields.size() < 3) fail_line("PLY", line_no, "malformed element record");
            long count = 0;
            if (!parse_int(fields[2], count) || count < 0)
                fail_line("PLY", line_no, "bad element count");
            current_element = std::string(fields[1]);
            if (current_element == "vertex") vertex_count = count;
            else if (current_element == "face") face_count = count;
        } else if (fields[0] == "property") {
            if (current_element == "vertex") {
                if (fields.size() >= 3 && fields[1] == "list")
                    fail_line("PLY", line_no, "list property on vertex element unsupported");
                if (fields.size() < 3) fail_line("PLY", line_no, "malformed property record");
                vertex_props.push_back({std::string(fields.back()), false});
            }
            // face properties: only the index list is read, per-face extras rejected below
        } else if (fields[0] == "end_header") {
            break;
        } else {
            fail_line("PLY", line_no, "unexpected header record '" + std::string(fields[0]) + "'");
        }
    }

    if (!format_seen) fail_line("PLY", line_no, "missing format record");
    if (vertex_count < 0) fail_line("PLY", line_no, "missing vertex element");
    if (face_count < 0) fail_line("PLY", line_no, "missing face element");

    int ix = -1, iy = -1, iz = -1;
    for (std::size_t i = 0; i < vertex_props.size(); ++i) {
        if (vertex_props[i].name == "x") ix = static_cast<int>(i);
        if (vertex_props[i].name == "y") iy = static_cast<int>(i);
        if (vertex_props[i].name == "z") iz = static_cast<int>(i);
    }
    if (ix < 0 || iy < 0 || iz < 0)
        fail_line("PLY", line_no, "vertex element must carry x, y, z properties");

    std::vector<Eigen::Vector3d> vertices;
    vertices.reserve(static_cast<std::size_t>(vertex_count));
    for (long v = 0; v < vertex_count; ++v) {
        if (!next_line(false))
            fail_line("PLY", line_no,
                      "vertex data truncated: expected " + std::to_string(vertex_count) +
                          " vertices, got " + std::to_string(v));
        const auto fields = split_ws(line);
        if (fields.size() < vertex_props.size())
            fail_line("PLY", line_no, "vertex row has " + std::to_string(fields.size()) +
                                          " values, expected " +
                                          std::to_string(vertex_props.size()));
        Eigen::Vector3d p;
        for (const auto& [slot, idx] : {std::pair{0, ix}, {1, iy}, {2, iz}})
            if (!parse_double(fields[idx], p[slot]))
                fail_line("PLY", line_no, "bad coordinate '" + std::string(fields[idx]) + "'");
        vertices.push_back(p);
    }

    std::vector<Eigen::Vector3i> faces;
    for (long f = 0; f < face_count; ++f) {
        if (!next_line(false))
            fail_line("PLY", line_no,
                      "face data truncated: expected " + std::to_string(face_count) +
                          " faces, got " + std::to_string(f));
        const auto fields = split_ws(line);
        long n = 0;
        if (fields.empty() || !parse_int(fields[0], n) || n < 3)
            fail_line("PLY", line_no, "malformed face row");
        if (static_cast<long>(fields.size()) < n + 1)
            fail_line("PLY", line_no, "face row shorter than its declared index count");
        std::vector<int> poly;
        for (long i = 0; i < n; ++i) {
            long idx = 0;
            if (!parse_int(fields[i + 1], idx))
                fail_line("PLY", line_no, "bad vertex index '" + std::string(fields[i + 1]) + "'");
            if (idx < 0 || idx >= vertex_count)
                fail_line("PLY", line_no, "vertex index " + std::to_string(idx) +
                                              " out of range [0, " + std::to_string(vertex_count) +
                                              ")");
            poly.push_back(static_cast<int>(idx));
        }
        emit_fan(poly, faces);
    }

    return finish(vertices, faces);
}

Mesh load_mesh(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    const std::string contents = read_file(path);
    if (ext == ".obj") return parse_obj(contents);
    if (ext == ".ply") return parse_ply_ascii(contents);
    throw std::runtime_error("unsupported mesh format '" + ext +
                             "' (only .obj and ASCII .ply are accepted)");
}

std::string export_ply(const Mesh& mesh, const std::optional<Eigen::MatrixX3i>& colors) {
    if (colors) {
        if (colors->rows() != mesh.vertex_count())
            throw std::runtime_error("color count " + std::to_string(colors->rows()) +
                                     " does not match vertex count " +
                                     std::to_string(mesh.vertex_count()));
        if (colors->minCoeff() < 0 || colors->maxCoeff() > 255)
            throw std::runtime_error("color components must lie in [0, 255]");
    }

    std::string out;
    out.reserve(static_cast<std::size_t>(mesh.vertex_count()) * 48);
    out += "ply\nformat ascii 1.0\n";
    out += "element vertex " + std::to_string(mesh.vertex_count()) + "\n";
    out += "property float x\nproperty float y\nproperty float z\n";
    if (colors)
        out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out += "element face " + std::to_string(mesh.face_count()) + "\n";
    out += "property list uchar int vertex_indices\nend_header\n";

    char buf[96];
    for (Eigen::Index v = 0; v < mesh.vertex_count(); ++v) {
        std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g", mesh.vertices(v, 0), mesh.vertices(v, 1),
                      mesh.vertices(v, 2));
        out += buf;
        if (colors) {
            std::snprintf(buf, sizeof buf, " %d %d %d", (*colors)(v, 0), (*colors)(v, 1),
                          (*colors)(v, 2));
            out += buf;
        }
        out += '\n';
    }
    for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
        std::snprintf(buf, sizeof buf, "3 %d %d %d\n", mesh.faces(f, 0), mesh.faces(f, 1),
                      mesh.faces(f, 2));
        out += buf;
    }
    return out;
}

std::string export_vertex_colors(const Mesh& mesh, const Eigen::MatrixX3i& colors) {
    return export_ply(mesh, colors);
}

CorrespondenceSet parse_correspondences(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("correspondence JSON: ") + e.what());
    }
    CorrespondenceSet set;
    set.src_mesh = doc.at("src_mesh").get<std::string>();
    set.dst_mesh = doc.at("dst_mesh").get<std::string>();
    for (const auto& entry : doc.at("pairs")) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::runtime_error("correspondence JSON: each pair must be [k, k']");
        set.pairs.emplace_back(entry[0].get<int>(), entry[1].get<int>());
    }
    return set;
}

std::string write_correspondences(const CorrespondenceSet& set) {
    json doc;
    doc["src_mesh"] = set.src_mesh;
    doc["dst_mesh"] = set.dst_mesh;
    auto& pairs = doc["pairs"] = json::array();
    for (const auto& [a, b] : set.pairs) pairs.push_back({a, b});
    return doc.dump(2) + "\n";
}

SymmetryMap parse_symmetry(std::string_view json_text, const Mesh& mesh) {
    const CorrespondenceSet set = parse_correspondences(json_text);
    const std::string hash = mesh_content_hash(mesh);
    if (set.src_mesh != hash || set.dst_mesh != hash)
        throw std::runtime_error("symmetry file is bound to mesh " + set.src_mesh +
                                 ", expected " + hash);
    return symmetry_from_pairs(set.pairs, mesh.vertex_count());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace cse
