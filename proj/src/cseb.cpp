// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/cseb.hpp"

#include <cstring>
#include <stdexcept>

#include "cse/mesh_io.hpp"

namespace cse {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'E', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    put_u64(out, bits);
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }

    std::uint32_t u32() {
        const auto s = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(std::uint8_t(s[i])) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        const auto s = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(std::uint8_t(s[i])) << (8 * i);
        return v;
    }

    double f64() {
        const std::uint64_t bits = u64();
        double d;
        std::memcpy(&d, &bits, sizeof d);
        return d;
    }

    bool done() const { return pos_ == bytes_.size(); }

private:
    std::string_view take(std::size_t n) {
        if (pos_ + n > bytes_.size()) throw std::runtime_error("CSEB: truncated container");
        const auto s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

} // namespace

Tensor Tensor::from_matrix(const Eigen::MatrixXd& m) {
    Tensor t;
    t.dims = {static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())};
    t.data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) t.data.push_back(m(r, c));
    return t;
}

Tensor Tensor::from_vector(const Eigen::VectorXd& v) {
    Tensor t;
    t.dims = {static_cast<std::uint64_t>(v.size())};
    t.data.assign(v.data(), v.data() + v.size());
    return t;
}

Eigen::MatrixXd Tensor::to_matrix() const {
    if (dims.size() != 2) throw std::runtime_error("CSEB: tensor rank is not 2");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = data[k++];
    return m;
}

Eigen::VectorXd Tensor::to_vector() const {
    if (dims.size() != 1) throw std::runtime_error("CSEB: tensor rank is not 1");
    return Eigen::Map<const Eigen::VectorXd>(data.data(), static_cast<Eigen::Index>(dims[0]));
}

std::uint64_t Tensor::element_count() const {
    std::uint64_t n = 1;
    for (const auto d : dims) n *= d;
    return n;
}

std::string encode_cseb(const std::vector<Tensor>& tensors) {
    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(tensors.size()));
    for (const auto& t : tensors) {
        if (t.dims.empty() || t.dims.size() > 255)
            throw std::invalid_argument("CSEB: tensor rank must be in [1, 255]");
        if (t.element_count() != t.data.size())
            throw std::invalid_argument("CSEB: tensor data does not match its dims");
        out.push_back(static_cast<char>(t.dims.size()));
        for (const auto d : t.dims) put_u64(out, d);
        for (const double v : t.data) put_f64(out, v);
    }
    return out;
}

std::vector<Tensor> decode_cseb(std::string_view bytes) {
    Reader r(bytes);
    char magic[4];
    for (auto& c : magic) c = static_cast<char>(r.u8());
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("CSEB: bad magic (not a CSEB container)");
    const std::uint32_t version = r.u32();
    if (version != kVersion)
        throw std::runtime_error("CSEB: unsupported version " + std::to_string(version));
    const std::uint32_t count = r.u32();
    std::vector<Tensor> tensors(count);
    for (auto& t : tensors) {
        const std::uint8_t rank = r.u8();
        if (rank == 0) throw std::runtime_error("CSEB: zero-rank tensor");
        t.dims.resize(rank);
        for (auto& d : t.dims) d = r.u64();
        const std::uint64_t n = t.element_count();
        if (n > (1ull << 32)) throw std::runtime_error("CSEB: tensor too large");
        t.data.resize(static_cast<std::size_t>(n));
        for (auto& v : t.data) v = r.f64();
    }
    if (!r.done()) throw std::runtime_error("CSEB: trailing bytes after last tensor");
    return tensors;
}

void write_cseb(const std::string& path, const std::vector<Tensor>& tensors) {
    write_file(path, encode_cseb(tensors));
}

std::vector<Tensor> read_cseb(const std::string& path) {
    return decode_cseb(read_file(path));
}

} // namespace cse
