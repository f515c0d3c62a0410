// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cse {

// Streaming FNV-1a (64-bit). Used for content identity of meshes, bases and
// embeddings; not cryptographic.
class Hasher {
public:
    Hasher& bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }

    Hasher& u64(std::uint64_t v) {
        unsigned char le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(v >> (8 * i));
        return bytes(le, 8);
    }

    Hasher& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }

    // Doubles are hashed through their IEEE-754 bit pattern, little-endian.
    Hasher& f64(double v);

    Hasher& str(std::string_view s) {
        u64(s.size());
        return bytes(s.data(), s.size());
    }

    std::uint64_t value() const { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

// SplitMix64 step; used to derive independent RNG streams from one seed.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace cse
