// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <cstdint>
#include <random>

#include "cse/hash.hpp"

namespace cse {

// Deterministic random source. mt19937_64 plus hand-rolled distributions so
// that identical seeds give identical streams on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; one spare value cached.
    double normal();

    // Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t uniform_index(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

    // Independent child stream identified by a tag.
    Rng fork(std::uint64_t tag) const {
        std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
        return Rng(splitmix64(s));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cse
