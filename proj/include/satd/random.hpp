// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace satd {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Mixes a base seed with a path of integers (epoch, batch index, fold, ...)
/// into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Seeded generator whose outputs are identical on every standard library.
/// std::mt19937_64 is bit-exact by the standard; the distributions are not,
/// so the bounded draws are done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

    /// True with probability p; never true for p <= 0.
    bool chance(double p) { return unit() < p; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace satd
