#pragma once

// Seeded sample generation and Q grids. Random integers come straight from
// std::mt19937_64 reduced modulo the range, so a seed yields the same points
// on every platform (the standard distributions are implementation-defined).

#include <cstdint>
#include <random>
#include <vector>

#include "dlab/ratcore.hpp"

namespace dlab {

class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform-ish integer in [lo, hi] (modulo reduction; the bias is below
    /// 2^-40 for the ranges used here).
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

private:
    std::mt19937_64 gen_;
};

/// Point of [0,1)^d whose coordinates have independent denominators drawn
/// from [1, den_cap].
RatVec random_point(SampleRng& rng, std::size_t d, std::uint64_t den_cap);

/// Point of [0,1)^d with every coordinate k/den.
RatVec random_point_over(SampleRng& rng, std::size_t d, std::uint64_t den);

std::vector<RatVec> random_points(std::uint64_t seed, std::size_t count, std::size_t d, std::uint64_t den_cap);

/// base^k for k = kmin..kmax, dropping values above cap.
std::vector<std::uint64_t> power_grid(std::uint64_t base, unsigned kmin, unsigned kmax, std::uint64_t cap = UINT64_MAX);

/// Sorted union without duplicates.
std::vector<std::uint64_t> merge_grids(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b);

}  // namespace dlab
