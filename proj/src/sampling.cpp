#include "dlab/sampling.hpp"

#include <algorithm>

namespace dlab {

std::uint64_t SampleRng::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw DomainError("empty sampling range");
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return gen_();
    return lo + gen_() % (span + 1);
}

RatVec random_point(SampleRng& rng, std::size_t d, std::uint64_t den_cap) {
    if (den_cap < 1) throw DomainError("denominator cap must be >= 1");
    std::vector<BigRational> c;
    for (std::size_t i = 0; i < d; ++i) {
        const std::uint64_t den = rng.uniform(1, den_cap);
        const std::uint64_t num = rng.uniform(0, den - 1);
        c.emplace_back(BigInt(static_cast<unsigned long>(num)), BigInt(static_cast<unsigned long>(den)));
    }
    return RatVec(std::move(c));
}

RatVec random_point_over(SampleRng& rng, std::size_t d, std::uint64_t den) {
    if (den < 1) throw DomainError("denominator must be >= 1");
    std::vector<BigRational> c;
    for (std::size_t i = 0; i < d; ++i)
        c.emplace_back(BigInt(static_cast<unsigned long>(rng.uniform(0, den - 1))), BigInt(static_cast<unsigned long>(den)));
    return RatVec(std::move(c));
}

std::vector<RatVec> random_points(std::uint64_t seed, std::size_t count, std::size_t d, std::uint64_t den_cap) {
    SampleRng rng(seed);
    std::vector<RatVec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_point(rng, d, den_cap));
    return out;
}

std::vector<std::uint64_t> power_grid(std::uint64_t base, unsigned kmin, unsigned kmax, std::uint64_t cap) {
    if (base < 2) throw DomainError("grid base must be >= 2");
    std::vector<std::uint64_t> out;
    std::uint64_t v = 1;
    for (unsigned k = 0; k <= kmax; ++k) {
        if (k >= kmin && v <= cap) out.push_back(v);
        if (v > cap / base) break;
        v *= base;
    }
    return out;
}

std::vector<std::uint64_t> merge_grids(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

}  // namespace dlab
