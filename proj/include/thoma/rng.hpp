#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace thoma {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Seed for replica i, derived from the master seed. Replica streams never
/// share state, so results are independent of scheduling order.
inline std::uint64_t replica_seed(std::uint64_t master, int replica) {
    return splitmix64(master ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(replica + 1)));
}

/// Deterministic source of raw 64-bit words and exact dyadic uniforms.
/// Only mt19937_64's raw output is used (its sequence is pinned by the
/// standard); std::*_distribution adapters are implementation-defined and
/// deliberately avoided.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on {0, 1, ..., 2^128 - 1} / 2^128 as an exact rational.
    Rat next_unit_rational() {
        BigInt u{next_u64()};
        u <<= 64;
        u += next_u64();
        static const BigInt two128 = BigInt(1) << 128;
        return Rat(u, two128);
    }

private:
    std::mt19937_64 gen_;
};

/// Inverse-CDF draw over exact rational weights. Weights must sum to 1;
/// comparisons against the 128-bit dyadic uniform are exact, so the sampled
/// law differs from the target by less than 2^-128 per outcome.
template <class T>
const T& sample_discrete(const std::vector<std::pair<T, Rat>>& row, SampleRng& rng) {
    if (row.empty()) throw std::invalid_argument("sample_discrete: empty row");
    const Rat u = rng.next_unit_rational();
    Rat cum{0};
    for (const auto& [item, p] : row) {
        cum += p;
        if (u < cum) return item;
    }
    return row.back().first;
}

}  // namespace thoma
