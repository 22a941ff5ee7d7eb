#ifndef ACH_RNG_HPP
#define ACH_RNG_HPP

#include "ach/heisenberg.hpp"

#include <cstdint>

namespace ach {

/// Deterministic, platform-independent generator for the randomized property
/// checks (seeded from --seed; identical streams on every build).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

inline GaussianRational random_gaussian(SplitMix64& rng) {
    auto small = [&](bool nonzero) {
        long p = static_cast<long>(rng.below(7)) - 3;
        if (nonzero && p == 0) p = 1;
        long q = 1 + static_cast<long>(rng.below(2));
        return BigRational(BigInt(p), BigInt(q));
    };
    BigRational re = small(true);
    BigRational im = rng.below(2) ? small(false) : BigRational(0);
    return GaussianRational(re, im);
}

inline HeisPoly random_heis_poly(SplitMix64& rng, int n, int max_monomials, int max_deg) {
    HeisPoly p(n);
    int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_monomials)));
    for (int m = 0; m < count; ++m) {
        HeisMono mono(n);
        int budget = max_deg;
        for (int a = 0; a < n && budget > 0; ++a) {
            if (rng.below(2)) { mono.ze[a] = static_cast<std::uint32_t>(rng.below(2)); }
            if (rng.below(2)) { mono.zbe[a] = static_cast<std::uint32_t>(rng.below(2)); }
            budget -= static_cast<int>(mono.ze[a] + mono.zbe[a]);
        }
        if (rng.below(3) == 0) mono.te = 1;
        p.add_term(mono, random_gaussian(rng));
    }
    if (p.is_zero()) p = HeisPoly::constant(n, GaussianRational(1));
    return p;
}

}  // namespace ach

#endif
