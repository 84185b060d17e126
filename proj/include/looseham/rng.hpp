#pragma once

#include <cstdint>
#include <vector>

// Small self-contained PRNG. std::mt19937_64 is portable, but the standard
// distributions are not bit-reproducible across library implementations, so
// seeded experiments use these helpers instead.

namespace looseham {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0; rejection sampling keeps it unbiased
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

// deterministic per-stream seed derivation from a master seed
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 s(master ^ (0xa0761d6478bd642fULL + stream * 0xe7037ed1a0b428dbULL));
    return s.next();
}

}  // namespace looseham
