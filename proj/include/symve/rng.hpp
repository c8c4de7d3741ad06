#pragma once

#include <cstdint>

namespace symve {

// SplitMix64, used to expand seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256**. All randomness in the project flows through this
// generator so runs are reproducible bit-for-bit across platforms;
// std::uniform_*_distribution is never used for the same reason.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        for (auto& word : state_) word = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Per-component seed derivation: base_seed XOR a role constant, mixed
// again so nearby seeds do not produce correlated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t role) {
    std::uint64_t s = base ^ role;
    return splitmix64(s);
}

namespace seed_role {
inline constexpr std::uint64_t bench_run = 0x42454e4348525355ULL;
inline constexpr std::uint64_t anneal = 0x414e4e45414c5347ULL;
inline constexpr std::uint64_t random_order = 0x52414e444f524452ULL;
}  // namespace seed_role

}  // namespace symve
