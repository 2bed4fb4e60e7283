#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace miskit {

// Portable deterministic RNG. Two well-known public-domain generators:
// SplitMix64 (Steele/Lea/Flood) for seeding and seed derivation, and
// xoshiro256** (Blackman/Vigna) as the main stream. Both are fully
// specified in terms of 64-bit integer ops, so the same seed produces
// the same stream on every platform.

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
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

    // Uniform double in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by rejection, bias-free.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Fisher-Yates shuffle driven by this stream.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Deterministic seed derivation for independent sub-streams (per attempt,
// per graph, per method ...). next() values are SplitMix64 outputs.
class SeedSequence {
public:
    explicit SeedSequence(std::uint64_t root) : sm_(root) {}
    std::uint64_t next() { return sm_.next(); }

private:
    SplitMix64 sm_;
};

// Stable mix of a root seed with stream indices, used so batch runs assign
// the same per-item seed regardless of execution order.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 sm(root ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xD1B54A32D192ED03ULL));
    return sm.next();
}

}  // namespace miskit
