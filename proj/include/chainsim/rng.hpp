#pragma once

#include <cstdint>
#include <string_view>

namespace chainsim {

//! splitmix64-based generator. std::mt19937 plus the standard distributions
//! are not bit-stable across library implementations; runs must replay
//! byte-for-byte from (config, seed), so the generator is pinned here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    //! Uniform in [lo, hi] inclusive, Lemire-style rejection (unbiased).
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t span = hi - lo + 1;
        if (span == 0) return next(); // full 64-bit range
        std::uint64_t x, r;
        do {
            x = next();
            r = x % span;
        } while (x - r > std::uint64_t(0) - span);
        return lo + r;
    }

    std::int64_t uniform_i64(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform(0, static_cast<std::uint64_t>(hi - lo)));
    }

  private:
    std::uint64_t state_;
};

//! Derive an independent stream from (seed, label, round); generators are pure
//! functions of these, so workloads replay identically regardless of call order.
inline Rng derive_rng(std::uint64_t seed, std::string_view label, std::uint64_t round) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    h ^= round + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return Rng(h);
}

} // namespace chainsim
