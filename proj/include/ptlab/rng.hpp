#pragma once

#include <cstdint>

namespace ptlab {

// SplitMix64 (Steele, Lea, Flood 2014). Pure 64-bit integer arithmetic, so
// sequences are byte-identical across platforms for the same seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(bound));
    }

  private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Independent substream for (seed, index). Used one-per-round in matches so
// a match split across workers by round index reproduces the single-threaded
// tally exactly.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t a = detail::mix64(seed + 0x9E3779B97F4A7C15ULL);
    const std::uint64_t b = detail::mix64(index * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL);
    return SplitMix64(a ^ b);
}

} // namespace ptlab
