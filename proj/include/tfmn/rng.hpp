#ifndef TFMN_RNG_HPP
#define TFMN_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace tfmn {

// All randomness in the toolkit flows from one documented generator so that
// independent re-implementations can reproduce every draw bit-for-bit:
//
//   - generator: splitmix64 (state += 0x9E3779B97F4A7C15, then mix)
//   - per-task seeds: derive_seed(seed, task_name) = mix64(seed ^ fnv1a64(name))
//   - per-sample substreams: substream_seed(seed, i) = mix64(seed ^ (GAMMA * (i+1)))
//   - bounded draws: modulo rejection (never std::uniform_int_distribution,
//     whose output sequence is implementation-defined)
//   - k distinct of n: partial Fisher-Yates over identity, taking slots 0..k-1

inline constexpr uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

    constexpr uint64_t next() {
        state_ += kSplitMixGamma;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

constexpr uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr uint64_t derive_seed(uint64_t seed, std::string_view task_name) {
    return mix64(seed ^ fnv1a64(task_name));
}

constexpr uint64_t substream_seed(uint64_t seed, uint64_t sample_index) {
    return mix64(seed ^ (kSplitMixGamma * (sample_index + 1)));
}

// Unbiased draw in [0, n). n must be > 0.
inline uint64_t bounded(SplitMix64& g, uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const uint64_t r = g.next();
        if (r >= threshold) return r % n;
    }
}

// k distinct indices out of [0, n), by partial Fisher-Yates.
inline std::vector<uint32_t> sample_distinct(SplitMix64& g, uint32_t n, uint32_t k) {
    std::vector<uint32_t> idx(n);
    for (uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (uint32_t j = 0; j < k; ++j) {
        const uint32_t pick = j + static_cast<uint32_t>(bounded(g, n - j));
        std::swap(idx[j], idx[pick]);
    }
    idx.resize(k);
    return idx;
}

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& g) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(bounded(g, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace tfmn

#endif
