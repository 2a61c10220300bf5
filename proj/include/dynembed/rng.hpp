#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dynembed {

// Self-contained xoshiro256** generator. The standard library distributions
// are not bit-reproducible across implementations, so everything that feeds
// reproducible output (walks, sampling, SGD shuffles, init) goes through
// this class instead.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
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

    // Unbiased integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    float uniform(float lo, float hi) { return lo + static_cast<float>(unit()) * (hi - lo); }

    // Independent stream keyed on (tag, index); derivation only depends on
    // the constructor seed, never on how much this generator has been used.
    Rng derive(std::uint64_t tag, std::uint64_t index = 0) const {
        std::uint64_t x = seed_;
        std::uint64_t h = splitmix64(x);
        x ^= tag + 0x9e3779b97f4a7c15ULL;
        h ^= splitmix64(x);
        x ^= index + 0x9e3779b97f4a7c15ULL;
        h ^= splitmix64(x);
        return Rng(h);
    }

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t seed_;
    std::uint64_t state_[4];
};

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    const std::size_t n = items.size();
    if (n < (1u << 16)) {
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i));
            std::swap(items[i - 1], items[j]);
        }
        return;
    }
    // Large arrays: the swap targets are random and every one is a cache
    // miss. The draw sequence does not depend on the array, so draw all
    // indices first and prefetch ahead while swapping. Same permutation as
    // the plain loop.
    std::vector<std::uint64_t> js(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) js[k] = rng.below(n - k);
    constexpr std::size_t kAhead = 16;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (k + kAhead < js.size()) __builtin_prefetch(&items[js[k + kAhead]], 1, 1);
        std::swap(items[n - 1 - k], items[js[k]]);
    }
}

// k distinct elements drawn uniformly from pool, in draw order.
template <typename T>
std::vector<T> sample_without_replacement(std::span<const T> pool, std::size_t k, Rng& rng) {
    std::vector<T> scratch(pool.begin(), pool.end());
    if (k > scratch.size()) k = scratch.size();
    std::vector<T> out;
    out.reserve(k);
    std::size_t remaining = scratch.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(remaining));
        out.push_back(scratch[j]);
        scratch[j] = scratch[--remaining];
    }
    return out;
}

}  // namespace dynembed
