#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace imc {

/// Finalizer step of SplitMix64; also used to derive child stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic seed for sub-stream `stream` of `seed`. Splitting does not
/// depend on draw order, so parallel work can be seeded reproducibly.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed + 0x9e3779b97f4a7c15ull * (stream + 1)) + 0x632be59bd9b4e019ull);
}

/**
 * SplitMix64: the project-wide pseudo-random generator. Seedable, splittable
 * and tiny; identical seeds produce identical streams on every platform
 * (no reliance on libstdc++ distribution internals).
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1); safe as a log() argument.
    double next_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n); rejection sampling avoids modulo bias.
    std::size_t next_below(std::size_t n) {
        if (n == 0) throw std::invalid_argument("next_below: n must be positive");
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<std::size_t>(x % span);
    }

    /// Independent child stream for the given index.
    SplitMix64 split(std::uint64_t stream) const {
        return SplitMix64(split_seed(state_, stream));
    }

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by SplitMix64.
template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng.next_below(i);
        std::swap(v[i - 1], v[j]);
    }
}

/// Uniform sample from the (k-1)-dimensional probability simplex
/// (normalised standard exponentials).
inline std::vector<double> uniform_simplex(std::size_t k, SplitMix64& rng) {
    if (k == 0) throw std::invalid_argument("uniform_simplex: k must be positive");
    std::vector<double> w(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = -std::log(rng.next_open());
        total += w[i];
    }
    for (double& x : w) x /= total;
    return w;
}

/// Index draw from a nonnegative weight vector (weights need not sum to one).
inline std::size_t sample_categorical(const std::vector<double>& w, SplitMix64& rng) {
    double total = 0.0;
    for (double x : w) total += x;
    if (!(total > 0.0)) throw std::invalid_argument("sample_categorical: zero total weight");
    const double u = rng.next_double() * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 0.0) last_positive = i;
        cum += w[i];
        if (u < cum) return i;
    }
    return last_positive;
}

} // namespace imc
