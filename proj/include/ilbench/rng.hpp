#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace ilbench {

/// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
/// is fixed by the standard) and derives all variates from raw 64-bit draws,
/// so results are bit-identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Multiply-shift mapping of one 64-bit draw;
    /// the residual bias is below n / 2^64.
    int uniform_int(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                                 static_cast<unsigned __int128>(n)) >>
                                64);
    }

    /// Sample an index from a cumulative distribution (cdf.back() ~ 1).
    int categorical_cdf(std::span<const double> cdf) {
        const double x = uniform();
        int lo = 0;
        int hi = static_cast<int>(cdf.size()) - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (x < cdf[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    /// Sample an index from a probability vector by linear scan.
    int categorical(std::span<const double> probs) {
        double x = uniform();
        const int n = static_cast<int>(probs.size());
        for (int i = 0; i < n; ++i) {
            x -= probs[i];
            if (x < 0.0) return i;
        }
        return n - 1;
    }

  private:
    std::mt19937_64 engine_;
};

/// FNV-1a over a byte string; used for stable seed derivation.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Child seed for (master seed, label, index); stable across platforms and
/// independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
    std::uint64_t h = fnv1a64_u64(master, 0xcbf29ce484222325ull);
    h = fnv1a64(label, h);
    h = fnv1a64_u64(index, h);
    // splitmix64 finalizer to spread low-entropy inputs
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

} // namespace ilbench
