#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace hawkes {

// Counter-based stream derivation on top of xoshiro256++. Every consumer of
// randomness receives a stream derived from (master_seed, tag, index); replication
// r of any experiment owns stream index r, so results do not depend on how
// replications are scheduled across workers. All variate transformations are
// implemented here rather than taken from <random>, whose distributions are
// implementation-defined and would break byte reproducibility across toolchains.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
    // FNV-1a, then one splitmix round to spread low-entropy tags.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = h;
    return splitmix64(s);
}

class RngStream {
  public:
    RngStream() : RngStream(0, "default", 0) {}

    RngStream(std::uint64_t master_seed, std::string_view tag, std::uint64_t index) {
        std::uint64_t s = master_seed ^ hash_tag(tag);
        s ^= 0x5851f42d4c957f2dULL * (index + 1);
        state_[0] = splitmix64(s);
        state_[1] = splitmix64(s);
        state_[2] = splitmix64(s);
        state_[3] = splitmix64(s);
        has_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1): 53-bit mantissa, zero excluded so log() is safe.
    double uniform() {
        std::uint64_t bits = next_u64() >> 11;
        if (bits == 0) bits = 1;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

    // Uniform integer in {0, ..., n-1} by rejection; unbiased for any n.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // Standard normal via the polar method; the second variate of each pair is
    // cached, so draws come in a fixed per-stream order.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double v1, v2, s;
        do {
            v1 = 2.0 * uniform() - 1.0;
            v2 = 2.0 * uniform() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * m;
        has_spare_ = true;
        return v1 * m;
    }

    // Poisson by Knuth multiplication; intended for small means (Cox cells).
    std::uint64_t poisson(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            p *= uniform();
            if (p <= limit) break;
            ++k;
        } while (true);
        return k;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_;
    bool has_spare_;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::string_view tag,
                               std::uint64_t index) {
    return RngStream(master_seed, tag, index);
}

}  // namespace hawkes
