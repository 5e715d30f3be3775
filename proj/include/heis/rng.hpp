#pragma once

#include <cstdint>

namespace heis {

// SplitMix64. The seed-to-stream mapping is part of the repo contract:
// stream i of master seed s starts from splitmix64_mix(s + 0x9e3779b97f4a7c15 * (i+1)),
// and uniform doubles are (x >> 11) * 2^-53. Identical on every platform, so
// parallel scheduling can never change sampled values.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    static SplitMix64 stream(uint64_t master_seed, uint64_t index) {
        return SplitMix64(mix(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
    }
};

}  // namespace heis
