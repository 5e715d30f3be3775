#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heis/ints.hpp"

namespace heis::entropy {

// r(n): words of length n over {x, x^{-1}, y, y^{-1}} multiplying to the
// identity, in the given group. All counts exact.
struct WordCountTable {
    enum class Group { Heisenberg, Z2, Free2 } group;
    int64_t n_max = 0;
    std::vector<int128> counts;  // counts[n] = r(n), 0 <= n <= n_max

    int128 at(int64_t n) const { return (n >= 0 && n <= n_max) ? counts[size_t(n)] : 0; }
};

// Lattice dynamic programming over the reachable (k, l, m) box; counts for
// odd n vanish. n_max <= 60 stays inside 128 bits.
WordCountTable word_count_heisenberg(int64_t n_max, bool parallel = true);

// Closed walks on Z^2: r(2n) = C(2n, n)^2.
WordCountTable word_count_z2(int64_t n_max);

// Free group on two generators, from the integer series of
// G(t) = 3 / (1 + 2 sqrt(1 - 12 t)) = sum r(2n) t^n.
WordCountTable word_count_free2(int64_t n_max);

// Versioned JSON cache with decimal-string counts.
std::string cache_to_json(const WordCountTable& t);
bool cache_from_json(const std::string& json, WordCountTable& out);
std::string group_name(WordCountTable::Group g);

}  // namespace heis::entropy
