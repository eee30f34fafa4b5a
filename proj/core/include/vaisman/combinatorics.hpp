#pragma once

// Strictly increasing multi-indices over {1..n}, represented as bitmasks.
// Tables are built once per (n,k) and shared.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vaisman {

inline constexpr int kMaxComplexDim = 6;

struct IndexTable {
    std::vector<uint32_t> masks;       // increasing tuples in enumeration order
    std::array<int, 1 << kMaxComplexDim> rank{};  // mask -> position, -1 if wrong size

    IndexTable() { rank.fill(-1); }
};

// Table of all k-subsets of {0..n-1}.
inline const IndexTable& index_table(int n, int k) {
    static IndexTable tables[kMaxComplexDim + 1][kMaxComplexDim + 1];
    static bool built[kMaxComplexDim + 1][kMaxComplexDim + 1] = {};
    if (n < 0 || n > kMaxComplexDim || k < 0 || k > n)
        throw std::out_of_range("index_table: need 0 <= k <= n <= 6");
    IndexTable& t = tables[n][k];
    if (!built[n][k]) {
        for (uint32_t m = 0; m < (1u << n); ++m) {
            if (std::popcount(m) == k) {
                t.rank[m] = static_cast<int>(t.masks.size());
                t.masks.push_back(m);
            }
        }
        built[n][k] = true;
    }
    return t;
}

inline int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return static_cast<int>(r);
}

// Sign of concatenating two disjoint increasing tuples a, b into one increasing
// tuple: (-1)^{#inversions}. Returns 0 if the masks overlap.
inline int merge_sign(uint32_t a, uint32_t b) {
    if (a & b) return 0;
    int inversions = 0;
    uint32_t bb = b;
    while (bb) {
        uint32_t low = bb & (~bb + 1);
        // elements of a strictly greater than this element of b
        inversions += std::popcount(a & ~(low | (low - 1)));
        bb ^= low;
    }
    return (inversions & 1) ? -1 : 1;
}

// Sign of the permutation taking (tuple(m), tuple(complement)) to (0,...,n2-1).
inline int complement_sign(uint32_t m, int n2) {
    uint32_t full = (n2 == 32) ? ~0u : ((1u << n2) - 1);
    return merge_sign(m, full & ~m);
}

// Extract tuple entries of a mask in increasing order.
inline void mask_entries(uint32_t m, int* out, int& count) {
    count = 0;
    while (m) {
        uint32_t low = m & (~m + 1);
        out[count++] = std::countr_zero(low);
        m ^= low;
    }
}

}  // namespace vaisman
