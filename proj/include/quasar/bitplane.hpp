// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUASAR_BITPLANE_HPP_
#define QUASAR_BITPLANE_HPP_

#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "quasar/common.hpp"

namespace quasar {

// Word-level data-parallel primitives: exclusive XOR scan, XOR reduction,
// stable stream compaction and the w x w bit transpose. These are the
// building blocks of gate sign aggregation, pivot compaction and the
// prefix-XOR elimination.

template <Word W>
struct ScanResult {
    std::vector<W> prefixes;
    W total;
};

// prefixes[i] = values[0] ^ ... ^ values[i-1], prefixes[0] = 0.
template <Word W>
ScanResult<W> exclusive_scan_xor(std::span<const W> values) {
    ScanResult<W> out;
    out.prefixes.resize(values.size());
    W acc = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        out.prefixes[i] = acc;
        acc = static_cast<W>(acc ^ values[i]);
    }
    out.total = acc;
    return out;
}

// Blocked variant: per-block exclusive scans plus block sums, a scan of the
// block sums, and a merge pass. Must agree with the monolithic scan for any
// block size; the last partial block is handled as-is (identity padding).
template <Word W>
ScanResult<W> exclusive_scan_xor_blocked(std::span<const W> values, size_t block_size) {
    assert(block_size >= 1);
    size_t n = values.size();
    size_t blocks = n == 0 ? 0 : (n + block_size - 1) / block_size;

    ScanResult<W> out;
    out.prefixes.resize(n);
    out.total = 0;
    std::vector<W> block_sums(blocks, W{0});

    // Pass 1: block-local exclusive scans.
    for (size_t b = 0; b < blocks; ++b) {
        size_t lo = b * block_size;
        size_t hi = lo + block_size < n ? lo + block_size : n;
        W acc = 0;
        for (size_t i = lo; i < hi; ++i) {
            out.prefixes[i] = acc;
            acc = static_cast<W>(acc ^ values[i]);
        }
        block_sums[b] = acc;
    }

    // Pass 2: exclusive scan of block sums.
    auto sums = exclusive_scan_xor<W>(block_sums);

    // Pass 3: merge block prefixes into element prefixes.
    for (size_t b = 0; b < blocks; ++b) {
        size_t lo = b * block_size;
        size_t hi = lo + block_size < n ? lo + block_size : n;
        for (size_t i = lo; i < hi; ++i)
            out.prefixes[i] = static_cast<W>(out.prefixes[i] ^ sums.prefixes[b]);
    }
    out.total = sums.total;
    return out;
}

// Tree-shaped XOR reduction (pairwise halving). Equals a left fold by
// associativity; kept tree-shaped so sign collapses mirror the blocked
// aggregation they stand in for.
template <Word W>
W reduce_xor(std::span<const W> values) {
    size_t n = values.size();
    if (n == 0)
        return W{0};
    // Small fixed scratch keeps the common case allocation-free.
    if (n <= 64) {
        W buf[64];
        for (size_t i = 0; i < n; ++i)
            buf[i] = values[i];
        while (n > 1) {
            size_t half = (n + 1) / 2;
            for (size_t i = 0; i + half < n; ++i)
                buf[i] = static_cast<W>(buf[i] ^ buf[i + half]);
            n = half;
        }
        return buf[0];
    }
    std::vector<W> buf(values.begin(), values.end());
    while (n > 1) {
        size_t half = (n + 1) / 2;
        for (size_t i = 0; i + half < n; ++i)
            buf[i] = static_cast<W>(buf[i] ^ buf[i + half]);
        n = half;
    }
    return buf[0];
}

// Stable in-place compaction: entries >= 0 move to the front preserving
// order, the tail is filled with the sentinel. Returns the kept count.
inline size_t compact_select(std::span<int64_t> entries, int64_t sentinel) {
    assert(sentinel < 0);
    size_t kept = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] >= 0)
            entries[kept++] = entries[i];
    }
    for (size_t i = kept; i < entries.size(); ++i)
        entries[i] = sentinel;
    return kept;
}

// Bit-permutation masks for the in-tile transpose, one per shuffle round.
// Round l swaps 2^l-bit groups between word pairs at offset 2^l.
template <Word W>
struct TransposeMasks;

template <>
struct TransposeMasks<uint8_t> {
    static constexpr uint8_t masks[3] = {0x55, 0x33, 0x0F};
};
template <>
struct TransposeMasks<uint16_t> {
    static constexpr uint16_t masks[4] = {0x5555, 0x3333, 0x0F0F, 0x00FF};
};
template <>
struct TransposeMasks<uint32_t> {
    static constexpr uint32_t masks[5] = {0x55555555u, 0x33333333u, 0x0F0F0F0Fu, 0x00FF00FFu,
                                          0x0000FFFFu};
};
template <>
struct TransposeMasks<uint64_t> {
    static constexpr uint64_t masks[6] = {0x5555555555555555ull, 0x3333333333333333ull,
                                          0x0F0F0F0F0F0F0F0Full, 0x00FF00FF00FF00FFull,
                                          0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
};

// In-place transpose of a w x w bit tile held in w words (LSB-first rows):
// output bit (r, c) = input bit (c, r). log2(w) rounds of masked group swaps.
template <Word W>
void bit_transpose_tile(std::span<W> tile) {
    constexpr size_t w = word_bits<W>;
    if (tile.size() != w)
        throw std::invalid_argument("bit_transpose_tile: tile must hold exactly w words");
    constexpr auto &masks = TransposeMasks<W>::masks;
    for (size_t l = 0; l < sizeof(masks) / sizeof(masks[0]); ++l) {
        const W mask = masks[l];
        const size_t offset = size_t{1} << l;
        for (size_t i = 0; i < w; i += 2 * offset) {
            for (size_t j = i; j < i + offset; ++j) {
                W x = tile[j];
                W y = tile[j + offset];
                tile[j] = static_cast<W>((x & mask) | ((y & mask) << offset));
                tile[j + offset] = static_cast<W>(((x & ~mask) >> offset) | (y & ~mask));
            }
        }
    }
}

} // namespace quasar

#endif // QUASAR_BITPLANE_HPP_
