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

#include <catch2/catch_amalgamated.hpp>

#include "quasar/bitplane.hpp"
#include "quasar/rng.hpp"

using namespace quasar;

namespace {

// Independent oracles: plain sequential fold / filter.
template <Word W>
std::vector<W> fold_prefixes(const std::vector<W> &v) {
    std::vector<W> out(v.size());
    W acc = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        out[i] = acc;
        acc = static_cast<W>(acc ^ v[i]);
    }
    return out;
}

template <Word W>
W fold_total(const std::vector<W> &v) {
    W acc = 0;
    for (W x : v)
        acc = static_cast<W>(acc ^ x);
    return acc;
}

std::vector<int64_t> filter_then_pad(const std::vector<int64_t> &v) {
    std::vector<int64_t> out;
    for (int64_t x : v)
        if (x >= 0)
            out.push_back(x);
    out.resize(v.size(), -1);
    return out;
}

template <Word W>
std::vector<W> naive_bit_transpose(const std::vector<W> &tile) {
    constexpr size_t w = word_bits<W>;
    std::vector<W> out(w, 0);
    for (size_t r = 0; r < w; ++r)
        for (size_t c = 0; c < w; ++c)
            set_bit(out[r], c, get_bit(tile[c], r));
    return out;
}

template <Word W>
std::vector<W> random_words(RandomStream &rng, size_t count) {
    std::vector<W> v(count);
    for (auto &x : v)
        x = static_cast<W>(rng.next_word());
    return v;
}

} // namespace

TEST_CASE("exclusive scan: hand-checked and empty") {
    std::vector<uint64_t> v = {0b1010, 0b0110, 0b1100};
    auto r = exclusive_scan_xor<uint64_t>(v);
    REQUIRE(r.prefixes == std::vector<uint64_t>{0, 0b1010, 0b1100});
    REQUIRE(r.total == 0b0000);

    std::vector<uint64_t> empty;
    auto e = exclusive_scan_xor<uint64_t>(empty);
    REQUIRE(e.prefixes.empty());
    REQUIRE(e.total == 0);
}

TEST_CASE("exclusive scan: blocked equals sequential fold") {
    RandomStream rng(0xA11CE, 7);
    for (size_t block : {size_t{32}, size_t{256}, size_t{1024}}) {
        auto v = random_words<uint64_t>(rng, 100000);
        auto blocked = exclusive_scan_xor_blocked<uint64_t>(v, block);
        REQUIRE(blocked.prefixes == fold_prefixes(v));
        REQUIRE(blocked.total == fold_total(v));
    }
    // Sizes not divisible by the block size.
    for (size_t n : {size_t{0}, size_t{1}, size_t{31}, size_t{33}, size_t{1000}}) {
        auto v = random_words<uint32_t>(rng, n);
        auto blocked = exclusive_scan_xor_blocked<uint32_t>(v, 32);
        REQUIRE(blocked.prefixes == fold_prefixes(v));
        REQUIRE(blocked.total == fold_total(v));
    }
}

TEST_CASE("scan invariant: prefixes chain with values") {
    RandomStream rng(42, 7);
    auto v = random_words<uint64_t>(rng, 500);
    auto r = exclusive_scan_xor<uint64_t>(v);
    for (size_t i = 0; i + 1 < v.size(); ++i)
        REQUIRE(r.prefixes[i + 1] == (r.prefixes[i] ^ v[i]));
    if (!v.empty())
        REQUIRE(r.total == (r.prefixes.back() ^ v.back()));
}

TEST_CASE("reduce_xor: identities and fold oracle") {
    REQUIRE(reduce_xor<uint64_t>(std::vector<uint64_t>{0xDEAD}) == 0xDEAD);
    REQUIRE(reduce_xor<uint64_t>(std::vector<uint64_t>{0xAB, 0xAB}) == 0);
    REQUIRE(reduce_xor<uint64_t>(std::vector<uint64_t>{}) == 0);

    RandomStream rng(7, 7);
    for (int trial = 0; trial < 200; ++trial) {
        auto v = random_words<uint64_t>(rng, rng.next_below(300));
        REQUIRE(reduce_xor<uint64_t>(v) == fold_total(v));
    }
}

TEST_CASE("compact_select: pivot example and oracles") {
    std::vector<int64_t> v = {-1, 1, -1, 3, 4, -1};
    REQUIRE(compact_select(v, -1) == 3);
    REQUIRE(v == std::vector<int64_t>{1, 3, 4, -1, -1, -1});

    std::vector<int64_t> sentinels(8, -1);
    REQUIRE(compact_select(sentinels, -1) == 0);
    REQUIRE(sentinels == std::vector<int64_t>(8, -1));

    RandomStream rng(99, 7);
    for (int trial = 0; trial < 500; ++trial) {
        size_t n = rng.next_below(200);
        std::vector<int64_t> a(n);
        for (auto &x : a)
            x = rng.next_bit() ? static_cast<int64_t>(rng.next_below(1000)) : -1;
        auto expect = filter_then_pad(a);
        size_t kept = compact_select(a, -1);
        REQUIRE(a == expect);
        size_t oracle_kept = 0;
        for (int64_t x : expect)
            oracle_kept += x >= 0;
        REQUIRE(kept == oracle_kept);
    }
}

TEMPLATE_TEST_CASE("bit_transpose_tile: oracle and involution", "", uint8_t, uint16_t,
                   uint32_t, uint64_t) {
    using W = TestType;
    constexpr size_t w = word_bits<W>;

    // Identity bit-matrix maps to itself.
    std::vector<W> ident(w, 0);
    for (size_t i = 0; i < w; ++i)
        set_bit(ident[i], i, true);
    auto ident_copy = ident;
    bit_transpose_tile<W>(ident_copy);
    REQUIRE(ident_copy == ident);

    // Single set bit moves to the mirrored coordinate.
    if constexpr (w >= 32) {
        std::vector<W> tile(w, 0);
        set_bit(tile[3], 17, true);
        bit_transpose_tile<W>(tile);
        std::vector<W> expect(w, 0);
        set_bit(expect[17], 3, true);
        REQUIRE(tile == expect);
    }

    RandomStream rng(123, 7);
    for (int trial = 0; trial < 1000; ++trial) {
        auto tile = random_words<W>(rng, w);
        auto expect = naive_bit_transpose<W>(tile);
        auto got = tile;
        bit_transpose_tile<W>(got);
        REQUIRE(got == expect);
        bit_transpose_tile<W>(got);
        REQUIRE(got == tile); // involution
    }

    std::vector<W> wrong(w + 1, 0);
    REQUIRE_THROWS_AS(bit_transpose_tile<W>(wrong), std::invalid_argument);
}
