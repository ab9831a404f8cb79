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

#ifndef QUASAR_COMMON_HPP_
#define QUASAR_COMMON_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <type_traits>

namespace quasar {

// Machine word used for bit-packed planes. The whole engine is templated on
// this type; 64-bit words are the default, smaller widths exist for tests.
template <typename W>
concept Word = std::is_same_v<W, uint8_t> || std::is_same_v<W, uint16_t> ||
               std::is_same_v<W, uint32_t> || std::is_same_v<W, uint64_t>;

template <Word W>
inline constexpr size_t word_bits = sizeof(W) * 8;

template <Word W>
inline constexpr W word_one = W{1};

// Number of W-words needed to hold `bits` bits.
template <Word W>
constexpr size_t words_for(size_t bits) {
    return (bits + word_bits<W> - 1) / word_bits<W>;
}

template <Word W>
constexpr bool get_bit(W w, size_t b) {
    return (w >> b) & W{1};
}

template <Word W>
constexpr void set_bit(W &w, size_t b, bool v) {
    w = static_cast<W>((w & ~(W{1} << b)) | (static_cast<W>(v) << b));
}

// Mask selecting the low `bits` bits of a word (bits == word size -> all ones).
template <Word W>
constexpr W low_mask(size_t bits) {
    return bits >= word_bits<W> ? static_cast<W>(~W{0})
                                : static_cast<W>((W{1} << bits) - 1);
}

template <Word W>
constexpr int popcount(W w) {
    return std::popcount(w);
}

} // namespace quasar

#endif // QUASAR_COMMON_HPP_
