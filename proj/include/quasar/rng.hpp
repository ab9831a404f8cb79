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

#ifndef QUASAR_RNG_HPP_
#define QUASAR_RNG_HPP_

#include <array>
#include <cstdint>

namespace quasar {

// Philox-4x32-10 counter-based generator. Random words are a pure function
// of (key, counter), which gives reproducible, seekable streams: the engine
// keys the counter with logical coordinates (stream, context, index) instead
// of advancing hidden state, so results never depend on evaluation order or
// on how many words some other component consumed.
struct Philox {
    static constexpr uint32_t kMul0 = 0xD2511F53u;
    static constexpr uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                         std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = uint64_t(kMul0) * ctr[0];
            uint64_t p1 = uint64_t(kMul1) * ctr[2];
            ctr = {static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<uint32_t>(p1),
                   static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

    // One 64-bit word addressed by (seed; stream, ctx, index).
    static uint64_t word_at(uint64_t seed, uint32_t stream, uint32_t ctx, uint64_t index) {
        auto out = block({stream, ctx, static_cast<uint32_t>(index),
                          static_cast<uint32_t>(index >> 32)},
                         {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)});
        return (uint64_t(out[1]) << 32) | out[0];
    }
};

// Sequential stream view over one (seed, stream) lane. Used for measurement
// coins and the circuit generator; one Philox word is burned per draw so that
// independently written consumers stay aligned on the same stream.
class RandomStream {
  public:
    RandomStream(uint64_t seed, uint32_t stream, uint32_t ctx = 0)
        : seed_(seed), stream_(stream), ctx_(ctx) {}

    uint64_t next_word() { return Philox::word_at(seed_, stream_, ctx_, index_++); }

    int next_bit() { return static_cast<int>(next_word() & 1); }

    // Uniform draw from [0, bound) by rejection; bound >= 1.
    uint64_t next_below(uint64_t bound) {
        if (bound <= 1)
            return 0;
        uint64_t limit = bound * (~uint64_t{0} / bound);
        for (;;) {
            uint64_t w = next_word();
            if (w < limit)
                return w % bound;
        }
    }

    // Bernoulli(p) with p in [0,1], using a 53-bit uniform.
    bool next_bernoulli(double p) {
        double u = static_cast<double>(next_word() >> 11) * 0x1.0p-53;
        return u < p;
    }

    uint64_t seed() const { return seed_; }

  private:
    uint64_t seed_;
    uint32_t stream_;
    uint32_t ctx_;
    uint64_t index_ = 0;
};

// Stream ids used across the engine.
inline constexpr uint32_t kStreamMeasure = 0;  // single-shot measurement coins
inline constexpr uint32_t kStreamFrames = 1;   // Pauli-frame Z randomization
inline constexpr uint32_t kStreamGenerator = 2; // random circuit generator

} // namespace quasar

#endif // QUASAR_RNG_HPP_
