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

#ifndef QUASAR_FRAMES_HPP_
#define QUASAR_FRAMES_HPP_

#include <cstdint>
#include <vector>

#include "quasar/gates.hpp"
#include "quasar/parallel.hpp"
#include "quasar/rng.hpp"
#include "quasar/simulator.hpp"

namespace quasar {

// Many-shot weak simulation via Pauli frames: per-shot X/Z flip masks are
// propagated through the scheduled circuit instead of re-simulating the
// tableau. Layout is qubit-major with shot-packed words: bit b of word
// (q, j) is shot j*w+b on qubit q. Frames carry no signs.
template <Word W>
struct FrameTableau {
    static constexpr size_t w = word_bits<W>;
    size_t n = 0;
    size_t shots = 0;
    size_t kf = 0; // shot-words per qubit
    std::vector<W> xf;
    std::vector<W> zf;

    size_t index(size_t q, size_t j) const { return q * kf + j; }
};

// X frames start clear; Z frames are random, keyed by (seed, qubit, word) so
// shot-words do not depend on the shot count. Padding shots stay zero.
template <Word W>
FrameTableau<W> init_frames(size_t n, size_t shots, uint64_t seed) {
    if (shots < 1)
        throw std::invalid_argument("init_frames: shots must be >= 1");
    FrameTableau<W> f;
    f.n = n;
    f.shots = shots;
    f.kf = words_for<W>(shots);
    f.xf.assign(n * f.kf, W{0});
    f.zf.resize(n * f.kf);
    const W last_mask = low_mask<W>(shots % FrameTableau<W>::w == 0
                                        ? FrameTableau<W>::w
                                        : shots % FrameTableau<W>::w);
    parallel_for_chunks(n * f.kf, [&](unsigned, size_t begin, size_t end) {
        for (size_t idx = begin; idx < end; ++idx) {
            size_t q = idx / f.kf;
            size_t j = idx % f.kf;
            W word = static_cast<W>(
                Philox::word_at(seed, kStreamFrames, /*epoch=*/0,
                                (static_cast<uint64_t>(q) << 24) | j));
            if (j == f.kf - 1)
                word &= last_mask;
            f.zf[idx] = word;
        }
    });
    return f;
}

// Gate rules on the frame planes; sign computations are skipped entirely
// (frames are flip masks, phases are irrelevant).
template <Word W>
void apply_window_frames(FrameTableau<W> &f, const Window &window) {
    if (window.is_measurement)
        throw std::invalid_argument("apply_window_frames: measurement window");
    parallel_for_chunks(f.kf, [&](unsigned, size_t begin, size_t end) {
        for (size_t j = begin; j < end; ++j) {
            for (const Gate &g : window.gates) {
                size_t i0 = f.index(g.q0, j);
                W unused_x = 0, unused_z = 0;
                if (g.arity() == 1) {
                    apply_rule_words<W>(g.kind, f.xf[i0], f.zf[i0], unused_x, unused_z);
                } else {
                    size_t i1 = f.index(g.q1, j);
                    apply_rule_words<W>(g.kind, f.xf[i0], f.zf[i0], f.xf[i1], f.zf[i1]);
                }
            }
        }
    });
}

// Per measured qubit, shot-packed flip words in measurement order.
template <Word W>
struct ShotRecord {
    size_t shots = 0;
    size_t kf = 0;
    std::vector<uint32_t> measured; // qubits, measurement order
    std::vector<W> words;           // measured.size() * kf, row per qubit

    bool bit(size_t row, size_t shot) const {
        return get_bit(words[row * kf + shot / word_bits<W>], shot % word_bits<W>);
    }
};

// Record the X frame of each measured qubit, then re-randomize its Z frame
// with a fresh epoch. All (qubit, shot-word) pairs are independent.
template <Word W>
void measure_sample(FrameTableau<W> &f, const Window &window, ShotRecord<W> &record,
                    uint64_t seed, uint32_t epoch) {
    if (!window.is_measurement)
        throw std::invalid_argument("measure_sample: not a measurement window");
    {
        std::vector<char> seen(f.n, 0);
        for (const Gate &g : window.gates) {
            if (seen[g.q0])
                throw std::invalid_argument("measure_sample: qubit measured twice in window");
            seen[g.q0] = 1;
        }
    }
    const W last_mask = low_mask<W>(f.shots % FrameTableau<W>::w == 0
                                        ? FrameTableau<W>::w
                                        : f.shots % FrameTableau<W>::w);
    // Rows in the record: reuse the qubit's row if it was measured before.
    std::vector<size_t> rows(window.gates.size());
    for (size_t m = 0; m < window.gates.size(); ++m) {
        uint32_t q = window.gates[m].q0;
        size_t row = record.measured.size();
        for (size_t r = 0; r < record.measured.size(); ++r) {
            if (record.measured[r] == q) {
                row = r;
                break;
            }
        }
        if (row == record.measured.size()) {
            record.measured.push_back(q);
            record.words.resize(record.measured.size() * f.kf, W{0});
        }
        rows[m] = row;
    }
    parallel_for_chunks(window.gates.size() * f.kf, [&](unsigned, size_t begin, size_t end) {
        for (size_t item = begin; item < end; ++item) {
            size_t m = item / f.kf;
            size_t j = item % f.kf;
            size_t q = window.gates[m].q0;
            size_t idx = f.index(q, j);
            record.words[rows[m] * f.kf + j] = f.xf[idx];
            W word = static_cast<W>(Philox::word_at(seed, kStreamFrames, epoch,
                                                    (static_cast<uint64_t>(q) << 24) | j));
            if (j == f.kf - 1)
                word &= last_mask;
            f.zf[idx] = word;
        }
    });
}

// Absolute many-shot sampling: one reference single-shot run provides the
// baseline outcome per measured qubit; frames supply per-shot flips; the
// absolute outcome is their XOR. Deterministic in (circuit, shots, seed).
template <Word W>
ShotRecord<W> sample(const Circuit &circuit, size_t shots, uint64_t seed,
                     RunReport *report = nullptr) {
    Schedule schedule = schedule_windows(circuit, ScheduleMode::sampling);
    auto reference = run_single_shot<W>(circuit, schedule, seed);
    if (report)
        *report = reference.report;

    FrameTableau<W> frames = init_frames<W>(circuit.num_qubits, shots, seed);
    ShotRecord<W> record;
    record.shots = shots;
    record.kf = frames.kf;
    uint32_t epoch = 1;
    for (const Window &w : schedule.windows) {
        if (w.is_measurement)
            measure_sample(frames, w, record, seed, epoch++);
        else
            apply_window_frames(frames, w);
    }

    // Fold in the reference outcomes.
    auto ref_bits = reference.record.per_qubit();
    for (size_t r = 0; r < record.measured.size(); ++r) {
        bool ref = false;
        for (const auto &[q, bit] : ref_bits) {
            if (q == record.measured[r]) {
                ref = bit;
                break;
            }
        }
        if (ref) {
            const W last_mask = low_mask<W>(shots % word_bits<W> == 0 ? word_bits<W>
                                                                      : shots % word_bits<W>);
            for (size_t j = 0; j < record.kf; ++j) {
                W mask = j == record.kf - 1 ? last_mask : static_cast<W>(~W{0});
                record.words[r * record.kf + j] =
                    static_cast<W>((record.words[r * record.kf + j] ^ ~W{0}) & mask);
            }
        }
    }
    return record;
}

} // namespace quasar

#endif // QUASAR_FRAMES_HPP_
