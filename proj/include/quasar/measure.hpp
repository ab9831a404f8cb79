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

#ifndef QUASAR_MEASURE_HPP_
#define QUASAR_MEASURE_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

#include "quasar/bitplane.hpp"
#include "quasar/parallel.hpp"
#include "quasar/rng.hpp"
#include "quasar/schedule.hpp"
#include "quasar/tableau.hpp"

namespace quasar {

// Projective Z-measurement pipeline on the RowMajor tableau: probabilistic
// detection, pivot compaction, three-pass prefix-XOR elimination, generator
// replacement and sign injection, plus the destabilizer-product outcome for
// deterministic qubits.

struct PivotList {
    std::vector<int64_t> entries; // length n; pivots ascending, then -1 tail
    size_t count = 0;
};

struct MeasurementRecord {
    struct Entry {
        uint32_t qubit;
        bool outcome;
        bool deterministic;
    };
    std::vector<Entry> entries; // measurement order

    // Last outcome per qubit; qubits in first-measurement order.
    std::vector<std::pair<uint32_t, bool>> per_qubit() const {
        std::vector<std::pair<uint32_t, bool>> out;
        std::vector<int64_t> pos;
        for (const Entry &e : entries) {
            if (e.qubit >= pos.size())
                pos.resize(e.qubit + 1, -1);
            if (pos[e.qubit] < 0) {
                pos[e.qubit] = static_cast<int64_t>(out.size());
                out.emplace_back(e.qubit, e.outcome);
            } else {
                out[static_cast<size_t>(pos[e.qubit])].second = e.outcome;
            }
        }
        return out;
    }
};

// Interleaved X/Z prefix cell; one per (target, qubit-word).
template <Word W>
struct PrefixCell {
    W x = 0;
    W z = 0;
};

// Reusable buffers for the measurement kernels; sized lazily per tableau.
template <Word W>
struct MeasureScratch {
    std::vector<int64_t> pivot_entries;
    std::vector<PrefixCell<W>> prefixes;
    std::vector<PrefixCell<W>> blocksums;
    std::vector<W> control_x0, control_z0; // pass-1 snapshot of the control row
    std::vector<uint8_t> flips;
    std::vector<W> acc_x, acc_z; // deterministic-outcome accumulator
};

// Wall-clock phase breakdown of a run (tableau evolution, transpose, pivot
// compaction, elimination + assembly).
struct PhaseTimers {
    double to_seconds = 0;
    double t_seconds = 0;
    double cmp_seconds = 0;
    double ge_seconds = 0;

    template <typename F>
    void timed(double PhaseTimers::*slot, F &&f) {
        auto start = std::chrono::steady_clock::now();
        f();
        this->*slot += std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
    }
};

// For each measurement in the window: its qubit if some stabilizer still
// anti-commutes with Z_q (X bit set in q's stabilizer row), else -1.
template <Word W>
std::vector<int64_t> find_probabilistic(const Tableau<W> &t, const Window &window) {
    if (t.layout() != Layout::RowMajor)
        throw std::invalid_argument("find_probabilistic: tableau must be RowMajor");
    constexpr size_t w = word_bits<W>;
    const size_t n = t.num_qubits();
    const size_t n_pad = t.padded_qubits();
    const auto &x = t.x_plane();
    std::vector<int64_t> out(window.gates.size(), -1);
    parallel_for_chunks(window.gates.size(), [&](unsigned, size_t begin, size_t end) {
        for (size_t m = begin; m < end; ++m) {
            size_t q = window.gates[m].q0;
            size_t row = t.rm_index(q / w, n_pad);
            for (size_t g = 0; g < n; ++g) {
                if (get_bit(x[row + g], q % w)) {
                    out[m] = static_cast<int64_t>(q);
                    break;
                }
            }
        }
    });
    return out;
}

// Scatter-then-compact the stabilizer indices anti-commuting with Z_q into a
// dense ascending list with a -1 tail.
template <Word W>
PivotList find_and_compact_pivots(const Tableau<W> &t, size_t q,
                                  MeasureScratch<W> &scratch) {
    if (t.layout() != Layout::RowMajor)
        throw std::invalid_argument("find_and_compact_pivots: tableau must be RowMajor");
    constexpr size_t w = word_bits<W>;
    const size_t n = t.num_qubits();
    const size_t n_pad = t.padded_qubits();
    const auto &x = t.x_plane();
    scratch.pivot_entries.resize(n);
    auto *entries = scratch.pivot_entries.data();
    size_t row = t.rm_index(q / w, n_pad);
    parallel_for_chunks(n, [&](unsigned, size_t begin, size_t end) {
        for (size_t g = begin; g < end; ++g)
            entries[g] = get_bit(x[row + g], q % w) ? static_cast<int64_t>(g) : -1;
    });
    PivotList pivots;
    pivots.count = compact_select(std::span<int64_t>(entries, n), -1);
    pivots.entries.assign(entries, entries + n);
    return pivots;
}

inline constexpr size_t kGeBlockTargets = 256; // targets per scan block

// Three-pass prefix-XOR elimination. Control c = pivots[0]; for every other
// pivot t the stabilizer row t is multiplied by stabilizer c and the control
// destabilizer accumulates the targets' destabilizer rows. The loop-carried
// control value seen by the k-th target is reconstructed as an exclusive
// prefix-XOR (per-block scans, a scan of block sums, and a merge), so all
// targets proceed in parallel yet match the strictly ordered sequential
// injection bit for bit. Sign updates carry the mod-4 Pauli product phase.
template <Word W>
void parallel_ge(Tableau<W> &t, const PivotList &pivots, MeasureScratch<W> &scratch,
                 size_t block_targets = kGeBlockTargets) {
    if (t.layout() != Layout::RowMajor)
        throw std::invalid_argument("parallel_ge: tableau must be RowMajor");
    if (pivots.count == 0)
        throw std::invalid_argument("parallel_ge: empty pivot list");
    if (block_targets < 1)
        throw std::invalid_argument("parallel_ge: block size must be >= 1");
    const size_t targets = pivots.count - 1;
    if (targets == 0)
        return;

    const size_t k = t.num_words();
    const size_t n_pad = t.padded_qubits();
    const size_t stride = t.rm_stride();
    auto &x = t.x_plane();
    auto &z = t.z_plane();
    const size_t c = static_cast<size_t>(pivots.entries[0]);
    const size_t blocks = (targets + block_targets - 1) / block_targets;

    scratch.prefixes.resize(targets * k);
    scratch.blocksums.resize(blocks * k);
    scratch.control_x0.resize(k);
    scratch.control_z0.resize(k);
    scratch.flips.resize(targets);

    // The control destabilizer row as every block sees it (its value before
    // this elimination step).
    for (size_t i = 0; i < k; ++i) {
        scratch.control_x0[i] = x[i * stride + c];
        scratch.control_z0[i] = z[i * stride + c];
    }

    // Pass 1: block-local exclusive prefixes of the targets' destabilizer
    // words, merged with the control snapshot; block sums recorded.
    parallel_for_chunks(blocks * k, [&](unsigned, size_t begin, size_t end) {
        for (size_t item = begin; item < end; ++item) {
            size_t b = item / k;
            size_t i = item % k;
            size_t lo = b * block_targets;
            size_t hi = std::min(lo + block_targets, targets);
            W ax = 0, az = 0;
            for (size_t tix = lo; tix < hi; ++tix) {
                size_t tcol = static_cast<size_t>(pivots.entries[tix + 1]);
                scratch.prefixes[tix * k + i] = {static_cast<W>(ax ^ scratch.control_x0[i]),
                                                 static_cast<W>(az ^ scratch.control_z0[i])};
                ax = static_cast<W>(ax ^ x[i * stride + tcol]);
                az = static_cast<W>(az ^ z[i * stride + tcol]);
            }
            scratch.blocksums[b * k + i] = {ax, az};
        }
    });

    // Pass 2: exclusive scan of the block sums per qubit-word, then fold the
    // grand total into the live control row.
    parallel_for_chunks(k, [&](unsigned, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            W ax = 0, az = 0;
            for (size_t b = 0; b < blocks; ++b) {
                PrefixCell<W> cur = scratch.blocksums[b * k + i];
                scratch.blocksums[b * k + i] = {ax, az};
                ax = static_cast<W>(ax ^ cur.x);
                az = static_cast<W>(az ^ cur.z);
            }
            x[i * stride + c] = static_cast<W>(scratch.control_x0[i] ^ ax);
            z[i * stride + c] = static_cast<W>(scratch.control_z0[i] ^ az);
        }
    });

    // Pass 3: finalize each target's prefix, multiply stabilizer rows, and
    // compute both phase histories (stabilizer-row product and the evolving
    // control-destabilizer product).
    parallel_for_chunks(targets, [&](unsigned, size_t begin, size_t end) {
        for (size_t tix = begin; tix < end; ++tix) {
            size_t tcol = static_cast<size_t>(pivots.entries[tix + 1]);
            size_t b = tix / block_targets;
            int64_t stab_plus = 0, stab_minus = 0;
            int64_t dest_plus = 0, dest_minus = 0;
            for (size_t i = 0; i < k; ++i) {
                PrefixCell<W> pre = scratch.prefixes[tix * k + i];
                PrefixCell<W> corr = scratch.blocksums[b * k + i];
                W px = static_cast<W>(pre.x ^ corr.x);
                W pz = static_cast<W>(pre.z ^ corr.z);
                size_t rt = i * stride + n_pad + tcol; // target stabilizer
                size_t rc = i * stride + n_pad + c;    // control stabilizer
                size_t dt = i * stride + tcol;         // target destabilizer
                product_phase_counts<W>(x[rc], z[rc], x[rt], z[rt], stab_plus, stab_minus);
                product_phase_counts<W>(px, pz, x[dt], z[dt], dest_plus, dest_minus);
                x[rt] = static_cast<W>(x[rt] ^ x[rc]);
                z[rt] = static_cast<W>(z[rt] ^ z[rc]);
            }
            bool stab_flip = product_phase_flip(stab_plus, stab_minus);
            bool dest_flip = product_phase_flip(dest_plus, dest_minus);
            // flips bit 0: stabilizer sign delta for t; bit 1: contribution
            // to the control destabilizer sign.
            uint8_t f = static_cast<uint8_t>(stab_flip ? 1 : 0);
            bool dcontrib = t.sign_bit(tcol) ^ dest_flip;
            f |= static_cast<uint8_t>(dcontrib ? 2 : 0);
            scratch.flips[tix] = f;
        }
    });

    const size_t n = t.num_qubits();
    bool sc = t.sign_bit(n + c);
    bool dc = t.sign_bit(c);
    for (size_t tix = 0; tix < targets; ++tix) {
        size_t tg = n + static_cast<size_t>(pivots.entries[tix + 1]);
        t.set_sign_bit(tg, t.sign_bit(tg) ^ sc ^ ((scratch.flips[tix] & 1) != 0));
        dc ^= (scratch.flips[tix] & 2) != 0;
    }
    t.set_sign_bit(c, dc);
}

// Replace the pivot generator pair after elimination: destabilizer rows that
// still anti-commute with Z_q absorb stabilizer p, then stabilizer p's row
// becomes the new destabilizer p and Z_q (sign 0) takes its place. After the
// randomize step stabilizer p is exactly +/- Z_q.
template <Word W>
void swap_anti_commuting(Tableau<W> &t, size_t p, size_t q, MeasureScratch<W> &scratch) {
    if (t.layout() != Layout::RowMajor)
        throw std::invalid_argument("swap_anti_commuting: tableau must be RowMajor");
    constexpr size_t w = word_bits<W>;
    const size_t n = t.num_qubits();
    const size_t k = t.num_words();
    const size_t n_pad = t.padded_qubits();
    const size_t stride = t.rm_stride();
    auto &x = t.x_plane();
    auto &z = t.z_plane();
    if (!get_bit(x[t.rm_index(q / w, n_pad + p)], q % w))
        throw std::invalid_argument("swap_anti_commuting: stabilizer p commutes with Z_q");

    // Destabilizers with an X at q (other than p) absorb stabilizer p so the
    // upcoming Z_q row commutes with every destabilizer except its partner.
    scratch.flips.resize(n);
    size_t xrow = t.rm_index(q / w, 0);
    const bool sp = t.sign_bit(n + p);
    parallel_for_chunks(n, [&](unsigned, size_t begin, size_t end) {
        for (size_t g = begin; g < end; ++g) {
            scratch.flips[g] = 0;
            if (g == p || !get_bit(x[xrow + g], q % w))
                continue;
            int64_t plus = 0, minus = 0;
            for (size_t i = 0; i < k; ++i) {
                size_t rc = i * stride + n_pad + p;
                size_t rg = i * stride + g;
                product_phase_counts<W>(x[rc], z[rc], x[rg], z[rg], plus, minus);
                x[rg] = static_cast<W>(x[rg] ^ x[rc]);
                z[rg] = static_cast<W>(z[rg] ^ z[rc]);
            }
            scratch.flips[g] = static_cast<uint8_t>(1 | (product_phase_flip(plus, minus) << 1));
        }
    });
    for (size_t g = 0; g < n; ++g) {
        if (scratch.flips[g] & 1)
            t.set_sign_bit(g, t.sign_bit(g) ^ sp ^ ((scratch.flips[g] & 2) != 0));
    }

    // D_p <- S_p (bits and sign), S_p <- +Z_q.
    parallel_for_chunks(k, [&](unsigned, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            size_t rs = i * stride + n_pad + p;
            size_t rd = i * stride + p;
            x[rd] = x[rs];
            z[rd] = z[rs];
            x[rs] = 0;
            z[rs] = (i == q / w) ? static_cast<W>(word_one<W> << (q % w)) : W{0};
        }
    });
    t.set_sign_bit(p, sp);
    t.set_sign_bit(n + p, false);
}

// Flip the collapsed observable's sign (stabilizer row p). Involution.
template <Word W>
void inject_x(Tableau<W> &t, size_t p) {
    t.set_sign_bit(t.num_qubits() + p, !t.sign_bit(t.num_qubits() + p));
}

// Deterministic outcome of measuring Z_q: accumulate the product of the
// stabilizers marked by anti-commuting destabilizers with a mod-4 phase
// counter; the result is +/- Z_q and the outcome is phase/2.
template <Word W>
bool deterministic_outcome(const Tableau<W> &t, size_t q, MeasureScratch<W> &scratch) {
    if (t.layout() != Layout::RowMajor)
        throw std::invalid_argument("deterministic_outcome: tableau must be RowMajor");
    constexpr size_t w = word_bits<W>;
    const size_t n = t.num_qubits();
    const size_t k = t.num_words();
    const size_t n_pad = t.padded_qubits();
    const size_t stride = t.rm_stride();
    const auto &x = t.x_plane();
    const auto &z = t.z_plane();

    scratch.acc_x.assign(k, W{0});
    scratch.acc_z.assign(k, W{0});
    int64_t plus = 0, minus = 0;
    int64_t sign_terms = 0;
    size_t xrow = t.rm_index(q / w, 0);
    for (size_t g = 0; g < n; ++g) {
        if (!get_bit(x[xrow + g], q % w))
            continue;
        sign_terms += t.sign_bit(n + g) ? 1 : 0;
        for (size_t i = 0; i < k; ++i) {
            size_t rs = i * stride + n_pad + g;
            product_phase_counts<W>(scratch.acc_x[i], scratch.acc_z[i], x[rs], z[rs], plus,
                                    minus);
            scratch.acc_x[i] = static_cast<W>(scratch.acc_x[i] ^ x[rs]);
            scratch.acc_z[i] = static_cast<W>(scratch.acc_z[i] ^ z[rs]);
        }
    }
    int64_t exponent = 2 * sign_terms + (plus - minus);
    if (exponent & 1)
        throw std::logic_error("deterministic_outcome: imaginary phase (corrupted tableau)");
    return ((exponent >> 1) & 1) != 0;
}

// Full measurement dispatch for one window. The tableau arrives ColumnMajor,
// is transposed for the duration, and leaves ColumnMajor again. One random
// bit is consumed per probabilistic collapse, in window order.
template <Word W>
void measure_window(Tableau<W> &t, const Window &window, RandomStream &rng,
                    MeasurementRecord &record, MeasureScratch<W> &scratch,
                    PhaseTimers *timers = nullptr) {
    if (t.layout() != Layout::ColumnMajor)
        throw std::invalid_argument("measure_window: tableau must be ColumnMajor");
    if (!window.is_measurement)
        throw std::invalid_argument("measure_window: not a measurement window");
    {
        std::vector<char> seen(t.num_qubits(), 0);
        for (const Gate &g : window.gates) {
            if (!g.is_measure())
                throw std::invalid_argument("measure_window: unitary gate in window");
            if (seen[g.q0])
                throw std::invalid_argument("measure_window: qubit measured twice");
            seen[g.q0] = 1;
        }
    }

    PhaseTimers local;
    PhaseTimers &tm = timers ? *timers : local;

    tm.timed(&PhaseTimers::t_seconds, [&] { t.transpose_in_place(); });

    std::vector<int64_t> maybe_probabilistic = find_probabilistic(t, window);
    const size_t n = t.num_qubits();
    std::vector<MeasurementRecord::Entry> out(window.gates.size());

    for (size_t m = 0; m < window.gates.size(); ++m) {
        uint32_t q = window.gates[m].q0;
        out[m].qubit = q;
        if (maybe_probabilistic[m] < 0)
            continue; // deterministic; resolved after the collapse loop
        PivotList pivots;
        tm.timed(&PhaseTimers::cmp_seconds,
                 [&] { pivots = find_and_compact_pivots(t, q, scratch); });
        if (pivots.count == 0) {
            // Became deterministic after an earlier collapse in this window.
            tm.timed(&PhaseTimers::ge_seconds,
                     [&] { out[m] = {q, deterministic_outcome(t, q, scratch), true}; });
            continue;
        }
        size_t p = static_cast<size_t>(pivots.entries[0]);
        tm.timed(&PhaseTimers::ge_seconds, [&] {
            parallel_ge(t, pivots, scratch);
            swap_anti_commuting(t, p, q, scratch);
            if (rng.next_bit() != (t.sign_bit(n + p) ? 1 : 0))
                inject_x(t, p);
            out[m] = {q, t.sign_bit(n + p), false};
        });
    }
    tm.timed(&PhaseTimers::ge_seconds, [&] {
        for (size_t m = 0; m < window.gates.size(); ++m) {
            if (maybe_probabilistic[m] < 0)
                out[m] = {window.gates[m].q0,
                          deterministic_outcome(t, window.gates[m].q0, scratch), true};
        }
    });

    tm.timed(&PhaseTimers::t_seconds, [&] { t.transpose_in_place(); });
    record.entries.insert(record.entries.end(), out.begin(), out.end());
}

} // namespace quasar

#endif // QUASAR_MEASURE_HPP_
