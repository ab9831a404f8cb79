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

#ifndef QUASAR_GATES_HPP_
#define QUASAR_GATES_HPP_

#include <span>

#include "quasar/bitplane.hpp"
#include "quasar/circuit.hpp"
#include "quasar/parallel.hpp"
#include "quasar/schedule.hpp"
#include "quasar/tableau.hpp"

namespace quasar {

// Word-level column update rules. Each rule transforms the operand columns'
// (x, z) words for w generators at once and returns the word of sign flips.
// H, S and CX are the classic tableau rules; every other kind is the frozen
// result of conjugating the Pauli basis by the gate's unitary (the dense
// conjugation oracle in the test suite re-derives and checks the table).
//
// For two-qubit kinds index 0 is the control, index 1 the target.
template <Word W>
W apply_rule_words(GateKind kind, W &x0, W &z0, W &x1, W &z1) {
    W sign = 0;
    switch (kind) {
    case GateKind::H: {
        sign = static_cast<W>(x0 & z0);
        std::swap(x0, z0);
        break;
    }
    case GateKind::S: {
        sign = static_cast<W>(x0 & z0);
        z0 = static_cast<W>(z0 ^ x0);
        break;
    }
    case GateKind::SDG: {
        sign = static_cast<W>(x0 & ~z0);
        z0 = static_cast<W>(z0 ^ x0);
        break;
    }
    case GateKind::X: {
        sign = z0;
        break;
    }
    case GateKind::Y: {
        sign = static_cast<W>(x0 ^ z0);
        break;
    }
    case GateKind::Z: {
        sign = x0;
        break;
    }
    case GateKind::CX: {
        sign = static_cast<W>(x0 & z1 & ~(x1 ^ z0));
        x1 = static_cast<W>(x1 ^ x0);
        z0 = static_cast<W>(z0 ^ z1);
        break;
    }
    case GateKind::CZ: {
        sign = static_cast<W>(x0 & x1 & (z0 ^ z1));
        z1 = static_cast<W>(z1 ^ x0);
        z0 = static_cast<W>(z0 ^ x1);
        break;
    }
    case GateKind::CY: {
        // SDG(t) ; CX ; S(t), folded.
        W s1 = static_cast<W>(x1 & ~z1);
        W zt = static_cast<W>(z1 ^ x1);
        W s2 = static_cast<W>(x0 & zt & ~(x1 ^ z0));
        W xt = static_cast<W>(x1 ^ x0);
        W zc = static_cast<W>(z0 ^ zt);
        W s3 = static_cast<W>(xt & zt);
        sign = static_cast<W>(s1 ^ s2 ^ s3);
        x1 = xt;
        z0 = zc;
        z1 = static_cast<W>(zt ^ xt);
        break;
    }
    case GateKind::SWAP: {
        std::swap(x0, x1);
        std::swap(z0, z1);
        break;
    }
    case GateKind::ISWAP: {
        // SWAP ; CZ ; S(c) ; S(t), folded stepwise.
        std::swap(x0, x1);
        std::swap(z0, z1);
        W s2 = static_cast<W>(x0 & x1 & (z0 ^ z1));
        W zt = static_cast<W>(z1 ^ x0);
        W zc = static_cast<W>(z0 ^ x1);
        W s3 = static_cast<W>(x1 & zt);
        W s4 = static_cast<W>(x0 & zc);
        sign = static_cast<W>(s2 ^ s3 ^ s4);
        z1 = static_cast<W>(zt ^ x1);
        z0 = static_cast<W>(zc ^ x0);
        break;
    }
    case GateKind::MEASURE:
        throw std::invalid_argument("apply_rule_words: MEASURE is not a unitary rule");
    }
    return sign;
}

// Functional view of one rule application, arity-aware.
template <Word W>
struct GateRuleResult {
    W x0 = 0, z0 = 0; // operand 0 (or the sole operand)
    W x1 = 0, z1 = 0; // operand 1 for two-qubit kinds
    W sign = 0;
};

template <Word W>
GateRuleResult<W> apply_gate_rule(GateKind kind, W x0, W z0, W x1 = 0, W z1 = 0) {
    GateRuleResult<W> r{x0, z0, x1, z1, 0};
    r.sign = apply_rule_words<W>(kind, r.x0, r.z0, r.x1, r.z1);
    return r;
}

// target ^= XOR-reduction of the contribution block. Tree-shaped combination
// equals sequential XOR-ing by associativity.
template <Word W>
void collapse_signs(std::span<const W> contributions, W &target) {
    target = static_cast<W>(target ^ reduce_xor<W>(contributions));
}

// Contributions per reduction tree before collapsing into the sign word.
inline constexpr size_t kSignPartition = 1024;

// Applies one unitary window to a ColumnMajor tableau. Work is parallel over
// generator-word strips j in [0,2k); within a strip the gates' column writes
// are disjoint by the window precondition and sign contributions are
// aggregated into S[j] through the partitioned XOR tree. The result is
// independent of gate order and of the thread count.
template <Word W>
void apply_window(Tableau<W> &tableau, const Window &window) {
    if (tableau.layout() != Layout::ColumnMajor)
        throw std::invalid_argument("apply_window: tableau must be ColumnMajor");
    if (window.is_measurement)
        throw std::invalid_argument("apply_window: window contains measurements");
    {
        std::vector<char> seen(tableau.num_qubits(), 0);
        for (const Gate &g : window.gates) {
            if (g.is_measure())
                throw std::invalid_argument("apply_window: window contains measurements");
            for (int op = 0; op < g.arity(); ++op) {
                uint32_t q = op == 0 ? g.q0 : g.q1;
                if (seen[q])
                    throw std::invalid_argument("apply_window: operands not disjoint");
                seen[q] = 1;
            }
        }
    }

    const size_t strips = 2 * tableau.num_words();
    auto &x = tableau.x_plane();
    auto &z = tableau.z_plane();
    auto &s = tableau.signs();
    parallel_for_chunks(strips, [&](unsigned, size_t begin, size_t end) {
        std::array<W, kSignPartition> contrib;
        for (size_t j = begin; j < end; ++j) {
            W delta = 0;
            size_t filled = 0;
            for (const Gate &g : window.gates) {
                size_t i0 = tableau.cm_index(g.q0, j);
                W sign;
                if (g.arity() == 1) {
                    W unused_x = 0, unused_z = 0;
                    sign = apply_rule_words<W>(g.kind, x[i0], z[i0], unused_x, unused_z);
                } else {
                    size_t i1 = tableau.cm_index(g.q1, j);
                    sign = apply_rule_words<W>(g.kind, x[i0], z[i0], x[i1], z[i1]);
                }
                contrib[filled++] = sign;
                if (filled == kSignPartition) {
                    collapse_signs<W>(std::span<const W>(contrib.data(), filled), delta);
                    filled = 0;
                }
            }
            if (filled > 0)
                collapse_signs<W>(std::span<const W>(contrib.data(), filled), delta);
            s[j] = static_cast<W>(s[j] ^ delta);
        }
    });
}

} // namespace quasar

#endif // QUASAR_GATES_HPP_
