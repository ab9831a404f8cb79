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

#ifndef QUASAR_CIRCUIT_HPP_
#define QUASAR_CIRCUIT_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quasar/rng.hpp"

namespace quasar {

enum class GateKind : uint8_t {
    X,
    Y,
    Z,
    H,
    S,
    SDG,
    CX,
    CY,
    CZ,
    SWAP,
    ISWAP,
    MEASURE,
};

constexpr int gate_arity(GateKind k) {
    switch (k) {
    case GateKind::CX:
    case GateKind::CY:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::ISWAP:
        return 2;
    default:
        return 1;
    }
}

constexpr bool is_measurement(GateKind k) { return k == GateKind::MEASURE; }

constexpr std::string_view gate_name(GateKind k) {
    switch (k) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::CX: return "cx";
    case GateKind::CY: return "cy";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
    case GateKind::ISWAP: return "iswap";
    case GateKind::MEASURE: return "measure";
    }
    return "?";
}

// Single-qubit unitary kinds, used by the generator when only one qubit is left.
inline constexpr std::array<GateKind, 6> kSingleQubitKinds = {
    GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S, GateKind::SDG};

inline constexpr std::array<GateKind, 11> kUnitaryKinds = {
    GateKind::X,  GateKind::Y,  GateKind::Z,    GateKind::H,    GateKind::S, GateKind::SDG,
    GateKind::CX, GateKind::CY, GateKind::CZ, GateKind::SWAP, GateKind::ISWAP};

struct Gate {
    GateKind kind;
    uint32_t q0 = 0;
    uint32_t q1 = 0; // valid only for two-qubit kinds

    int arity() const { return gate_arity(kind); }
    bool is_measure() const { return is_measurement(kind); }
    bool touches(uint32_t q) const { return q0 == q || (arity() == 2 && q1 == q); }

    friend bool operator==(const Gate &a, const Gate &b) {
        if (a.kind != b.kind || a.q0 != b.q0)
            return false;
        return a.arity() == 1 || a.q1 == b.q1;
    }
};

struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Gate> gates;
    // Classical bits named in the source; used only to label output columns.
    uint32_t num_clbits = 0;

    void check_valid() const {
        for (const Gate &g : gates) {
            if (g.q0 >= num_qubits || (g.arity() == 2 && g.q1 >= num_qubits))
                throw std::out_of_range("gate operand out of range");
            if (g.arity() == 2 && g.q0 == g.q1)
                throw std::invalid_argument("two-qubit gate with equal operands");
        }
    }

    size_t measure_count() const {
        size_t c = 0;
        for (const Gate &g : gates)
            c += g.is_measure();
        return c;
    }

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.num_qubits == b.num_qubits && a.gates == b.gates;
    }
};

// Random benchmark circuit: `depth` dense layers of uniformly drawn Clifford
// gates over a per-layer shuffle of the qubits (no qubit reused within a
// layer), then an independent Bernoulli(measure_prob) measurement per qubit.
// Pure function of its arguments.
inline Circuit generate_random(uint32_t n, uint32_t depth, uint64_t seed, double measure_prob) {
    if (n < 1 || depth < 1)
        throw std::invalid_argument("generate_random: n and depth must be >= 1");
    if (!(measure_prob >= 0.0 && measure_prob <= 1.0))
        throw std::invalid_argument("generate_random: measure_prob must be in [0,1]");

    RandomStream rng(seed, kStreamGenerator);
    Circuit c;
    c.num_qubits = n;
    std::vector<uint32_t> order(n);
    for (uint32_t layer = 0; layer < depth; ++layer) {
        for (uint32_t i = 0; i < n; ++i)
            order[i] = i;
        for (uint32_t i = n; i > 1; --i) { // Fisher-Yates
            uint32_t j = static_cast<uint32_t>(rng.next_below(i));
            std::swap(order[i - 1], order[j]);
        }
        uint32_t i = 0;
        while (i < n) {
            GateKind kind = kUnitaryKinds[rng.next_below(kUnitaryKinds.size())];
            if (gate_arity(kind) == 2) {
                if (i + 1 >= n) {
                    kind = kSingleQubitKinds[rng.next_below(kSingleQubitKinds.size())];
                    c.gates.push_back({kind, order[i]});
                    i += 1;
                } else {
                    c.gates.push_back({kind, order[i], order[i + 1]});
                    i += 2;
                }
            } else {
                c.gates.push_back({kind, order[i]});
                i += 1;
            }
        }
    }
    for (uint32_t q = 0; q < n; ++q) {
        if (rng.next_bernoulli(measure_prob))
            c.gates.push_back({GateKind::MEASURE, q});
    }
    c.num_clbits = n;
    return c;
}

} // namespace quasar

#endif // QUASAR_CIRCUIT_HPP_
