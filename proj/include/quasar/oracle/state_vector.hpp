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

#ifndef QUASAR_ORACLE_STATE_VECTOR_HPP_
#define QUASAR_ORACLE_STATE_VECTOR_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "quasar/circuit.hpp"
#include "quasar/rng.hpp"

namespace quasar::oracle {

// Dense state-vector reference for small n. Basis index bit q is qubit q.
// Single-threaded brute force; correctness over speed.

using cplx = std::complex<double>;

inline constexpr size_t kMaxSvQubits = 14;

struct StateVector {
    size_t n = 0;
    std::vector<cplx> amps;

    static StateVector basis(size_t n, uint64_t index = 0) {
        if (n > kMaxSvQubits)
            throw std::invalid_argument("StateVector: too many qubits");
        StateVector sv;
        sv.n = n;
        sv.amps.assign(size_t{1} << n, cplx{0, 0});
        sv.amps[index] = 1.0;
        return sv;
    }

    double norm2() const {
        double s = 0;
        for (const cplx &a : amps)
            s += std::norm(a);
        return s;
    }
};

using Mat2 = std::array<cplx, 4>;  // row-major 2x2
using Mat4 = std::array<cplx, 16>; // row-major 4x4, basis order |c t>: 00,01,10,11

inline Mat2 gate_matrix_1q(GateKind k) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i{0, 1};
    switch (k) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -i, i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: return {s, s, s, -s};
    case GateKind::S: return {1, 0, 0, i};
    case GateKind::SDG: return {1, 0, 0, -i};
    default: throw std::invalid_argument("gate_matrix_1q: not a one-qubit gate");
    }
}

inline Mat4 gate_matrix_2q(GateKind k) {
    const cplx i{0, 1};
    switch (k) {
    case GateKind::CX:
        return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::CY:
        return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -i, 0, 0, i, 0};
    case GateKind::CZ:
        return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::SWAP:
        return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::ISWAP:
        return {1, 0, 0, 0, 0, 0, i, 0, 0, i, 0, 0, 0, 0, 0, 1};
    default: throw std::invalid_argument("gate_matrix_2q: not a two-qubit gate");
    }
}

inline void sv_apply(StateVector &sv, const Gate &g) {
    if (g.q0 >= sv.n || (g.arity() == 2 && g.q1 >= sv.n))
        throw std::out_of_range("sv_apply: qubit out of range");
    if (g.is_measure())
        throw std::invalid_argument("sv_apply: measurement is not a unitary");
    const size_t dim = sv.amps.size();
    if (g.arity() == 1) {
        Mat2 m = gate_matrix_1q(g.kind);
        const size_t bit = size_t{1} << g.q0;
        for (size_t idx = 0; idx < dim; ++idx) {
            if (idx & bit)
                continue;
            cplx a0 = sv.amps[idx];
            cplx a1 = sv.amps[idx | bit];
            sv.amps[idx] = m[0] * a0 + m[1] * a1;
            sv.amps[idx | bit] = m[2] * a0 + m[3] * a1;
        }
    } else {
        Mat4 m = gate_matrix_2q(g.kind);
        const size_t cbit = size_t{1} << g.q0;
        const size_t tbit = size_t{1} << g.q1;
        for (size_t idx = 0; idx < dim; ++idx) {
            if ((idx & cbit) || (idx & tbit))
                continue;
            std::array<cplx, 4> a = {sv.amps[idx], sv.amps[idx | tbit], sv.amps[idx | cbit],
                                     sv.amps[idx | cbit | tbit]};
            std::array<cplx, 4> b{};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    b[r] += m[r * 4 + c] * a[c];
            sv.amps[idx] = b[0];
            sv.amps[idx | tbit] = b[1];
            sv.amps[idx | cbit] = b[2];
            sv.amps[idx | cbit | tbit] = b[3];
        }
    }
}

inline double sv_prob_one(const StateVector &sv, size_t q) {
    const size_t bit = size_t{1} << q;
    double p1 = 0;
    for (size_t idx = 0; idx < sv.amps.size(); ++idx) {
        if (idx & bit)
            p1 += std::norm(sv.amps[idx]);
    }
    return p1;
}

inline void sv_project(StateVector &sv, size_t q, bool outcome) {
    const size_t bit = size_t{1} << q;
    double keep = 0;
    for (size_t idx = 0; idx < sv.amps.size(); ++idx) {
        bool one = (idx & bit) != 0;
        if (one != outcome)
            sv.amps[idx] = 0;
        else
            keep += std::norm(sv.amps[idx]);
    }
    if (keep <= 0)
        throw std::logic_error("sv_project: zero-probability branch");
    double scale = 1.0 / std::sqrt(keep);
    for (cplx &a : sv.amps)
        a *= scale;
}

inline constexpr double kDetTolerance = 1e-9;

// Born-rule measurement. To stay stream-aligned with the packed engine, a
// deterministic outcome consumes no random bit and a probabilistic one
// consumes exactly one (stabilizer probabilities are always 0, 1/2 or 1).
inline std::pair<bool, bool> sv_measure(StateVector &sv, size_t q, RandomStream &rng) {
    double p1 = sv_prob_one(sv, q);
    if (p1 < kDetTolerance)
        return {false, true};
    if (p1 > 1 - kDetTolerance) {
        sv_project(sv, q, true); // renormalize rounding dust
        return {true, true};
    }
    bool outcome = rng.next_bit() != 0;
    sv_project(sv, q, outcome);
    return {outcome, false};
}

// Exact joint outcome distribution over the circuit's measurement events,
// by branch enumeration. Keys are bit strings in measurement-event order.
inline constexpr size_t kMaxSvEvents = 14;

inline void sv_distribution_walk(StateVector sv, const Circuit &circuit, size_t gate_idx,
                                 std::vector<bool> &path, double weight,
                                 std::map<std::vector<bool>, double> &dist) {
    for (size_t i = gate_idx; i < circuit.gates.size(); ++i) {
        const Gate &g = circuit.gates[i];
        if (!g.is_measure()) {
            sv_apply(sv, g);
            continue;
        }
        double p1 = sv_prob_one(sv, g.q0);
        for (bool outcome : {false, true}) {
            double p = outcome ? p1 : 1 - p1;
            if (p < kDetTolerance)
                continue;
            StateVector branch = sv;
            sv_project(branch, g.q0, outcome);
            path.push_back(outcome);
            sv_distribution_walk(std::move(branch), circuit, i + 1, path, weight * p, dist);
            path.pop_back();
        }
        return;
    }
    dist[path] += weight;
}

inline std::map<std::vector<bool>, double> sv_distribution(const Circuit &circuit) {
    if (circuit.num_qubits > 12)
        throw std::invalid_argument("sv_distribution: n too large");
    if (circuit.measure_count() > kMaxSvEvents)
        throw std::invalid_argument("sv_distribution: too many measurement events");
    std::map<std::vector<bool>, double> dist;
    std::vector<bool> path;
    sv_distribution_walk(StateVector::basis(circuit.num_qubits), circuit, 0, path, 1.0, dist);
    return dist;
}

} // namespace quasar::oracle

#endif // QUASAR_ORACLE_STATE_VECTOR_HPP_
