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

#ifndef QUASAR_ORACLE_SCALAR_CHP_HPP_
#define QUASAR_ORACLE_SCALAR_CHP_HPP_

#include <cstdint>
#include <vector>

#include "quasar/gates.hpp"
#include "quasar/measure.hpp"
#include "quasar/schedule.hpp"
#include "quasar/tableau.hpp"

namespace quasar::oracle {

// Sequential, one-bit-per-cell reference tableau. Shares the frozen gate
// rule table and the phase counters with the packed engine but performs
// every row operation in the strictly ordered scalar form, which makes it
// the ground truth for bit-exact differential tests.
class ScalarTableau {
  public:
    explicit ScalarTableau(size_t n)
        : n_(n), x_(2 * n * n, 0), z_(2 * n * n, 0), s_(2 * n, 0) {}

    static ScalarTableau basis_state(const std::vector<bool> &initstate) {
        ScalarTableau t(initstate.size());
        for (size_t i = 0; i < t.n_; ++i) {
            t.x(i, i) = 1;
            t.z(t.n_ + i, i) = 1;
            t.s_[i] = initstate[i];
            t.s_[t.n_ + i] = initstate[i];
        }
        return t;
    }

    static ScalarTableau zero_state(size_t n) {
        return basis_state(std::vector<bool>(n, false));
    }

    size_t num_qubits() const { return n_; }

    uint8_t &x(size_t g, size_t q) { return x_[g * n_ + q]; }
    uint8_t &z(size_t g, size_t q) { return z_[g * n_ + q]; }
    uint8_t x(size_t g, size_t q) const { return x_[g * n_ + q]; }
    uint8_t z(size_t g, size_t q) const { return z_[g * n_ + q]; }
    uint8_t &sign(size_t g) { return s_[g]; }
    uint8_t sign(size_t g) const { return s_[g]; }

    void apply_gate(const Gate &g) {
        for (size_t row = 0; row < 2 * n_; ++row) {
            uint8_t sflip;
            uint8_t unused_x = 0, unused_z = 0;
            if (g.arity() == 1)
                sflip = apply_rule_words<uint8_t>(g.kind, x(row, g.q0), z(row, g.q0),
                                                  unused_x, unused_z);
            else
                sflip = apply_rule_words<uint8_t>(g.kind, x(row, g.q0), z(row, g.q0),
                                                  x(row, g.q1), z(row, g.q1));
            s_[row] ^= sflip & 1;
        }
    }

    // row_target *= row_control (bits XOR, sign with mod-4 product phase).
    void row_mult(size_t target, size_t control) {
        int64_t plus = 0, minus = 0;
        for (size_t q = 0; q < n_; ++q)
            product_phase_counts<uint8_t>(x(control, q) & 1, z(control, q) & 1,
                                          x(target, q) & 1, z(target, q) & 1, plus, minus);
        for (size_t q = 0; q < n_; ++q) {
            x(target, q) ^= x(control, q);
            z(target, q) ^= z(control, q);
        }
        s_[target] ^= s_[control] ^ (product_phase_flip(plus, minus) ? 1 : 0);
    }

    // Strictly ordered elimination: for each further pivot t (ascending),
    // stabilizer t absorbs stabilizer c and the control destabilizer absorbs
    // destabilizer t. This is the sequential form the prefix-XOR passes must
    // reproduce bit for bit.
    void eliminate(const std::vector<size_t> &pivots) {
        size_t c = pivots[0];
        for (size_t i = 1; i < pivots.size(); ++i) {
            size_t t = pivots[i];
            row_mult(n_ + t, n_ + c);
            row_mult(c, t);
        }
    }

    std::vector<size_t> pivots_for(size_t q) const {
        std::vector<size_t> pivots;
        for (size_t t = 0; t < n_; ++t) {
            if (x(n_ + t, q))
                pivots.push_back(t);
        }
        return pivots;
    }

    bool deterministic_outcome(size_t q) const {
        std::vector<uint8_t> ax(n_, 0), az(n_, 0);
        int64_t plus = 0, minus = 0, sign_terms = 0;
        for (size_t g = 0; g < n_; ++g) {
            if (!x(g, q))
                continue;
            sign_terms += s_[n_ + g];
            for (size_t qq = 0; qq < n_; ++qq) {
                product_phase_counts<uint8_t>(ax[qq] & 1, az[qq] & 1, x(n_ + g, qq) & 1,
                                              z(n_ + g, qq) & 1, plus, minus);
                ax[qq] ^= x(n_ + g, qq);
                az[qq] ^= z(n_ + g, qq);
            }
        }
        int64_t exponent = 2 * sign_terms + (plus - minus);
        if (exponent & 1)
            throw std::logic_error("scalar deterministic_outcome: imaginary phase");
        return ((exponent >> 1) & 1) != 0;
    }

    // One projective Z measurement; consumes one random bit iff the outcome
    // is probabilistic. Returns (outcome, deterministic).
    std::pair<bool, bool> measure(size_t q, RandomStream &rng) {
        std::vector<size_t> pivots = pivots_for(q);
        if (pivots.empty())
            return {deterministic_outcome(q), true};
        size_t c = pivots[0];
        eliminate(pivots);
        // Destabilizers still anti-commuting with Z_q absorb stabilizer c.
        for (size_t g = 0; g < n_; ++g) {
            if (g != c && x(g, q))
                row_mult(g, n_ + c);
        }
        // D_c <- S_c, S_c <- +Z_q, then the coin decides the sign.
        for (size_t qq = 0; qq < n_; ++qq) {
            x(c, qq) = x(n_ + c, qq);
            z(c, qq) = z(n_ + c, qq);
            x(n_ + c, qq) = 0;
            z(n_ + c, qq) = qq == q ? 1 : 0;
        }
        s_[c] = s_[n_ + c];
        s_[n_ + c] = 0;
        if (rng.next_bit() != 0)
            s_[n_ + c] ^= 1;
        return {s_[n_ + c] != 0, false};
    }

    // ---- packed conversions (lossless both ways) --------------------------

    template <Word W>
    Tableau<W> pack() const {
        Tableau<W> t(n_);
        for (size_t g = 0; g < 2 * n_; ++g) {
            for (size_t q = 0; q < n_; ++q) {
                if (x(g, q))
                    t.set_x_bit(g, q, true);
                if (z(g, q))
                    t.set_z_bit(g, q, true);
            }
            t.set_sign_bit(g, s_[g] != 0);
        }
        return t;
    }

    template <Word W>
    static ScalarTableau unpack(const Tableau<W> &t) {
        ScalarTableau st(t.num_qubits());
        for (size_t g = 0; g < 2 * t.num_qubits(); ++g) {
            for (size_t q = 0; q < t.num_qubits(); ++q) {
                st.x(g, q) = t.x_bit(g, q);
                st.z(g, q) = t.z_bit(g, q);
            }
            st.sign(g) = t.sign_bit(g);
        }
        return st;
    }

    friend bool operator==(const ScalarTableau &a, const ScalarTableau &b) {
        return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_ && a.s_ == b.s_;
    }

  private:
    size_t n_;
    std::vector<uint8_t> x_; // rows 0..n-1 destabilizers, n..2n-1 stabilizers
    std::vector<uint8_t> z_;
    std::vector<uint8_t> s_;
};

// Gate-or-measurement step, the per-operation entry point.
inline std::pair<bool, bool> chp_step(ScalarTableau &t, const Gate &g, RandomStream &rng) {
    if (g.is_measure())
        return t.measure(g.q0, rng);
    t.apply_gate(g);
    return {false, false};
}

// Full sequential run mirroring the packed engine's control flow (same
// window structure, same per-window measurement order, same random stream
// consumption), so records and final tableaus compare bit for bit.
struct ScalarRunResult {
    ScalarTableau tableau;
    MeasurementRecord record;
};

inline ScalarRunResult run_scalar(const Circuit &circuit, const Schedule &schedule,
                                  uint64_t seed) {
    ScalarRunResult result{ScalarTableau::zero_state(circuit.num_qubits), {}};
    ScalarTableau &t = result.tableau;
    RandomStream coins(seed, kStreamMeasure);
    for (const Window &w : schedule.windows) {
        if (!w.is_measurement) {
            for (const Gate &g : w.gates)
                t.apply_gate(g);
            continue;
        }
        const size_t count = w.gates.size();
        std::vector<MeasurementRecord::Entry> out(count);
        std::vector<char> was_probabilistic(count, 0);
        for (size_t m = 0; m < count; ++m)
            was_probabilistic[m] = !t.pivots_for(w.gates[m].q0).empty();
        for (size_t m = 0; m < count; ++m) {
            uint32_t q = w.gates[m].q0;
            out[m].qubit = q;
            if (!was_probabilistic[m])
                continue;
            auto [outcome, deterministic] = t.measure(q, coins);
            out[m] = {q, outcome, deterministic};
        }
        for (size_t m = 0; m < count; ++m) {
            if (!was_probabilistic[m])
                out[m] = {w.gates[m].q0, t.deterministic_outcome(w.gates[m].q0), true};
        }
        result.record.entries.insert(result.record.entries.end(), out.begin(), out.end());
    }
    return result;
}

inline ScalarRunResult run_scalar(const Circuit &circuit, uint64_t seed) {
    return run_scalar(circuit, schedule_windows(circuit, ScheduleMode::single_shot), seed);
}

} // namespace quasar::oracle

#endif // QUASAR_ORACLE_SCALAR_CHP_HPP_
