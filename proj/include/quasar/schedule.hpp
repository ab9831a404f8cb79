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

#ifndef QUASAR_SCHEDULE_HPP_
#define QUASAR_SCHEDULE_HPP_

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "quasar/circuit.hpp"

namespace quasar {

// Partition of a circuit into maximal windows of mutually independent gates.
// Unitary windows hold qubit-disjoint gates; measurement windows hold the
// measurements that became frontier-eligible together (distinct qubits).

struct Window {
    std::vector<Gate> gates;
    bool is_measurement = false;
};

enum class ScheduleMode { single_shot, sampling };

struct Schedule {
    std::vector<Window> windows;
    ScheduleMode mode = ScheduleMode::single_shot;
};

// Greedy front-advancement. Each round pulls one maximal unitary window off
// the frontier (a gate is eligible when it is the next unscheduled gate on
// each of its wires and the window does not already touch those wires), then
// flushes every measurement that has become frontier-eligible as one
// measurement window. Measurements are barriers: gates behind them wait for
// the flush even on other wires. Deterministic, original order is the
// tie-break, and per-wire gate order is preserved.
inline Schedule schedule_windows(const Circuit &circuit, ScheduleMode mode) {
    circuit.check_valid();
    const size_t num_gates = circuit.gates.size();
    Schedule schedule;
    schedule.mode = mode;

    // next_on_wire[q] = position (index into per-wire list) of q's frontier gate.
    std::vector<std::vector<size_t>> wire_gates(circuit.num_qubits);
    for (size_t i = 0; i < num_gates; ++i) {
        const Gate &g = circuit.gates[i];
        wire_gates[g.q0].push_back(i);
        if (g.arity() == 2)
            wire_gates[g.q1].push_back(i);
    }
    std::vector<size_t> next_on_wire(circuit.num_qubits, 0);
    std::vector<char> scheduled(num_gates, 0);

    auto is_frontier = [&](size_t gate_idx) {
        const Gate &g = circuit.gates[gate_idx];
        if (wire_gates[g.q0][next_on_wire[g.q0]] != gate_idx)
            return false;
        if (g.arity() == 2 && wire_gates[g.q1][next_on_wire[g.q1]] != gate_idx)
            return false;
        return true;
    };
    auto consume = [&](size_t gate_idx) {
        const Gate &g = circuit.gates[gate_idx];
        scheduled[gate_idx] = 1;
        ++next_on_wire[g.q0];
        if (g.arity() == 2)
            ++next_on_wire[g.q1];
    };

    size_t remaining = num_gates;
    size_t scan_from = 0;
    std::vector<char> busy(circuit.num_qubits, 0);
    while (remaining > 0) {
        while (scan_from < num_gates && scheduled[scan_from])
            ++scan_from;

        // Collect one maximal unitary window.
        Window window;
        std::fill(busy.begin(), busy.end(), 0);
        for (size_t i = scan_from; i < num_gates; ++i) {
            if (scheduled[i])
                continue;
            const Gate &g = circuit.gates[i];
            if (g.is_measure())
                continue;
            if (busy[g.q0] || (g.arity() == 2 && busy[g.q1]))
                continue;
            if (!is_frontier(i))
                continue;
            busy[g.q0] = 1;
            if (g.arity() == 2)
                busy[g.q1] = 1;
            window.gates.push_back(g);
            consume(i);
        }
        bool progressed = false;
        if (!window.gates.empty()) {
            remaining -= window.gates.size();
            schedule.windows.push_back(std::move(window));
            progressed = true;
        }

        // Flush the measurements that are now frontier-eligible.
        Window mwin;
        mwin.is_measurement = true;
        for (size_t i = scan_from; i < num_gates; ++i) {
            if (scheduled[i] || !circuit.gates[i].is_measure())
                continue;
            if (!is_frontier(i))
                continue;
            mwin.gates.push_back(circuit.gates[i]);
            consume(i);
        }
        if (!mwin.gates.empty()) {
            remaining -= mwin.gates.size();
            schedule.windows.push_back(std::move(mwin));
            progressed = true;
        }
        if (!progressed)
            throw std::logic_error("scheduler made no progress"); // unreachable
    }
    return schedule;
}

// Independent checker for schedules: window-internal disjointness, per-wire
// order preservation, gate conservation, and unitary maximality (no unitary
// gate could legally move to any earlier window). Returns "valid" or a
// description of the first violation.
inline std::string validate_schedule(const Circuit &circuit, const Schedule &schedule) {
    std::vector<char> busy(circuit.num_qubits, 0);

    // (a) window-internal structure.
    for (size_t wi = 0; wi < schedule.windows.size(); ++wi) {
        const Window &w = schedule.windows[wi];
        if (w.gates.empty())
            return "window " + std::to_string(wi) + " is empty";
        std::fill(busy.begin(), busy.end(), 0);
        for (const Gate &g : w.gates) {
            if (w.is_measurement != g.is_measure())
                return "window " + std::to_string(wi) + " mixes measurements and unitaries";
            if (busy[g.q0] || (g.arity() == 2 && busy[g.q1]))
                return "window " + std::to_string(wi) + " has overlapping operands";
            busy[g.q0] = 1;
            if (g.arity() == 2)
                busy[g.q1] = 1;
        }
    }

    // (b,c) flattening the windows must replay each wire's gate sequence and
    // conserve the multiset of gates (checked via per-wire order + count).
    size_t total = 0;
    for (const Window &w : schedule.windows)
        total += w.gates.size();
    if (total != circuit.gates.size())
        return "gate count mismatch";

    std::vector<std::vector<Gate>> wire_seq(circuit.num_qubits);
    for (const Gate &g : circuit.gates) {
        wire_seq[g.q0].push_back(g);
        if (g.arity() == 2)
            wire_seq[g.q1].push_back(g);
    }
    std::vector<size_t> cursor(circuit.num_qubits, 0);
    for (size_t wi = 0; wi < schedule.windows.size(); ++wi) {
        for (const Gate &g : schedule.windows[wi].gates) {
            for (int op = 0; op < g.arity(); ++op) {
                uint32_t q = op == 0 ? g.q0 : g.q1;
                if (cursor[q] >= wire_seq[q].size() || !(wire_seq[q][cursor[q]] == g))
                    return "wire order violated on qubit " + std::to_string(q) + " at window " +
                           std::to_string(wi);
                ++cursor[q];
            }
        }
    }
    for (uint32_t q = 0; q < circuit.num_qubits; ++q) {
        if (cursor[q] != wire_seq[q].size())
            return "wire " + std::to_string(q) + " not fully scheduled";
    }

    // (d) maximality: a unitary gate in window wi must not fit in any earlier
    // window given its per-wire predecessors.
    std::vector<std::vector<char>> touched(schedule.windows.size(),
                                           std::vector<char>(circuit.num_qubits, 0));
    for (size_t wi = 0; wi < schedule.windows.size(); ++wi) {
        for (const Gate &g : schedule.windows[wi].gates) {
            touched[wi][g.q0] = 1;
            if (g.arity() == 2)
                touched[wi][g.q1] = 1;
        }
    }
    // earliest window a gate may join: one past the latest window touching
    // one of its wires before it.
    std::vector<size_t> last_window_on_wire(circuit.num_qubits, SIZE_MAX);
    for (size_t wi = 0; wi < schedule.windows.size(); ++wi) {
        const Window &w = schedule.windows[wi];
        for (const Gate &g : w.gates) {
            if (!g.is_measure()) {
                size_t earliest = 0;
                if (last_window_on_wire[g.q0] != SIZE_MAX)
                    earliest = last_window_on_wire[g.q0] + 1;
                if (g.arity() == 2 && last_window_on_wire[g.q1] != SIZE_MAX)
                    earliest = std::max(earliest, last_window_on_wire[g.q1] + 1);
                for (size_t wj = earliest; wj < wi; ++wj) {
                    if (schedule.windows[wj].is_measurement)
                        continue;
                    if (!touched[wj][g.q0] && (g.arity() == 1 || !touched[wj][g.q1]))
                        return "gate in window " + std::to_string(wi) +
                               " could have joined window " + std::to_string(wj);
                }
            }
        }
        for (const Gate &g : w.gates) {
            last_window_on_wire[g.q0] = wi;
            if (g.arity() == 2)
                last_window_on_wire[g.q1] = wi;
        }
    }
    return "valid";
}

inline std::string schedule_to_text(const Schedule &schedule) {
    std::ostringstream out;
    for (size_t wi = 0; wi < schedule.windows.size(); ++wi) {
        const Window &w = schedule.windows[wi];
        out << "W" << wi << (w.is_measurement ? " M:" : " U:");
        for (const Gate &g : w.gates) {
            out << ' ' << gate_name(g.kind) << '(' << g.q0;
            if (g.arity() == 2)
                out << ',' << g.q1;
            out << ')';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace quasar

#endif // QUASAR_SCHEDULE_HPP_
