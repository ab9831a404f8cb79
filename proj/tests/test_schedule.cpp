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

#include "quasar/circuit.hpp"
#include "quasar/schedule.hpp"

using namespace quasar;

namespace {

Circuit five_wire_mixed() {
    // Five wires, mixed single/two-qubit gates with two early measurements.
    Circuit c;
    c.num_qubits = 5;
    c.gates = {
        {GateKind::H, 0},       {GateKind::MEASURE, 3}, {GateKind::MEASURE, 1},
        {GateKind::S, 4},       {GateKind::S, 0},       {GateKind::S, 2},
        {GateKind::S, 3},       {GateKind::CX, 0, 2},   {GateKind::CX, 3, 4},
        {GateKind::H, 1},       {GateKind::H, 2},       {GateKind::S, 3},
    };
    return c;
}

} // namespace

TEST_CASE("five-wire example: unitaries advance, measurements group at the barrier") {
    Circuit c = five_wire_mixed();
    Schedule s = schedule_windows(c, ScheduleMode::single_shot);
    REQUIRE(validate_schedule(c, s) == "valid");

    // W0 pulls every frontier unitary; the two frontier measurements then
    // form one measurement window; the rest follows in three more windows.
    REQUIRE(s.windows.size() == 5);
    REQUIRE(!s.windows[0].is_measurement);
    REQUIRE(s.windows[0].gates.size() == 3); // h0, s4, s2
    REQUIRE(s.windows[1].is_measurement);
    REQUIRE(s.windows[1].gates.size() == 2); // m3, m1
    REQUIRE(!s.windows[2].is_measurement);
    REQUIRE(s.windows[2].gates.size() == 3); // s0, s3, h1
    REQUIRE(s.windows[3].gates.size() == 2); // cx(0,2), cx(3,4)
    REQUIRE(s.windows[4].gates.size() == 2); // h2, s3
}

TEST_CASE("single wire serializes fully") {
    Circuit c;
    c.num_qubits = 1;
    c.gates = {{GateKind::H, 0}, {GateKind::H, 0}, {GateKind::H, 0}};
    Schedule s = schedule_windows(c, ScheduleMode::single_shot);
    REQUIRE(s.windows.size() == 3);
    for (const Window &w : s.windows)
        REQUIRE(w.gates.size() == 1);
    REQUIRE(validate_schedule(c, s) == "valid");
}

TEST_CASE("independent gates share one window") {
    Circuit c;
    c.num_qubits = 8;
    for (uint32_t q = 0; q < 8; ++q)
        c.gates.push_back({GateKind::H, q});
    Schedule s = schedule_windows(c, ScheduleMode::single_shot);
    REQUIRE(s.windows.size() == 1);
    REQUIRE(s.windows[0].gates.size() == 8);
}

TEST_CASE("measurement before dependent unitary acts as barrier") {
    Circuit c;
    c.num_qubits = 1;
    c.gates = {{GateKind::MEASURE, 0}, {GateKind::H, 0}};
    Schedule s = schedule_windows(c, ScheduleMode::single_shot);
    REQUIRE(s.windows.size() == 2);
    REQUIRE(s.windows[0].is_measurement);
    REQUIRE(!s.windows[1].is_measurement);
    REQUIRE(validate_schedule(c, s) == "valid");
}

TEST_CASE("validator flags hand-built violations") {
    Circuit c;
    c.num_qubits = 2;
    c.gates = {{GateKind::H, 0}, {GateKind::S, 0}};
    Schedule s = schedule_windows(c, ScheduleMode::single_shot);
    REQUIRE(validate_schedule(c, s) == "valid");

    // Swap the two dependent gates: order violation.
    Schedule bad = s;
    std::swap(bad.windows[0].gates[0], bad.windows[1].gates[0]);
    REQUIRE(validate_schedule(c, bad) != "valid");

    // Serialize two independent gates: maximality violation.
    Circuit c2;
    c2.num_qubits = 2;
    c2.gates = {{GateKind::H, 0}, {GateKind::H, 1}};
    Schedule lazy;
    lazy.windows.push_back({{c2.gates[0]}, false});
    lazy.windows.push_back({{c2.gates[1]}, false});
    REQUIRE(validate_schedule(c2, lazy) != "valid");
}

TEST_CASE("property sweep: 1000 random circuits validate") {
    size_t checked = 0;
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        uint32_t n = 1 + static_cast<uint32_t>(seed % 64);
        uint32_t depth = 1 + static_cast<uint32_t>((seed * 7) % 20);
        Circuit c = generate_random(n, depth, seed, 0.4);
        for (ScheduleMode mode : {ScheduleMode::single_shot, ScheduleMode::sampling}) {
            Schedule s = schedule_windows(c, mode);
            INFO("seed " << seed << " n " << n << " depth " << depth);
            REQUIRE(validate_schedule(c, s) == "valid");
        }
        // Deterministic.
        Schedule again = schedule_windows(c, ScheduleMode::single_shot);
        Schedule first = schedule_windows(c, ScheduleMode::single_shot);
        REQUIRE(first.windows.size() == again.windows.size());
        ++checked;
    }
    REQUIRE(checked == 1000);
}

TEST_CASE("window count bounded by twice the per-wire depth") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Circuit c = generate_random(16, 10, seed, 0.5);
        std::vector<size_t> depth_per_wire(c.num_qubits, 0);
        for (const Gate &g : c.gates) {
            size_t d = depth_per_wire[g.q0];
            if (g.arity() == 2)
                d = std::max(d, depth_per_wire[g.q1]);
            ++d;
            depth_per_wire[g.q0] = d;
            if (g.arity() == 2)
                depth_per_wire[g.q1] = d;
        }
        size_t depth = 0;
        for (size_t d : depth_per_wire)
            depth = std::max(depth, d);
        Schedule s = schedule_windows(c, ScheduleMode::single_shot);
        REQUIRE(s.windows.size() <= 2 * depth);
    }
}
