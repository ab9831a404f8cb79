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

#include "quasar/gates.hpp"
#include "quasar/rng.hpp"
#include "quasar/tableau.hpp"

using namespace quasar;

namespace {

// Logical snapshot of every bit, for transpose equivalence checks.
template <Word W>
struct BitSnapshot {
    std::vector<uint8_t> x, z, s;
    static BitSnapshot take(const Tableau<W> &t) {
        size_t n = t.num_qubits();
        BitSnapshot snap;
        snap.x.resize(2 * n * n);
        snap.z.resize(2 * n * n);
        snap.s.resize(2 * n);
        for (size_t g = 0; g < 2 * n; ++g) {
            for (size_t q = 0; q < n; ++q) {
                snap.x[g * n + q] = t.x_bit(g, q);
                snap.z[g * n + q] = t.z_bit(g, q);
            }
            snap.s[g] = t.sign_bit(g);
        }
        return snap;
    }
    bool operator==(const BitSnapshot &o) const { return x == o.x && z == o.z && s == o.s; }
};

template <Word W>
void randomize_bits(Tableau<W> &t, uint64_t seed) {
    RandomStream rng(seed, 9);
    size_t n = t.num_qubits();
    for (size_t g = 0; g < 2 * n; ++g) {
        for (size_t q = 0; q < n; ++q) {
            t.set_x_bit(g, q, rng.next_bit());
            t.set_z_bit(g, q, rng.next_bit());
        }
        t.set_sign_bit(g, rng.next_bit());
    }
}

} // namespace

TEST_CASE("basis state: signs follow the init bits") {
    auto t = Tableau<uint64_t>::basis_state({false, true});
    REQUIRE(t.get_generator(2).str() == "+ZI");
    REQUIRE(t.get_generator(3).str() == "-IZ");
    REQUIRE(t.get_generator(0).str() == "+XI");
    REQUIRE(t.get_generator(1).str() == "-IX");
    REQUIRE(t.check_group_validity() == "valid");
}

TEST_CASE("three-qubit stabilizer fixture decodes to <+ZII, -YZI, -IXY>") {
    // Stabilizer rows (x|z|s): 000|100|0, 100|110|1, 011|001|1.
    Tableau<uint64_t> t(3);
    // Row 1: +ZII
    t.set_z_bit(3, 0, true);
    // Row 2: -YZI
    t.set_x_bit(4, 0, true);
    t.set_z_bit(4, 0, true);
    t.set_z_bit(4, 1, true);
    t.set_sign_bit(4, true);
    // Row 3: -IXY
    t.set_x_bit(5, 1, true);
    t.set_x_bit(5, 2, true);
    t.set_z_bit(5, 2, true);
    t.set_sign_bit(5, true);

    REQUIRE(t.get_generator(3).str() == "+ZII");
    REQUIRE(t.get_generator(4).str() == "-YZI");
    REQUIRE(t.get_generator(5).str() == "-IXY");
}

TEST_CASE("|+01> fixture: init then H on qubit 0 reproduces the printed tableau") {
    auto t = Tableau<uint64_t>::basis_state({false, false, true});
    Window w;
    w.gates.push_back({GateKind::H, 0});
    apply_window(t, w);

    // Destabilizers: +ZII, +IXI, -IIX; stabilizers: +XII, +IZI, -IIZ.
    REQUIRE(t.get_generator(0).str() == "+ZII");
    REQUIRE(t.get_generator(1).str() == "+IXI");
    REQUIRE(t.get_generator(2).str() == "-IIX");
    REQUIRE(t.get_generator(3).str() == "+XII");
    REQUIRE(t.get_generator(4).str() == "+IZI");
    REQUIRE(t.get_generator(5).str() == "-IIZ");
    REQUIRE(t.check_group_validity() == "valid");
}

TEST_CASE("basis states are valid for random init strings") {
    RandomStream rng(5, 11);
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 1 + rng.next_below(70);
        std::vector<bool> init(n);
        for (size_t i = 0; i < n; ++i)
            init[i] = rng.next_bit();
        auto t = Tableau<uint64_t>::basis_state(init);
        REQUIRE(t.check_group_validity() == "valid");
        REQUIRE(t.padding_clean());
        for (size_t i = 0; i < n; ++i)
            REQUIRE(t.sign_bit(n + i) == init[i]);
    }
}

TEST_CASE("get_generator: decode/encode round trip") {
    Tableau<uint8_t> t(11);
    randomize_bits(t, 77);
    for (size_t g = 0; g < 22; ++g) {
        PauliString p = t.get_generator(g);
        Tableau<uint8_t> back(11);
        for (size_t q = 0; q < 11; ++q) {
            back.set_x_bit(g, q, p.paulis[q] == Pauli::X || p.paulis[q] == Pauli::Y);
            back.set_z_bit(g, q, p.paulis[q] == Pauli::Z || p.paulis[q] == Pauli::Y);
        }
        back.set_sign_bit(g, p.negative);
        for (size_t q = 0; q < 11; ++q) {
            REQUIRE(back.x_bit(g, q) == t.x_bit(g, q));
            REQUIRE(back.z_bit(g, q) == t.z_bit(g, q));
        }
    }
}

TEMPLATE_TEST_CASE("transpose: involution and logical-bit bijection", "", uint8_t, uint32_t,
                   uint64_t) {
    using W = TestType;
    for (size_t n : {size_t{1}, size_t{5}, size_t{63}, size_t{64}, size_t{65}, size_t{130}}) {
        Tableau<W> t(n);
        randomize_bits(t, 1000 + n);
        auto before = BitSnapshot<W>::take(t);
        auto storage_before_x = t.x_plane();
        auto storage_before_s = t.signs();

        t.transpose_in_place();
        REQUIRE(t.layout() == Layout::RowMajor);
        REQUIRE(t.signs() == storage_before_s); // sign words untouched
        auto after = BitSnapshot<W>::take(t);
        REQUIRE(before == after); // logical bits preserved across layouts
        REQUIRE(t.padding_clean());

        t.transpose_in_place();
        REQUIRE(t.layout() == Layout::ColumnMajor);
        REQUIRE(t.x_plane() == storage_before_x); // bit-identical storage
        REQUIRE(BitSnapshot<W>::take(t) == before);
    }
}

TEST_CASE("transpose: row-major words equal the naive bit transpose") {
    // After transposing, word (i, g) must pack qubit bits of generator g.
    Tableau<uint64_t> t(100);
    randomize_bits(t, 42);
    auto before = BitSnapshot<uint64_t>::take(t);
    t.transpose_in_place();
    const auto &x = t.x_plane();
    for (size_t g = 0; g < 200; ++g) {
        for (size_t q = 0; q < 100; ++q) {
            bool bit = get_bit(x[t.rm_index(q / 64, t.rm_col(g))], q % 64);
            REQUIRE(bit == (before.x[g * 100 + q] != 0));
        }
    }
}

TEST_CASE("basis state transpose keeps the identity destabilizer block") {
    auto t = Tableau<uint64_t>::zero_state(128);
    t.transpose_in_place();
    // The identity bit matrix is symmetric: the logical block is unchanged.
    for (size_t g = 0; g < 128; ++g)
        for (size_t q = 0; q < 128; ++q)
            REQUIRE(t.x_bit(g, q) == (g == q));
    t.transpose_in_place();
    REQUIRE(t == Tableau<uint64_t>::zero_state(128));
}

TEST_CASE("group validity: mutations break anti-commutation") {
    RandomStream rng(31337, 13);
    int broken = 0, trials = 40;
    for (int trial = 0; trial < trials; ++trial) {
        auto t = Tableau<uint64_t>::zero_state(9);
        // Scramble by a short random circuit to reach a nontrivial state.
        Circuit c = generate_random(9, 8, trial, 0.0);
        Schedule s = schedule_windows(c, ScheduleMode::single_shot);
        for (const Window &w : s.windows)
            apply_window(t, w);
        REQUIRE(t.check_group_validity() == "valid");

        size_t g = rng.next_below(18);
        size_t q = rng.next_below(9);
        t.set_x_bit(g, q, !t.x_bit(g, q));
        broken += t.check_group_validity() != "valid";
    }
    REQUIRE(broken > trials / 2); // flips usually break the group
}

TEST_CASE("storage footprint matches the packed payload") {
    Tableau<uint64_t> t(1024); // n divisible by w: no padding
    size_t n = 1024, k = 1024 / 64;
    REQUIRE(t.storage_words() == 2 * n * 2 * k + 2 * k);
}

TEST_CASE("memory accounting at the padded boundary") {
    Tableau<uint64_t> t(65);
    size_t k = 2;
    REQUIRE(t.storage_words() == 2 * (k * 64) * 2 * k + 2 * k);
}
