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

#include <algorithm>
#include <complex>

#include <catch2/catch_amalgamated.hpp>

#include "quasar/gates.hpp"
#include "quasar/oracle/scalar_chp.hpp"
#include "quasar/oracle/state_vector.hpp"

using namespace quasar;
using oracle::cplx;

namespace {

// Dense conjugation oracle: every gate rule is re-derived by conjugating the
// Pauli basis with the gate's unitary and read off as (x, z, sign).
using DMat = std::vector<cplx>; // row-major square

DMat pauli_mat(bool x, bool z) {
    const cplx i{0, 1};
    if (!x && !z)
        return {1, 0, 0, 1};
    if (x && !z)
        return {0, 1, 1, 0};
    if (!x && z)
        return {1, 0, 0, -1};
    return {0, -i, i, 0}; // Y
}

DMat matmul(const DMat &a, const DMat &b, size_t dim) {
    DMat out(dim * dim, cplx{0, 0});
    for (size_t r = 0; r < dim; ++r)
        for (size_t k = 0; k < dim; ++k)
            for (size_t c = 0; c < dim; ++c)
                out[r * dim + c] += a[r * dim + k] * b[k * dim + c];
    return out;
}

DMat adjoint(const DMat &a, size_t dim) {
    DMat out(dim * dim);
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c)
            out[r * dim + c] = std::conj(a[c * dim + r]);
    return out;
}

DMat kron2(const DMat &a, const DMat &b) {
    DMat out(16);
    for (size_t ar = 0; ar < 2; ++ar)
        for (size_t ac = 0; ac < 2; ++ac)
            for (size_t br = 0; br < 2; ++br)
                for (size_t bc = 0; bc < 2; ++bc)
                    out[(ar * 2 + br) * 4 + (ac * 2 + bc)] = a[ar * 2 + ac] * b[br * 2 + bc];
    return out;
}

bool approx_eq(const DMat &a, const DMat &b, double scale) {
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - scale * b[i]) > 1e-9)
            return false;
    return true;
}

// Decodes M as +/- (Hermitian Pauli); fails the test if M is not one.
struct DecodedPauli {
    bool x0, z0, x1, z1, sign;
};

DecodedPauli decode_pauli(const DMat &m, int arity) {
    for (int xz = 0; xz < (arity == 1 ? 4 : 16); ++xz) {
        bool x0 = xz & 1, z0 = xz & 2, x1 = xz & 4, z1 = xz & 8;
        DMat candidate = arity == 1 ? pauli_mat(x0, z0)
                                    : kron2(pauli_mat(x0, z0), pauli_mat(x1, z1));
        if (approx_eq(m, candidate, 1.0))
            return {x0, z0, x1, z1, false};
        if (approx_eq(m, candidate, -1.0))
            return {x0, z0, x1, z1, true};
    }
    FAIL("conjugated Pauli is not +/- a Pauli");
    return {};
}

} // namespace

TEST_CASE("every gate rule equals the dense conjugation oracle") {
    for (GateKind kind : kUnitaryKinds) {
        if (gate_arity(kind) == 1) {
            DMat u(4);
            auto m2 = oracle::gate_matrix_1q(kind);
            std::copy(m2.begin(), m2.end(), u.begin());
            DMat udag = adjoint(u, 2);
            for (int xz = 0; xz < 4; ++xz) {
                bool x = xz & 1, z = xz & 2;
                DMat conj = matmul(matmul(u, pauli_mat(x, z), 2), udag, 2);
                DecodedPauli expect = decode_pauli(conj, 1);
                auto got = apply_gate_rule<uint8_t>(kind, x, z);
                INFO(gate_name(kind) << " on x=" << x << " z=" << z);
                REQUIRE(got.x0 == expect.x0);
                REQUIRE(got.z0 == expect.z0);
                REQUIRE((got.sign & 1) == expect.sign);
            }
        } else {
            auto m4 = oracle::gate_matrix_2q(kind);
            DMat u(m4.begin(), m4.end());
            DMat udag = adjoint(u, 4);
            for (int xz = 0; xz < 16; ++xz) {
                bool xc = xz & 1, zc = xz & 2, xt = xz & 4, zt = xz & 8;
                DMat p = kron2(pauli_mat(xc, zc), pauli_mat(xt, zt));
                DMat conj = matmul(matmul(u, p, 4), udag, 4);
                DecodedPauli expect = decode_pauli(conj, 2);
                auto got = apply_gate_rule<uint8_t>(kind, xc, zc, xt, zt);
                INFO(gate_name(kind) << " on xc=" << xc << " zc=" << zc << " xt=" << xt
                                     << " zt=" << zt);
                REQUIRE(got.x0 == expect.x0);
                REQUIRE(got.z0 == expect.z0);
                REQUIRE(got.x1 == expect.x1);
                REQUIRE(got.z1 == expect.z1);
                REQUIRE((got.sign & 1) == expect.sign);
            }
        }
    }
}

TEST_CASE("classic rule spot checks") {
    // H: Z -> X with no flip; Y -> -Y.
    auto h1 = apply_gate_rule<uint8_t>(GateKind::H, 0, 1);
    REQUIRE((h1.x0 == 1 && h1.z0 == 0 && h1.sign == 0));
    auto h2 = apply_gate_rule<uint8_t>(GateKind::H, 1, 1);
    REQUIRE((h2.x0 == 1 && h2.z0 == 1 && h2.sign == 1));
    // CX: X_c -> X_c X_t, no flip.
    auto cx = apply_gate_rule<uint8_t>(GateKind::CX, 1, 0, 0, 0);
    REQUIRE((cx.x0 == 1 && cx.x1 == 1 && cx.sign == 0));
}

TEST_CASE("window application matches Example-1 column swaps") {
    auto t = Tableau<uint64_t>::zero_state(3);
    Window w;
    w.gates = {{GateKind::H, 0}, {GateKind::S, 2}};
    apply_window(t, w);
    // Stabilizer rows: X on the H wire swapped in; the S wire's Z row is
    // unchanged because its x bit is 0.
    REQUIRE(t.get_generator(3).str() == "+XII");
    REQUIRE(t.get_generator(4).str() == "+IZI");
    REQUIRE(t.get_generator(5).str() == "+IIZ");
    // Destabilizers evolve too: X_0 -> Z_0, X_2 -> Y_2.
    REQUIRE(t.get_generator(0).str() == "+ZII");
    REQUIRE(t.get_generator(2).str() == "+IIY");
    REQUIRE(t.check_group_validity() == "valid");
}

TEST_CASE("H twice restores the tableau") {
    auto t = Tableau<uint64_t>::zero_state(5);
    auto original = t;
    Window w;
    w.gates = {{GateKind::H, 3}};
    apply_window(t, w);
    REQUIRE(!(t == original));
    apply_window(t, w);
    REQUIRE(t == original);
}

TEMPLATE_TEST_CASE("windows equal the scalar one-by-one reference", "", uint8_t, uint16_t,
                   uint32_t, uint64_t) {
    using W = TestType;
    RandomStream rng(555, 21);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 2 + rng.next_below(40);
        Circuit c = generate_random(static_cast<uint32_t>(n), 6, 1000 + trial, 0.0);
        Schedule s = schedule_windows(c, ScheduleMode::single_shot);

        auto packed = Tableau<W>::zero_state(n);
        auto scalar = oracle::ScalarTableau::zero_state(n);
        for (const Window &w : s.windows) {
            apply_window(packed, w);
            // Scalar applies gates serially in a shuffled order: the result
            // must not depend on order within a window.
            std::vector<Gate> order = w.gates;
            for (size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[rng.next_below(i)]);
            for (const Gate &g : order)
                scalar.apply_gate(g);
        }
        REQUIRE(scalar.pack<W>() == packed);
        REQUIRE(packed.check_group_validity() == "valid");
        REQUIRE(packed.padding_clean());
    }
}

TEST_CASE("collapse_signs: pairs cancel, tree equals fold") {
    uint64_t target = 0b1001;
    std::vector<uint64_t> pair = {0b01, 0b01};
    collapse_signs<uint64_t>(pair, target);
    REQUIRE(target == 0b1001);

    uint64_t t2 = 0;
    std::vector<uint64_t> one = {0xF0F0};
    collapse_signs<uint64_t>(one, t2);
    REQUIRE(t2 == 0xF0F0);

    RandomStream rng(8, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint64_t> contributions(rng.next_below(2000));
        uint64_t fold = 0;
        for (auto &c : contributions) {
            c = rng.next_word();
            fold ^= c;
        }
        uint64_t target_tree = 0xABCDEF;
        collapse_signs<uint64_t>(contributions, target_tree);
        REQUIRE(target_tree == (0xABCDEFull ^ fold));
    }
}

TEST_CASE("apply_window rejects bad input") {
    auto t = Tableau<uint64_t>::zero_state(3);
    Window overlapping;
    overlapping.gates = {{GateKind::H, 0}, {GateKind::CX, 0, 1}};
    REQUIRE_THROWS_AS(apply_window(t, overlapping), std::invalid_argument);

    Window measure;
    measure.gates = {{GateKind::MEASURE, 0}};
    measure.is_measurement = true;
    REQUIRE_THROWS_AS(apply_window(t, measure), std::invalid_argument);

    t.transpose_in_place();
    Window ok;
    ok.gates = {{GateKind::H, 0}};
    REQUIRE_THROWS_AS(apply_window(t, ok), std::invalid_argument);
}
