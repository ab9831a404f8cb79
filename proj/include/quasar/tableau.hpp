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

#ifndef QUASAR_TABLEAU_HPP_
#define QUASAR_TABLEAU_HPP_

#include <cassert>
#include <string>
#include <vector>

#include "quasar/bitplane.hpp"
#include "quasar/common.hpp"
#include "quasar/parallel.hpp"

namespace quasar {

enum class Layout { ColumnMajor, RowMajor };

enum class Pauli : uint8_t { I, X, Y, Z };

struct PauliString {
    bool negative = false;
    std::vector<Pauli> paulis;

    std::string str() const {
        std::string s(1, negative ? '-' : '+');
        for (Pauli p : paulis)
            s += "IXYZ"[static_cast<int>(p)];
        return s;
    }
};

// Bit-packed extended tableau: 2n generators (destabilizers then stabilizers)
// over n qubits, X and Z planes plus a sign vector.
//
// Storage is padded to n_pad = k*w qubit rows so the in-place transpose works
// on whole w x w tiles; all logical loops are bounded by n and padding bits
// stay zero.
//
//   ColumnMajor: word (qubit q, generator-word j) at q*2k + j. j in [0,k) is
//   the destabilizer half, [k,2k) the stabilizer half; bit b of word j is
//   generator j*w+b of its half.
//
//   RowMajor: word (qubit-word i, generator column g) at i*2*n_pad + g, with
//   destabilizer columns [0,n_pad) and stabilizer columns [n_pad,2*n_pad);
//   bit b of the word is qubit i*w+b.
//
// The sign vector always has 2k words and is generator-indexed in both
// layouts: word [0,k) destabilizer signs, [k,2k) stabilizer signs, bit g%w of
// word g/w.
template <Word W>
class Tableau {
  public:
    static constexpr size_t w = word_bits<W>;

    explicit Tableau(size_t n)
        : n_(n), k_(words_for<W>(n)), n_pad_(k_ * w), x_(plane_words(), W{0}),
          z_(plane_words(), W{0}), s_(2 * k_, W{0}) {
        if (n == 0)
            throw std::invalid_argument("Tableau: n must be >= 1");
    }

    size_t num_qubits() const { return n_; }
    size_t num_words() const { return k_; } // words per n qubits / generators
    size_t padded_qubits() const { return n_pad_; }
    Layout layout() const { return layout_; }
    size_t plane_words() const { return n_pad_ * 2 * k_; }
    size_t storage_words() const { return 2 * plane_words() + s_.size(); }

    std::vector<W> &x_plane() { return x_; }
    std::vector<W> &z_plane() { return z_; }
    std::vector<W> &signs() { return s_; }
    const std::vector<W> &x_plane() const { return x_; }
    const std::vector<W> &z_plane() const { return z_; }
    const std::vector<W> &signs() const { return s_; }

    // ---- index maps -------------------------------------------------------

    size_t cm_index(size_t q, size_t j) const { return q * 2 * k_ + j; }
    size_t rm_stride() const { return 2 * n_pad_; }
    size_t rm_index(size_t i, size_t col) const { return i * rm_stride() + col; }
    // Generator g in [0,2n) -> RowMajor column.
    size_t rm_col(size_t g) const { return g < n_ ? g : n_pad_ + (g - n_); }

    // ---- logical bit accessors (both layouts) -----------------------------

    bool x_bit(size_t g, size_t q) const { return plane_bit(x_, g, q); }
    bool z_bit(size_t g, size_t q) const { return plane_bit(z_, g, q); }
    void set_x_bit(size_t g, size_t q, bool v) { set_plane_bit(x_, g, q, v); }
    void set_z_bit(size_t g, size_t q, bool v) { set_plane_bit(z_, g, q, v); }

    bool sign_bit(size_t g) const {
        assert(g < 2 * n_);
        size_t half = g < n_ ? 0 : k_;
        size_t idx = g < n_ ? g : g - n_;
        return get_bit(s_[half + idx / w], idx % w);
    }
    void set_sign_bit(size_t g, bool v) {
        assert(g < 2 * n_);
        size_t half = g < n_ ? 0 : k_;
        size_t idx = g < n_ ? g : g - n_;
        set_bit(s_[half + idx / w], idx % w, v);
    }

    // ---- construction ------------------------------------------------------

    // Basis-state tableau: destabilizer i = (-1)^{b_i} X_i, stabilizer i =
    // (-1)^{b_i} Z_i for initstate bits b. ColumnMajor.
    static Tableau basis_state(const std::vector<bool> &initstate) {
        Tableau t(initstate.size());
        for (size_t i = 0; i < t.n_; ++i) {
            t.set_x_bit(i, i, true);          // destabilizer X_i
            t.set_z_bit(t.n_ + i, i, true);   // stabilizer Z_i
            t.set_sign_bit(i, initstate[i]);
            t.set_sign_bit(t.n_ + i, initstate[i]);
        }
        return t;
    }

    static Tableau zero_state(size_t n) { return basis_state(std::vector<bool>(n, false)); }

    // ---- decoding ----------------------------------------------------------

    PauliString get_generator(size_t g) const {
        if (g >= 2 * n_)
            throw std::out_of_range("get_generator: index out of range");
        PauliString p;
        p.negative = sign_bit(g);
        p.paulis.resize(n_);
        for (size_t q = 0; q < n_; ++q) {
            bool x = x_bit(g, q);
            bool z = z_bit(g, q);
            p.paulis[q] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
        }
        return p;
    }

    // One generator per line, sign + Pauli letters, destabilizers first.
    std::string dump() const {
        std::string out;
        for (size_t g = 0; g < 2 * n_; ++g) {
            out += get_generator(g).str();
            out += '\n';
        }
        return out;
    }

    // ---- transpose ---------------------------------------------------------

    // In-place layout flip between ColumnMajor and RowMajor on the same
    // storage. Stage 1 bit-transposes every aligned w x w tile (w words with
    // stride 2k); stage 2 moves words so tile (I,J) lands at its transposed
    // slot, i.e. per block-row of 2kw words the offset map s*2k+J <-> J*w+s.
    // The sign vector is untouched. Involution.
    void transpose_in_place() {
        if (layout_ == Layout::ColumnMajor) {
            shuffle_tiles();
            permute_words(/*to_row_major=*/true);
            layout_ = Layout::RowMajor;
        } else {
            permute_words(/*to_row_major=*/false);
            shuffle_tiles();
            layout_ = Layout::ColumnMajor;
        }
    }

    // ---- validity ----------------------------------------------------------

    // Three commutation conditions via symplectic inner products: stabilizers
    // pairwise commute, destabilizers pairwise commute, destabilizer i
    // anti-commutes exactly with stabilizer i. Returns "valid" or the first
    // violation. Works on a row-major copy so rows are contiguous.
    std::string check_group_validity() const {
        Tableau t = *this;
        if (t.layout_ == Layout::ColumnMajor)
            t.transpose_in_place();
        auto sympl = [&](size_t ga, size_t gb) {
            size_t ca = t.rm_col(ga), cb = t.rm_col(gb);
            int par = 0;
            for (size_t i = 0; i < t.k_; ++i) {
                W xa = t.x_[t.rm_index(i, ca)], za = t.z_[t.rm_index(i, ca)];
                W xb = t.x_[t.rm_index(i, cb)], zb = t.z_[t.rm_index(i, cb)];
                par ^= popcount<W>((xa & zb) ^ (za & xb)) & 1;
            }
            return par;
        };
        for (size_t i = 0; i < n_; ++i) {
            for (size_t j = i; j < n_; ++j) {
                if (sympl(n_ + i, n_ + j) != 0)
                    return "stabilizers " + std::to_string(i) + "," + std::to_string(j) +
                           " anti-commute";
                if (sympl(i, j) != 0)
                    return "destabilizers " + std::to_string(i) + "," + std::to_string(j) +
                           " anti-commute";
                int expect = i == j ? 1 : 0;
                if (sympl(i, n_ + j) != expect)
                    return "destabilizer " + std::to_string(i) + " vs stabilizer " +
                           std::to_string(j) + ": wrong commutation";
            }
        }
        return "valid";
    }

    // Padding rows/columns and sign padding bits must stay zero.
    bool padding_clean() const {
        if (n_ == n_pad_)
            return true;
        if (layout_ == Layout::ColumnMajor) {
            // qubit rows >= n are all zero; generator bits >= n zero in each word.
            for (size_t q = n_; q < n_pad_; ++q)
                for (size_t j = 0; j < 2 * k_; ++j)
                    if (x_[cm_index(q, j)] || z_[cm_index(q, j)])
                        return false;
            W pad_mask = static_cast<W>(~low_mask<W>(n_ % w == 0 ? w : n_ % w));
            for (size_t q = 0; q < n_; ++q)
                for (size_t j : {k_ - 1, 2 * k_ - 1})
                    if ((x_[cm_index(q, j)] & pad_mask) || (z_[cm_index(q, j)] & pad_mask))
                        return false;
        } else {
            // generator columns >= n zero; qubit bits >= n zero in row k-1.
            for (size_t i = 0; i < k_; ++i)
                for (size_t half = 0; half < 2; ++half)
                    for (size_t c = n_; c < n_pad_; ++c)
                        if (x_[rm_index(i, half * n_pad_ + c)] ||
                            z_[rm_index(i, half * n_pad_ + c)])
                            return false;
            W pad_mask = static_cast<W>(~low_mask<W>(n_ % w == 0 ? w : n_ % w));
            for (size_t col = 0; col < rm_stride(); ++col)
                if ((x_[rm_index(k_ - 1, col)] & pad_mask) ||
                    (z_[rm_index(k_ - 1, col)] & pad_mask))
                    return false;
        }
        W pad_mask = static_cast<W>(~low_mask<W>(n_ % w == 0 ? w : n_ % w));
        if ((s_[k_ - 1] & pad_mask) || (s_[2 * k_ - 1] & pad_mask))
            return false;
        return true;
    }

    friend bool operator==(const Tableau &a, const Tableau &b) {
        return a.n_ == b.n_ && a.layout_ == b.layout_ && a.x_ == b.x_ && a.z_ == b.z_ &&
               a.s_ == b.s_;
    }

  private:
    bool plane_bit(const std::vector<W> &plane, size_t g, size_t q) const {
        assert(g < 2 * n_ && q < n_);
        if (layout_ == Layout::ColumnMajor) {
            size_t j = g < n_ ? g / w : k_ + (g - n_) / w;
            size_t b = g < n_ ? g % w : (g - n_) % w;
            return get_bit(plane[cm_index(q, j)], b);
        }
        return get_bit(plane[rm_index(q / w, rm_col(g))], q % w);
    }

    void set_plane_bit(std::vector<W> &plane, size_t g, size_t q, bool v) {
        assert(g < 2 * n_ && q < n_);
        if (layout_ == Layout::ColumnMajor) {
            size_t j = g < n_ ? g / w : k_ + (g - n_) / w;
            size_t b = g < n_ ? g % w : (g - n_) % w;
            set_bit(plane[cm_index(q, j)], b, v);
        } else {
            set_bit(plane[rm_index(q / w, rm_col(g))], q % w, v);
        }
    }

    // Stage 1: bit-transpose each w x w tile in place. Tile (I, J) holds the
    // words (I*w+s)*2k + J for s in [0,w). Always runs in ColumnMajor
    // geometry (before or after the word permutation).
    void shuffle_tiles() {
        const size_t tiles = k_ * 2 * k_;
        parallel_for_chunks(2 * tiles, [&](unsigned, size_t begin, size_t end) {
            std::vector<W> tile(w);
            for (size_t item = begin; item < end; ++item) {
                std::vector<W> &plane = item < tiles ? x_ : z_;
                size_t tidx = item % tiles;
                size_t tile_row = tidx / (2 * k_);
                size_t tile_col = tidx % (2 * k_);
                size_t base = (tile_row * w) * 2 * k_ + tile_col;
                for (size_t s = 0; s < w; ++s)
                    tile[s] = plane[base + s * 2 * k_];
                bit_transpose_tile<W>(tile);
                for (size_t s = 0; s < w; ++s)
                    plane[base + s * 2 * k_] = tile[s];
            }
        });
    }

    // Stage 2: per block-row word permutation between the two index maps.
    // Forward (to row-major): word at local offset s*2k+J moves to J*w+s.
    void permute_words(bool to_row_major) {
        const size_t row_words = 2 * k_ * w; // words per block-row
        parallel_for_chunks(2 * k_, [&](unsigned, size_t begin, size_t end) {
            std::vector<W> scratch(row_words);
            for (size_t item = begin; item < end; ++item) {
                std::vector<W> &plane = item < k_ ? x_ : z_;
                size_t block_row = item % k_;
                W *base = plane.data() + block_row * row_words;
                if (to_row_major) {
                    for (size_t s = 0; s < w; ++s)
                        for (size_t j = 0; j < 2 * k_; ++j)
                            scratch[j * w + s] = base[s * 2 * k_ + j];
                } else {
                    for (size_t j = 0; j < 2 * k_; ++j)
                        for (size_t s = 0; s < w; ++s)
                            scratch[s * 2 * k_ + j] = base[j * w + s];
                }
                for (size_t i = 0; i < row_words; ++i)
                    base[i] = scratch[i];
            }
        });
    }

    size_t n_;
    size_t k_;
    size_t n_pad_;
    Layout layout_ = Layout::ColumnMajor;
    std::vector<W> x_;
    std::vector<W> z_;
    std::vector<W> s_;
};

// Phase bookkeeping for Pauli row products, shared by the measurement engine
// and the scalar reference. Counts +i/-i contributions of control*target per
// word; the running (plus-minus) difference must end even for commuting rows.
template <Word W>
inline void product_phase_counts(W xc, W zc, W xt, W zt, int64_t &plus, int64_t &minus) {
    W p = static_cast<W>((~xc & zc & xt & ~zt) | (xc & zc & ~xt & zt) | (xc & ~zc & xt & zt));
    W m = static_cast<W>((~xc & zc & xt & zt) | (xc & zc & xt & ~zt) | (xc & ~zc & ~xt & zt));
    plus += popcount<W>(p);
    minus += popcount<W>(m);
}

// Sign flip contributed by multiplying commuting rows: ((plus-minus) mod 4)/2.
inline bool product_phase_flip(int64_t plus, int64_t minus) {
    int64_t diff = plus - minus;
    if (diff & 1)
        throw std::logic_error("product of anti-commuting rows (corrupted tableau)");
    return (diff >> 1) & 1;
}

} // namespace quasar

#endif // QUASAR_TABLEAU_HPP_
