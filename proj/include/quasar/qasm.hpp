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

#ifndef QUASAR_QASM_HPP_
#define QUASAR_QASM_HPP_

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "quasar/circuit.hpp"

namespace quasar {

// OpenQASM 2.0 subset reader/writer. Supported statements: the version
// header, include, one qreg, optional cregs, the Clifford gate names
// {x,y,z,h,s,sdg,cx,cy,cz,swap,iswap} and `measure q[i] -> c[j];`.

struct QasmError : std::runtime_error {
    int line;
    int column;
    QasmError(const std::string &msg, int line_, int col_)
        : std::runtime_error("qasm:" + std::to_string(line_) + ":" + std::to_string(col_) +
                             ": " + msg),
          line(line_), column(col_) {}
};

namespace qasm_detail {

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string &msg) const { throw QasmError(msg, line_, col_); }

    void expect(char c) {
        skip_space();
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        advance();
    }

    bool accept(char c) {
        skip_space();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            advance();
        if (pos_ == start)
            fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    uint64_t number() {
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected number");
        uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<uint64_t>(text_[pos_] - '0');
            advance();
        }
        return v;
    }

    // "2.0" style version token.
    void version() {
        number();
        if (accept('.'))
            number();
    }

    // Quoted filename after `include`.
    void quoted() {
        skip_space();
        if (peek() != '"')
            fail("expected string literal");
        advance();
        while (pos_ < text_.size() && text_[pos_] != '"')
            advance();
        if (pos_ >= text_.size())
            fail("unterminated string literal");
        advance();
    }

    int line() const { return line_; }
    int column() const { return col_; }

  private:
    void advance() {
        ++pos_;
        ++col_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline std::optional<GateKind> gate_from_name(std::string_view name) {
    for (GateKind k : kUnitaryKinds) {
        if (gate_name(k) == name)
            return k;
    }
    return std::nullopt;
}

} // namespace qasm_detail

inline Circuit parse_qasm(std::string_view text) {
    using qasm_detail::Lexer;
    Lexer lex(text);
    Circuit circuit;
    bool have_qreg = false;
    std::string qreg_name;
    std::string creg_name;

    auto qubit_operand = [&](Lexer &l) -> uint32_t {
        std::string reg = l.ident();
        if (!have_qreg || reg != qreg_name)
            l.fail("unknown quantum register '" + reg + "'");
        l.expect('[');
        uint64_t idx = l.number();
        l.expect(']');
        if (idx >= circuit.num_qubits)
            l.fail("qubit index " + std::to_string(idx) + " out of range");
        return static_cast<uint32_t>(idx);
    };

    // Header is mandatory.
    {
        std::string kw = lex.ident();
        if (kw != "OPENQASM")
            lex.fail("expected OPENQASM header");
        lex.version();
        lex.expect(';');
    }

    while (!lex.eof()) {
        std::string kw = lex.ident();
        if (kw == "include") {
            lex.quoted();
            lex.expect(';');
        } else if (kw == "qreg") {
            if (have_qreg)
                lex.fail("multiple quantum registers are not supported");
            qreg_name = lex.ident();
            lex.expect('[');
            uint64_t n = lex.number();
            lex.expect(']');
            lex.expect(';');
            if (n == 0)
                lex.fail("quantum register must have at least one qubit");
            circuit.num_qubits = static_cast<uint32_t>(n);
            have_qreg = true;
        } else if (kw == "creg") {
            creg_name = lex.ident();
            lex.expect('[');
            circuit.num_clbits = static_cast<uint32_t>(lex.number());
            lex.expect(']');
            lex.expect(';');
        } else if (kw == "measure") {
            if (!have_qreg)
                lex.fail("measure before qreg declaration");
            uint32_t q = qubit_operand(lex);
            uint32_t cl = q;
            lex.skip_space();
            if (lex.accept('-')) {
                lex.expect('>');
                std::string reg = lex.ident();
                if (creg_name.empty() || reg != creg_name)
                    lex.fail("unknown classical register '" + reg + "'");
                lex.expect('[');
                uint64_t idx = lex.number();
                lex.expect(']');
                if (idx >= circuit.num_clbits)
                    lex.fail("classical index " + std::to_string(idx) + " out of range");
                cl = static_cast<uint32_t>(idx);
            }
            lex.expect(';');
            (void)cl; // recorded implicitly: outcomes are indexed by qubit
            circuit.gates.push_back({GateKind::MEASURE, q});
        } else if (auto kind = qasm_detail::gate_from_name(kw)) {
            if (!have_qreg)
                lex.fail("gate before qreg declaration");
            Gate g{*kind, 0, 0};
            g.q0 = qubit_operand(lex);
            if (gate_arity(*kind) == 2) {
                lex.expect(',');
                g.q1 = qubit_operand(lex);
                if (g.q0 == g.q1)
                    lex.fail("two-qubit gate with identical operands");
            }
            lex.expect(';');
            circuit.gates.push_back(g);
        } else {
            lex.fail("unsupported gate or statement '" + kw + "'");
        }
    }
    if (!have_qreg)
        lex.fail("missing quantum register declaration");
    return circuit;
}

inline std::string emit_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.num_qubits << "];\n";
    if (circuit.measure_count() > 0)
        out << "creg c[" << circuit.num_qubits << "];\n";
    for (const Gate &g : circuit.gates) {
        if (g.is_measure()) {
            out << "measure q[" << g.q0 << "] -> c[" << g.q0 << "];\n";
        } else if (g.arity() == 1) {
            out << gate_name(g.kind) << " q[" << g.q0 << "];\n";
        } else {
            out << gate_name(g.kind) << " q[" << g.q0 << "],q[" << g.q1 << "];\n";
        }
    }
    return out.str();
}

} // namespace quasar

#endif // QUASAR_QASM_HPP_
