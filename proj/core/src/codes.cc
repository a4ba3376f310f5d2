// Copyright 2026 The qexc Authors
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

#include "qexc/codes.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qexc/errorops.h"
#include "qexc/errors.h"

namespace qexc {

Code Code::to_float() const {
    Code out{n, {}, label};
    for (const auto &w : words) {
        out.words.push_back(w.to_float());
    }
    return out;
}

std::string CodeViolation::str() const {
    switch (kind) {
        case Kind::qubit_count:
            return "word " + std::to_string(j) + " has the wrong qubit count";
        case Kind::mode:
            return "word " + std::to_string(j) + " mixes exact and float modes";
        case Kind::not_orthogonal:
            return "<C_" + std::to_string(i) + "|C_" + std::to_string(j) + "> = " + value.str();
        default:
            return "<C_" + std::to_string(j) + "|C_" + std::to_string(j) + "> - <C_0|C_0> = " + value.str();
    }
}

std::vector<CodeViolation> check_code(const Code &code, double tol) {
    std::vector<CodeViolation> out;
    for (size_t j = 0; j < code.words.size(); ++j) {
        if (code.words[j].num_qubits() != code.n) {
            out.push_back({CodeViolation::Kind::qubit_count, 0, static_cast<int>(j), {}});
        } else if (code.words[j].mode() != code.mode()) {
            out.push_back({CodeViolation::Kind::mode, 0, static_cast<int>(j), {}});
        }
    }
    if (!out.empty()) {
        return out;
    }
    const double t = code.mode() == Mode::exact ? 0.0 : tol;
    InnerProductValue norm0;
    for (size_t i = 0; i < code.words.size(); ++i) {
        for (size_t j = i; j < code.words.size(); ++j) {
            auto v = inner_product(code.words[i], code.words[j]);
            if (i == j) {
                if (i == 0) {
                    norm0 = v;
                } else if (auto d = v - norm0; !d.is_zero(t)) {
                    out.push_back({CodeViolation::Kind::unequal_norm, 0, static_cast<int>(j), d});
                }
            } else if (!v.is_zero(t)) {
                out.push_back({CodeViolation::Kind::not_orthogonal, static_cast<int>(i), static_cast<int>(j), v});
            }
        }
    }
    return out;
}

namespace {

StateVector from_kets(int n, std::initializer_list<const char *> kets) {
    StateVector s = StateVector::zero(n);
    for (const char *k : kets) {
        BasisState b = parse_ket(k);
        if (b.n != n) {
            throw DimensionError("fixture ket has the wrong length");
        }
        s.add(b.index, Surd(1));
    }
    return s;
}

void validate_or_throw(const Code &code, double tol) {
    auto v = check_code(code, tol);
    if (!v.empty()) {
        std::string msg = "invalid code:";
        for (const auto &x : v) {
            msg += " " + x.str() + ";";
        }
        throw InvalidCodeError(msg, std::move(v));
    }
}

}  // namespace

Code shor_code() {
    Code c{9, {}, "shor9"};
    c.words.push_back(from_kets(9, {"|000 000 000>", "|000 111 111>", "|111 000 111>", "|111 111 000>"}));
    c.words.push_back(from_kets(9, {"|111 111 111>", "|111 000 000>", "|000 111 000>", "|000 000 111>"}));
    return c;
}

Code ruskai9_code() {
    const Surd a = Surd::sqrt(28).inverse();
    Code c{9, {}, "ruskai9"};
    c.words.push_back(StateVector::basis(9, 0) + orbit_sum(9, 6).scaled(a));
    c.words.push_back(StateVector::basis(9, 0x1FF) + orbit_sum(9, 3).scaled(a));
    return c;
}

Code repetition3() {
    Code c{3, {}, "rep3"};
    c.words.push_back(StateVector::basis(3, 0));
    c.words.push_back(StateVector::basis(3, 7));
    return c;
}

Code perm_invariant_code(const PermInvariantSpec &spec) {
    if (spec.coeffs.empty()) {
        throw DomainError("permutation-invariant code needs at least one word");
    }
    Code c{spec.n, {}, "perm-invariant"};
    for (const auto &word : spec.coeffs) {
        if (word.empty()) {
            throw DomainError("permutation-invariant word has no coefficients");
        }
        StateVector s = StateVector::zero(spec.n);
        for (const auto &[k, a] : word) {
            s += orbit_sum(spec.n, k).scaled(a);
        }
        c.words.push_back(std::move(s));
    }
    validate_or_throw(c, 0);
    return c;
}

Code perm_invariant_code(int n, const std::vector<std::map<int, double>> &coeffs, double tol) {
    if (coeffs.empty()) {
        throw DomainError("permutation-invariant code needs at least one word");
    }
    Code c{n, {}, "perm-invariant"};
    for (const auto &word : coeffs) {
        if (word.empty()) {
            throw DomainError("permutation-invariant word has no coefficients");
        }
        StateVector s = StateVector::zero(n, Mode::floating);
        for (const auto &[k, a] : word) {
            s += orbit_sum(n, k, Mode::floating).scaled(std::complex<double>(a));
        }
        c.words.push_back(std::move(s));
    }
    validate_or_throw(c, tol);
    return c;
}

Code five_qubit_code() {
    const char *generators[] = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
    StateVector zero = StateVector::basis(5, 0);
    for (const char *g : generators) {
        zero = zero + pauli_apply(PauliString::from_str(g), zero);
    }
    Code c{5, {}, "five-qubit"};
    c.words.push_back(zero);
    c.words.push_back(pauli_apply(PauliString::from_str("XXXXX"), zero));
    return c;
}

Code builtin_code(std::string_view name) {
    if (name == "ruskai9") {
        return ruskai9_code();
    }
    if (name == "shor9" || name == "shor") {
        return shor_code();
    }
    if (name == "rep3") {
        return repetition3();
    }
    if (name == "five-qubit" || name == "five_qubit" || name == "5qubit") {
        return five_qubit_code();
    }
    throw DomainError("unknown built-in code '" + std::string(name) + "'");
}

std::vector<std::string> builtin_code_names() {
    return {"ruskai9", "shor9", "rep3", "five-qubit"};
}

Surd parse_coefficient(std::string_view token) {
    size_t pos = 0;
    auto fail = [&](const std::string &msg) { throw ParseError(msg, 1, static_cast<int>(pos) + 1); };
    auto read_uint = [&]() -> uint64_t {
        size_t start = pos;
        while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) {
            ++pos;
        }
        if (start == pos) {
            fail("expected an integer");
        }
        if (pos - start > 18) {
            fail("integer too large");
        }
        return std::stoull(std::string(token.substr(start, pos - start)));
    };
    auto read_factor = [&]() -> Surd {
        if (token.compare(pos, 5, "sqrt(") == 0) {
            pos += 5;
            uint64_t r = read_uint();
            if (pos >= token.size() || token[pos] != ')') {
                fail("expected ')'");
            }
            ++pos;
            if (r == 0) {
                return Surd();
            }
            return Surd::sqrt(r);
        }
        if (pos < token.size() && token[pos] == 'i') {
            ++pos;
            return Surd::i();
        }
        return Surd(Rational(mpz_class(std::to_string(read_uint()))));
    };
    bool negative = false;
    if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
        negative = token[pos] == '-';
        ++pos;
    }
    Surd value = read_factor();
    while (pos < token.size()) {
        char op = token[pos];
        if (op != '*' && op != '/') {
            fail(std::string("unexpected character '") + op + "' in coefficient");
        }
        ++pos;
        size_t factor_start = pos;
        Surd f = read_factor();
        if (op == '*') {
            value = value * f;
        } else {
            if (f.is_zero()) {
                pos = factor_start;
                fail("division by zero");
            }
            value = value * f.inverse();
        }
    }
    return negative ? -value : value;
}

std::string serialize_coefficient_parts(const Surd &c, std::vector<std::string> &out) {
    for (const auto &t : c.terms()) {
        std::string root = t.radicand == 1 ? "" : "*sqrt(" + std::to_string(t.radicand) + ")";
        if (sgn(t.coeff.re) != 0) {
            out.push_back(rational_str(t.coeff.re) + root);
        }
        if (sgn(t.coeff.im) != 0) {
            out.push_back(rational_str(t.coeff.im) + root + "*i");
        }
    }
    return out.empty() ? "0" : out.front();
}

namespace {

struct Line {
    int number;
    std::string text;
    size_t offset;  // column of text[0] minus one
};

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

Code parse_code(std::string_view text) {
    std::vector<Line> lines;
    {
        int number = 0;
        size_t start = 0;
        while (start <= text.size()) {
            size_t end = text.find('\n', start);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++number;
            std::string_view raw = text.substr(start, end - start);
            if (auto hash = raw.find('#'); hash != std::string_view::npos) {
                raw = raw.substr(0, hash);
            }
            size_t b = 0;
            while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) {
                ++b;
            }
            size_t e = raw.size();
            while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) {
                --e;
            }
            if (e > b) {
                lines.push_back({number, std::string(raw.substr(b, e - b)), b});
            }
            start = end + 1;
        }
    }

    Code code;
    int n = 0;
    size_t li = 0;
    auto fail = [](const Line &l, size_t col, const std::string &msg) {
        throw ParseError(msg, l.number, static_cast<int>(l.offset + col) + 1);
    };
    for (; li < lines.size(); ++li) {
        const Line &l = lines[li];
        if (starts_with(l.text, "label:")) {
            std::string v = l.text.substr(6);
            size_t b = v.find_first_not_of(" \t");
            code.label = b == std::string::npos ? "" : v.substr(b);
        } else if (starts_with(l.text, "qubits:")) {
            try {
                size_t used = 0;
                std::string v = l.text.substr(7);
                n = std::stoi(v, &used);
                if (v.find_first_not_of(" \t", used) != std::string::npos) {
                    fail(l, 7 + used, "unexpected text after qubit count");
                }
            } catch (const ParseError &) {
                throw;
            } catch (const std::exception &) {
                fail(l, 7, "expected an integer qubit count");
            }
            if (n < 1 || n > kMaxQubits) {
                fail(l, 7, "qubit count out of range");
            }
            ++li;
            break;
        } else {
            fail(l, 0, "expected 'qubits: n' header");
        }
    }
    if (n == 0) {
        throw ParseError("missing 'qubits: n' header", lines.empty() ? 1 : lines.back().number, 1);
    }
    code.n = n;

    for (; li < lines.size(); ++li) {
        const Line &l = lines[li];
        if (starts_with(l.text, "word")) {
            std::string rest = l.text.substr(4);
            size_t b = rest.find_first_not_of(" \t");
            size_t colon = rest.find(':');
            if (b == std::string::npos || colon == std::string::npos || colon + 1 != rest.size()) {
                fail(l, 0, "expected 'word i:'");
            }
            std::string idx = rest.substr(b, colon - b);
            while (!idx.empty() && std::isspace(static_cast<unsigned char>(idx.back()))) {
                idx.pop_back();
            }
            bool digits = !idx.empty() && idx.find_first_not_of("0123456789") == std::string::npos;
            if (!digits || std::stoul(idx) != code.words.size()) {
                fail(l, 4 + b, "words must be numbered 0, 1, ... in order");
            }
            code.words.push_back(StateVector::zero(n));
            continue;
        }
        if (code.words.empty()) {
            fail(l, 0, "amplitude line before the first 'word i:'");
        }
        // "coeff ket" where the coefficient may be omitted.
        size_t ket_pos = l.text.find('|');
        size_t orbit_pos = l.text.find("orbit(");
        size_t target = std::min(ket_pos, orbit_pos);
        if (target == std::string::npos) {
            fail(l, 0, "expected a ket '|...>' or 'orbit(k=...)'");
        }
        std::string coeff_text = l.text.substr(0, target);
        while (!coeff_text.empty() && std::isspace(static_cast<unsigned char>(coeff_text.back()))) {
            coeff_text.pop_back();
        }
        Surd coeff(1);
        if (!coeff_text.empty()) {
            try {
                coeff = parse_coefficient(coeff_text);
            } catch (const ParseError &e) {
                fail(l, e.column - 1, e.message);
            } catch (const std::exception &e) {
                fail(l, 0, e.what());
            }
        }
        StateVector &word = code.words.back();
        std::string target_text = l.text.substr(target);
        if (target == orbit_pos) {
            std::string body = target_text.substr(6);
            size_t close = body.find(')');
            if (close == std::string::npos || close + 1 != body.size()) {
                fail(l, target, "malformed orbit(k=...)");
            }
            std::string arg = body.substr(0, close);
            arg.erase(std::remove_if(arg.begin(), arg.end(), [](unsigned char c) { return std::isspace(c); }),
                      arg.end());
            if (starts_with(arg, "k=")) {
                arg = arg.substr(2);
            }
            if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) {
                fail(l, target + 6, "orbit weight must be an integer");
            }
            int k = std::stoi(arg);
            if (k > n) {
                fail(l, target + 6, "orbit weight exceeds qubit count");
            }
            for (uint32_t index : weight_indices(n, k)) {
                word.add(index, coeff);
            }
        } else {
            BasisState b;
            try {
                b = parse_ket(target_text);
            } catch (const ParseError &e) {
                fail(l, target + e.column - 1, e.message);
            }
            if (b.n != n) {
                fail(l, target,
                     "ket has " + std::to_string(b.n) + " qubits but the code has " + std::to_string(n));
            }
            word.add(b.index, coeff);
        }
    }
    if (code.words.empty()) {
        throw ParseError("code has no words", lines.empty() ? 1 : lines.back().number, 1);
    }
    return code;
}

std::string serialize_code(const Code &code) {
    if (code.mode() != Mode::exact) {
        throw ModeError("only exact codes can be serialized");
    }
    std::ostringstream out;
    if (!code.label.empty()) {
        out << "label: " << code.label << "\n";
    }
    out << "qubits: " << code.n << "\n";
    for (size_t i = 0; i < code.words.size(); ++i) {
        out << "word " << i << ":\n";
        for (const auto &[index, c] : code.words[i].terms()) {
            std::vector<std::string> parts;
            serialize_coefficient_parts(c, parts);
            for (const auto &p : parts) {
                out << p << " " << BasisState(code.n, index).str() << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace qexc
