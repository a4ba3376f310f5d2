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

#include "qexc/errorops.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <random>

#include "qexc/errors.h"

namespace qexc {

namespace {

int mod4(int x) {
    return ((x % 4) + 4) % 4;
}

void check_same_n(int a, int b) {
    if (a != b) {
        throw DimensionError("operator acts on " + std::to_string(a) + " qubits, state has " + std::to_string(b));
    }
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    for (auto &c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

}  // namespace

PauliString::PauliString(int n, uint32_t x_mask, uint32_t z_mask, int phase)
    : n_(n), x_(x_mask), z_(z_mask), phase_(mod4(phase)) {
    if (n < 1 || n > kMaxQubits) {
        throw DimensionError("Pauli string qubit count out of range");
    }
    const uint64_t limit = uint64_t{1} << n;
    if (x_mask >= limit || z_mask >= limit) {
        throw DimensionError("Pauli mask exceeds qubit count");
    }
}

PauliString PauliString::single(int n, char pauli, int qubit) {
    if (qubit < 1 || qubit > n) {
        throw DimensionError("qubit " + std::to_string(qubit) + " outside [1, " + std::to_string(n) + "]");
    }
    uint32_t m = qubit_mask(n, qubit);
    switch (pauli) {
        case 'X':
            return PauliString(n, m, 0, 0);
        case 'Y':
            return PauliString(n, m, m, 1);
        case 'Z':
            return PauliString(n, 0, m, 0);
        case 'I':
            return identity(n);
        default:
            throw DomainError(std::string("unknown Pauli '") + pauli + "'");
    }
}

PauliString PauliString::from_str(std::string_view text) {
    std::string s = trim(text);
    int prefix = 0;
    size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        prefix = s[pos] == '-' ? 2 : 0;
        ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
        prefix += 1;
        ++pos;
    }
    const int n = static_cast<int>(s.size() - pos);
    if (n < 1 || n > kMaxQubits) {
        throw ParseError("Pauli string length out of range", 1, static_cast<int>(pos) + 1);
    }
    uint32_t x = 0;
    uint32_t z = 0;
    int ys = 0;
    for (int q = 1; q <= n; ++q) {
        char c = s[pos + q - 1];
        uint32_t m = qubit_mask(n, q);
        switch (c) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= m;
                break;
            case 'Y':
                x |= m;
                z |= m;
                ++ys;
                break;
            case 'Z':
                z |= m;
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "' in Pauli string", 1,
                                 static_cast<int>(pos) + q);
        }
    }
    return PauliString(n, x, z, prefix + ys);
}

PauliString PauliString::times(const PauliString &rhs) const {
    if (rhs.n_ != n_) {
        throw DimensionError("Pauli string length mismatch");
    }
    // Z(b1) X(a2) = (-1)^{b1.a2} X(a2) Z(b1)
    int swaps = std::popcount(z_ & rhs.x_);
    return PauliString(n_, x_ ^ rhs.x_, z_ ^ rhs.z_, phase_ + rhs.phase_ + 2 * swaps);
}

PauliString PauliString::inverse() const {
    return PauliString(n_, x_, z_, -phase_ + 2 * std::popcount(x_ & z_));
}

int PauliString::weight() const {
    return std::popcount(x_ | z_);
}

uint32_t PauliString::apply_to_index(uint32_t v, int &phase_out) const {
    phase_out = mod4(phase_ + 2 * std::popcount(z_ & v));
    return v ^ x_;
}

std::string PauliString::str() const {
    int ys = std::popcount(x_ & z_);
    std::string s;
    switch (mod4(phase_ - ys)) {
        case 0:
            s = "+";
            break;
        case 1:
            s = "+i";
            break;
        case 2:
            s = "-";
            break;
        default:
            s = "-i";
            break;
    }
    for (int q = 1; q <= n_; ++q) {
        uint32_t m = qubit_mask(n_, q);
        bool xb = x_ & m;
        bool zb = z_ & m;
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

ExchangeOp::ExchangeOp(int j_, int k_) : j(std::min(j_, k_)), k(std::max(j_, k_)) {
    if (j_ == k_) {
        throw DomainError("exchange needs two distinct qubits, got " + std::to_string(j_) + " twice");
    }
    if (j < 1) {
        throw DomainError("exchange qubits are 1-based");
    }
}

namespace {

// Returns 'X', 'Y', 'Z' with the qubit for a canonical single-qubit Pauli, or 0.
char single_qubit_kind(const PauliString &p, int &qubit) {
    if (p.weight() != 1) {
        return 0;
    }
    uint32_t m = p.x_mask() | p.z_mask();
    qubit = p.num_qubits() - std::countr_zero(m);
    bool xb = p.x_mask() != 0;
    bool zb = p.z_mask() != 0;
    if (xb && zb) {
        return p.phase() == 1 ? 'Y' : 0;
    }
    if (p.phase() != 0) {
        return 0;
    }
    return xb ? 'X' : 'Z';
}

}  // namespace

std::string ErrorOperator::str() const {
    struct Visitor {
        std::string operator()(const IdentityOp &) const {
            return "I";
        }
        std::string operator()(const PauliString &p) const {
            int q = 0;
            char kind = single_qubit_kind(p, q);
            if (kind != 0) {
                return std::string(1, kind) + std::to_string(q);
            }
            if (p.weight() == 0 && p.phase() == 0) {
                return "I";
            }
            return p.str();
        }
        std::string operator()(const ExchangeOp &e) const {
            return "E(" + std::to_string(e.j) + "," + std::to_string(e.k) + ")";
        }
        std::string operator()(const QubitPermutation &p) const {
            return p.str();
        }
        std::string operator()(const Composition &c) const {
            std::string s;
            for (const auto &f : c.factors) {
                if (!s.empty()) {
                    s += ' ';
                }
                s += f.str();
            }
            return s.empty() ? "I" : s;
        }
    };
    return std::visit(Visitor{}, v_);
}

ErrorOperator parse_operator(std::string_view text, int n) {
    std::vector<ErrorOperator> factors;
    size_t pos = 0;
    auto fail = [&](const std::string &msg) -> void { throw ParseError(msg, 1, static_cast<int>(pos) + 1); };
    auto read_int = [&]() {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (start == pos) {
            fail("expected a qubit number");
        }
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        char c = text[pos];
        size_t token_start = pos;
        try {
            if (c == 'E' && pos + 1 < text.size() && text[pos + 1] == '(') {
                pos += 2;
                skip_ws();
                int j = read_int();
                expect(',');
                skip_ws();
                int k = read_int();
                expect(')');
                if (j > n || k > n) {
                    fail("exchange qubit exceeds qubit count");
                }
                factors.emplace_back(ExchangeOp(j, k));
            } else if (c == 'P' && pos + 1 < text.size() && text[pos + 1] == '(') {
                pos += 2;
                std::vector<int> images;
                skip_ws();
                while (pos < text.size() && text[pos] != ')') {
                    images.push_back(read_int());
                    skip_ws();
                    if (pos < text.size() && text[pos] == ',') {
                        ++pos;
                        skip_ws();
                    }
                }
                expect(')');
                if (static_cast<int>(images.size()) != n) {
                    fail("permutation must list " + std::to_string(n) + " images");
                }
                factors.emplace_back(QubitPermutation::from_images(images));
            } else if ((c == 'X' || c == 'Y' || c == 'Z') && pos + 1 < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
                ++pos;
                int q = read_int();
                factors.emplace_back(PauliString::single(n, c, q));
            } else if (c == 'I' && (pos + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[pos + 1])))) {
                ++pos;
                factors.emplace_back(IdentityOp{});
            } else {
                while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
                    ++pos;
                }
                PauliString p = PauliString::from_str(text.substr(token_start, pos - token_start));
                if (p.num_qubits() != n) {
                    pos = token_start;
                    fail("Pauli string length does not match qubit count");
                }
                factors.emplace_back(p);
            }
        } catch (const ParseError &) {
            throw;
        } catch (const std::exception &e) {
            pos = token_start;
            fail(e.what());
        }
        skip_ws();
    }
    if (factors.empty()) {
        fail("empty operator");
    }
    if (factors.size() == 1) {
        return factors.front();
    }
    return ErrorOperator(Composition{std::move(factors)});
}

StateVector pauli_apply(const PauliString &p, const StateVector &s) {
    check_same_n(p.num_qubits(), s.num_qubits());
    StateVector out = StateVector::zero(s.num_qubits(), s.mode());
    if (s.is_exact()) {
        for (const auto &[v, c] : s.terms()) {
            int ph = 0;
            uint32_t w = p.apply_to_index(v, ph);
            out.add(w, c.times_i_power(ph));
        }
    } else {
        static const std::complex<double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const auto &d = s.dense();
        StateVector::Dense r(d.size());
        for (size_t v = 0; v < d.size(); ++v) {
            int ph = 0;
            uint32_t w = p.apply_to_index(static_cast<uint32_t>(v), ph);
            r[w] = units[ph] * d[v];
        }
        out = StateVector::from_dense(s.num_qubits(), std::move(r));
    }
    return out;
}

StateVector exchange_apply(int j, int k, const StateVector &s) {
    ExchangeOp e(j, k);
    const int n = s.num_qubits();
    if (e.k > n) {
        throw DimensionError("exchange qubit exceeds qubit count");
    }
    const uint32_t mj = qubit_mask(n, e.j);
    const uint32_t mk = qubit_mask(n, e.k);
    auto swap_bits = [&](uint32_t v) {
        bool bj = v & mj;
        bool bk = v & mk;
        return bj == bk ? v : (v ^ mj ^ mk);
    };
    StateVector out = StateVector::zero(n, s.mode());
    if (s.is_exact()) {
        for (const auto &[v, c] : s.terms()) {
            out.add(swap_bits(v), c);
        }
    } else {
        const auto &d = s.dense();
        StateVector::Dense r(d.size());
        for (size_t v = 0; v < d.size(); ++v) {
            r[swap_bits(static_cast<uint32_t>(v))] = d[v];
        }
        out = StateVector::from_dense(n, std::move(r));
    }
    return out;
}

StateVector apply(const ErrorOperator &e, const StateVector &s) {
    struct Visitor {
        const StateVector &s;
        StateVector operator()(const IdentityOp &) const {
            return s;
        }
        StateVector operator()(const PauliString &p) const {
            return pauli_apply(p, s);
        }
        StateVector operator()(const ExchangeOp &x) const {
            return exchange_apply(x.j, x.k, s);
        }
        StateVector operator()(const QubitPermutation &p) const {
            return apply_permutation(s, p);
        }
        StateVector operator()(const Composition &c) const {
            StateVector cur = s;
            for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it) {
                cur = apply(*it, cur);
            }
            return cur;
        }
    };
    return std::visit(Visitor{s}, e.variant());
}

std::string family_name(ErrorFamily f) {
    switch (f) {
        case ErrorFamily::identity:
            return "identity";
        case ErrorFamily::exchange:
            return "exchange";
        case ErrorFamily::x:
            return "X";
        case ErrorFamily::y:
            return "Y";
        case ErrorFamily::z:
            return "Z";
        default:
            return "other";
    }
}

namespace {

ErrorFamily classify(const ErrorOperator &e) {
    if (e.is_identity()) {
        return ErrorFamily::identity;
    }
    if (std::holds_alternative<ExchangeOp>(e.variant())) {
        return ErrorFamily::exchange;
    }
    if (const auto *p = std::get_if<PauliString>(&e.variant())) {
        if (p->weight() == 0 && p->phase() == 0) {
            return ErrorFamily::identity;
        }
        int q = 0;
        switch (single_qubit_kind(*p, q)) {
            case 'X':
                return ErrorFamily::x;
            case 'Y':
                return ErrorFamily::y;
            case 'Z':
                return ErrorFamily::z;
            default:
                return ErrorFamily::other;
        }
    }
    if (const auto *p = std::get_if<QubitPermutation>(&e.variant())) {
        return p->is_identity() ? ErrorFamily::identity : ErrorFamily::other;
    }
    return ErrorFamily::other;
}

// Image of a fixed sparse pseudo-random probe state; distinct operators almost
// surely give distinct fingerprints.
StateVector::Dense fingerprint(const ErrorOperator &e, int n, const std::vector<uint32_t> &probe) {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g;
    StateVector probe_state = StateVector::zero(n, Mode::floating);
    for (uint32_t v : probe) {
        probe_state.add(v, std::complex<double>(g(rng), g(rng)));
    }
    return apply(e, probe_state).dense();
}

bool same_action_exact(const ErrorOperator &a, const ErrorOperator &b, int n) {
    for (uint32_t v = 0; v < (uint32_t{1} << n); ++v) {
        StateVector s = StateVector::basis(n, v);
        if (!(apply(a, s) == apply(b, s))) {
            return false;
        }
    }
    return true;
}

}  // namespace

ErrorSet ErrorSet::from_operators(int n, std::vector<ErrorOperator> ops) {
    if (n < 1 || n > kMaxQubits) {
        throw DimensionError("error set qubit count out of range");
    }
    if (ops.empty() || classify(ops.front()) != ErrorFamily::identity) {
        throw DomainError("error set must start with the identity");
    }
    ErrorSet set;
    set.n_ = n;
    // Probing a handful of states keeps the duplicate check cheap for every n.
    std::vector<uint32_t> probe;
    {
        std::mt19937_64 rng(777);
        const uint64_t dim = uint64_t{1} << n;
        size_t count = static_cast<size_t>(std::min<uint64_t>(dim, 64));
        if (count == dim) {
            for (uint32_t v = 0; v < dim; ++v) {
                probe.push_back(v);
            }
        } else {
            std::uniform_int_distribution<uint32_t> pick(0, static_cast<uint32_t>(dim - 1));
            for (size_t t = 0; t < count; ++t) {
                probe.push_back(pick(rng));
            }
        }
    }
    std::vector<StateVector::Dense> prints;
    for (auto &op : ops) {
        auto fp = fingerprint(op, n, probe);
        for (size_t p = 0; p < prints.size(); ++p) {
            double diff = 0;
            for (size_t x = 0; x < fp.size(); ++x) {
                diff = std::max(diff, std::abs(fp[x] - prints[p][x]));
            }
            if (diff < 1e-9 && (n > 12 || same_action_exact(op, set.ops_[p], n))) {
                throw DomainError("duplicate basic error: " + op.str() + " acts as " + set.ops_[p].str());
            }
        }
        prints.push_back(std::move(fp));
        set.families_.push_back(classify(op));
        set.ops_.push_back(std::move(op));
    }
    return set;
}

ErrorSet ErrorSet::extended(std::vector<ErrorOperator> more) const {
    std::vector<ErrorOperator> all = ops_;
    for (auto &op : more) {
        all.push_back(std::move(op));
    }
    return from_operators(n_, std::move(all));
}

ErrorSet basic_error_set(int n, unsigned family_flags) {
    if (n < 1 || n > kMaxQubits) {
        throw DimensionError("error set qubit count out of range");
    }
    ErrorSet set;
    std::vector<ErrorOperator> ops;
    ops.emplace_back(IdentityOp{});
    if (family_flags & families::exchange) {
        for (int j = 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                ops.emplace_back(ExchangeOp(j, k));
            }
        }
    }
    const bool all = family_flags & families::single_pauli;
    const std::pair<char, unsigned> paulis[] = {
        {'X', families::bit_flip}, {'Y', families::y_flip}, {'Z', families::phase_flip}};
    for (auto [c, flag] : paulis) {
        if (all || (family_flags & flag)) {
            for (int q = 1; q <= n; ++q) {
                ops.emplace_back(PauliString::single(n, c, q));
            }
        }
    }
    return ErrorSet::from_operators(n, std::move(ops));
}

ErrorSet parse_error_set(std::string_view text, int n) {
    std::string s = trim(text);
    if (s.empty()) {
        throw ParseError("empty error set", 1, 1);
    }
    // Family form: keywords joined by '+'.
    unsigned flags = 0;
    bool keywords = true;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find('+', start);
        if (end == std::string::npos) {
            end = s.size();
        }
        std::string word = lower(trim(std::string_view(s).substr(start, end - start)));
        if (word == "pauli" || word == "single_pauli" || word == "single-pauli") {
            flags |= families::single_pauli;
        } else if (word == "exchange") {
            flags |= families::exchange;
        } else if (word == "x" || word == "bitflip" || word == "bit_flip") {
            flags |= families::bit_flip;
        } else if (word == "y") {
            flags |= families::y_flip;
        } else if (word == "z" || word == "phase" || word == "phase_flip") {
            flags |= families::phase_flip;
        } else if (word == "identity" || word == "identity_only" || word == "none") {
        } else {
            keywords = false;
            break;
        }
        start = end + 1;
    }
    if (keywords) {
        return basic_error_set(n, flags);
    }
    std::vector<ErrorOperator> ops;
    size_t pos = 0;
    int depth = 0;
    size_t item_start = 0;
    for (; pos <= s.size(); ++pos) {
        char c = pos < s.size() ? s[pos] : ',';
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        } else if (c == ',' && depth == 0) {
            std::string item = trim(std::string_view(s).substr(item_start, pos - item_start));
            if (item.empty()) {
                throw ParseError("empty operator in error list", 1, static_cast<int>(pos) + 1);
            }
            try {
                ops.push_back(parse_operator(item, n));
            } catch (const ParseError &e) {
                throw ParseError(e.message, 1, static_cast<int>(item_start) + e.column);
            }
            item_start = pos + 1;
        }
    }
    if (ops.empty() || classify(ops.front()) != ErrorFamily::identity) {
        ops.insert(ops.begin(), ErrorOperator(IdentityOp{}));
    }
    return ErrorSet::from_operators(n, std::move(ops));
}

}  // namespace qexc
