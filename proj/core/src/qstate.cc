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

#include "qexc/qstate.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

#include "qexc/errors.h"

namespace qexc {

namespace {

void check_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw DimensionError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

void check_compatible(const StateVector &u, const StateVector &v) {
    if (u.num_qubits() != v.num_qubits()) {
        throw DimensionError("qubit count mismatch: " + std::to_string(u.num_qubits()) + " vs " +
                             std::to_string(v.num_qubits()));
    }
    if (u.mode() != v.mode()) {
        throw ModeError("cannot combine exact and float state vectors");
    }
}

// Float conversion drops values this small.
constexpr double kDropThreshold = 1e-15;

}  // namespace

BasisState::BasisState(int n_, uint32_t index_) : n(n_), index(index_) {
    check_qubits(n);
    if (index >= (uint64_t{1} << n)) {
        throw DimensionError("basis index out of range");
    }
}

int BasisState::weight() const {
    return std::popcount(index);
}

std::string BasisState::str() const {
    std::string s = "|";
    for (int q = 1; q <= n; ++q) {
        s += bit(q) ? '1' : '0';
    }
    return s + ">";
}

BasisState parse_ket(std::string_view text) {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    skip_ws();
    if (pos >= text.size() || text[pos] != '|') {
        throw ParseError("ket must start with '|'", 1, static_cast<int>(pos) + 1);
    }
    ++pos;
    int n = 0;
    uint32_t index = 0;
    for (; pos < text.size() && text[pos] != '>'; ++pos) {
        char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        if (c != '0' && c != '1') {
            throw ParseError(std::string("unexpected character '") + c + "' in ket", 1, static_cast<int>(pos) + 1);
        }
        if (++n > kMaxQubits) {
            throw ParseError("ket longer than " + std::to_string(kMaxQubits) + " qubits", 1, static_cast<int>(pos) + 1);
        }
        index = (index << 1) | static_cast<uint32_t>(c - '0');
    }
    if (pos >= text.size()) {
        throw ParseError("ket missing closing '>'", 1, static_cast<int>(pos) + 1);
    }
    ++pos;
    skip_ws();
    if (pos != text.size()) {
        throw ParseError("trailing characters after ket", 1, static_cast<int>(pos) + 1);
    }
    if (n == 0) {
        throw ParseError("empty ket", 1, 1);
    }
    return BasisState(n, index);
}

std::vector<uint32_t> weight_indices(int n, int k) {
    if (k < 0 || k > n) {
        throw DomainError("weight " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
    }
    std::vector<uint32_t> out;
    out.reserve(binomial(n, k));
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    // Gosper's hack enumerates same-popcount words in increasing order.
    uint64_t v = (uint64_t{1} << k) - 1;
    const uint64_t limit = uint64_t{1} << n;
    while (v < limit) {
        out.push_back(static_cast<uint32_t>(v));
        uint64_t c = v & (~v + 1);
        uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    return out;
}

uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (int t = 1; t <= k; ++t) {
        r = r * static_cast<uint64_t>(n - k + t) / static_cast<uint64_t>(t);
    }
    return r;
}

QubitPermutation QubitPermutation::identity(int n) {
    check_qubits(n);
    std::vector<int> image(n);
    for (int j = 0; j < n; ++j) {
        image[j] = j;
    }
    return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::transposition(int n, int j, int k) {
    if (j < 1 || j > n || k < 1 || k > n) {
        throw DimensionError("transposition qubit out of range");
    }
    QubitPermutation p = identity(n);
    std::swap(p.image_[j - 1], p.image_[k - 1]);
    return p;
}

QubitPermutation QubitPermutation::from_images(std::span<const int> images) {
    const int n = static_cast<int>(images.size());
    check_qubits(n);
    std::vector<int> image(n);
    std::vector<bool> seen(n, false);
    for (int j = 0; j < n; ++j) {
        int d = images[j];
        if (d < 1 || d > n || seen[d - 1]) {
            throw DomainError("permutation images must be a bijection on {1.." + std::to_string(n) + "}");
        }
        seen[d - 1] = true;
        image[j] = d - 1;
    }
    return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::after(const QubitPermutation &first) const {
    if (first.size() != size()) {
        throw DimensionError("permutation length mismatch");
    }
    std::vector<int> image(image_.size());
    for (size_t j = 0; j < image_.size(); ++j) {
        image[j] = image_[first.image_[j]];
    }
    return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::inverse() const {
    std::vector<int> image(image_.size());
    for (size_t j = 0; j < image_.size(); ++j) {
        image[image_[j]] = static_cast<int>(j);
    }
    return QubitPermutation(std::move(image));
}

bool QubitPermutation::is_identity() const {
    for (size_t j = 0; j < image_.size(); ++j) {
        if (image_[j] != static_cast<int>(j)) {
            return false;
        }
    }
    return true;
}

uint32_t QubitPermutation::apply_to_index(uint32_t index) const {
    const int n = size();
    uint32_t out = 0;
    for (int j = 0; j < n; ++j) {
        if (index & qubit_mask(n, j + 1)) {
            out |= qubit_mask(n, image_[j] + 1);
        }
    }
    return out;
}

std::string QubitPermutation::str() const {
    std::string s = "P(";
    for (size_t j = 0; j < image_.size(); ++j) {
        if (j > 0) {
            s += ' ';
        }
        s += std::to_string(image_[j] + 1);
    }
    return s + ")";
}

StateVector StateVector::zero(int n, Mode mode) {
    check_qubits(n);
    StateVector s;
    s.n_ = n;
    s.mode_ = mode;
    if (mode == Mode::floating) {
        s.dense_.assign(size_t{1} << n, 0.0);
    }
    return s;
}

StateVector StateVector::basis(int n, uint32_t index, Mode mode) {
    BasisState b(n, index);
    StateVector s = zero(n, mode);
    if (mode == Mode::exact) {
        s.terms_.emplace(b.index, Surd(1));
    } else {
        s.dense_[b.index] = 1.0;
    }
    return s;
}

StateVector StateVector::from_terms(int n, Terms terms) {
    StateVector s = zero(n, Mode::exact);
    for (auto &[index, c] : terms) {
        BasisState b(n, index);
        if (!c.is_zero()) {
            s.terms_.emplace(b.index, std::move(c));
        }
    }
    return s;
}

StateVector StateVector::from_dense(int n, Dense amplitudes) {
    check_qubits(n);
    if (amplitudes.size() != (size_t{1} << n)) {
        throw DimensionError("dense amplitude array must have length 2^n");
    }
    StateVector s;
    s.n_ = n;
    s.mode_ = Mode::floating;
    s.dense_ = std::move(amplitudes);
    return s;
}

const StateVector::Terms &StateVector::terms() const {
    if (mode_ != Mode::exact) {
        throw ModeError("terms() requires an exact state vector");
    }
    return terms_;
}

const StateVector::Dense &StateVector::dense() const {
    if (mode_ != Mode::floating) {
        throw ModeError("dense() requires a float state vector");
    }
    return dense_;
}

Surd StateVector::amplitude(uint32_t index) const {
    const auto &t = terms();
    auto it = t.find(index);
    return it == t.end() ? Surd() : it->second;
}

std::complex<double> StateVector::value(uint32_t index) const {
    if (mode_ == Mode::floating) {
        return index < dense_.size() ? dense_[index] : 0.0;
    }
    auto it = terms_.find(index);
    return it == terms_.end() ? std::complex<double>() : it->second.to_complex();
}

size_t StateVector::support_size() const {
    if (mode_ == Mode::exact) {
        return terms_.size();
    }
    return static_cast<size_t>(std::count_if(dense_.begin(), dense_.end(), [](auto c) { return c != 0.0; }));
}

void StateVector::add(uint32_t index, const Surd &c) {
    if (mode_ != Mode::exact) {
        add(index, c.to_complex());
        return;
    }
    if (c.is_zero()) {
        return;
    }
    if (index >= (uint64_t{1} << n_)) {
        throw DimensionError("basis index out of range");
    }
    auto [it, inserted] = terms_.try_emplace(index, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void StateVector::add(uint32_t index, std::complex<double> c) {
    if (mode_ != Mode::floating) {
        throw ModeError("cannot add a float amplitude to an exact state vector");
    }
    if (index >= dense_.size()) {
        throw DimensionError("basis index out of range");
    }
    dense_[index] += c;
}

StateVector StateVector::to_float() const {
    if (mode_ == Mode::floating) {
        return *this;
    }
    StateVector s = zero(n_, Mode::floating);
    for (const auto &[index, c] : terms_) {
        auto v = c.to_complex();
        if (std::abs(v) >= kDropThreshold) {
            s.dense_[index] = v;
        }
    }
    return s;
}

StateVector StateVector::scaled(const Surd &c) const {
    if (mode_ == Mode::floating) {
        return scaled(c.to_complex());
    }
    StateVector s = zero(n_, Mode::exact);
    if (c.is_zero()) {
        return s;
    }
    for (const auto &[index, a] : terms_) {
        s.terms_.emplace_hint(s.terms_.end(), index, a * c);
    }
    return s;
}

StateVector StateVector::scaled(std::complex<double> c) const {
    if (mode_ != Mode::floating) {
        throw ModeError("float scaling of an exact state vector; convert with to_float() first");
    }
    StateVector s = *this;
    for (auto &a : s.dense_) {
        a *= c;
    }
    return s;
}

double StateVector::norm2() const {
    double acc = 0;
    if (mode_ == Mode::floating) {
        for (auto a : dense_) {
            acc += std::norm(a);
        }
    } else {
        for (const auto &[index, a] : terms_) {
            acc += std::norm(a.to_complex());
        }
    }
    return acc;
}

StateVector &StateVector::operator+=(const StateVector &o) {
    check_compatible(*this, o);
    if (mode_ == Mode::floating) {
        for (size_t x = 0; x < dense_.size(); ++x) {
            dense_[x] += o.dense_[x];
        }
    } else {
        for (const auto &[index, c] : o.terms_) {
            add(index, c);
        }
    }
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &o) {
    check_compatible(*this, o);
    if (mode_ == Mode::floating) {
        for (size_t x = 0; x < dense_.size(); ++x) {
            dense_[x] -= o.dense_[x];
        }
    } else {
        for (const auto &[index, c] : o.terms_) {
            add(index, -c);
        }
    }
    return *this;
}

bool operator==(const StateVector &a, const StateVector &b) {
    if (a.n_ != b.n_ || a.mode_ != b.mode_) {
        return false;
    }
    return a.mode_ == Mode::exact ? a.terms_ == b.terms_ : a.dense_ == b.dense_;
}

std::string StateVector::str() const {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](uint32_t index, const std::string &coeff) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << "(" << coeff << ")" << BasisState(n_, index).str();
    };
    if (mode_ == Mode::exact) {
        for (const auto &[index, c] : terms_) {
            emit(index, c.str());
        }
    } else {
        for (size_t x = 0; x < dense_.size(); ++x) {
            if (dense_[x] != 0.0) {
                std::ostringstream c;
                c << dense_[x];
                emit(static_cast<uint32_t>(x), c.str());
            }
        }
    }
    return first ? "0" : out.str();
}

InnerProductValue InnerProductValue::from_exact(Surd s) {
    InnerProductValue v;
    v.mode = Mode::exact;
    v.value = s.to_complex();
    v.exact = std::move(s);
    return v;
}

InnerProductValue InnerProductValue::from_float(std::complex<double> value) {
    InnerProductValue v;
    v.mode = Mode::floating;
    v.value = value;
    return v;
}

bool InnerProductValue::is_zero(double tol) const {
    if (mode == Mode::exact && tol == 0) {
        return exact.is_zero();
    }
    return std::abs(value) <= tol;
}

InnerProductValue InnerProductValue::conj() const {
    if (mode == Mode::exact) {
        return from_exact(exact.conj());
    }
    return from_float(std::conj(value));
}

std::string InnerProductValue::str() const {
    if (mode == Mode::exact) {
        return exact.str();
    }
    std::ostringstream out;
    out.precision(17);
    if (value.imag() == 0) {
        out << value.real();
    } else {
        out << "(" << value.real() << (value.imag() < 0 ? " - " : " + ") << std::abs(value.imag()) << " i)";
    }
    return out.str();
}

InnerProductValue operator-(const InnerProductValue &a, const InnerProductValue &b) {
    if (a.mode == Mode::exact && b.mode == Mode::exact) {
        return InnerProductValue::from_exact(a.exact - b.exact);
    }
    return InnerProductValue::from_float(a.value - b.value);
}

bool operator==(const InnerProductValue &a, const InnerProductValue &b) {
    if (a.mode != b.mode) {
        return false;
    }
    return a.mode == Mode::exact ? a.exact == b.exact : a.value == b.value;
}

InnerProductValue inner_product(const StateVector &u, const StateVector &v) {
    check_compatible(u, v);
    if (u.mode() == Mode::floating) {
        std::complex<double> acc = 0;
        const auto &a = u.dense();
        const auto &b = v.dense();
        for (size_t x = 0; x < a.size(); ++x) {
            acc += std::conj(a[x]) * b[x];
        }
        return InnerProductValue::from_float(acc);
    }
    const auto &a = u.terms();
    const auto &b = v.terms();
    Surd acc;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            acc += ia->second.conj() * ib->second;
            ++ia;
            ++ib;
        }
    }
    return InnerProductValue::from_exact(std::move(acc));
}

StateVector apply_permutation(const StateVector &s, const QubitPermutation &p) {
    if (p.size() != s.num_qubits()) {
        throw DimensionError("permutation length " + std::to_string(p.size()) + " does not match " +
                             std::to_string(s.num_qubits()) + " qubits");
    }
    StateVector out = StateVector::zero(s.num_qubits(), s.mode());
    if (s.is_exact()) {
        for (const auto &[index, c] : s.terms()) {
            out.add(p.apply_to_index(index), c);
        }
    } else {
        const auto &d = s.dense();
        for (size_t x = 0; x < d.size(); ++x) {
            if (d[x] != 0.0) {
                out.add(p.apply_to_index(static_cast<uint32_t>(x)), d[x]);
            }
        }
    }
    return out;
}

StateVector orbit_sum(int n, int k, Mode mode) {
    check_qubits(n);
    if (k < 0 || k > n) {
        throw DomainError("orbit weight " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
    }
    StateVector out = StateVector::zero(n, mode);
    for (uint32_t index : weight_indices(n, k)) {
        if (mode == Mode::exact) {
            out.add(index, Surd(1));
        } else {
            out.add(index, std::complex<double>(1.0));
        }
    }
    return out;
}

StateVector complement_bits(const StateVector &s) {
    const uint32_t all = static_cast<uint32_t>((uint64_t{1} << s.num_qubits()) - 1);
    StateVector out = StateVector::zero(s.num_qubits(), s.mode());
    if (s.is_exact()) {
        for (const auto &[index, c] : s.terms()) {
            out.add(index ^ all, c);
        }
    } else {
        const auto &d = s.dense();
        for (size_t x = 0; x < d.size(); ++x) {
            if (d[x] != 0.0) {
                out.add(static_cast<uint32_t>(x) ^ all, d[x]);
            }
        }
    }
    return out;
}

}  // namespace qexc
