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

#ifndef QEXC_ERROROPS_H
#define QEXC_ERROROPS_H

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qexc/qstate.h"

namespace qexc {

/// The operator i^phase X(x_mask) Z(z_mask), with Z acting first:
///     i^phase X(a) Z(b) |v> = i^phase (-1)^{b.v} |v + a>.
/// Masks use the same bit layout as basis indices (qubit 1 most significant).
class PauliString {
   public:
    PauliString() = default;
    PauliString(int n, uint32_t x_mask, uint32_t z_mask, int phase = 0);

    static PauliString identity(int n) {
        return PauliString(n, 0, 0, 0);
    }
    /// Single-qubit X, Y or Z on 1-based `qubit`. Y is stored as i X Z.
    static PauliString single(int n, char pauli, int qubit);
    /// Dense text such as "XZZXI", "-iYYI" or "+ZZ".
    static PauliString from_str(std::string_view text);

    int num_qubits() const {
        return n_;
    }
    uint32_t x_mask() const {
        return x_;
    }
    uint32_t z_mask() const {
        return z_;
    }
    int phase() const {
        return phase_;
    }
    /// Operator product (*this) * rhs, so rhs acts first.
    PauliString times(const PauliString &rhs) const;
    PauliString inverse() const;
    /// Weight: number of qubits acted on nontrivially.
    int weight() const;

    /// Image of basis state v: returns the new index and sets `phase_out` to the power of i.
    uint32_t apply_to_index(uint32_t v, int &phase_out) const;

    std::string str() const;
    friend bool operator==(const PauliString &, const PauliString &) = default;

   private:
    int n_ = 0;
    uint32_t x_ = 0;
    uint32_t z_ = 0;
    int phase_ = 0;
};

/// Pauli exchange of qubits j and k: swaps the two bits when they differ.
struct ExchangeOp {
    int j = 1;
    int k = 2;

    ExchangeOp() = default;
    /// Normalizes so that j < k; throws DomainError if j == k.
    ExchangeOp(int j_, int k_);
    friend bool operator==(const ExchangeOp &, const ExchangeOp &) = default;
};

struct IdentityOp {
    friend bool operator==(const IdentityOp &, const IdentityOp &) = default;
};

class ErrorOperator;

/// Ordered product; factors.back() acts first (operator notation).
struct Composition {
    std::vector<ErrorOperator> factors;
};

/// Identity, a Pauli string, an exchange, a qubit permutation, or a product of these.
class ErrorOperator {
   public:
    using Variant = std::variant<IdentityOp, PauliString, ExchangeOp, QubitPermutation, Composition>;

    ErrorOperator() : v_(IdentityOp{}) {
    }
    ErrorOperator(IdentityOp x) : v_(x) {
    }
    ErrorOperator(PauliString x) : v_(std::move(x)) {
    }
    ErrorOperator(ExchangeOp x) : v_(x) {
    }
    ErrorOperator(QubitPermutation x) : v_(std::move(x)) {
    }
    ErrorOperator(Composition x) : v_(std::move(x)) {
    }

    const Variant &variant() const {
        return v_;
    }
    bool is_identity() const {
        return std::holds_alternative<IdentityOp>(v_);
    }
    /// Textual form: "I", "X3", "Y7", "E(3,4)", "P(2 1 3)", products by juxtaposition.
    std::string str() const;

   private:
    Variant v_;
};

/// Parses the textual operator syntax. `n` is the qubit count the operator acts on.
ErrorOperator parse_operator(std::string_view text, int n);

StateVector pauli_apply(const PauliString &p, const StateVector &s);
StateVector exchange_apply(int j, int k, const StateVector &s);
StateVector apply(const ErrorOperator &e, const StateVector &s);

/// Classification used to lay out D-matrix blocks.
enum class ErrorFamily { identity, exchange, x, y, z, other };

std::string family_name(ErrorFamily f);

/// Ordered list of basic errors with element 0 the identity.
class ErrorSet {
   public:
    /// Validates that ops[0] is the identity and that no two operators act identically
    /// on the computational basis. Throws DomainError otherwise.
    static ErrorSet from_operators(int n, std::vector<ErrorOperator> ops);

    int num_qubits() const {
        return n_;
    }
    size_t size() const {
        return ops_.size();
    }
    const ErrorOperator &operator[](size_t p) const {
        return ops_[p];
    }
    const std::vector<ErrorOperator> &operators() const {
        return ops_;
    }
    ErrorFamily family(size_t p) const {
        return families_[p];
    }
    std::string label(size_t p) const {
        return ops_[p].str();
    }
    /// Appends operators (validated as in from_operators).
    ErrorSet extended(std::vector<ErrorOperator> more) const;

   private:
    int n_ = 0;
    std::vector<ErrorOperator> ops_;
    std::vector<ErrorFamily> families_;
};

/// Family flags for basic_error_set.
namespace families {
constexpr unsigned identity_only = 0;
constexpr unsigned single_pauli = 1u << 0;
constexpr unsigned exchange = 1u << 1;
/// Subsets of single_pauli.
constexpr unsigned bit_flip = 1u << 2;
constexpr unsigned phase_flip = 1u << 3;
constexpr unsigned y_flip = 1u << 4;
}  // namespace families

/// Identity first, then exchanges E_jk (j<k, lexicographic), then X_1..X_n, Y_1..Y_n,
/// Z_1..Z_n for the requested families. Exchanges come before the single-qubit errors
/// so the identity and exchanges form one leading block of D.
ErrorSet basic_error_set(int n, unsigned family_flags);

/// Parses "pauli+exchange"-style family lists or comma-separated operator lists
/// such as "I, Z1, E(3,4)" (an identity is prepended if missing).
ErrorSet parse_error_set(std::string_view text, int n);

}  // namespace qexc

#endif  // QEXC_ERROROPS_H
