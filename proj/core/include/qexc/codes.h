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

#ifndef QEXC_CODES_H
#define QEXC_CODES_H

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qexc/qstate.h"

namespace qexc {

/// Codewords on n qubits. Words are stored unnormalized; a valid code has pairwise
/// orthogonal words of equal norm.
struct Code {
    int n = 0;
    std::vector<StateVector> words;
    std::string label;

    Mode mode() const {
        return words.empty() ? Mode::exact : words.front().mode();
    }
    Code to_float() const;
};

struct CodeViolation {
    enum class Kind { qubit_count, mode, not_orthogonal, unequal_norm };
    Kind kind;
    int i = 0;
    int j = 0;
    /// <C_i|C_j> for not_orthogonal; <C_j|C_j> - <C_0|C_0> for unequal_norm.
    InnerProductValue value;
    std::string str() const;
};

/// Empty when the code invariants hold (exactly in exact mode, within tol in float mode).
std::vector<CodeViolation> check_code(const Code &code, double tol = 1e-9);

struct InvalidCodeError : std::runtime_error {
    InvalidCodeError(const std::string &msg, std::vector<CodeViolation> v)
        : std::runtime_error(msg), violations(std::move(v)) {
    }
    std::vector<CodeViolation> violations;
};

/// Coefficients a_k of the permutation-invariant words sum_k a_k orbit_sum(n, k).
struct PermInvariantSpec {
    int n = 0;
    std::vector<std::map<int, Surd>> coeffs;
};

/// Shor's 9-qubit code: triplet patterns 000/011/101/110 and 111/100/010/001, amplitudes 1.
Code shor_code();

/// |C_0> = |0...0> + orbit_sum(9,6)/sqrt(28), |C_1> = |1...1> + orbit_sum(9,3)/sqrt(28).
Code ruskai9_code();

/// |000>, |111>.
Code repetition3();

/// Throws InvalidCodeError carrying the offending inner products when the words are
/// not orthogonal with equal norms.
Code perm_invariant_code(const PermInvariantSpec &spec);

/// Float-mode variant used by the coefficient solver; validated within tol.
Code perm_invariant_code(int n, const std::vector<std::map<int, double>> &coeffs, double tol = 1e-9);

/// The perfect 5-qubit code. Its words are generated here as
/// |0_L> = prod_g (I + g)|00000> over the cyclic stabilizer generators XZZXI, IXZZX,
/// XIXZZ, ZXIXZ, and |1_L> = XXXXX |0_L>. All amplitudes are +-1 (sixteen terms each).
Code five_qubit_code();

/// "ruskai9", "shor9", "rep3" or "five-qubit". Throws DomainError otherwise.
Code builtin_code(std::string_view name);
std::vector<std::string> builtin_code_names();

/// Text format:
///
///     # comment
///     label: ruskai9          (optional)
///     qubits: 9
///     word 0:
///     1 |000000000>
///     1/sqrt(28) orbit(k=6)
///     word 1:
///     ...
///
/// Coefficients are products/quotients of integers, sqrt(r) and i, e.g. "-3/2*i",
/// "1/sqrt(28)". Repeated kets accumulate. Throws ParseError with line and column.
Code parse_code(std::string_view text);
std::string serialize_code(const Code &code);

/// Parses a coefficient token such as "1/sqrt(28)". Column offsets are within the token.
Surd parse_coefficient(std::string_view token);
std::string serialize_coefficient_parts(const Surd &c, std::vector<std::string> &out);

}  // namespace qexc

#endif  // QEXC_CODES_H
