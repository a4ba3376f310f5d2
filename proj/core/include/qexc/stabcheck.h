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

#ifndef QEXC_STABCHECK_H
#define QEXC_STABCHECK_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qexc/codes.h"
#include "qexc/errorops.h"

namespace qexc {

/// X(a)Z(b) acting on every codeword as the scalar i^eigenvalue_power.
struct StabilizerFinding {
    PauliString element;
    int eigenvalue_power = 0;  // eigenvalue = i^eigenvalue_power
    std::string eigenvalue_str() const;
};

struct AdditivityReport {
    /// True when some X(a)Z(b) other than the identity has every codeword as an eigenvector.
    bool is_nontrivially_stabilized = false;
    std::vector<StabilizerFinding> findings;
    /// Number of (a, b) pairs examined, 4^n.
    uint64_t scanned = 0;
};

/// Exhaustive scan over all X(a)Z(b), a, b in Z_2^n. Exact codes only; n <= 12.
/// Throws ResourceError for larger n and ModeError for float codes.
AdditivityReport stabilizer_scan(const Code &code);

/// Whether the weight-k vectors of Z_2^n span Z_2^n (GF(2) elimination).
bool span_check(int k, int n);
/// GF(2) rank of the weight-k vectors.
int gf2_weight_rank(int k, int n);

/// Where the eigen-equation X(a)Z(b)|C_i> = lambda |C_i> breaks.
struct EigenWitness {
    bool stabilizes = false;
    /// Set when stabilizes.
    std::optional<int> eigenvalue_power;
    /// Set when a witness exists.
    enum class Kind { none, support, phase } kind = Kind::none;
    size_t word = 0;
    /// Codeword component v whose image (v + a, phase (-1)^{b.v}) breaks the equation.
    uint32_t component = 0;
    uint32_t image = 0;
    /// b.v mod 2 for that component.
    int parity = 0;
    std::string description;
};

EigenWitness eigenvector_witness(const Code &code, const PauliString &element);

}  // namespace qexc

#endif  // QEXC_STABCHECK_H
