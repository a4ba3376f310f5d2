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

#ifndef QEXC_CODESEARCH_H
#define QEXC_CODESEARCH_H

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qexc/surd.h"

namespace qexc {

/// <Z_k w|Z_l w> for w = orbit_sum(n, k), k != l:
///     ((n - 2k)^2 - n) / (n (n - 1)) * C(n, k).
Rational phase_offdiag_term(int n, int k);

/// Matching basis-state pairs in <X_k w|X_l w>, k != l: 2 C(n-2, k-1), 0 for k = 0.
uint64_t bitflip_cross_count(int n, int k);

/// <w|Z_k w> for w = orbit_sum(n, k): (n - 2k)/n * C(n, k).
Rational zk_diag(int n, int k);

/// Weights carrying nonzero coefficients in word 0 and word 1.
struct SupportPattern {
    int n = 0;
    std::set<int> weights0;
    std::set<int> weights1;
    /// Word 1 is the bit complement of word 0: a^1_{n-k} = a^0_k.
    bool dual = false;

    /// Throws DomainError when weights are out of range, empty, overlapping, or when
    /// dual is set but weights1 != { n - k : k in weights0 }.
    void validate() const;
    SupportPattern complemented() const;
    std::string str() const;
};

/// Complement-dual pattern with the given word-0 weights.
SupportPattern dual_pattern(int n, std::set<int> weights0);

enum class SearchErrors {
    single_pauli_exchange,  // {I, exchanges, X_k, Y_k, Z_k}
    single_pauli,           // {I, X_k, Y_k, Z_k}
    bit_flip                // {I, X_k}
};

std::string search_errors_name(SearchErrors e);

struct SolverOptions {
    SearchErrors errors = SearchErrors::single_pauli_exchange;
    /// Grid over each free ratio (coefficient / first coefficient of its word).
    int grid_points = 101;
    double grid_range = 10.0;
    int refinements = 3;
    double refinement_factor = 10.0;
    /// Acceptance on the scale-free residuals and for the final verify_kl re-check.
    double tolerance = 1e-9;
};

struct SolverResult {
    enum class Status {
        feasible,
        infeasible,        // a sign-definite constraint certifies impossibility
        no_solution_found  // search exhausted at the stated resolution
    };
    Status status = Status::no_solution_found;
    SupportPattern pattern;
    SearchErrors errors = SearchErrors::single_pauli_exchange;
    /// Per word, weight -> coefficient; word 0 has its first coefficient 1 and word 1 is
    /// scaled to the same norm. Empty unless feasible.
    std::vector<std::map<int, double>> coefficients;
    double max_residual = 0;
    /// The sign-definite constraint (infeasible) or the search summary (no_solution_found).
    std::string certificate;
    /// "fixed", "direct" or "grid".
    std::string method;
    /// Final step size of the grid refinement, 0 for fixed/direct.
    double resolution = 0;
    /// verify_kl on the realized code passed at the stated tolerance.
    bool verified = false;

    bool feasible() const {
        return status == Status::feasible;
    }
    std::string status_name() const;
    /// |a_k / a_l| within one word; throws DomainError if the weights are not in one word.
    double ratio(int k, int l) const;
};

/// Throws CapabilityError when a word has more than four free coefficients.
SolverResult solve_coefficients(const SupportPattern &pattern, const SolverOptions &options = {});

/// All complement-dual patterns on n qubits whose word 0 uses 1..max_weights weights.
std::vector<SupportPattern> dual_patterns(int n, int max_weights);

/// solve_coefficients over dual_patterns(n, max_weights), in pattern order.
std::vector<SolverResult> survey(int n, const SolverOptions &options = {}, int max_weights = 3);

/// survey(7) with the single-qubit error set {I, X_k, Y_k, Z_k}.
std::vector<SolverResult> survey_7bit();

}  // namespace qexc

#endif  // QEXC_CODESEARCH_H
