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

#ifndef QEXC_KLVERIFY_H
#define QEXC_KLVERIFY_H

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qexc/codes.h"
#include "qexc/errorops.h"
#include "qexc/qstate.h"

namespace qexc {

/// All brackets <e_p C_i | e_q C_j> for a word list and an error set.
class GramTensor {
   public:
    GramTensor() = default;
    GramTensor(size_t num_errors, size_t num_words, Mode mode);

    size_t num_errors() const {
        return errors_;
    }
    size_t num_words() const {
        return words_;
    }
    Mode mode() const {
        return mode_;
    }
    const InnerProductValue &at(size_t p, size_t i, size_t q, size_t j) const {
        return entries_[index(p, i, q, j)];
    }
    InnerProductValue &at(size_t p, size_t i, size_t q, size_t j) {
        return entries_[index(p, i, q, j)];
    }
    /// Largest |M[(p,i),(q,j)] - conj(M[(q,j),(p,i)])|; exactly 0 for exact tensors.
    double hermiticity_defect() const;
    bool is_exactly_hermitian() const;

   private:
    size_t index(size_t p, size_t i, size_t q, size_t j) const {
        return ((p * words_ + i) * errors_ + q) * words_ + j;
    }
    size_t errors_ = 0;
    size_t words_ = 0;
    Mode mode_ = Mode::exact;
    std::vector<InnerProductValue> entries_;
};

GramTensor gram_tensor(const Code &code, const ErrorSet &errors);
GramTensor gram_tensor(std::span<const StateVector> words, const ErrorSet &errors);

/// Contiguous index range [begin, begin + size) of the error set.
struct DBlock {
    std::string name;
    size_t begin = 0;
    size_t size = 0;
};

/// Blocks induced by the error-set family order: identity and exchanges form "D_0",
/// single-qubit runs form "D_X", "D_Y", "D_Z"; anything else gets "D_other".
std::vector<DBlock> family_blocks(const ErrorSet &errors);

class DMatrix {
   public:
    DMatrix() = default;
    DMatrix(size_t size, Mode mode);

    size_t size() const {
        return size_;
    }
    Mode mode() const {
        return mode_;
    }
    const InnerProductValue &at(size_t p, size_t q) const {
        return d_[p * size_ + q];
    }
    InnerProductValue &at(size_t p, size_t q) {
        return d_[p * size_ + q];
    }
    std::vector<DBlock> blocks;

   private:
    size_t size_ = 0;
    Mode mode_ = Mode::exact;
    std::vector<InnerProductValue> d_;
};

/// Rank of the principal submatrix on `indices`: exact elimination over Q(i) when every
/// entry is a Gaussian rational, otherwise eigenvalues above tol * max |lambda|.
int matrix_rank(const DMatrix &d, std::span<const size_t> indices, double tol = 1e-9);
int matrix_rank(const DMatrix &d, double tol = 1e-9);

struct Violation {
    enum class Kind {
        cross_word,      // <e_p C_i|e_q C_j> != 0 for i != j
        d_mismatch,      // <e_p C_i|e_q C_i> != <e_p C_0|e_q C_0>
        not_orthonormal  // strict form: D is not a multiple of the identity
    };
    Kind kind;
    size_t i = 0;
    size_t j = 0;
    size_t p = 0;
    size_t q = 0;
    /// Word labels; "2" for plain codes, "1^2" (i^m) for extended families.
    std::string word_i;
    std::string word_j;
    double magnitude = 0;
    InnerProductValue residual;

    std::string kind_name() const;
};

struct KLOptions {
    /// Defaults: 0 in exact mode, 1e-9 in float mode.
    std::optional<double> tolerance;
    /// Require <e_p C_i|e_q C_j> = delta_ij delta_pq * const.
    bool strict = false;
};

struct KLReport {
    bool correctable = false;
    /// Word-0 block; present only when correctable.
    std::optional<DMatrix> D;
    std::vector<Violation> violations;
    double tolerance = 0;
    Mode mode = Mode::exact;
    bool strict = false;
    size_t num_words = 0;
    size_t num_errors = 0;
    /// Rank of the word-0 block (computed whether or not the check passes).
    int rank = 0;
    /// num_words * rank, against space_dimension = 2^n.
    uint64_t dimension_used = 0;
    uint64_t space_dimension = 0;
};

KLReport verify_kl(const Code &code, const ErrorSet &errors, const KLOptions &options = {});

/// Pre-computed Gram tensor form, for callers that inspect the tensor too.
KLReport verify_kl(const GramTensor &gram, int num_qubits, const KLOptions &options = {},
                   const std::vector<std::string> &word_labels = {});

/// family[i][m]: word i of the m-th copy. Checks
///     <e_p C_i^m | e_q C_j^m'> = delta_ij delta_mm' d_pq
/// with D independent of i and m.
KLReport verify_kl_extended(const std::vector<std::vector<StateVector>> &family, const ErrorSet &errors,
                            const KLOptions &options = {});

struct BlockSummary {
    std::string name;
    size_t begin = 0;
    size_t size = 0;
    int rank = 0;
    /// Set when every diagonal (off-diagonal) entry of the block is the same value.
    std::optional<InnerProductValue> uniform_diagonal;
    std::optional<InnerProductValue> uniform_offdiagonal;
    /// Largest |d_pq| with p in this block and q outside it.
    double max_off_block = 0;
};

struct BlockReport {
    std::vector<BlockSummary> blocks;
    double max_off_block = 0;
    bool block_diagonal = false;
    int total_rank = 0;
    int sum_of_block_ranks = 0;
    /// 2 * total_rank for a two-word code.
    uint64_t dimension_used = 0;
};

BlockReport d_blocks(const DMatrix &d, const ErrorSet &errors, size_t num_words = 2, double tol = 1e-9);

/// Correction data from the eigendecomposition D = U diag(lambda) U^dagger. Each
/// syndrome r with lambda_r > tol owns the orthonormal states
///     f_{r,i} = sum_p u_pr e_p C_i / sqrt(lambda_r),
/// and correction maps f_{r,i} to the normalized codeword.
class RecoveryOperation {
   public:
    struct Syndrome {
        std::vector<std::complex<double>> combination;  // u_pr over p
        double eigenvalue = 0;
    };
    struct Branch {
        size_t syndrome = 0;
        double probability = 0;
        StateVector state;
    };

    const std::vector<Syndrome> &syndromes() const {
        return syndromes_;
    }
    size_t num_words() const {
        return code_.size();
    }
    /// Normalized sum_i alpha_i C_i.
    StateVector encode(std::span<const std::complex<double>> alpha) const;
    /// Syndrome measurement followed by correction, one branch per outcome with
    /// nonzero probability. Accepts exact or float states.
    std::vector<Branch> recover(const StateVector &corrupted) const;
    /// Total probability captured by the syndrome subspaces (1 for correctable inputs).
    double captured_probability(const StateVector &corrupted) const;

   private:
    friend RecoveryOperation build_recovery(const Code &, const ErrorSet &, const DMatrix &, double);
    std::vector<Syndrome> syndromes_;
    std::vector<StateVector> code_;                  // normalized codewords
    std::vector<std::vector<StateVector>> targets_;  // f_{r,i}
};

/// Throws NumericalError if D is not positive semidefinite within tol.
RecoveryOperation build_recovery(const Code &code, const ErrorSet &errors, const DMatrix &d, double tol = 1e-9);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const StateVector &a, const StateVector &b);

enum class BoundScenario { single_bit, all_two_bit_plus_single, irrep_proposal };

std::string scenario_name(BoundScenario s);
std::optional<BoundScenario> parse_scenario(std::string_view name);

struct BoundResult {
    BoundScenario scenario;
    int n = 0;
    /// Smallest n0 such that the inequality holds for every n >= n0.
    int min_n = 0;
    bool holds_at_n = false;
    /// Required and available dimension at n.
    long double required = 0;
    long double available = 0;
    std::string inequality;
    /// One line per n from 1 to max(n, min_n): "n: required <= available (holds|fails)".
    std::vector<std::string> trace;
};

/// single_bit:               2(3n+1) <= 2^n
/// all_two_bit_plus_single:  9n(n-1) + 2(3n+1) <= 2^n
/// irrep_proposal:           2(n-1)(3n+1) <= 2^n
BoundResult dimension_bound(int n, BoundScenario scenario);

struct ShorDemoSample {
    std::complex<double> a;
    std::complex<double> b;
    /// <psi|E_34 psi> / <psi|psi>.
    std::complex<double> code_coefficient;
    /// |P_code E_34 psi - code_coefficient psi|, zero when the code component is parallel to psi.
    double code_residual = 0;
    /// Squared-norm fractions of E_34 psi (relative to |psi|^2) in the code space, in the
    /// span of single-qubit-error images orthogonal to it, and in the remainder gamma.
    double code_fraction = 0;
    double error_fraction = 0;
    double remainder_fraction = 0;
    /// Largest |<basis|gamma>| / |gamma| over codewords and single-error images.
    double remainder_overlap = 0;
    /// |overlap| of the error component with Z_k psi~ (psi~ = a c_0 - b c_1), k = 1..9.
    std::vector<double> z_overlap;
    /// <Z_k psi~|error component> / <psi~|psi~> for the first matching k.
    std::complex<double> error_coefficient;
};

struct ShorDemoReport {
    std::vector<ShorDemoSample> samples;
    /// Qubits k whose Z_k psi~ carries the whole error component in every sample.
    std::vector<int> matching_qubits;
    /// Qubit labels quoted for this expansion: 2 in the codeword form, 8 in the
    /// superposition form. Recorded next to the computed matches.
    std::vector<int> quoted_labels{2, 8};
    /// E_34 |c_0> equals |000000000> + |001011111> + |110100111> + |111111000>.
    bool image_matches = false;
    ErrorSet kl_errors;
    /// verify_kl(shor9, {I, Z_1..Z_9, E_34}) result.
    KLReport kl;
};

ShorDemoReport shor_exchange_demo(uint64_t seed = 2024, int num_samples = 3);

}  // namespace qexc

#endif  // QEXC_KLVERIFY_H
