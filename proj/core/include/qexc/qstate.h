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

#ifndef QEXC_QSTATE_H
#define QEXC_QSTATE_H

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qexc/surd.h"

namespace qexc {

constexpr int kMaxQubits = 24;

enum class Mode { exact, floating };

/// Bit mask of qubit `qubit` (1-based) in an n-qubit index. Qubit 1 is the most
/// significant bit, so the printed ket |q1 q2 ... qn> reads off directly.
constexpr uint32_t qubit_mask(int n, int qubit) {
    return uint32_t{1} << (n - qubit);
}

struct BasisState {
    int n = 0;
    uint32_t index = 0;

    BasisState() = default;
    BasisState(int n_, uint32_t index_);

    int weight() const;
    /// Value (0 or 1) of qubit `qubit`, 1-based.
    int bit(int qubit) const {
        return (index & qubit_mask(n, qubit)) ? 1 : 0;
    }
    std::string str() const;
    friend bool operator==(const BasisState &, const BasisState &) = default;
};

/// Parses a ket literal such as "|111 111 000>"; whitespace inside is ignored.
BasisState parse_ket(std::string_view text);

/// Ascending list of all n-bit indices of Hamming weight k.
std::vector<uint32_t> weight_indices(int n, int k);

uint64_t binomial(int n, int k);

/// Permutation of qubit positions: image[j] is where qubit j+1 is sent (stored 0-based).
class QubitPermutation {
   public:
    static QubitPermutation identity(int n);
    /// Swap of qubits j and k (1-based).
    static QubitPermutation transposition(int n, int j, int k);
    /// `images` lists 1-based destinations; throws DomainError unless a bijection on {1..n}.
    static QubitPermutation from_images(std::span<const int> images);

    int size() const {
        return static_cast<int>(image_.size());
    }
    /// 1-based destination of 1-based qubit `j`.
    int image_of(int j) const {
        return image_[j - 1] + 1;
    }
    /// (*this) after `first`: qubits move by `first`, then by *this.
    QubitPermutation after(const QubitPermutation &first) const;
    QubitPermutation inverse() const;
    bool is_identity() const;
    /// Index of the basis state obtained by moving each qubit value to its image.
    uint32_t apply_to_index(uint32_t index) const;
    std::string str() const;

    friend bool operator==(const QubitPermutation &, const QubitPermutation &) = default;

   private:
    explicit QubitPermutation(std::vector<int> image) : image_(std::move(image)) {
    }
    std::vector<int> image_;
};

/// A state on n qubits, stored sparsely with exact surd amplitudes (Mode::exact) or
/// densely as complex doubles (Mode::floating).
class StateVector {
   public:
    using Terms = std::map<uint32_t, Surd>;
    using Dense = std::vector<std::complex<double>>;

    StateVector() = default;

    static StateVector zero(int n, Mode mode = Mode::exact);
    static StateVector basis(int n, uint32_t index, Mode mode = Mode::exact);
    static StateVector from_terms(int n, Terms terms);
    static StateVector from_dense(int n, Dense amplitudes);

    int num_qubits() const {
        return n_;
    }
    Mode mode() const {
        return mode_;
    }
    bool is_exact() const {
        return mode_ == Mode::exact;
    }

    /// Exact mode only.
    const Terms &terms() const;
    /// Float mode only.
    const Dense &dense() const;

    /// Exact amplitude at `index` (zero if absent). Exact mode only.
    Surd amplitude(uint32_t index) const;
    /// Amplitude at `index` as a complex double, either mode.
    std::complex<double> value(uint32_t index) const;

    /// Number of nonzero amplitudes.
    size_t support_size() const;

    /// Adds c to the amplitude at `index`, dropping the entry if it cancels.
    void add(uint32_t index, const Surd &c);
    void add(uint32_t index, std::complex<double> c);

    StateVector to_float() const;
    StateVector scaled(const Surd &c) const;
    StateVector scaled(std::complex<double> c) const;
    /// Squared norm as a double, either mode.
    double norm2() const;

    StateVector &operator+=(const StateVector &o);
    StateVector &operator-=(const StateVector &o);
    friend StateVector operator+(StateVector a, const StateVector &b) {
        return a += b;
    }
    friend StateVector operator-(StateVector a, const StateVector &b) {
        return a -= b;
    }
    friend bool operator==(const StateVector &a, const StateVector &b);

    std::string str() const;

   private:
    int n_ = 0;
    Mode mode_ = Mode::exact;
    Terms terms_;
    Dense dense_;
};

/// Value of a bracket <u|v>: exact surd in exact mode, plus its float view.
struct InnerProductValue {
    Mode mode = Mode::exact;
    Surd exact;
    std::complex<double> value;

    static InnerProductValue from_exact(Surd s);
    static InnerProductValue from_float(std::complex<double> v);

    double magnitude() const {
        return std::abs(value);
    }
    /// Exact zero test in exact mode; |value| <= tol in float mode.
    bool is_zero(double tol = 0) const;
    InnerProductValue conj() const;
    std::string str() const;

    friend InnerProductValue operator-(const InnerProductValue &a, const InnerProductValue &b);
    friend bool operator==(const InnerProductValue &a, const InnerProductValue &b);
};

/// Sum over x of conj(u_x) v_x. Throws DimensionError or ModeError on mismatched operands.
InnerProductValue inner_product(const StateVector &u, const StateVector &v);

/// Moves the value of each qubit j to position p.image_of(j).
StateVector apply_permutation(const StateVector &s, const QubitPermutation &p);

/// Unnormalized sum of all C(n,k) basis states of weight k, each with amplitude 1.
StateVector orbit_sum(int n, int k, Mode mode = Mode::exact);

/// Flips every bit of every basis label (the 0 <-> 1 duality map).
StateVector complement_bits(const StateVector &s);

}  // namespace qexc

#endif  // QEXC_QSTATE_H
