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

#include <gtest/gtest.h>

#include "qexc/codes.h"
#include "qexc/errors.h"
#include "testing.h"

using namespace qexc;

namespace {

// Dense matrix of an operator, read off from its action on every basis state.
oracle::DenseMatrix matrix_of(const ErrorOperator &e, int n) {
    const size_t dim = size_t{1} << n;
    oracle::DenseMatrix m(dim, std::vector<oracle::cd>(dim));
    for (size_t x = 0; x < dim; ++x) {
        auto col = oracle::dense_of(apply(e, StateVector::basis(n, static_cast<uint32_t>(x))));
        for (size_t y = 0; y < dim; ++y) {
            m[y][x] = col[y];
        }
    }
    return m;
}

}  // namespace

TEST(pauli_string, single_qubit_action) {
    auto x1 = PauliString::single(3, 'X', 1);
    auto z1 = PauliString::single(3, 'Z', 1);
    EXPECT_EQ(pauli_apply(x1, StateVector::basis(3, 0b000)), StateVector::basis(3, 0b100));
    EXPECT_EQ(pauli_apply(z1, StateVector::basis(3, 0b100)), StateVector::basis(3, 0b100).scaled(Surd(-1)));
    for (int q = 1; q <= 3; ++q) {
        std::string f(3, 'I');
        f[q - 1] = 'Y';
        auto y = PauliString::single(3, 'Y', q);
        EXPECT_EQ(y.phase(), 1);
        EXPECT_TRUE(oracle::near(matrix_of(y, 3), oracle::pauli_matrix(f)));
    }
    EXPECT_THROW(PauliString::single(3, 'W', 1), DomainError);
    EXPECT_THROW(pauli_apply(x1, StateVector::basis(4, 0)), DimensionError);
}

TEST(pauli_string, from_str) {
    auto p = PauliString::from_str("XZZXI");
    EXPECT_EQ(p.num_qubits(), 5);
    EXPECT_EQ(p.x_mask(), 0b10010u);
    EXPECT_EQ(p.z_mask(), 0b01100u);
    EXPECT_EQ(p.weight(), 4);
    EXPECT_TRUE(oracle::near(matrix_of(PauliString::from_str("-iYYI"), 3),
                              oracle::scale(oracle::pauli_matrix("YYI"), oracle::cd(0, -1))));
    EXPECT_THROW(PauliString::from_str("XQ"), ParseError);
}

TEST(pauli_string, product_matches_dense_matrices_random) {
    oracle::Gen gen(31);
    for (int trial = 0; trial < 200; ++trial) {
        int n = gen.uniform(1, 6);
        const int mask = (1 << n) - 1;
        PauliString p(n, gen.uniform(0, mask), gen.uniform(0, mask), gen.uniform(0, 3));
        PauliString q(n, gen.uniform(0, mask), gen.uniform(0, mask), gen.uniform(0, 3));
        auto mp = oracle::xz_matrix(n, p.x_mask(), p.z_mask(), p.phase());
        auto mq = oracle::xz_matrix(n, q.x_mask(), q.z_mask(), q.phase());
        EXPECT_TRUE(oracle::near(matrix_of(p, n), mp));
        auto pq = p.times(q);
        EXPECT_TRUE(oracle::near(matrix_of(pq, n), oracle::matmul(mp, mq)));
        EXPECT_EQ(pq.x_mask(), p.x_mask() ^ q.x_mask());
        EXPECT_EQ(pq.z_mask(), p.z_mask() ^ q.z_mask());
        EXPECT_EQ(p.times(p.inverse()), PauliString::identity(n));
    }
}

TEST(pauli_string, unitary_random) {
    oracle::Gen gen(32);
    for (int trial = 0; trial < 100; ++trial) {
        int n = gen.uniform(1, 7);
        const int mask = (1 << n) - 1;
        PauliString p(n, gen.uniform(0, mask), gen.uniform(0, mask), gen.uniform(0, 3));
        auto s = gen.state(n);
        EXPECT_EQ(pauli_apply(p.inverse(), pauli_apply(p, s)), s);
        EXPECT_EQ(inner_product(pauli_apply(p, s), pauli_apply(p, s)).exact, inner_product(s, s).exact);
    }
}

TEST(exchange, basis_action) {
    EXPECT_EQ(exchange_apply(1, 2, StateVector::basis(2, 0b00)), StateVector::basis(2, 0b00));
    EXPECT_EQ(exchange_apply(1, 2, StateVector::basis(2, 0b01)), StateVector::basis(2, 0b10));
    EXPECT_EQ(exchange_apply(2, 1, StateVector::basis(2, 0b11)), StateVector::basis(2, 0b11));
    EXPECT_THROW(exchange_apply(2, 2, StateVector::basis(2, 0)), DomainError);
    EXPECT_THROW(ExchangeOp(3, 3), DomainError);
    EXPECT_EQ(ExchangeOp(4, 2), ExchangeOp(2, 4));
}

TEST(exchange, shor_word_image) {
    auto c0 = shor_code().words[0];
    StateVector expected = StateVector::zero(9);
    for (const char *ket : {"|000 000 000>", "|001 011 111>", "|110 100 111>", "|111 111 000>"}) {
        expected.add(parse_ket(ket).index, Surd(1));
    }
    EXPECT_EQ(exchange_apply(3, 4, c0), expected);
}

TEST(exchange, four_term_pauli_identity) {
    // E_jk = 1/2 (I + Z_j Z_k + X_j X_k + Y_j Y_k), checked on every basis state of n = 4.
    const int n = 4;
    for (int j = 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            auto pair = [&](char c) {
                return PauliString::single(n, c, j).times(PauliString::single(n, c, k));
            };
            for (uint32_t x = 0; x < (1u << n); ++x) {
                auto s = StateVector::basis(n, x);
                StateVector sum = s + pauli_apply(pair('Z'), s) + pauli_apply(pair('X'), s) + pauli_apply(pair('Y'), s);
                EXPECT_EQ(exchange_apply(j, k, s), sum.scaled(Surd(Rational(1, 2))));
            }
        }
    }
}

TEST(exchange, matches_transposition_random) {
    oracle::Gen gen(33);
    for (int trial = 0; trial < 100; ++trial) {
        int n = gen.uniform(2, 8);
        int j = gen.uniform(1, n), k = gen.uniform(1, n);
        if (j == k) {
            continue;
        }
        auto s = gen.state(n);
        EXPECT_EQ(exchange_apply(j, k, s), apply_permutation(s, QubitPermutation::transposition(n, j, k)));
        EXPECT_EQ(exchange_apply(j, k, exchange_apply(j, k, s)), s);
    }
}

TEST(error_operator, composition) {
    auto s = oracle::Gen(34).state(3);
    EXPECT_EQ(apply(IdentityOp{}, s), s);
    ErrorOperator twice = Composition{{ExchangeOp(1, 2), ExchangeOp(1, 2)}};
    EXPECT_EQ(apply(twice, s), s);
    // The rightmost factor acts first: X1 Z1 |0> = X1 |0> = |1>.
    ErrorOperator xz = Composition{{PauliString::single(1, 'X', 1), PauliString::single(1, 'Z', 1)}};
    EXPECT_EQ(apply(xz, StateVector::basis(1, 0)), StateVector::basis(1, 1));
    ErrorOperator zx = Composition{{PauliString::single(1, 'Z', 1), PauliString::single(1, 'X', 1)}};
    EXPECT_EQ(apply(zx, StateVector::basis(1, 0)), StateVector::basis(1, 1).scaled(Surd(-1)));
}

TEST(error_operator, parse_and_str) {
    EXPECT_EQ(parse_operator("X3", 9).str(), "X3");
    EXPECT_EQ(parse_operator("E(3,4)", 9).str(), "E(3,4)");
    EXPECT_EQ(parse_operator("E(4, 3)", 9).str(), "E(3,4)");
    EXPECT_EQ(parse_operator("P(2 1 3)", 3).str(), "P(2 1 3)");
    EXPECT_EQ(parse_operator("X3 E(3,4)", 9).str(), "X3 E(3,4)");
    EXPECT_EQ(parse_operator("I", 9).str(), "I");
    auto s = oracle::Gen(35).state(9);
    EXPECT_EQ(apply(parse_operator("X3 E(3,4)", 9), s),
              pauli_apply(PauliString::single(9, 'X', 3), exchange_apply(3, 4, s)));
    EXPECT_THROW(parse_operator("X10", 9), ParseError);
    EXPECT_THROW(parse_operator("E(3,3)", 9), ParseError);
    EXPECT_THROW(parse_operator("Q1", 9), ParseError);
    EXPECT_THROW(parse_operator("E(3,4", 9), ParseError);
}

TEST(error_set, layout) {
    auto pauli = basic_error_set(9, families::single_pauli);
    EXPECT_EQ(pauli.size(), 28u);
    auto full = basic_error_set(9, families::single_pauli | families::exchange);
    ASSERT_EQ(full.size(), 64u);
    EXPECT_EQ(full.label(0), "I");
    EXPECT_EQ(full.label(1), "E(1,2)");
    EXPECT_EQ(full.label(36), "E(8,9)");
    EXPECT_EQ(full.label(37), "X1");
    EXPECT_EQ(full.label(46), "Y1");
    EXPECT_EQ(full.label(55), "Z1");
    EXPECT_EQ(full.label(63), "Z9");
    size_t block0 = 0;
    for (size_t p = 0; p < full.size(); ++p) {
        auto f = full.family(p);
        block0 += f == ErrorFamily::identity || f == ErrorFamily::exchange;
    }
    EXPECT_EQ(block0, 37u);
    EXPECT_EQ(basic_error_set(3, families::exchange).size(), 4u);
    EXPECT_EQ(basic_error_set(3, families::single_pauli | families::exchange).size(), 13u);
    EXPECT_EQ(basic_error_set(3, families::bit_flip).size(), 4u);
    EXPECT_EQ(basic_error_set(3, families::identity_only).size(), 1u);
}

TEST(error_set, validation) {
    EXPECT_THROW(ErrorSet::from_operators(3, {PauliString::single(3, 'X', 1)}), DomainError);
    EXPECT_THROW(ErrorSet::from_operators(3, {IdentityOp{}, PauliString::single(3, 'X', 1),
                                             PauliString::single(3, 'X', 1)}),
                 DomainError);
    std::vector<int> swap12{2, 1, 3};
    EXPECT_THROW(ErrorSet::from_operators(3, {IdentityOp{}, ExchangeOp(1, 2), QubitPermutation::from_images(swap12)}),
                 DomainError);
    auto ok = ErrorSet::from_operators(3, {IdentityOp{}, ExchangeOp(1, 2), PauliString::single(3, 'Z', 2)});
    EXPECT_EQ(ok.size(), 3u);
}

TEST(error_set, parse) {
    EXPECT_EQ(parse_error_set("pauli+exchange", 9).size(), 64u);
    EXPECT_EQ(parse_error_set("pauli", 9).size(), 28u);
    EXPECT_EQ(parse_error_set("x+exchange", 3).size(), 7u);
    auto s = parse_error_set("Z1, E(3,4)", 9);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s.label(0), "I");
    EXPECT_EQ(s.label(2), "E(3,4)");
    EXPECT_THROW(parse_error_set("bogus", 9), ParseError);
}
