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

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "qexc/errors.h"
#include "testing.h"

using namespace qexc;

namespace {

std::string read_data(const std::string &name) {
    std::ifstream in(std::string(QEXC_TEST_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool fixed_by(const Code &c, const QubitPermutation &p) {
    for (const auto &w : c.words) {
        if (!(apply_permutation(w, p) == w)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(codes, shor_support) {
    Code c = shor_code();
    ASSERT_EQ(c.words.size(), 2u);
    std::set<uint32_t> support;
    for (const auto &[x, a] : c.words[0].terms()) {
        EXPECT_EQ(a, Surd(1));
        support.insert(x);
    }
    std::set<uint32_t> expected;
    for (const char *k : {"|000000000>", "|000111111>", "|111000111>", "|111111000>"}) {
        expected.insert(parse_ket(k).index);
    }
    EXPECT_EQ(support, expected);
    EXPECT_FALSE(support.count(parse_ket("|000 011 011>").index));
    EXPECT_TRUE(inner_product(c.words[0], c.words[1]).is_zero());
    EXPECT_EQ(complement_bits(c.words[0]), c.words[1]);
    for (int a = 1; a <= 3; ++a) {
        for (int b = a + 1; b <= 3; ++b) {
            EXPECT_TRUE(fixed_by(c, QubitPermutation::transposition(9, a, b)));
        }
    }
    EXPECT_FALSE(fixed_by(c, QubitPermutation::transposition(9, 3, 4)));
    EXPECT_TRUE(check_code(c).empty());
}

TEST(codes, ruskai9_invariants) {
    Code c = ruskai9_code();
    for (const auto &w : c.words) {
        EXPECT_EQ(inner_product(w, w).exact, Surd(4));
    }
    EXPECT_TRUE(inner_product(c.words[0], c.words[1]).is_zero());
    EXPECT_EQ(complement_bits(c.words[0]), c.words[1]);
    for (int a = 1; a <= 9; ++a) {
        for (int b = a + 1; b <= 9; ++b) {
            EXPECT_TRUE(fixed_by(c, QubitPermutation::transposition(9, a, b)));
        }
    }
    EXPECT_TRUE(check_code(c).empty());
}

TEST(codes, repetition3) {
    Code c = repetition3();
    std::vector<int> images{1, 2, 3};
    do {
        EXPECT_TRUE(fixed_by(c, QubitPermutation::from_images(images)));
    } while (std::next_permutation(images.begin(), images.end()));
}

TEST(codes, five_qubit_not_permutation_invariant) {
    Code c = five_qubit_code();
    ASSERT_EQ(c.n, 5);
    EXPECT_EQ(c.words[0].support_size(), 16u);
    EXPECT_TRUE(check_code(c).empty());
    bool moved = false;
    for (int a = 1; a <= 5; ++a) {
        for (int b = a + 1; b <= 5; ++b) {
            moved |= !fixed_by(c, QubitPermutation::transposition(5, a, b));
        }
    }
    EXPECT_TRUE(moved);
    bool mixed_signs = false;
    for (const auto &[x, a] : c.words[0].terms()) {
        mixed_signs |= a == Surd(-1);
    }
    EXPECT_TRUE(mixed_signs);
}

TEST(codes, perm_invariant_from_weights) {
    const Surd a = Surd::sqrt(28).inverse();
    PermInvariantSpec spec{9, {{{0, Surd(1)}, {6, a}}, {{9, Surd(1)}, {3, a}}}};
    Code c = perm_invariant_code(spec);
    EXPECT_EQ(c.words, ruskai9_code().words);

    PermInvariantSpec overlap{4, {{{0, Surd(1)}, {2, Surd(1)}}, {{2, Surd(1)}, {4, Surd(1)}}}};
    try {
        perm_invariant_code(overlap);
        FAIL();
    } catch (const InvalidCodeError &e) {
        ASSERT_FALSE(e.violations.empty());
        EXPECT_EQ(e.violations[0].kind, CodeViolation::Kind::not_orthogonal);
        EXPECT_EQ(e.violations[0].value.exact, Surd(6));
    }

    PermInvariantSpec unequal{3, {{{0, Surd(1)}}, {{3, Surd(2)}}}};
    EXPECT_THROW(perm_invariant_code(unequal), InvalidCodeError);

    PermInvariantSpec var{9, {{{0, Surd(1)}, {3, a}}, {{9, Surd(1)}, {6, a}}}};
    EXPECT_NO_THROW(perm_invariant_code(var));
}

TEST(codes, coefficient_grammar) {
    Surd c = parse_coefficient("1/sqrt(28)");
    EXPECT_EQ(c, Surd::sqrt(28).inverse());
    EXPECT_EQ(c * c, Surd(Rational(1, 28)));
    EXPECT_EQ(parse_coefficient("-3/2*i"), Surd(QComplex(0, Rational(-3, 2))));
    EXPECT_EQ(parse_coefficient("2*sqrt(3)"), Surd(QComplex(2), 3));
    EXPECT_EQ(parse_coefficient("i"), Surd::i());
    EXPECT_EQ(parse_coefficient("+5"), Surd(5));
    EXPECT_THROW(parse_coefficient("1/0"), ParseError);
    EXPECT_THROW(parse_coefficient("2x"), ParseError);
    EXPECT_THROW(parse_coefficient(""), ParseError);
}

TEST(codes, round_trip_builtins) {
    for (const auto &name : builtin_code_names()) {
        Code c = builtin_code(name);
        Code back = parse_code(serialize_code(c));
        EXPECT_EQ(back.n, c.n) << name;
        EXPECT_EQ(back.words, c.words) << name;
        EXPECT_EQ(back.label, c.label) << name;
    }
}

TEST(codes, round_trip_random_amplitudes) {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 50; ++trial) {
        int n = gen.uniform(1, 6);
        Code c{n, {gen.state(n), gen.state(n)}, "random"};
        Code back = parse_code(serialize_code(c));
        EXPECT_EQ(back.words, c.words);
    }
}

TEST(codes, golden_files_match_builtins) {
    EXPECT_EQ(parse_code(read_data("ruskai9.code")).words, ruskai9_code().words);
    EXPECT_EQ(parse_code(read_data("shor9.code")).words, shor_code().words);
    EXPECT_EQ(parse_code(read_data("rep3.code")).words, repetition3().words);
    EXPECT_EQ(builtin_code("shor").words, shor_code().words);
    EXPECT_EQ(builtin_code("five-qubit").words, five_qubit_code().words);
    EXPECT_THROW(builtin_code("steane"), DomainError);
}

TEST(codes, parse_errors) {
    try {
        parse_code(read_data("bad_qubits.code"));
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 5);
    }
    EXPECT_THROW(parse_code("word 0:\n1 |0>\n"), ParseError);
    EXPECT_THROW(parse_code("qubits: 2\nword 0:\nfoo |00>\n"), ParseError);
    EXPECT_THROW(parse_code("qubits: 2\nword 1:\n1 |00>\n"), ParseError);
    EXPECT_THROW(parse_code("qubits: 2\nword 0:\n1 orbit(k=3)\n"), ParseError);
    try {
        parse_code("qubits: 2\nword 0:\n1 |00>\n1 |0x>\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 4);
        EXPECT_GT(e.column, 1);
    }
}

TEST(codes, parse_accumulates_and_comments) {
    Code c = parse_code("# header\nqubits: 2\nword 0:\n1 |01>  # trailing\n1 |01>\nword 1:\n1 orbit(k=2)\n");
    EXPECT_EQ(c.words[0].amplitude(1), Surd(2));
    EXPECT_EQ(c.words[1], StateVector::basis(2, 3));
}

TEST(codes, float_view) {
    Code f = ruskai9_code().to_float();
    EXPECT_EQ(f.mode(), Mode::floating);
    EXPECT_TRUE(check_code(f).empty());
    EXPECT_NEAR(f.words[0].norm2(), 4.0, 1e-12);
}
