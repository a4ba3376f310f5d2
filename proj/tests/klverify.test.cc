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

#include "qexc/klverify.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "qexc/codesearch.h"
#include "qexc/errors.h"
#include "testing.h"

using namespace qexc;

namespace {

const ErrorSet &full9() {
    static const ErrorSet s = basic_error_set(9, families::single_pauli | families::exchange);
    return s;
}

size_t index_of(const ErrorSet &s, const std::string &label) {
    for (size_t p = 0; p < s.size(); ++p) {
        if (s.label(p) == label) {
            return p;
        }
    }
    throw std::out_of_range(label);
}

ErrorSet shor_phase_exchange() {
    return parse_error_set("I, Z1, Z2, Z3, Z4, Z5, Z6, Z7, Z8, Z9, E(3,4)", 9);
}

// Smallest eigenvalue of the Gram tensor viewed as one Hermitian matrix over (p, i).
double min_eigenvalue(const GramTensor &g) {
    const Eigen::Index dim = static_cast<Eigen::Index>(g.num_errors() * g.num_words());
    Eigen::MatrixXcd m(dim, dim);
    for (size_t p = 0; p < g.num_errors(); ++p) {
        for (size_t i = 0; i < g.num_words(); ++i) {
            for (size_t q = 0; q < g.num_errors(); ++q) {
                for (size_t j = 0; j < g.num_words(); ++j) {
                    m(p * g.num_words() + i, q * g.num_words() + j) = g.at(p, i, q, j).value;
                }
            }
        }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues()(0);
}

}  // namespace

TEST(gram_tensor, ruskai9_inner_products) {
    const auto &e = full9();
    GramTensor g = gram_tensor(ruskai9_code(), e);
    EXPECT_TRUE(g.is_exactly_hermitian());
    for (size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(g.at(0, i, 0, i).exact, Surd(4));
        for (int k = 1; k <= 9; ++k) {
            EXPECT_TRUE(g.at(0, i, index_of(e, "Z" + std::to_string(k)), i).is_zero());
            for (int l = 1; l <= 9; ++l) {
                const auto zk = index_of(e, "Z" + std::to_string(k)), zl = index_of(e, "Z" + std::to_string(l));
                const auto xk = index_of(e, "X" + std::to_string(k)), xl = index_of(e, "X" + std::to_string(l));
                const auto yk = index_of(e, "Y" + std::to_string(k));
                EXPECT_EQ(g.at(zk, i, zl, i).exact, Surd(k == l ? 4 : 1));
                EXPECT_EQ(g.at(xk, i, xl, i).exact, k == l ? Surd(4) : Surd(Rational(3, 2)));
                EXPECT_TRUE(g.at(yk, i, xl, i).is_zero());
            }
        }
    }
    for (size_t p = 0; p < e.size(); ++p) {
        for (size_t q = 0; q < e.size(); ++q) {
            EXPECT_TRUE(g.at(p, 0, q, 0).exact.is_gaussian_rational());
        }
    }
}

TEST(gram_tensor, hermitian_psd_fixtures) {
    for (const auto &name : builtin_code_names()) {
        Code c = builtin_code(name);
        ErrorSet e = basic_error_set(c.n, families::single_pauli | families::exchange);
        GramTensor g = gram_tensor(c, e);
        EXPECT_TRUE(g.is_exactly_hermitian()) << name;
        EXPECT_GT(min_eigenvalue(g), -1e-9) << name;
        GramTensor f = gram_tensor(c.to_float(), e);
        EXPECT_LT(f.hermiticity_defect(), 1e-12) << name;
    }
}

TEST(verify_kl, ruskai9_full_set) {
    KLReport r = verify_kl(ruskai9_code(), full9());
    ASSERT_TRUE(r.correctable);
    ASSERT_TRUE(r.D.has_value());
    EXPECT_EQ(r.tolerance, 0);
    EXPECT_EQ(r.rank, 28);
    EXPECT_EQ(r.dimension_used, 56u);
    EXPECT_EQ(r.space_dimension, 512u);

    BlockReport b = d_blocks(*r.D, full9());
    EXPECT_TRUE(b.block_diagonal);
    EXPECT_EQ(b.total_rank, 28);
    ASSERT_EQ(b.blocks.size(), 4u);
    EXPECT_EQ(b.blocks[0].name, "D_0");
    EXPECT_EQ(b.blocks[0].size, 37u);
    EXPECT_EQ(b.blocks[0].rank, 1);
    EXPECT_EQ(b.blocks[0].uniform_diagonal->exact, Surd(4));
    EXPECT_EQ(b.blocks[0].uniform_offdiagonal->exact, Surd(4));
    for (size_t k : {1, 2}) {
        EXPECT_EQ(b.blocks[k].uniform_diagonal->exact, Surd(4));
        EXPECT_EQ(b.blocks[k].uniform_offdiagonal->exact, Surd(Rational(3, 2)));
        EXPECT_EQ(b.blocks[k].rank, 9);
    }
    EXPECT_EQ(b.blocks[3].name, "D_Z");
    EXPECT_EQ(b.blocks[3].uniform_offdiagonal->exact, Surd(1));
}

TEST(verify_kl, float_agrees_with_exact) {
    KLReport ex = verify_kl(ruskai9_code(), full9());
    KLReport fl = verify_kl(ruskai9_code().to_float(), full9());
    ASSERT_TRUE(fl.correctable);
    EXPECT_EQ(fl.tolerance, 1e-9);
    EXPECT_EQ(fl.rank, 28);
    for (size_t p = 0; p < full9().size(); ++p) {
        for (size_t q = 0; q < full9().size(); ++q) {
            EXPECT_LT(std::abs(ex.D->at(p, q).value - fl.D->at(p, q).value), 1e-9);
        }
    }
}

TEST(verify_kl, permutation_invariant_exchange_rows) {
    KLReport r = verify_kl(ruskai9_code(), full9());
    for (size_t p = 1; p < 37; ++p) {
        for (size_t q = 0; q < full9().size(); ++q) {
            EXPECT_EQ(r.D->at(p, q).exact, r.D->at(0, q).exact);
        }
    }
}

TEST(verify_kl, shor_phase_exchange_fails) {
    ErrorSet e = shor_phase_exchange();
    KLReport r = verify_kl(shor_code(), e);
    EXPECT_FALSE(r.correctable);
    EXPECT_FALSE(r.D.has_value());
    const size_t e34 = index_of(e, "E(3,4)");
    bool paired = false;
    for (const auto &v : r.violations) {
        const size_t other = v.p == e34 ? v.q : (v.q == e34 ? v.p : e.size());
        if (other < e.size() && e.family(other) == ErrorFamily::z) {
            paired = true;
        }
    }
    EXPECT_TRUE(paired);
    // Phase errors alone are correctable for the Shor code.
    EXPECT_TRUE(verify_kl(shor_code(), basic_error_set(9, families::phase_flip)).correctable);
    EXPECT_TRUE(verify_kl(shor_code(), basic_error_set(9, families::single_pauli)).correctable);
}

TEST(verify_kl, repetition3) {
    Code c = repetition3();
    EXPECT_TRUE(verify_kl(c, basic_error_set(3, families::bit_flip)).correctable);
    ErrorSet ex = basic_error_set(3, families::bit_flip | families::exchange);
    EXPECT_EQ(ex.size(), 7u);
    EXPECT_TRUE(verify_kl(c, ex).correctable);
    for (int k = 1; k <= 3; ++k) {
        ErrorSet more = ex.extended({PauliString::single(3, 'Z', k)});
        EXPECT_FALSE(verify_kl(c, more).correctable);
    }
    KLOptions strict;
    strict.strict = true;
    EXPECT_TRUE(verify_kl(c, basic_error_set(3, families::bit_flip), strict).correctable);
    EXPECT_FALSE(verify_kl(ruskai9_code(), full9(), strict).correctable);
}

TEST(verify_kl, five_qubit) {
    Code c = five_qubit_code();
    KLReport r = verify_kl(c, basic_error_set(5, families::single_pauli));
    EXPECT_TRUE(r.correctable);
    EXPECT_EQ(r.rank, 16);
    EXPECT_FALSE(verify_kl(c, basic_error_set(5, families::single_pauli | families::exchange)).correctable);
}

TEST(verify_kl, monotone_random) {
    oracle::Gen gen(51);
    const Code codes[] = {shor_code(), repetition3(), ruskai9_code()};
    for (int trial = 0; trial < 30; ++trial) {
        const Code &c = codes[trial % 3];
        ErrorSet pool = basic_error_set(c.n, families::single_pauli | families::exchange);
        std::vector<ErrorOperator> ops{IdentityOp{}};
        for (size_t p = 1; p < pool.size(); ++p) {
            if (gen.uniform(0, 3) == 0) {
                ops.push_back(pool[p]);
            }
        }
        // Two-qubit Paulis make most sets fail.
        const int mask = (1 << c.n) - 1;
        ops.emplace_back(PauliString(c.n, gen.uniform(1, mask), 0));
        ErrorSet base = ErrorSet::from_operators(c.n, ops);
        bool before = verify_kl(c, base).correctable;
        std::vector<ErrorOperator> extra;
        for (size_t p = 1; p < pool.size(); ++p) {
            bool present = false;
            for (const auto &o : ops) {
                present |= o.str() == pool[p].str();
            }
            if (!present && gen.uniform(0, 4) == 0) {
                extra.push_back(pool[p]);
            }
        }
        if (extra.empty()) {
            continue;
        }
        ErrorSet bigger = base.extended(extra);
        if (!before) {
            EXPECT_FALSE(verify_kl(c, bigger).correctable);
        }
    }
}

TEST(verify_kl, phase_offdiagonal_formula_cross_check) {
    for (int n = 2; n <= 9; ++n) {
        ErrorSet e = parse_error_set("Z1, Z2", n);
        for (int k = 1; k <= n - 1; ++k) {
            std::vector<StateVector> words{orbit_sum(n, k)};
            GramTensor g = gram_tensor(std::span<const StateVector>(words), e);
            EXPECT_EQ(g.at(1, 0, 2, 0).exact, Surd(phase_offdiag_term(n, k))) << n << " " << k;
        }
    }
}

TEST(verify_kl_extended, degenerates_to_verify_kl) {
    struct Fixture {
        Code code;
        ErrorSet errors;
    };
    std::vector<Fixture> fixtures{{ruskai9_code(), full9()},
                                  {shor_code(), shor_phase_exchange()},
                                  {repetition3(), basic_error_set(3, families::single_pauli)},
                                  {five_qubit_code(), basic_error_set(5, families::single_pauli)},
                                  {five_qubit_code(), basic_error_set(5, families::single_pauli | families::exchange)}};
    for (const auto &f : fixtures) {
        KLReport a = verify_kl(f.code, f.errors);
        std::vector<std::vector<StateVector>> family;
        for (const auto &w : f.code.words) {
            family.push_back({w});
        }
        KLReport b = verify_kl_extended(family, f.errors);
        EXPECT_EQ(a.correctable, b.correctable);
        EXPECT_EQ(a.rank, b.rank);
        ASSERT_EQ(a.violations.size(), b.violations.size());
        for (size_t k = 0; k < a.violations.size(); ++k) {
            EXPECT_EQ(a.violations[k].kind, b.violations[k].kind);
            EXPECT_EQ(a.violations[k].p, b.violations[k].p);
            EXPECT_EQ(a.violations[k].q, b.violations[k].q);
            EXPECT_EQ(a.violations[k].residual, b.violations[k].residual);
        }
        if (a.D) {
            for (size_t p = 0; p < a.D->size(); ++p) {
                for (size_t q = 0; q < a.D->size(); ++q) {
                    EXPECT_EQ(a.D->at(p, q), b.D->at(p, q));
                }
            }
        }
    }
}

TEST(verify_kl_extended, detects_perturbation) {
    oracle::Gen gen(52);
    Code c = ruskai9_code().to_float();
    for (int trial = 0; trial < 5; ++trial) {
        auto dense = c.words[trial % 2].dense();
        size_t idx = 0;
        do {
            idx = static_cast<size_t>(gen.uniform(0, 511));
        } while (std::abs(dense[idx]) == 0);
        dense[idx] += 1e-3;
        std::vector<std::vector<StateVector>> family{{c.words[0]}, {c.words[1]}};
        family[trial % 2][0] = StateVector::from_dense(9, dense);
        KLReport r = verify_kl_extended(family, full9());
        EXPECT_FALSE(r.correctable);
        double worst = 0;
        for (const auto &v : r.violations) {
            worst = std::max(worst, v.magnitude);
        }
        EXPECT_GE(worst, 1e-4);
    }
}

TEST(verify_kl_extended, cross_member_overlap) {
    Code c = ruskai9_code();
    ErrorSet e = parse_error_set("X1", 9);
    // Member (1, 2) is X1 C_0, so <C_0^1|X1 C_1^2> = <C_0|C_0> != 0.
    std::vector<std::vector<StateVector>> family{{c.words[0]}, {c.words[1], pauli_apply(PauliString::single(9, 'X', 1), c.words[0])}};
    KLReport r = verify_kl_extended(family, e);
    EXPECT_FALSE(r.correctable);
    bool found = false;
    for (const auto &v : r.violations) {
        found |= v.kind == Violation::Kind::cross_word && v.p == 0 && v.q == 1 && v.word_i == "0^1" && v.word_j == "1^2";
    }
    EXPECT_TRUE(found);
}

TEST(recovery, round_trip_basic_errors) {
    Code c = ruskai9_code();
    KLReport r = verify_kl(c, full9());
    RecoveryOperation rec = build_recovery(c, full9(), *r.D);
    EXPECT_EQ(rec.syndromes().size(), 28u);
    oracle::Gen gen(53);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<std::complex<double>> alpha{{gen.real(), gen.real()}, {gen.real(), gen.real()}};
        StateVector psi = rec.encode(alpha);
        for (size_t p = 0; p < full9().size(); ++p) {
            StateVector bad = apply(full9()[p], psi);
            EXPECT_NEAR(rec.captured_probability(bad), 1.0, 1e-9);
            for (const auto &b : rec.recover(bad)) {
                if (b.probability > 1e-12) {
                    EXPECT_GE(fidelity(b.state, psi), 1 - 1e-9);
                }
            }
        }
    }
}

TEST(recovery, linear_combinations) {
    Code c = ruskai9_code();
    KLReport r = verify_kl(c, full9());
    RecoveryOperation rec = build_recovery(c, full9(), *r.D);
    oracle::Gen gen(54);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::complex<double>> alpha{{gen.real(), gen.real()}, {gen.real(), gen.real()}};
        StateVector psi = rec.encode(alpha);
        StateVector bad = StateVector::zero(9, Mode::floating);
        for (int t = 0; t < 4; ++t) {
            size_t p = static_cast<size_t>(gen.uniform(0, static_cast<int>(full9().size()) - 1));
            bad += apply(full9()[p], psi).scaled(std::complex<double>(gen.real(), gen.real()));
        }
        for (const auto &b : rec.recover(bad)) {
            if (b.probability > 1e-12) {
                EXPECT_GE(fidelity(b.state, psi), 1 - 1e-9);
            }
        }
    }
}

TEST(recovery, identity_and_exchange_act_trivially) {
    Code c = ruskai9_code();
    KLReport r = verify_kl(c, full9());
    RecoveryOperation rec = build_recovery(c, full9(), *r.D);
    std::vector<std::complex<double>> alpha{{0.6, 0.0}, {0.0, 0.8}};
    StateVector psi = rec.encode(alpha);
    EXPECT_EQ(exchange_apply(2, 7, c.words[0]), c.words[0]);
    for (const ErrorOperator &e : {ErrorOperator(IdentityOp{}), ErrorOperator(ExchangeOp(2, 7))}) {
        auto branches = rec.recover(apply(e, psi));
        double total = 0;
        for (const auto &b : branches) {
            total += b.probability;
            if (b.probability > 1e-12) {
                EXPECT_GE(fidelity(b.state, psi), 1 - 1e-12);
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(recovery, rejects_indefinite_d) {
    Code c = repetition3();
    ErrorSet e = basic_error_set(3, families::identity_only).extended({PauliString::single(3, 'X', 1)});
    DMatrix d(2, Mode::exact);
    d.at(0, 0) = d.at(1, 1) = InnerProductValue::from_exact(Surd(1));
    d.at(0, 1) = d.at(1, 0) = InnerProductValue::from_exact(Surd(2));
    EXPECT_THROW(build_recovery(c, e, d), NumericalError);
}

TEST(bounds, minimum_lengths) {
    EXPECT_EQ(dimension_bound(9, BoundScenario::single_bit).min_n, 5);
    EXPECT_EQ(dimension_bound(9, BoundScenario::all_two_bit_plus_single).min_n, 10);
    EXPECT_EQ(dimension_bound(9, BoundScenario::irrep_proposal).min_n, 9);
    EXPECT_TRUE(dimension_bound(9, BoundScenario::single_bit).holds_at_n);
    EXPECT_FALSE(dimension_bound(9, BoundScenario::all_two_bit_plus_single).holds_at_n);
    EXPECT_FALSE(dimension_bound(4, BoundScenario::single_bit).holds_at_n);
    EXPECT_FALSE(dimension_bound(9, BoundScenario::single_bit).trace.empty());
    EXPECT_EQ(parse_scenario("irrep_proposal"), BoundScenario::irrep_proposal);
    EXPECT_FALSE(parse_scenario("nope").has_value());
}

TEST(shor_demo, decomposition) {
    ShorDemoReport r = shor_exchange_demo(7, 4);
    ASSERT_EQ(r.samples.size(), 4u);
    for (const auto &s : r.samples) {
        EXPECT_LT(std::abs(s.code_coefficient - std::complex<double>(0.5, 0)), 1e-9);
        EXPECT_NEAR(s.code_fraction, 0.25, 1e-9);
        EXPECT_NEAR(s.error_fraction, 0.25, 1e-9);
        EXPECT_NEAR(s.remainder_fraction, 0.5, 1e-9);
        EXPECT_LT(s.remainder_overlap, 1e-9);
        EXPECT_LT(s.code_residual, 1e-9);
    }
    EXPECT_EQ(r.matching_qubits, (std::vector<int>{7, 8, 9}));
    EXPECT_TRUE(r.image_matches);
    EXPECT_FALSE(r.kl.correctable);
}
