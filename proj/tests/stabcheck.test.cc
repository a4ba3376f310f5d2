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

#include "qexc/stabcheck.h"

#include <gtest/gtest.h>

#include <vector>

#include "qexc/errors.h"
#include "testing.h"

using namespace qexc;

namespace {

bool stabilizes(const Code &c, const PauliString &g, int power) {
    for (const auto &w : c.words) {
        if (!(pauli_apply(g, w) == w.scaled(Surd(1).times_i_power(power)))) {
            return false;
        }
    }
    return true;
}

// Span of the weight-k vectors by closing the set under xor.
int brute_span_rank(int k, int n) {
    std::vector<char> in(size_t{1} << n, 0);
    in[0] = 1;
    std::vector<uint32_t> members{0};
    for (uint32_t v : weight_indices(n, k)) {
        if (in[v]) {
            continue;
        }
        const size_t before = members.size();
        for (size_t m = 0; m < before; ++m) {
            uint32_t u = members[m] ^ v;
            if (!in[u]) {
                in[u] = 1;
                members.push_back(u);
            }
        }
    }
    int rank = 0;
    while ((size_t{1} << rank) < members.size()) {
        ++rank;
    }
    return rank;
}

}  // namespace

TEST(stabilizer_scan, ruskai9_has_none) {
    AdditivityReport r = stabilizer_scan(ruskai9_code());
    EXPECT_EQ(r.scanned, 262144u);
    EXPECT_FALSE(r.is_nontrivially_stabilized);
    EXPECT_TRUE(r.findings.empty());
}

TEST(stabilizer_scan, shor_findings_reverify) {
    Code c = shor_code();
    AdditivityReport r = stabilizer_scan(c);
    EXPECT_TRUE(r.is_nontrivially_stabilized);
    EXPECT_EQ(r.findings.size(), 255u);
    bool z1z2 = false;
    for (const auto &f : r.findings) {
        EXPECT_TRUE(stabilizes(c, f.element, f.eigenvalue_power)) << f.element.str();
        PauliString sq = f.element.times(f.element);
        EXPECT_TRUE(stabilizes(c, sq, 0));
        z1z2 |= f.element.x_mask() == 0 && f.element.z_mask() == (qubit_mask(9, 1) | qubit_mask(9, 2));
    }
    EXPECT_TRUE(z1z2);
    // Products of two findings stabilize too.
    for (size_t a = 0; a < r.findings.size(); a += 17) {
        for (size_t b = 0; b < r.findings.size(); b += 23) {
            const auto &fa = r.findings[a];
            const auto &fb = r.findings[b];
            EXPECT_TRUE(stabilizes(c, fa.element.times(fb.element), fa.eigenvalue_power + fb.eigenvalue_power));
        }
    }
}

TEST(stabilizer_scan, repetition3) {
    AdditivityReport r = stabilizer_scan(repetition3());
    EXPECT_EQ(r.scanned, 64u);
    bool z12 = false, z23 = false;
    for (const auto &f : r.findings) {
        z12 |= f.element == PauliString::from_str("ZZI");
        z23 |= f.element == PauliString::from_str("IZZ");
    }
    EXPECT_TRUE(z12);
    EXPECT_TRUE(z23);
    EXPECT_EQ(r.findings.size(), 3u);
}

TEST(stabilizer_scan, five_qubit_group_order) {
    AdditivityReport r = stabilizer_scan(five_qubit_code());
    EXPECT_EQ(r.findings.size(), 15u);
}

TEST(stabilizer_scan, limits) {
    Code big{13, {StateVector::basis(13, 0), StateVector::basis(13, 1)}, "big"};
    EXPECT_THROW(stabilizer_scan(big), ResourceError);
    EXPECT_THROW(stabilizer_scan(repetition3().to_float()), ModeError);
}

TEST(span_check, sweep) {
    for (int n = 1; n <= 10; ++n) {
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(gf2_weight_rank(k, n), brute_span_rank(k, n)) << n << " " << k;
            EXPECT_EQ(span_check(k, n), brute_span_rank(k, n) == n) << n << " " << k;
            // Full span exactly for odd weights below n (plus the one-bit case).
            EXPECT_EQ(span_check(k, n), k % 2 == 1 && (k < n || n == 1)) << n << " " << k;
        }
    }
    EXPECT_TRUE(span_check(3, 9));
    EXPECT_TRUE(span_check(1, 5));
    EXPECT_FALSE(span_check(0, 4));
    EXPECT_FALSE(span_check(2, 4));
    // Weight-6 strings all have even parity, so they only reach the even subspace.
    EXPECT_FALSE(span_check(6, 9));
    EXPECT_EQ(gf2_weight_rank(6, 9), 8);
}

TEST(span_check, all_ones_phase_acts_wordwise) {
    Code c = ruskai9_code();
    PauliString z_all(9, 0, 0x1ff, 0);
    EXPECT_EQ(pauli_apply(z_all, c.words[0]), c.words[0]);
    EXPECT_EQ(pauli_apply(z_all, c.words[1]), c.words[1].scaled(Surd(-1)));
    AdditivityReport r = stabilizer_scan(c);
    for (const auto &f : r.findings) {
        EXPECT_NE(f.element.z_mask(), 0x1ffu);
    }
}

TEST(eigenvector_witness, ruskai9) {
    Code c = ruskai9_code();
    oracle::Gen gen(61);
    for (int trial = 0; trial < 30; ++trial) {
        uint32_t a = static_cast<uint32_t>(gen.uniform(1, 511));
        uint32_t b = static_cast<uint32_t>(gen.uniform(0, 511));
        EigenWitness w = eigenvector_witness(c, PauliString(9, a, b));
        EXPECT_FALSE(w.stabilizes);
        ASSERT_NE(w.kind, EigenWitness::Kind::none);
        EXPECT_TRUE(c.words[w.word].amplitude(w.component) != Surd(0));
        // Shifts of weight 6 map |0> into the support, so the mismatch is then in the amplitude.
        EXPECT_EQ(c.words[w.word].amplitude(w.image) == Surd(0), w.kind == EigenWitness::Kind::support);
    }
    for (int trial = 0; trial < 30; ++trial) {
        uint32_t b = static_cast<uint32_t>(gen.uniform(1, 511));
        EigenWitness w = eigenvector_witness(c, PauliString(9, 0, b));
        EXPECT_FALSE(w.stabilizes);
        EXPECT_EQ(w.kind, EigenWitness::Kind::phase);
        EXPECT_FALSE(w.description.empty());
    }
    EigenWitness id = eigenvector_witness(c, PauliString::identity(9));
    EXPECT_TRUE(id.stabilizes);
    EXPECT_EQ(id.kind, EigenWitness::Kind::none);
    EXPECT_EQ(id.eigenvalue_power, 0);
}
