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

#include <bit>
#include <cmath>

#include "qexc/errors.h"
#include "qexc/parallel.h"

namespace qexc {

std::string StabilizerFinding::eigenvalue_str() const {
    static const char *names[4] = {"1", "i", "-1", "-i"};
    return names[((eigenvalue_power % 4) + 4) % 4];
}

namespace {

constexpr int kMaxScanQubits = 12;

struct WordTable {
    std::vector<std::pair<uint32_t, const Surd *>> terms;
    std::vector<const Surd *> lookup;  // nullptr where the amplitude is zero
};

// For X(a)Z(b) with Z first, every eigenvalue lambda satisfies lambda^2 = (-1)^{a.b},
// so lambda = i^p with p even when a.b is even and p odd otherwise.
bool matches(const Surd &target, int target_power, const Surd &source, int source_power) {
    return target.times_i_power(target_power) == source.times_i_power(source_power);
}

}  // namespace

AdditivityReport stabilizer_scan(const Code &code) {
    const int n = code.n;
    if (n > kMaxScanQubits) {
        double seconds = std::ldexp(1.0, 2 * n) * 1e-6;
        throw ResourceError("stabilizer scan over 4^" + std::to_string(n) + " elements exceeds the " +
                            std::to_string(kMaxScanQubits) + "-qubit limit (estimated ~" +
                            std::to_string(static_cast<long long>(seconds)) + " s)");
    }
    if (code.mode() != Mode::exact) {
        throw ModeError("stabilizer scan requires exact codewords");
    }
    if (code.words.empty()) {
        throw DomainError("code has no words");
    }
    const uint32_t dim = uint32_t{1} << n;
    std::vector<WordTable> tables(code.words.size());
    for (size_t i = 0; i < code.words.size(); ++i) {
        tables[i].lookup.assign(dim, nullptr);
        for (const auto &[v, c] : code.words[i].terms()) {
            tables[i].terms.emplace_back(v, &c);
            tables[i].lookup[v] = &c;
        }
        if (tables[i].terms.empty()) {
            throw DomainError("codeword " + std::to_string(i) + " is zero");
        }
    }

    // Support test depends only on a: X(a) must map every support onto itself.
    std::vector<char> closed(dim, 1);
    for (uint32_t a = 0; a < dim; ++a) {
        for (const auto &t : tables) {
            for (const auto &[v, c] : t.terms) {
                if (!t.lookup[v ^ a]) {
                    closed[a] = 0;
                    break;
                }
            }
            if (!closed[a]) {
                break;
            }
        }
    }

    std::vector<std::vector<StabilizerFinding>> per_b(dim);
    parallel_for(dim, [&](size_t bi) {
        const uint32_t b = static_cast<uint32_t>(bi);
        for (uint32_t a = 0; a < dim; ++a) {
            if ((a == 0 && b == 0) || !closed[a]) {
                continue;
            }
            const int parity_ab = std::popcount(a & b) & 1;
            int lambda = -1;
            bool ok = true;
            for (const auto &t : tables) {
                for (const auto &[v, c] : t.terms) {
                    const Surd &target = *t.lookup[v ^ a];
                    const int sign_power = 2 * (std::popcount(b & v) & 1);
                    if (lambda < 0) {
                        for (int p = parity_ab; p < 4; p += 2) {
                            if (matches(target, p, *c, sign_power)) {
                                lambda = p;
                                break;
                            }
                        }
                        if (lambda < 0) {
                            ok = false;
                        }
                    } else if (!matches(target, lambda, *c, sign_power)) {
                        ok = false;
                    }
                    if (!ok) {
                        break;
                    }
                }
                if (!ok) {
                    break;
                }
            }
            if (ok) {
                per_b[b].push_back({PauliString(n, a, b, 0), lambda});
            }
        }
    });

    AdditivityReport rep;
    rep.scanned = uint64_t{1} << (2 * n);
    for (auto &v : per_b) {
        for (auto &f : v) {
            rep.findings.push_back(std::move(f));
        }
    }
    rep.is_nontrivially_stabilized = !rep.findings.empty();
    return rep;
}

int gf2_weight_rank(int k, int n) {
    std::vector<uint32_t> basis;  // basis[t] has leading bit t, or 0
    basis.assign(static_cast<size_t>(n), 0);
    int rank = 0;
    for (uint32_t v : weight_indices(n, k)) {
        uint32_t x = v;
        for (int bit = n - 1; bit >= 0 && x != 0; --bit) {
            if (!(x >> bit & 1u)) {
                continue;
            }
            if (basis[bit] == 0) {
                basis[bit] = x;
                ++rank;
                x = 0;
            } else {
                x ^= basis[bit];
            }
        }
        if (rank == n) {
            break;
        }
    }
    return rank;
}

bool span_check(int k, int n) {
    if (n < 1 || n > kMaxQubits) {
        throw DimensionError("span_check qubit count out of range");
    }
    if (k < 0 || k > n) {
        throw DomainError("weight outside [0, n]");
    }
    return gf2_weight_rank(k, n) == n;
}

EigenWitness eigenvector_witness(const Code &code, const PauliString &element) {
    if (element.num_qubits() != code.n) {
        throw DimensionError("element and code qubit counts differ");
    }
    if (code.mode() != Mode::exact) {
        throw ModeError("eigenvector witness requires exact codewords");
    }
    EigenWitness w;
    int lambda = -1;
    for (size_t i = 0; i < code.words.size(); ++i) {
        const auto &word = code.words[i];
        for (const auto &[v, c] : word.terms()) {
            int ph = 0;
            uint32_t x = element.apply_to_index(v, ph);
            Surd target = word.amplitude(x);
            auto fail = [&](EigenWitness::Kind kind, const std::string &why) {
                w.kind = kind;
                w.word = i;
                w.component = v;
                w.image = x;
                w.parity = std::popcount(element.z_mask() & v) & 1;
                w.description = "word " + std::to_string(i) + ": component " + BasisState(code.n, v).str() +
                                " maps to " + BasisState(code.n, x).str() + "; " + why;
            };
            if (target.is_zero()) {
                fail(EigenWitness::Kind::support, "image lies outside the codeword support");
                return w;
            }
            if (lambda < 0) {
                for (int p = 0; p < 4; ++p) {
                    if (matches(target, p, c, ph)) {
                        lambda = p;
                        break;
                    }
                }
                if (lambda < 0) {
                    fail(EigenWitness::Kind::phase, "amplitude ratio is not a power of i");
                    return w;
                }
            } else if (!matches(target, lambda, c, ph)) {
                fail(EigenWitness::Kind::phase, w.parity ? "sign (-1)^{b.v} = -1 disagrees with the eigenvalue"
                                                         : "amplitude disagrees with the eigenvalue");
                return w;
            }
        }
    }
    w.stabilizes = true;
    w.eigenvalue_power = lambda < 0 ? 0 : lambda;
    w.description = "every codeword is an eigenvector";
    return w;
}

}  // namespace qexc
