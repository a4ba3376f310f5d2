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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qexc/errors.h"
#include "qexc/parallel.h"

namespace qexc {

GramTensor::GramTensor(size_t num_errors, size_t num_words, Mode mode)
    : errors_(num_errors), words_(num_words), mode_(mode), entries_(num_errors * num_words * num_errors * num_words) {
}

double GramTensor::hermiticity_defect() const {
    double worst = 0;
    for (size_t p = 0; p < errors_; ++p) {
        for (size_t i = 0; i < words_; ++i) {
            for (size_t q = 0; q < errors_; ++q) {
                for (size_t j = 0; j < words_; ++j) {
                    worst = std::max(worst, std::abs(at(p, i, q, j).value - std::conj(at(q, j, p, i).value)));
                }
            }
        }
    }
    return worst;
}

bool GramTensor::is_exactly_hermitian() const {
    if (mode_ != Mode::exact) {
        return false;
    }
    for (size_t p = 0; p < errors_; ++p) {
        for (size_t i = 0; i < words_; ++i) {
            for (size_t q = 0; q < errors_; ++q) {
                for (size_t j = 0; j < words_; ++j) {
                    if (!(at(p, i, q, j).exact == at(q, j, p, i).exact.conj())) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

GramTensor gram_tensor(std::span<const StateVector> words, const ErrorSet &errors) {
    if (words.empty()) {
        throw DomainError("gram tensor needs at least one word");
    }
    const Mode mode = words.front().mode();
    for (const auto &w : words) {
        if (w.num_qubits() != errors.num_qubits()) {
            throw DimensionError("code and error set qubit counts differ");
        }
        if (w.mode() != mode) {
            throw ModeError("words mix exact and float modes");
        }
    }
    const size_t N = errors.size();
    const size_t W = words.size();
    std::vector<StateVector> images(N * W);
    parallel_for(N, [&](size_t p) {
        for (size_t i = 0; i < W; ++i) {
            images[p * W + i] = apply(errors[p], words[i]);
        }
    });
    GramTensor g(N, W, mode);
    parallel_for(N * W, [&](size_t row) {
        for (size_t col = 0; col < N * W; ++col) {
            g.at(row / W, row % W, col / W, col % W) = inner_product(images[row], images[col]);
        }
    });
    return g;
}

GramTensor gram_tensor(const Code &code, const ErrorSet &errors) {
    if (code.n != errors.num_qubits()) {
        throw DimensionError("code has " + std::to_string(code.n) + " qubits, error set " +
                             std::to_string(errors.num_qubits()));
    }
    return gram_tensor(std::span<const StateVector>(code.words), errors);
}

std::vector<DBlock> family_blocks(const ErrorSet &errors) {
    std::vector<DBlock> blocks;
    auto block_name = [](ErrorFamily f) -> std::string {
        switch (f) {
            case ErrorFamily::identity:
            case ErrorFamily::exchange:
                return "D_0";
            case ErrorFamily::x:
                return "D_X";
            case ErrorFamily::y:
                return "D_Y";
            case ErrorFamily::z:
                return "D_Z";
            default:
                return "D_other";
        }
    };
    for (size_t p = 0; p < errors.size(); ++p) {
        std::string name = block_name(errors.family(p));
        if (!blocks.empty() && blocks.back().name == name) {
            ++blocks.back().size;
        } else {
            blocks.push_back({name, p, 1});
        }
    }
    // Disambiguate repeated runs of the same family.
    for (size_t a = 0; a < blocks.size(); ++a) {
        int copies = 0;
        for (size_t b = a + 1; b < blocks.size(); ++b) {
            if (blocks[b].name == blocks[a].name) {
                blocks[b].name += "#" + std::to_string(++copies + 1);
            }
        }
    }
    return blocks;
}

DMatrix::DMatrix(size_t size, Mode mode) : size_(size), mode_(mode), d_(size * size) {
}

namespace {

int exact_rank(const DMatrix &d, std::span<const size_t> idx) {
    const size_t m = idx.size();
    std::vector<std::vector<QComplex>> a(m, std::vector<QComplex>(m));
    for (size_t r = 0; r < m; ++r) {
        for (size_t c = 0; c < m; ++c) {
            a[r][c] = d.at(idx[r], idx[c]).exact.rational_part();
        }
    }
    int rank = 0;
    for (size_t col = 0; col < m && static_cast<size_t>(rank) < m; ++col) {
        size_t pivot = static_cast<size_t>(rank);
        while (pivot < m && a[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == m) {
            continue;
        }
        std::swap(a[pivot], a[rank]);
        QComplex inv = a[rank][col].inverse();
        for (size_t r = static_cast<size_t>(rank) + 1; r < m; ++r) {
            if (a[r][col].is_zero()) {
                continue;
            }
            QComplex f = a[r][col] * inv;
            for (size_t c = col; c < m; ++c) {
                a[r][c] -= f * a[rank][c];
            }
        }
        ++rank;
    }
    return rank;
}

Eigen::MatrixXcd to_eigen(const DMatrix &d, std::span<const size_t> idx) {
    Eigen::MatrixXcd m(idx.size(), idx.size());
    for (size_t r = 0; r < idx.size(); ++r) {
        for (size_t c = 0; c < idx.size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = d.at(idx[r], idx[c]).value;
        }
    }
    return m;
}

std::vector<size_t> all_indices(size_t n) {
    std::vector<size_t> v(n);
    for (size_t k = 0; k < n; ++k) {
        v[k] = k;
    }
    return v;
}

}  // namespace

int matrix_rank(const DMatrix &d, std::span<const size_t> indices, double tol) {
    if (indices.empty()) {
        return 0;
    }
    bool rational = d.mode() == Mode::exact;
    for (size_t r = 0; rational && r < indices.size(); ++r) {
        for (size_t c = 0; rational && c < indices.size(); ++c) {
            rational = d.at(indices[r], indices[c]).exact.is_gaussian_rational();
        }
    }
    if (rational) {
        return exact_rank(d, indices);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(d, indices), Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    int rank = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (std::abs(ev[k]) > tol * scale) {
            ++rank;
        }
    }
    return rank;
}

int matrix_rank(const DMatrix &d, double tol) {
    auto idx = all_indices(d.size());
    return matrix_rank(d, idx, tol);
}

std::string Violation::kind_name() const {
    switch (kind) {
        case Kind::cross_word:
            return "cross_word";
        case Kind::d_mismatch:
            return "d_mismatch";
        default:
            return "not_orthonormal";
    }
}

KLReport verify_kl(const GramTensor &gram, int num_qubits, const KLOptions &options,
                   const std::vector<std::string> &word_labels) {
    KLReport rep;
    rep.mode = gram.mode();
    rep.tolerance = options.tolerance.value_or(gram.mode() == Mode::exact ? 0.0 : 1e-9);
    rep.strict = options.strict;
    rep.num_words = gram.num_words();
    rep.num_errors = gram.num_errors();
    rep.space_dimension = uint64_t{1} << num_qubits;
    const double tol = rep.tolerance;
    const size_t N = gram.num_errors();
    const size_t W = gram.num_words();
    auto label = [&](size_t i) { return i < word_labels.size() ? word_labels[i] : std::to_string(i); };
    auto add = [&](Violation::Kind kind, size_t i, size_t j, size_t p, size_t q, InnerProductValue residual) {
        Violation v{kind, i, j, p, q, label(i), label(j), residual.magnitude(), std::move(residual)};
        rep.violations.push_back(std::move(v));
    };

    for (size_t i = 0; i < W; ++i) {
        for (size_t j = i + 1; j < W; ++j) {
            for (size_t p = 0; p < N; ++p) {
                for (size_t q = 0; q < N; ++q) {
                    const auto &v = gram.at(p, i, q, j);
                    if (!v.is_zero(tol)) {
                        add(Violation::Kind::cross_word, i, j, p, q, v);
                    }
                }
            }
        }
    }
    for (size_t i = 1; i < W; ++i) {
        for (size_t p = 0; p < N; ++p) {
            for (size_t q = 0; q < N; ++q) {
                auto diff = gram.at(p, i, q, i) - gram.at(p, 0, q, 0);
                if (!diff.is_zero(tol)) {
                    add(Violation::Kind::d_mismatch, i, i, p, q, diff);
                }
            }
        }
    }

    DMatrix d(N, gram.mode());
    for (size_t p = 0; p < N; ++p) {
        for (size_t q = 0; q < N; ++q) {
            d.at(p, q) = gram.at(p, 0, q, 0);
        }
    }
    if (options.strict) {
        for (size_t p = 0; p < N; ++p) {
            for (size_t q = 0; q < N; ++q) {
                auto residual = p == q ? d.at(p, q) - d.at(0, 0) : d.at(p, q);
                if (!residual.is_zero(tol)) {
                    add(Violation::Kind::not_orthonormal, 0, 0, p, q, residual);
                }
            }
        }
    }
    rep.rank = matrix_rank(d, std::max(tol, 1e-9));
    rep.dimension_used = static_cast<uint64_t>(W) * static_cast<uint64_t>(rep.rank);
    rep.correctable = rep.violations.empty();
    if (rep.correctable) {
        rep.D = std::move(d);
    }
    return rep;
}

KLReport verify_kl(const Code &code, const ErrorSet &errors, const KLOptions &options) {
    GramTensor g = gram_tensor(code, errors);
    KLReport rep = verify_kl(g, code.n, options);
    if (rep.D) {
        rep.D->blocks = family_blocks(errors);
    }
    return rep;
}

KLReport verify_kl_extended(const std::vector<std::vector<StateVector>> &family, const ErrorSet &errors,
                            const KLOptions &options) {
    // Flattening (i, m) into one word index turns the extended condition into the
    // plain one: distinct (i, m) pairs must be cross-orthogonal and every pair
    // must reproduce the (0, 0) block.
    std::vector<StateVector> flat;
    std::vector<std::string> labels;
    for (size_t i = 0; i < family.size(); ++i) {
        for (size_t m = 0; m < family[i].size(); ++m) {
            flat.push_back(family[i][m]);
            labels.push_back(std::to_string(i) + "^" + std::to_string(m + 1));
        }
    }
    if (flat.empty()) {
        throw DomainError("extended family is empty");
    }
    GramTensor g = gram_tensor(std::span<const StateVector>(flat), errors);
    KLReport rep = verify_kl(g, errors.num_qubits(), options, labels);
    if (rep.D) {
        rep.D->blocks = family_blocks(errors);
    }
    return rep;
}

BlockReport d_blocks(const DMatrix &d, const ErrorSet &errors, size_t num_words, double tol) {
    if (d.size() != errors.size()) {
        throw DimensionError("D matrix and error set sizes differ");
    }
    BlockReport rep;
    auto blocks = d.blocks.empty() ? family_blocks(errors) : d.blocks;
    const double zero_tol = d.mode() == Mode::exact ? 0.0 : tol;
    for (const auto &b : blocks) {
        BlockSummary s;
        s.name = b.name;
        s.begin = b.begin;
        s.size = b.size;
        std::vector<size_t> idx;
        for (size_t p = b.begin; p < b.begin + b.size; ++p) {
            idx.push_back(p);
        }
        s.rank = matrix_rank(d, idx, tol);
        bool diag_uniform = true;
        bool off_uniform = true;
        std::optional<InnerProductValue> diag;
        std::optional<InnerProductValue> off;
        for (size_t p : idx) {
            for (size_t q : idx) {
                const auto &v = d.at(p, q);
                auto &slot = p == q ? diag : off;
                bool &uniform = p == q ? diag_uniform : off_uniform;
                if (!slot) {
                    slot = v;
                } else if (!(*slot - v).is_zero(zero_tol)) {
                    uniform = false;
                }
            }
        }
        if (diag_uniform) {
            s.uniform_diagonal = diag;
        }
        if (off_uniform && off) {
            s.uniform_offdiagonal = off;
        }
        for (size_t p : idx) {
            for (size_t q = 0; q < d.size(); ++q) {
                if (q < b.begin || q >= b.begin + b.size) {
                    s.max_off_block = std::max(s.max_off_block, d.at(p, q).magnitude());
                }
            }
        }
        rep.max_off_block = std::max(rep.max_off_block, s.max_off_block);
        rep.sum_of_block_ranks += s.rank;
        rep.blocks.push_back(std::move(s));
    }
    rep.block_diagonal = true;
    for (const auto &b : blocks) {
        for (size_t p = b.begin; p < b.begin + b.size; ++p) {
            for (size_t q = 0; q < d.size(); ++q) {
                if ((q < b.begin || q >= b.begin + b.size) && !d.at(p, q).is_zero(zero_tol)) {
                    rep.block_diagonal = false;
                }
            }
        }
    }
    rep.total_rank = matrix_rank(d, tol);
    rep.dimension_used = static_cast<uint64_t>(num_words) * static_cast<uint64_t>(rep.total_rank);
    return rep;
}

RecoveryOperation build_recovery(const Code &code, const ErrorSet &errors, const DMatrix &d, double tol) {
    const size_t N = errors.size();
    if (d.size() != N) {
        throw DimensionError("D matrix and error set sizes differ");
    }
    if (code.words.empty()) {
        throw DomainError("code has no words");
    }
    auto idx = all_indices(N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(d, idx));
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of D failed");
    }
    const auto &ev = es.eigenvalues();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    if (ev.minCoeff() < -tol * scale) {
        throw NumericalError("D is not positive semidefinite (min eigenvalue " + std::to_string(ev.minCoeff()) + ")");
    }

    Code fcode = code.to_float();
    const double norm = std::sqrt(std::real(d.at(0, 0).value));
    if (!(norm > 0)) {
        throw NumericalError("codewords have zero norm");
    }
    RecoveryOperation rec;
    for (const auto &w : fcode.words) {
        rec.code_.push_back(w.scaled(std::complex<double>(1.0 / norm)));
    }
    std::vector<std::vector<StateVector>> images(N);
    for (size_t p = 0; p < N; ++p) {
        for (const auto &w : fcode.words) {
            images[p].push_back(apply(errors[p], w));
        }
    }
    for (Eigen::Index r = ev.size() - 1; r >= 0; --r) {
        if (ev[r] <= tol * scale) {
            continue;
        }
        RecoveryOperation::Syndrome s;
        s.eigenvalue = ev[r];
        std::vector<StateVector> targets;
        for (size_t i = 0; i < fcode.words.size(); ++i) {
            StateVector f = StateVector::zero(code.n, Mode::floating);
            for (size_t p = 0; p < N; ++p) {
                auto u = es.eigenvectors()(static_cast<Eigen::Index>(p), r);
                if (u != 0.0) {
                    f += images[p][i].scaled(u);
                }
            }
            targets.push_back(f.scaled(std::complex<double>(1.0 / std::sqrt(ev[r]))));
        }
        for (size_t p = 0; p < N; ++p) {
            s.combination.push_back(es.eigenvectors()(static_cast<Eigen::Index>(p), r));
        }
        rec.syndromes_.push_back(std::move(s));
        rec.targets_.push_back(std::move(targets));
    }
    return rec;
}

StateVector RecoveryOperation::encode(std::span<const std::complex<double>> alpha) const {
    if (alpha.size() != code_.size()) {
        throw DimensionError("logical amplitude count does not match the number of codewords");
    }
    StateVector s = StateVector::zero(code_.front().num_qubits(), Mode::floating);
    double n2 = 0;
    for (size_t i = 0; i < alpha.size(); ++i) {
        s += code_[i].scaled(alpha[i]);
        n2 += std::norm(alpha[i]);
    }
    return s.scaled(std::complex<double>(1.0 / std::sqrt(n2)));
}

std::vector<RecoveryOperation::Branch> RecoveryOperation::recover(const StateVector &corrupted) const {
    StateVector in = corrupted.to_float();
    const double total = in.norm2();
    std::vector<Branch> out;
    for (size_t r = 0; r < targets_.size(); ++r) {
        std::vector<std::complex<double>> c;
        double prob = 0;
        for (const auto &f : targets_[r]) {
            c.push_back(inner_product(f, in).value);
            prob += std::norm(c.back());
        }
        if (prob <= 1e-14 * total) {
            continue;
        }
        StateVector s = StateVector::zero(in.num_qubits(), Mode::floating);
        for (size_t i = 0; i < c.size(); ++i) {
            s += code_[i].scaled(c[i]);
        }
        out.push_back({r, prob / total, s.scaled(std::complex<double>(1.0 / std::sqrt(prob)))});
    }
    return out;
}

double RecoveryOperation::captured_probability(const StateVector &corrupted) const {
    double p = 0;
    for (const auto &b : recover(corrupted)) {
        p += b.probability;
    }
    return p;
}

double fidelity(const StateVector &a, const StateVector &b) {
    StateVector fa = a.to_float();
    StateVector fb = b.to_float();
    double na = fa.norm2();
    double nb = fb.norm2();
    if (na == 0 || nb == 0) {
        return 0;
    }
    return std::norm(inner_product(fa, fb).value) / (na * nb);
}

std::string scenario_name(BoundScenario s) {
    switch (s) {
        case BoundScenario::single_bit:
            return "single_bit";
        case BoundScenario::all_two_bit_plus_single:
            return "all_two_bit_plus_single";
        default:
            return "irrep_proposal";
    }
}

std::optional<BoundScenario> parse_scenario(std::string_view name) {
    if (name == "two_bit") {
        return BoundScenario::all_two_bit_plus_single;
    }
    if (name == "irrep") {
        return BoundScenario::irrep_proposal;
    }
    for (auto s : {BoundScenario::single_bit, BoundScenario::all_two_bit_plus_single, BoundScenario::irrep_proposal}) {
        if (scenario_name(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

namespace {

long double required_dimension(BoundScenario s, int n) {
    long double m = n;
    switch (s) {
        case BoundScenario::single_bit:
            return 2 * (3 * m + 1);
        case BoundScenario::all_two_bit_plus_single:
            return 9 * m * (m - 1) + 2 * (3 * m + 1);
        default:
            return 2 * (m - 1) * (3 * m + 1);
    }
}

std::string inequality_text(BoundScenario s) {
    switch (s) {
        case BoundScenario::single_bit:
            return "2(3n+1) <= 2^n";
        case BoundScenario::all_two_bit_plus_single:
            return "9n(n-1) + 2(3n+1) <= 2^n";
        default:
            return "2(n-1)(3n+1) <= 2^n";
    }
}

}  // namespace

BoundResult dimension_bound(int n, BoundScenario scenario) {
    if (n < 1) {
        throw DomainError("dimension_bound needs n >= 1");
    }
    // The required dimension is polynomial, so past a modest n the inequality holds
    // forever; 64 is far beyond every crossover.
    constexpr int kHorizon = 64;
    BoundResult r;
    r.scenario = scenario;
    r.n = n;
    r.inequality = inequality_text(scenario);
    int min_n = kHorizon + 1;
    for (int m = kHorizon; m >= 1; --m) {
        if (required_dimension(scenario, m) <= std::ldexp(1.0L, m)) {
            min_n = m;
        } else {
            break;
        }
    }
    r.min_n = min_n;
    r.required = required_dimension(scenario, n);
    r.available = std::ldexp(1.0L, n);
    r.holds_at_n = r.required <= r.available;
    for (int m = 1; m <= std::max(n, min_n); ++m) {
        long double req = required_dimension(scenario, m);
        long double avail = std::ldexp(1.0L, m);
        std::ostringstream line;
        line << m << ": " << static_cast<unsigned long long>(req) << " <= " << static_cast<unsigned long long>(avail)
             << (req <= avail ? " holds" : " fails");
        r.trace.push_back(line.str());
    }
    return r;
}

namespace {

// Orthonormal basis of span(vs) with the first `fixed` vectors of `basis` already orthonormal.
void extend_orthonormal(std::vector<StateVector> &basis, const std::vector<StateVector> &vs) {
    for (const auto &v : vs) {
        StateVector r = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                r -= b.scaled(inner_product(b, r).value);
            }
        }
        double n2 = r.norm2();
        if (n2 > 1e-20) {
            basis.push_back(r.scaled(std::complex<double>(1.0 / std::sqrt(n2))));
        }
    }
}

StateVector project(const std::vector<StateVector> &basis, size_t begin, size_t end, const StateVector &v) {
    StateVector out = StateVector::zero(v.num_qubits(), Mode::floating);
    for (size_t k = begin; k < end; ++k) {
        out += basis[k].scaled(inner_product(basis[k], v).value);
    }
    return out;
}

}  // namespace

ShorDemoReport shor_exchange_demo(uint64_t seed, int num_samples) {
    ShorDemoReport rep;
    const Code shor = shor_code();
    const int n = shor.n;

    {
        StateVector expected = StateVector::zero(n);
        for (const char *k : {"|000 000 000>", "|001 011 111>", "|110 100 111>", "|111 111 000>"}) {
            expected.add(parse_ket(k).index, Surd(1));
        }
        rep.image_matches = exchange_apply(3, 4, shor.words[0]) == expected;
    }
    {
        std::vector<ErrorOperator> ops{IdentityOp{}};
        for (int k = 1; k <= n; ++k) {
            ops.emplace_back(PauliString::single(n, 'Z', k));
        }
        ops.emplace_back(ExchangeOp(3, 4));
        rep.kl_errors = ErrorSet::from_operators(n, std::move(ops));
        rep.kl = verify_kl(shor, rep.kl_errors);
    }

    const Code fshor = shor.to_float();
    std::vector<StateVector> basis;
    extend_orthonormal(basis, fshor.words);
    const size_t code_dim = basis.size();
    std::vector<StateVector> error_images;
    for (char c : {'X', 'Y', 'Z'}) {
        for (int k = 1; k <= n; ++k) {
            for (const auto &w : fshor.words) {
                error_images.push_back(pauli_apply(PauliString::single(n, c, k), w));
            }
        }
    }
    extend_orthonormal(basis, error_images);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<int> match_count(n + 1, 0);
    for (int t = 0; t < num_samples; ++t) {
        ShorDemoSample s;
        s.a = {g(rng), g(rng)};
        s.b = {g(rng), g(rng)};
        const double scale = std::sqrt(std::norm(s.a) + std::norm(s.b));
        s.a /= scale;
        s.b /= scale;
        StateVector psi = fshor.words[0].scaled(s.a) + fshor.words[1].scaled(s.b);
        StateVector psi_tilde = fshor.words[0].scaled(s.a) - fshor.words[1].scaled(s.b);
        StateVector phi = exchange_apply(3, 4, psi);
        const double psi2 = psi.norm2();

        StateVector code_part = project(basis, 0, code_dim, phi);
        StateVector error_part = project(basis, code_dim, basis.size(), phi);
        StateVector gamma = phi - code_part - error_part;

        s.code_coefficient = inner_product(psi, phi).value / psi2;
        s.code_residual = std::sqrt((code_part - psi.scaled(s.code_coefficient)).norm2());
        s.code_fraction = code_part.norm2() / psi2;
        s.error_fraction = error_part.norm2() / psi2;
        s.remainder_fraction = gamma.norm2() / psi2;

        const double gamma_norm = std::sqrt(gamma.norm2());
        std::vector<StateVector> probes = fshor.words;
        probes.insert(probes.end(), error_images.begin(), error_images.end());
        for (const auto &v : probes) {
            double vn = std::sqrt(v.norm2());
            if (vn > 0 && gamma_norm > 0) {
                s.remainder_overlap = std::max(s.remainder_overlap, std::abs(inner_product(v, gamma).value) / (vn * gamma_norm));
            }
        }

        const double err_norm = std::sqrt(error_part.norm2());
        bool have_coeff = false;
        for (int k = 1; k <= n; ++k) {
            StateVector zk = pauli_apply(PauliString::single(n, 'Z', k), psi_tilde);
            double ov = err_norm > 0 ? std::abs(inner_product(zk, error_part).value) / (std::sqrt(zk.norm2()) * err_norm) : 0;
            s.z_overlap.push_back(ov);
            if (ov > 1 - 1e-9) {
                ++match_count[k];
                if (!have_coeff) {
                    s.error_coefficient = inner_product(zk, error_part).value / psi_tilde.norm2();
                    have_coeff = true;
                }
            }
        }
        rep.samples.push_back(std::move(s));
    }
    for (int k = 1; k <= n; ++k) {
        if (num_samples > 0 && match_count[k] == num_samples) {
            rep.matching_qubits.push_back(k);
        }
    }
    return rep;
}

}  // namespace qexc
