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

#include "qexc/codesearch.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

#include "qexc/codes.h"
#include "qexc/errorops.h"
#include "qexc/errors.h"
#include "qexc/klverify.h"
#include "qexc/parallel.h"
#include "qexc/qstate.h"

namespace qexc {

namespace {

Rational binomial_q(int n, int k) {
    return Rational(mpz_class(std::to_string(binomial(n, k))));
}

}  // namespace

Rational phase_offdiag_term(int n, int k) {
    if (n < 2 || k < 0 || k > n) {
        throw DomainError("phase_offdiag_term needs n >= 2 and 0 <= k <= n");
    }
    Rational num((n - 2 * k) * (n - 2 * k) - n);
    Rational den(n * (n - 1));
    return num / den * binomial_q(n, k);
}

uint64_t bitflip_cross_count(int n, int k) {
    if (n < 2 || k < 0 || k > n) {
        throw DomainError("bitflip_cross_count needs n >= 2 and 0 <= k <= n");
    }
    return k == 0 ? 0 : 2 * binomial(n - 2, k - 1);
}

Rational zk_diag(int n, int k) {
    if (n < 1 || k < 0 || k > n) {
        throw DomainError("zk_diag needs n >= 1 and 0 <= k <= n");
    }
    return Rational(n - 2 * k) / n * binomial_q(n, k);
}

void SupportPattern::validate() const {
    if (n < 1 || n > kMaxQubits) {
        throw DomainError("pattern qubit count out of range");
    }
    if (weights0.empty() || weights1.empty()) {
        throw DomainError("each word needs at least one weight");
    }
    for (const auto *ws : {&weights0, &weights1}) {
        for (int k : *ws) {
            if (k < 0 || k > n) {
                throw DomainError("weight " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
            }
        }
    }
    for (int k : weights0) {
        if (weights1.count(k)) {
            throw DomainError("weight " + std::to_string(k) + " appears in both words");
        }
    }
    if (dual) {
        std::set<int> mirrored;
        for (int k : weights0) {
            mirrored.insert(n - k);
        }
        if (mirrored != weights1) {
            throw DomainError("dual pattern must have weights1 = { n - k : k in weights0 }");
        }
    }
}

SupportPattern SupportPattern::complemented() const {
    SupportPattern p{n, {}, {}, dual};
    for (int k : weights0) {
        p.weights0.insert(n - k);
    }
    for (int k : weights1) {
        p.weights1.insert(n - k);
    }
    return p;
}

std::string SupportPattern::str() const {
    auto join = [](const std::set<int> &s) {
        std::string out;
        for (int k : s) {
            out += (out.empty() ? "" : ",") + std::to_string(k);
        }
        return out;
    };
    return "n=" + std::to_string(n) + " K0={" + join(weights0) + "} K1={" + join(weights1) + "}" +
           (dual ? " dual" : "");
}

SupportPattern dual_pattern(int n, std::set<int> weights0) {
    SupportPattern p{n, std::move(weights0), {}, true};
    for (int k : p.weights0) {
        p.weights1.insert(n - k);
    }
    return p;
}

std::string search_errors_name(SearchErrors e) {
    switch (e) {
        case SearchErrors::single_pauli_exchange:
            return "pauli+exchange";
        case SearchErrors::single_pauli:
            return "pauli";
        default:
            return "bitflip";
    }
}

std::string SolverResult::status_name() const {
    switch (status) {
        case Status::feasible:
            return "feasible";
        case Status::infeasible:
            return "infeasible";
        default:
            return "no_solution_found";
    }
}

double SolverResult::ratio(int k, int l) const {
    for (const auto &word : coefficients) {
        auto a = word.find(k);
        auto b = word.find(l);
        if (a != word.end() && b != word.end()) {
            return std::abs(a->second / b->second);
        }
    }
    throw DomainError("weights " + std::to_string(k) + " and " + std::to_string(l) + " are not in one word");
}

namespace {

// Representative errors for permutation-invariant words: every bracket
// <e_p w|e_q w'> with single-qubit errors equals one with the errors on qubits 1, 2.
struct OrbitGram {
    int n = 0;
    std::vector<std::string> ops;                // labels of representative errors
    std::vector<char> kinds;                     // 'I', 'X', 'Y', 'Z'
    std::vector<std::vector<std::vector<std::vector<QComplex>>>> g;  // g[p][q][k][l]
};

std::shared_ptr<const OrbitGram> orbit_gram(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const OrbitGram>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(n); it != cache.end()) {
            return it->second;
        }
    }
    auto og = std::make_shared<OrbitGram>();
    og->n = n;
    std::vector<ErrorOperator> reps{IdentityOp{}};
    og->ops.push_back("I");
    og->kinds.push_back('I');
    for (int q = 1; q <= std::min(n, 2); ++q) {
        for (char c : {'X', 'Y', 'Z'}) {
            reps.emplace_back(PauliString::single(n, c, q));
            og->ops.push_back(std::string(1, c) + std::to_string(q));
            og->kinds.push_back(c);
        }
    }
    std::vector<std::vector<StateVector>> images(reps.size());
    for (size_t p = 0; p < reps.size(); ++p) {
        for (int k = 0; k <= n; ++k) {
            images[p].push_back(apply(reps[p], orbit_sum(n, k)));
        }
    }
    og->g.assign(reps.size(), std::vector<std::vector<std::vector<QComplex>>>(
                                  reps.size(), std::vector<std::vector<QComplex>>(n + 1, std::vector<QComplex>(n + 1))));
    parallel_for(reps.size(), [&](size_t p) {
        for (size_t q = 0; q < reps.size(); ++q) {
            for (int k = 0; k <= n; ++k) {
                for (int l = 0; l <= n; ++l) {
                    og->g[p][q][k][l] = inner_product(images[p][k], images[q][l]).exact.rational_part();
                }
            }
        }
    });
    // The closed forms must agree with the brute-force brackets they summarize.
    if (n >= 2) {
        auto idx = [&](const std::string &s) {
            return static_cast<size_t>(std::find(og->ops.begin(), og->ops.end(), s) - og->ops.begin());
        };
        for (int k = 0; k <= n; ++k) {
            if (!(og->g[0][idx("Z1")][k][k] == QComplex(zk_diag(n, k))) ||
                !(og->g[idx("Z1")][idx("Z2")][k][k] == QComplex(phase_offdiag_term(n, k))) ||
                !(og->g[idx("X1")][idx("X2")][k][k] == QComplex(Rational(mpz_class(std::to_string(bitflip_cross_count(n, k))))))) {
                throw std::logic_error("orbit Gram entries disagree with closed forms");
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = og;
    return og;
}

// One real-valued residual source.
struct Form {
    enum class Kind { cross_re, cross_im, diag } kind;
    std::string label;
    Eigen::MatrixXd m0;  // diag: word-0 quadratic form; cross: K0 x K1 bilinear form
    Eigen::MatrixXd m1;  // diag: word-1 quadratic form
    // Exact matrices for the certificate test and the fixed/direct paths.
    std::vector<std::vector<Rational>> e0;
    std::vector<std::vector<Rational>> e1;
};

struct System {
    SupportPattern pattern;
    std::vector<int> w0;  // sorted weights of word 0
    std::vector<int> w1;
    std::vector<Form> forms;
    Eigen::MatrixXd norm0;  // <w|w> forms
    Eigen::MatrixXd norm1;
    std::vector<std::vector<Rational>> enorm0;
    std::vector<std::vector<Rational>> enorm1;
    int free_count = 0;
};

std::vector<size_t> active_ops(const OrbitGram &og, SearchErrors errors) {
    std::vector<size_t> out;
    for (size_t p = 0; p < og.kinds.size(); ++p) {
        char c = og.kinds[p];
        if (c == 'I' || errors != SearchErrors::bit_flip || c == 'X') {
            out.push_back(p);
        }
    }
    return out;
}

bool all_zero(const std::vector<std::vector<Rational>> &m) {
    for (const auto &row : m) {
        for (const auto &x : row) {
            if (sgn(x) != 0) {
                return false;
            }
        }
    }
    return true;
}

Eigen::MatrixXd to_double(const std::vector<std::vector<Rational>> &m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (size_t r = 0; r < m.size(); ++r) {
        for (size_t c = 0; c < m[r].size(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c].get_d();
        }
    }
    return out;
}

System build_system(const SupportPattern &pattern, SearchErrors errors) {
    System sys;
    sys.pattern = pattern;
    sys.w0.assign(pattern.weights0.begin(), pattern.weights0.end());
    sys.w1.assign(pattern.weights1.begin(), pattern.weights1.end());
    auto og = orbit_gram(pattern.n);
    auto ops = active_ops(*og, errors);

    auto block = [&](size_t p, size_t q, const std::vector<int> &a, const std::vector<int> &b, bool imag) {
        std::vector<std::vector<Rational>> m(a.size(), std::vector<Rational>(b.size()));
        for (size_t r = 0; r < a.size(); ++r) {
            for (size_t c = 0; c < b.size(); ++c) {
                const QComplex &z = og->g[p][q][a[r]][b[c]];
                m[r][c] = imag ? z.im : z.re;
            }
        }
        return m;
    };
    // Real coefficients: x^T G x = x^T Re(G) x, symmetrized.
    auto sym = [](std::vector<std::vector<Rational>> m) {
        for (size_t r = 0; r < m.size(); ++r) {
            for (size_t c = r + 1; c < m.size(); ++c) {
                Rational avg = (m[r][c] + m[c][r]) / 2;
                m[r][c] = avg;
                m[c][r] = avg;
            }
        }
        return m;
    };
    sys.enorm0 = sym(block(0, 0, sys.w0, sys.w0, false));
    sys.enorm1 = sym(block(0, 0, sys.w1, sys.w1, false));
    sys.norm0 = to_double(sys.enorm0);
    sys.norm1 = to_double(sys.enorm1);

    for (size_t p : ops) {
        for (size_t q : ops) {
            std::string lbl = "<" + og->ops[p] + " C_i|" + og->ops[q] + " C_j>";
            for (bool imag : {false, true}) {
                auto m = block(p, q, sys.w0, sys.w1, imag);
                if (!all_zero(m)) {
                    Form f{imag ? Form::Kind::cross_im : Form::Kind::cross_re, "cross " + lbl + (imag ? " (imag)" : ""),
                           to_double(m), {}, m, {}};
                    sys.forms.push_back(std::move(f));
                }
            }
            if (p == 0 && q == 0) {
                continue;  // norm equality is imposed by the normalization
            }
            auto d0 = sym(block(p, q, sys.w0, sys.w0, false));
            auto d1 = sym(block(p, q, sys.w1, sys.w1, false));
            if (!all_zero(d0) || !all_zero(d1)) {
                Form f{Form::Kind::diag, "<" + og->ops[p] + " C_0|" + og->ops[q] + " C_0> - <" + og->ops[p] + " C_1|" +
                                             og->ops[q] + " C_1>",
                       to_double(d0), to_double(d1), d0, d1};
                sys.forms.push_back(std::move(f));
            }
        }
    }
    sys.free_count = static_cast<int>(sys.w0.size()) - 1 + (pattern.dual ? 0 : static_cast<int>(sys.w1.size()) - 1);
    return sys;
}

struct Coeffs {
    Eigen::VectorXd x0;
    Eigen::VectorXd x1;
};

Coeffs coefficients_from(const System &sys, const Eigen::VectorXd &t) {
    Coeffs c;
    const Eigen::Index n0 = static_cast<Eigen::Index>(sys.w0.size());
    c.x0.resize(n0);
    c.x0(0) = 1;
    for (Eigen::Index k = 1; k < n0; ++k) {
        c.x0(k) = t(k - 1);
    }
    const Eigen::Index n1 = static_cast<Eigen::Index>(sys.w1.size());
    c.x1.resize(n1);
    if (sys.pattern.dual) {
        // w1 is the mirror of w0, listed in increasing order, i.e. reversed.
        for (Eigen::Index k = 0; k < n1; ++k) {
            c.x1(k) = c.x0(n0 - 1 - k);
        }
    } else {
        c.x1(0) = 1;
        for (Eigen::Index k = 1; k < n1; ++k) {
            c.x1(k) = t(n0 - 1 + k - 1);
        }
    }
    return c;
}

Eigen::VectorXd residuals(const System &sys, const Eigen::VectorXd &t) {
    Coeffs c = coefficients_from(sys, t);
    const double n0 = c.x0.dot(sys.norm0 * c.x0);
    const double n1 = c.x1.dot(sys.norm1 * c.x1);
    Eigen::VectorXd r(static_cast<Eigen::Index>(sys.forms.size()));
    const double cross_scale = 1.0 / std::sqrt(n0 * n1);
    for (size_t f = 0; f < sys.forms.size(); ++f) {
        const Form &form = sys.forms[f];
        double v;
        if (form.kind == Form::Kind::diag) {
            v = c.x0.dot(form.m0 * c.x0) / n0 - c.x1.dot(form.m1 * c.x1) / n1;
        } else {
            v = c.x0.dot(form.m0 * c.x1) * cross_scale;
        }
        r(static_cast<Eigen::Index>(f)) = v;
    }
    return r;
}

// Exact quadratic-form value x^T M y for rational x, y.
Rational bilinear(const std::vector<std::vector<Rational>> &m, const std::vector<Rational> &x,
                  const std::vector<Rational> &y) {
    Rational acc = 0;
    for (size_t r = 0; r < x.size(); ++r) {
        for (size_t c = 0; c < y.size(); ++c) {
            acc += x[r] * m[r][c] * y[c];
        }
    }
    return acc;
}

// Every constraint is a homogeneous quadratic form in the coefficient vector z:
// dual patterns use z = word-0 coefficients, other patterns z = (word 0, word 1)
// with word 1 absorbing the norm-matching scale.
struct QForm {
    std::string label;
    std::vector<std::vector<Rational>> s;  // symmetric
};

using RMatrix = std::vector<std::vector<Rational>>;

std::vector<std::string> variable_names(const System &sys) {
    std::vector<std::string> names;
    for (int k : sys.w0) {
        names.push_back("a" + std::to_string(k));
    }
    if (!sys.pattern.dual) {
        for (int k : sys.w1) {
            names.push_back("b" + std::to_string(k));
        }
    }
    return names;
}

std::vector<QForm> quadratic_forms(const System &sys) {
    const size_t n0 = sys.w0.size();
    const size_t n1 = sys.w1.size();
    const size_t dim = sys.pattern.dual ? n0 : n0 + n1;
    auto var1 = [&](size_t r) { return sys.pattern.dual ? n0 - 1 - r : n0 + r; };
    auto add_diag = [&](const std::string &label, const RMatrix &e0, const RMatrix &e1) {
        QForm q{label, RMatrix(dim, std::vector<Rational>(dim))};
        for (size_t r = 0; r < n0; ++r) {
            for (size_t c = 0; c < n0; ++c) {
                q.s[r][c] += e0[r][c];
            }
        }
        for (size_t r = 0; r < n1; ++r) {
            for (size_t c = 0; c < n1; ++c) {
                q.s[var1(r)][var1(c)] -= e1[r][c];
            }
        }
        return q;
    };
    std::vector<QForm> out;
    out.push_back(add_diag("<C_0|C_0> - <C_1|C_1>", sys.enorm0, sys.enorm1));
    for (const auto &f : sys.forms) {
        if (f.kind == Form::Kind::diag) {
            out.push_back(add_diag(f.label, f.e0, f.e1));
            continue;
        }
        QForm q{f.label, RMatrix(dim, std::vector<Rational>(dim))};
        for (size_t r = 0; r < n0; ++r) {
            for (size_t c = 0; c < n1; ++c) {
                Rational half = f.e0[r][c] / 2;
                q.s[r][var1(c)] += half;
                q.s[var1(c)][r] += half;
            }
        }
        out.push_back(std::move(q));
    }
    std::erase_if(out, [](const QForm &q) { return all_zero(q.s); });
    // Forms proportional to an earlier one add nothing.
    std::vector<QForm> unique;
    std::vector<RMatrix> seen;
    for (auto &q : out) {
        RMatrix key = q.s;
        Rational lead;
        for (const auto &row : key) {
            for (const auto &x : row) {
                if (sgn(lead) == 0 && sgn(x) != 0) {
                    lead = x;
                }
            }
        }
        for (auto &row : key) {
            for (auto &x : row) {
                x /= lead;
            }
        }
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(std::move(key));
            unique.push_back(std::move(q));
        }
    }
    return unique;
}

std::string form_str(const QForm &q, const std::vector<std::string> &names) {
    std::string s;
    for (size_t r = 0; r < q.s.size(); ++r) {
        for (size_t c = r; c < q.s.size(); ++c) {
            Rational v = r == c ? q.s[r][c] : Rational(2 * q.s[r][c]);
            if (sgn(v) == 0) {
                continue;
            }
            if (!s.empty()) {
                s += sgn(v) < 0 ? " - " : " + ";
            } else if (sgn(v) < 0) {
                s += "-";
            }
            s += abs(v) == 1 ? std::string() : rational_str(abs(v)) + "*";
            s += r == c ? names[r] + "^2" : names[r] + "*" + names[c];
        }
    }
    return s;
}

// Exact positive definiteness by Gaussian elimination (all pivots > 0).
bool positive_definite(RMatrix m) {
    const size_t n = m.size();
    for (size_t k = 0; k < n; ++k) {
        if (sgn(m[k][k]) <= 0) {
            return false;
        }
        for (size_t r = k + 1; r < n; ++r) {
            Rational f = m[r][k] / m[k][k];
            for (size_t c = k; c < n; ++c) {
                m[r][c] -= f * m[k][c];
            }
        }
    }
    return true;
}

Rational round_to(double v, long den) {
    Rational q(static_cast<long>(std::llround(v * den)));
    q /= den;
    return q;
}

// Searches for weights lambda with sum lambda_f S_f positive definite by projected
// subgradient ascent on the smallest eigenvalue, then confirms the rounded weights exactly.
std::optional<std::vector<Rational>> definite_combination(const std::vector<QForm> &forms) {
    if (forms.empty()) {
        return std::nullopt;
    }
    const size_t m = forms.size();
    const Eigen::Index dim = static_cast<Eigen::Index>(forms[0].s.size());
    std::vector<Eigen::MatrixXd> mats;
    std::vector<double> scale;
    for (const auto &f : forms) {
        Eigen::MatrixXd a = to_double(f.s);
        double nrm = a.norm();
        scale.push_back(nrm);
        mats.push_back(a / nrm);
    }
    auto combine = [&](const Eigen::VectorXd &lam) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
        for (size_t f = 0; f < m; ++f) {
            s += lam(static_cast<Eigen::Index>(f)) * mats[f];
        }
        return s;
    };
    auto exact_check = [&](const Eigen::VectorXd &lam) -> std::optional<std::vector<Rational>> {
        for (long den : {100L, 10000L, 1000000L}) {
            std::vector<Rational> w(m);
            double big = lam.cwiseAbs().maxCoeff();
            RMatrix s(static_cast<size_t>(dim), std::vector<Rational>(static_cast<size_t>(dim)));
            for (size_t f = 0; f < m; ++f) {
                w[f] = round_to(lam(static_cast<Eigen::Index>(f)) / big / scale[f] * scale[0], den);
                for (Eigen::Index r = 0; r < dim; ++r) {
                    for (Eigen::Index c = 0; c < dim; ++c) {
                        s[r][c] += w[f] * forms[f].s[r][c];
                    }
                }
            }
            if (positive_definite(s)) {
                return w;
            }
        }
        return std::nullopt;
    };
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    Eigen::VectorXd best = lam;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int sign : {1, -1}) {
        lam.setZero();
        lam(0) = sign;
        for (int it = 1; it <= 3000; ++it) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(combine(lam));
            double val = es.eigenvalues()(0);
            if (val > best_val) {
                best_val = val;
                best = lam;
                if (val > 1e-6) {
                    if (auto w = exact_check(best)) {
                        return w;
                    }
                }
            }
            Eigen::VectorXd v = es.eigenvectors().col(0);
            Eigen::VectorXd g(static_cast<Eigen::Index>(m));
            for (size_t f = 0; f < m; ++f) {
                g(static_cast<Eigen::Index>(f)) = v.dot(mats[f] * v);
            }
            lam += g / std::sqrt(static_cast<double>(it));
            double nrm = lam.norm();
            if (nrm > 1) {
                lam /= nrm;
            }
        }
    }
    return std::nullopt;
}

// Every normalized form x^T A x with ||A||_2 = 1 is 2-Lipschitz on the unit sphere, and
// radial projection from the cube surface onto the sphere is nonexpansive. A cell of the
// cube surface whose center value exceeds 2 * (cell half-diagonal) therefore has no
// common zero, which covers the whole sphere once every cell is certified.
struct Covering {
    double lower_bound = 0;
    size_t cells = 0;
};

std::optional<Covering> covering_certificate(const std::vector<QForm> &forms, size_t max_cells = 400000) {
    if (forms.empty()) {
        return std::nullopt;
    }
    const int dim = static_cast<int>(forms[0].s.size());
    if (dim < 2) {
        return std::nullopt;
    }
    std::vector<Eigen::MatrixXd> mats;
    for (const auto &f : forms) {
        Eigen::MatrixXd a = to_double(f.s);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        double spectral = es.eigenvalues().cwiseAbs().maxCoeff();
        mats.push_back(a / spectral);
    }
    const double lipschitz = 2.0 * (1 + 1e-9);
    auto value = [&](const Eigen::VectorXd &u) {
        Eigen::VectorXd x = u.normalized();
        double g = 0;
        for (const auto &a : mats) {
            g = std::max(g, std::abs(x.dot(a * x)));
        }
        return g;
    };
    struct Cell {
        int axis;
        double side;
        Eigen::VectorXd center;  // the other dim-1 coordinates
        double half;
    };
    std::vector<Cell> stack;
    for (int axis = 0; axis < dim; ++axis) {
        // x and -x carry the same values, so the positive faces suffice.
        stack.push_back({axis, 1.0, Eigen::VectorXd::Zero(dim - 1), 1.0});
    }
    Covering cov;
    cov.lower_bound = std::numeric_limits<double>::infinity();
    const double diag_factor = std::sqrt(static_cast<double>(dim - 1));
    while (!stack.empty()) {
        if (++cov.cells > max_cells) {
            return std::nullopt;
        }
        Cell c = std::move(stack.back());
        stack.pop_back();
        Eigen::VectorXd u(dim);
        for (int k = 0, j = 0; k < dim; ++k) {
            u(k) = k == c.axis ? c.side : c.center(j++);
        }
        double margin = value(u) - lipschitz * c.half * diag_factor;
        if (margin > 1e-9) {
            cov.lower_bound = std::min(cov.lower_bound, margin);
            continue;
        }
        if (c.half < 1e-4) {
            return std::nullopt;
        }
        const int children = 1 << (dim - 1);
        for (int mask = 0; mask < children; ++mask) {
            Cell child{c.axis, c.side, c.center, c.half / 2};
            for (int j = 0; j < dim - 1; ++j) {
                child.center(j) += ((mask >> j) & 1 ? 1 : -1) * c.half / 2;
            }
            stack.push_back(std::move(child));
        }
    }
    return cov;
}

std::optional<std::string> infeasibility_certificate(const System &sys) {
    const auto forms = quadratic_forms(sys);
    const auto names = variable_names(sys);
    // A form fixed in sign on nonzero assignments: diagonal with one-signed entries,
    // or a single monomial.
    for (const auto &q : forms) {
        bool diagonal = true;
        bool any_pos = false;
        bool any_neg = false;
        int monomials = 0;
        for (size_t r = 0; r < q.s.size(); ++r) {
            for (size_t c = r; c < q.s.size(); ++c) {
                int sg = sgn(q.s[r][c]);
                if (sg == 0) {
                    continue;
                }
                ++monomials;
                if (r != c) {
                    diagonal = false;
                }
                any_pos |= sg > 0;
                any_neg |= sg < 0;
            }
        }
        if (monomials == 1) {
            return q.label + " = " + form_str(q, names) + " != 0 for every assignment with nonzero coefficients";
        }
        if (diagonal && any_pos != any_neg) {
            return q.label + " = " + form_str(q, names) + (any_pos ? " > 0" : " < 0") +
                   " for every assignment with nonzero coefficients";
        }
    }
    if (auto w = definite_combination(forms)) {
        std::string s;
        for (size_t f = 0; f < forms.size(); ++f) {
            const Rational &c = (*w)[f];
            if (sgn(c) == 0) {
                continue;
            }
            if (!s.empty()) {
                s += sgn(c) < 0 ? " - " : " + ";
            } else if (sgn(c) < 0) {
                s += "-";
            }
            s += (abs(c) == 1 ? std::string() : rational_str(abs(c)) + "*") + "[" + forms[f].label + "]";
        }
        return s + " is a positive definite form in (" +
               [&] {
                   std::string v;
                   for (const auto &nm : names) {
                       v += (v.empty() ? "" : ", ") + nm;
                   }
                   return v;
               }() +
               "), so the constraints have no common nonzero solution";
    }
    if (auto cov = covering_certificate(forms)) {
        std::ostringstream msg;
        msg << "max_f |q_f(x)| / ||q_f|| > " << cov->lower_bound * 0.999 << " on the unit sphere over the "
            << forms.size() << " constraint forms (Lipschitz covering, " << cov->cells
            << " cells), so the constraints have no common nonzero solution";
        return msg.str();
    }
    return std::nullopt;
}

// Levenberg-Marquardt on the residual vector with a forward-difference Jacobian.
Eigen::VectorXd polish(const System &sys, Eigen::VectorXd t) {
    double mu = 1e-3;
    Eigen::VectorXd r = residuals(sys, t);
    double cost = r.squaredNorm();
    for (int iter = 0; iter < 200 && cost > 1e-30; ++iter) {
        Eigen::MatrixXd J(r.size(), t.size());
        for (Eigen::Index k = 0; k < t.size(); ++k) {
            double h = 1e-7 * std::max(1.0, std::abs(t(k)));
            Eigen::VectorXd tp = t;
            tp(k) += h;
            J.col(k) = (residuals(sys, tp) - r) / h;
        }
        Eigen::MatrixXd A = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        bool improved = false;
        for (int attempt = 0; attempt < 20; ++attempt) {
            Eigen::MatrixXd Am = A;
            Am.diagonal().array() += mu * (1.0 + A.diagonal().array());
            Eigen::VectorXd step = Am.ldlt().solve(-g);
            Eigen::VectorXd tn = t + step;
            Eigen::VectorXd rn = residuals(sys, tn);
            double cn = rn.squaredNorm();
            if (std::isfinite(cn) && cn < cost) {
                t = tn;
                r = rn;
                cost = cn;
                mu = std::max(mu / 3, 1e-12);
                improved = true;
                break;
            }
            mu *= 4;
        }
        if (!improved) {
            break;
        }
    }
    return t;
}

ErrorSet verification_errors(int n, SearchErrors errors) {
    switch (errors) {
        case SearchErrors::single_pauli_exchange:
            return basic_error_set(n, families::single_pauli | families::exchange);
        case SearchErrors::single_pauli:
            return basic_error_set(n, families::single_pauli);
        default:
            return basic_error_set(n, families::bit_flip);
    }
}

// Scales word 1 to word 0's norm, realizes the code and re-runs verify_kl.
bool finalize(const System &sys, const Eigen::VectorXd &t, const SolverOptions &options, SolverResult &res) {
    Coeffs c = coefficients_from(sys, t);
    const double n0 = c.x0.dot(sys.norm0 * c.x0);
    const double n1 = c.x1.dot(sys.norm1 * c.x1);
    const double s = std::sqrt(n0 / n1);
    std::vector<std::map<int, double>> coeffs(2);
    for (size_t k = 0; k < sys.w0.size(); ++k) {
        coeffs[0][sys.w0[k]] = c.x0(static_cast<Eigen::Index>(k));
    }
    for (size_t k = 0; k < sys.w1.size(); ++k) {
        coeffs[1][sys.w1[k]] = s * c.x1(static_cast<Eigen::Index>(k));
    }
    res.coefficients = coeffs;
    res.max_residual = residuals(sys, t).cwiseAbs().maxCoeff();

    // Unit-norm words make the absolute tolerance meaningful.
    std::vector<std::map<int, double>> unit = coeffs;
    for (auto &w : unit) {
        for (auto &[k, a] : w) {
            a /= std::sqrt(n0);
        }
    }
    try {
        Code code = perm_invariant_code(sys.pattern.n, unit, options.tolerance);
        KLOptions kl;
        kl.tolerance = options.tolerance;
        res.verified = verify_kl(code, verification_errors(sys.pattern.n, options.errors), kl).correctable;
    } catch (const InvalidCodeError &) {
        res.verified = false;
    }
    return res.verified;
}

bool nondegenerate(const Eigen::VectorXd &t) {
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        if (!std::isfinite(t(k)) || std::abs(t(k)) < 1e-6) {
            return false;
        }
    }
    return true;
}

// Exact polynomial c[0] + c[1] t + c[2] t^2 for one constraint in the single free ratio.
std::vector<Rational> constraint_poly(const System &sys, const Form &f) {
    // Evaluate at three rational points and interpolate; each constraint, after clearing
    // the positive norm denominators, has degree <= 2 in t.
    auto value_at = [&](const Rational &t) -> Rational {
        std::vector<Rational> x0(sys.w0.size());
        x0[0] = 1;
        for (size_t k = 1; k < x0.size(); ++k) {
            x0[k] = t;
        }
        std::vector<Rational> x1(sys.w1.size());
        if (sys.pattern.dual) {
            for (size_t k = 0; k < x1.size(); ++k) {
                x1[k] = x0[x0.size() - 1 - k];
            }
        } else {
            x1[0] = 1;
            for (size_t k = 1; k < x1.size(); ++k) {
                x1[k] = t;
            }
        }
        if (f.kind != Form::Kind::diag) {
            return bilinear(f.e0, x0, x1);
        }
        if (sys.pattern.dual) {
            // Complement duality makes the two norms equal identically.
            return bilinear(f.e0, x0, x0) - bilinear(f.e1, x1, x1);
        }
        return bilinear(f.e0, x0, x0) * bilinear(sys.enorm1, x1, x1) -
               bilinear(f.e1, x1, x1) * bilinear(sys.enorm0, x0, x0);
    };
    Rational v0 = value_at(0);
    Rational v1 = value_at(1);
    Rational vm = value_at(-1);
    Rational c2 = (v1 + vm) / 2 - v0;
    Rational c1 = (v1 - vm) / 2;
    // Guard the degree claim with a fourth point.
    Rational v2 = value_at(2);
    if (v2 != v0 + 2 * c1 + 4 * c2) {
        throw std::logic_error("constraint polynomial exceeds degree 2");
    }
    return {v0, c1, c2};
}

std::string poly_str(const std::vector<Rational> &c) {
    std::string s;
    const char *names[3] = {"", "*t", "*t^2"};
    for (int d = 0; d < 3; ++d) {
        if (sgn(c[d]) == 0) {
            continue;
        }
        if (!s.empty()) {
            s += sgn(c[d]) < 0 ? " - " : " + ";
            s += rational_str(abs(c[d]));
        } else {
            s += rational_str(c[d]);
        }
        s += names[d];
    }
    return s.empty() ? "0" : s;
}

}  // namespace

SolverResult solve_coefficients(const SupportPattern &pattern, const SolverOptions &options) {
    pattern.validate();
    if (pattern.weights0.size() > 4 || pattern.weights1.size() > 4) {
        throw CapabilityError("solver supports at most 4 free coefficients per word");
    }
    if (pattern.n < 2) {
        throw CapabilityError("solver needs n >= 2");
    }
    SolverResult res;
    res.pattern = pattern;
    res.errors = options.errors;
    System sys = build_system(pattern, options.errors);

    if (auto cert = infeasibility_certificate(sys)) {
        res.status = SolverResult::Status::infeasible;
        res.certificate = *cert;
        res.method = "certificate";
        return res;
    }

    auto accept = [&](const Eigen::VectorXd &t, const std::string &method) {
        res.method = method;
        if (finalize(sys, t, options, res)) {
            res.status = SolverResult::Status::feasible;
            return true;
        }
        return false;
    };

    if (sys.free_count == 0) {
        Eigen::VectorXd t(0);
        double worst = residuals(sys, t).size() ? residuals(sys, t).cwiseAbs().maxCoeff() : 0.0;
        if (worst <= options.tolerance && accept(t, "fixed")) {
            return res;
        }
        res.method = "fixed";
        res.coefficients.clear();
        res.max_residual = worst;
        res.status = SolverResult::Status::no_solution_found;
        res.certificate = "fixed coefficients leave residual " + std::to_string(worst);
        return res;
    }

    if (sys.free_count == 1) {
        std::vector<std::vector<Rational>> polys;
        std::vector<std::string> labels;
        for (const auto &f : sys.forms) {
            auto c = constraint_poly(sys, f);
            if (sgn(c[0]) != 0 || sgn(c[1]) != 0 || sgn(c[2]) != 0) {
                polys.push_back(c);
                labels.push_back(f.label);
            }
        }
        std::vector<double> candidates;
        std::string basis_label;
        if (polys.empty()) {
            candidates.push_back(1.0);
        } else {
            // Lowest-degree constraint first; a nonzero constant or a quadratic with
            // negative discriminant is sign-definite.
            size_t best = 0;
            auto degree = [](const std::vector<Rational> &c) { return sgn(c[2]) ? 2 : (sgn(c[1]) ? 1 : 0); };
            for (size_t k = 1; k < polys.size(); ++k) {
                if (degree(polys[k]) < degree(polys[best])) {
                    best = k;
                }
            }
            const auto &c = polys[best];
            basis_label = labels[best] + " = " + poly_str(c);
            for (size_t k = 0; k < polys.size(); ++k) {
                const auto &pk = polys[k];
                Rational disc = pk[1] * pk[1] - 4 * pk[0] * pk[2];
                if (degree(pk) == 0 || (degree(pk) == 2 && sgn(disc) < 0)) {
                    res.status = SolverResult::Status::infeasible;
                    res.method = "direct";
                    res.certificate = labels[k] + " = " + poly_str(pk) + " has no real root";
                    return res;
                }
            }
            if (degree(c) == 1) {
                candidates.push_back(Rational(-c[0] / c[1]).get_d());
            } else {
                Rational disc = c[1] * c[1] - 4 * c[0] * c[2];
                long double sq = std::sqrt(static_cast<long double>(disc.get_d()));
                long double b = c[1].get_d();
                long double a2 = 2.0L * c[2].get_d();
                // Prefer the positive root; the sign of a free ratio is a gauge choice
                // only when both roots survive.
                std::vector<double> roots{static_cast<double>((-b + sq) / a2), static_cast<double>((-b - sq) / a2)};
                std::sort(roots.begin(), roots.end(), [](double x, double y) { return x > y; });
                candidates = roots;
            }
        }
        for (double t0 : candidates) {
            Eigen::VectorXd t(1);
            t(0) = t0;
            if (!nondegenerate(t)) {
                continue;
            }
            if (residuals(sys, t).cwiseAbs().maxCoeff() <= options.tolerance && accept(t, "direct")) {
                return res;
            }
        }
        res.method = "direct";
        res.coefficients.clear();
        res.status = SolverResult::Status::no_solution_found;
        res.certificate = "no nonzero root of " + (basis_label.empty() ? std::string("the constraints") : basis_label) +
                          " satisfies every constraint";
        return res;
    }

    // Dense grid over the free ratios, zoom refinement around the best points, then
    // Levenberg-Marquardt.
    const int d = sys.free_count;
    int points = options.grid_points;
    if (d > 2) {
        points = std::max(5, std::min(points, static_cast<int>(std::floor(std::pow(2e5, 1.0 / d)))));
        if (points % 2 == 0) {
            ++points;
        }
    }
    const double step0 = 2 * options.grid_range / (points - 1);
    auto cost = [&](const Eigen::VectorXd &t) {
        auto r = residuals(sys, t);
        double c = r.squaredNorm();
        return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
    };
    auto grid_search = [&](const Eigen::VectorXd &center, double step, int per_dim, size_t keep) {
        std::vector<std::pair<double, Eigen::VectorXd>> best;
        std::vector<int> idx(d, 0);
        const int half = per_dim / 2;
        while (true) {
            Eigen::VectorXd t(d);
            for (int k = 0; k < d; ++k) {
                t(k) = center(k) + (idx[k] - half) * step;
            }
            double c = cost(t);
            if (best.size() < keep || c < best.back().first) {
                best.emplace_back(c, t);
                std::sort(best.begin(), best.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
                if (best.size() > keep) {
                    best.pop_back();
                }
            }
            int k = 0;
            while (k < d && ++idx[k] == per_dim) {
                idx[k++] = 0;
            }
            if (k == d) {
                break;
            }
        }
        return best;
    };

    auto seeds = grid_search(Eigen::VectorXd::Zero(d), step0, points, 12);
    double resolution = step0;
    Eigen::VectorXd best_t;
    double best_cost = std::numeric_limits<double>::infinity();
    for (auto &[c0, seed] : seeds) {
        Eigen::VectorXd t = seed;
        double step = step0;
        const int zoom_points = d <= 2 ? 21 : 5;
        for (int r = 0; r < options.refinements; ++r) {
            step /= options.refinement_factor;
            // The zoom window spans one coarse step either side of the current best.
            double window_step = step * options.refinement_factor * 2 / (zoom_points - 1);
            t = grid_search(t, window_step, zoom_points, 1).front().second;
        }
        resolution = step;
        t = polish(sys, t);
        double c = cost(t);
        if (nondegenerate(t) && residuals(sys, t).cwiseAbs().maxCoeff() <= options.tolerance) {
            res.resolution = resolution;
            if (accept(t, "grid")) {
                return res;
            }
        }
        if (c < best_cost) {
            best_cost = c;
            best_t = t;
        }
    }
    res.method = "grid";
    res.resolution = resolution;
    res.coefficients.clear();
    res.status = SolverResult::Status::no_solution_found;
    res.max_residual = best_t.size() ? residuals(sys, best_t).cwiseAbs().maxCoeff() : 0.0;
    std::ostringstream msg;
    msg << "no solution on a " << points << "^" << d << " grid over [" << -options.grid_range << ", "
        << options.grid_range << "] refined " << options.refinements << "x by " << options.refinement_factor
        << " (best max residual " << res.max_residual << ")";
    res.certificate = msg.str();
    return res;
}

std::vector<SupportPattern> dual_patterns(int n, int max_weights) {
    std::vector<SupportPattern> out;
    std::vector<int> usable;
    for (int k = 0; k <= n; ++k) {
        if (2 * k != n) {
            usable.push_back(k);
        }
    }
    // Subsets of size 1..max_weights containing no complementary pair, in
    // lexicographic order by size then weights.
    for (int size = 1; size <= max_weights; ++size) {
        std::vector<int> pick(size);
        std::function<void(size_t, int)> rec = [&](size_t start, int depth) {
            if (depth == size) {
                std::set<int> s(pick.begin(), pick.end());
                for (int k : s) {
                    if (s.count(n - k)) {
                        return;
                    }
                }
                out.push_back(dual_pattern(n, s));
                return;
            }
            for (size_t a = start; a < usable.size(); ++a) {
                pick[depth] = usable[a];
                rec(a + 1, depth + 1);
            }
        };
        rec(0, 0);
    }
    return out;
}

std::vector<SolverResult> survey(int n, const SolverOptions &options, int max_weights) {
    auto patterns = dual_patterns(n, max_weights);
    orbit_gram(n);
    std::vector<SolverResult> results(patterns.size());
    parallel_for(patterns.size(), [&](size_t k) { results[k] = solve_coefficients(patterns[k], options); });
    return results;
}

std::vector<SolverResult> survey_7bit() {
    SolverOptions options;
    options.errors = SearchErrors::single_pauli;
    return survey(7, options, 3);
}

}  // namespace qexc
