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

#include "qexc/surd.h"

#include <algorithm>
#include <sstream>

#include "qexc/errors.h"

namespace qexc {

QComplex &QComplex::operator+=(const QComplex &o) {
    re += o.re;
    im += o.im;
    return *this;
}

QComplex &QComplex::operator-=(const QComplex &o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

QComplex operator*(const QComplex &a, const QComplex &b) {
    if (a.is_real() && b.is_real()) {
        return {a.re * b.re};
    }
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QComplex QComplex::inverse() const {
    if (is_zero()) {
        throw DomainError("division by zero");
    }
    Rational d = norm2();
    return {re / d, -im / d};
}

std::string rational_str(const Rational &q) {
    return q.get_str();
}

std::string QComplex::str() const {
    if (is_real()) {
        return rational_str(re);
    }
    if (sgn(re) == 0) {
        if (im == 1) {
            return "i";
        }
        if (im == -1) {
            return "-i";
        }
        return rational_str(im) + " i";
    }
    std::string s = "(" + rational_str(re);
    if (sgn(im) < 0) {
        s += " - " + rational_str(Rational(-im));
    } else {
        s += " + " + rational_str(im);
    }
    return s + " i)";
}

QComplex times_i_power(const QComplex &z, int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return z;
        case 1:
            return {-z.im, z.re};
        case 2:
            return {-z.re, -z.im};
        default:
            return {z.im, -z.re};
    }
}

std::pair<uint64_t, uint64_t> square_free_split(uint64_t r) {
    if (r == 0) {
        throw DomainError("radicand must be positive");
    }
    uint64_t s = 1;
    uint64_t f = 1;
    for (uint64_t p = 2; p * p <= r; ++p) {
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        for (int t = 0; t < e / 2; ++t) {
            s *= p;
        }
        if (e % 2 == 1) {
            f *= p;
        }
    }
    f *= r;
    return {s, f};
}

Surd::Surd(const QComplex &c, uint64_t r) {
    if (c.is_zero()) {
        return;
    }
    auto [s, f] = square_free_split(r);
    QComplex scaled = c;
    if (s != 1) {
        Rational sq(mpz_class(std::to_string(s)));
        scaled = QComplex(c.re * sq, c.im * sq);
    }
    terms_.push_back(Term{f, std::move(scaled)});
}

bool Surd::is_gaussian_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

bool Surd::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1 && terms_[0].coeff.is_real());
}

QComplex Surd::rational_part() const {
    if (!terms_.empty() && terms_[0].radicand == 1) {
        return terms_[0].coeff;
    }
    return {};
}

Surd Surd::conj() const {
    Surd out = *this;
    for (auto &t : out.terms_) {
        t.coeff.im = -t.coeff.im;
    }
    return out;
}

Surd Surd::inverse() const {
    if (terms_.size() != 1) {
        throw DomainError(terms_.empty() ? "division by zero" : "inverse of a multi-term surd");
    }
    // 1 / (c sqrt(r)) = (1 / (c r)) sqrt(r)
    const Term &t = terms_[0];
    Rational r(mpz_class(std::to_string(t.radicand)));
    QComplex inv = t.coeff.inverse();
    Surd out;
    out.terms_.push_back(Term{t.radicand, QComplex(inv.re / r, inv.im / r)});
    return out;
}

Surd Surd::times_i_power(int k) const {
    Surd out = *this;
    for (auto &t : out.terms_) {
        t.coeff = qexc::times_i_power(t.coeff, k);
    }
    return out;
}

std::complex<double> Surd::to_complex() const {
    std::complex<double> v = 0;
    for (const auto &t : terms_) {
        v += t.coeff.to_complex() * std::sqrt(static_cast<double>(t.radicand));
    }
    return v;
}

std::string Surd::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    for (size_t k = 0; k < terms_.size(); ++k) {
        if (k > 0) {
            out << " + ";
        }
        out << terms_[k].coeff.str();
        if (terms_[k].radicand != 1) {
            out << " sqrt(" << terms_[k].radicand << ")";
        }
    }
    return out.str();
}

namespace {

template <typename Combine>
std::vector<Surd::Term> merge(const std::vector<Surd::Term> &a, const std::vector<Surd::Term> &b, Combine combine) {
    std::vector<Surd::Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0;
    size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].radicand < b[j].radicand)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].radicand < a[i].radicand) {
            out.push_back(Surd::Term{b[j].radicand, combine(QComplex(), b[j].coeff)});
            ++j;
        } else {
            QComplex c = combine(a[i].coeff, b[j].coeff);
            if (!c.is_zero()) {
                out.push_back(Surd::Term{a[i].radicand, std::move(c)});
            }
            ++i;
            ++j;
        }
    }
    return out;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b != 0) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Surd &Surd::operator+=(const Surd &o) {
    if (o.terms_.empty()) {
        return *this;
    }
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    if (terms_.size() == 1 && o.terms_.size() == 1 && terms_[0].radicand == o.terms_[0].radicand) {
        terms_[0].coeff += o.terms_[0].coeff;
        if (terms_[0].coeff.is_zero()) {
            terms_.clear();
        }
        return *this;
    }
    terms_ = merge(terms_, o.terms_, [](const QComplex &x, const QComplex &y) { return x + y; });
    return *this;
}

Surd &Surd::operator-=(const Surd &o) {
    if (o.terms_.empty()) {
        return *this;
    }
    terms_ = merge(terms_, o.terms_, [](const QComplex &x, const QComplex &y) { return x - y; });
    return *this;
}

Surd Surd::operator-() const {
    Surd out = *this;
    for (auto &t : out.terms_) {
        t.coeff = -t.coeff;
    }
    return out;
}

Surd operator*(const Surd &a, const Surd &b) {
    Surd out;
    if (a.terms_.empty() || b.terms_.empty()) {
        return out;
    }
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        const auto &x = a.terms_[0];
        const auto &y = b.terms_[0];
        QComplex c = x.coeff * y.coeff;
        if (x.radicand == 1 || y.radicand == 1) {
            out.terms_.push_back(Surd::Term{x.radicand * y.radicand, std::move(c)});
            return out;
        }
    }
    for (const auto &x : a.terms_) {
        for (const auto &y : b.terms_) {
            // sqrt(r) sqrt(s) = g sqrt(r s / g^2) for squarefree r, s with g = gcd(r, s).
            uint64_t g = gcd_u64(x.radicand, y.radicand);
            unsigned __int128 rest = static_cast<unsigned __int128>(x.radicand / g) * (y.radicand / g);
            if (rest > UINT64_MAX) {
                throw DomainError("radicand overflow");
            }
            QComplex c = x.coeff * y.coeff;
            if (g != 1) {
                Rational gq(mpz_class(std::to_string(g)));
                c = QComplex(c.re * gq, c.im * gq);
            }
            out += Surd(c, static_cast<uint64_t>(rest));
        }
    }
    return out;
}

}  // namespace qexc
