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

#ifndef QEXC_SURD_H
#define QEXC_SURD_H

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qexc {

using Rational = mpq_class;

/// Gaussian rational re + im*i.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() = default;
    QComplex(Rational re_, Rational im_ = 0) : re(std::move(re_)), im(std::move(im_)) {
    }
    QComplex(long v) : re(v), im(0) {
    }
    QComplex(int v) : re(v), im(0) {
    }

    bool is_zero() const {
        return sgn(re) == 0 && sgn(im) == 0;
    }
    bool is_real() const {
        return sgn(im) == 0;
    }
    QComplex conj() const {
        return {re, -im};
    }
    /// |z|^2 as an exact rational.
    Rational norm2() const {
        return re * re + im * im;
    }
    QComplex inverse() const;
    std::complex<double> to_complex() const {
        return {re.get_d(), im.get_d()};
    }
    std::string str() const;

    QComplex &operator+=(const QComplex &o);
    QComplex &operator-=(const QComplex &o);
    QComplex operator-() const {
        return {-re, -im};
    }
    friend QComplex operator+(QComplex a, const QComplex &b) {
        return a += b;
    }
    friend QComplex operator-(QComplex a, const QComplex &b) {
        return a -= b;
    }
    friend QComplex operator*(const QComplex &a, const QComplex &b);
    friend QComplex operator/(const QComplex &a, const QComplex &b) {
        return a * b.inverse();
    }
    friend bool operator==(const QComplex &a, const QComplex &b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Multiplies by i^k (k taken mod 4).
QComplex times_i_power(const QComplex &z, int k);

/// Returns (s, f) with r = s^2 * f and f squarefree. Throws DomainError for r == 0.
std::pair<uint64_t, uint64_t> square_free_split(uint64_t r);

/// An exact element of Q(i)[sqrt(2), sqrt(3), ...]: a finite sum of terms c * sqrt(r)
/// with c a Gaussian rational and r a squarefree positive integer.
///
/// Square roots of distinct squarefree integers are linearly independent over Q(i),
/// so the term list (sorted by radicand, zero coefficients dropped) is canonical and
/// equality and zero tests are exact.
class Surd {
   public:
    struct Term {
        uint64_t radicand;
        QComplex coeff;
        friend bool operator==(const Term &a, const Term &b) {
            return a.radicand == b.radicand && a.coeff == b.coeff;
        }
    };

    Surd() = default;
    Surd(int v) : Surd(QComplex(v)) {
    }
    Surd(const Rational &q) : Surd(QComplex(q)) {
    }
    /// c * sqrt(r); r need not be squarefree, square factors move into c.
    Surd(const QComplex &c, uint64_t r = 1);

    static Surd sqrt(uint64_t r) {
        return Surd(QComplex(1), r);
    }
    static Surd i() {
        return Surd(QComplex(0, 1));
    }

    const std::vector<Term> &terms() const {
        return terms_;
    }
    bool is_zero() const {
        return terms_.empty();
    }
    /// Single term with radicand 1 (possibly complex).
    bool is_gaussian_rational() const;
    /// Zero or a single real term with radicand 1.
    bool is_rational() const;
    /// Coefficient of sqrt(1); the whole value when is_gaussian_rational().
    QComplex rational_part() const;

    Surd conj() const;
    /// Multiplicative inverse; only defined for a single term.
    Surd inverse() const;
    Surd times_i_power(int k) const;
    std::complex<double> to_complex() const;
    std::string str() const;

    Surd &operator+=(const Surd &o);
    Surd &operator-=(const Surd &o);
    Surd operator-() const;
    friend Surd operator+(Surd a, const Surd &b) {
        return a += b;
    }
    friend Surd operator-(Surd a, const Surd &b) {
        return a -= b;
    }
    friend Surd operator*(const Surd &a, const Surd &b);
    friend Surd operator/(const Surd &a, const Surd &b) {
        return a * b.inverse();
    }
    friend bool operator==(const Surd &a, const Surd &b) {
        return a.terms_ == b.terms_;
    }

   private:
    std::vector<Term> terms_;
};

std::string rational_str(const Rational &q);

}  // namespace qexc

#endif  // QEXC_SURD_H
