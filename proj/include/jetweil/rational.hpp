#pragma once

// Exact rational and complex-rational arithmetic on top of GMP, plus the
// small number-theoretic helpers (square-free decomposition, rational
// binomials) the rest of the library leans on.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace jetweil {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q".  Canonicalizes the result.
inline Rational parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: '" + s + "'");
    if (sgn(q.get_den()) == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Total order used for canonical term ordering.
inline int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

inline int compare(const Integer& a, const Integer& b) { return cmp(a, b); }

// n = square * squarefree, n > 0.  Trial division; inputs in this library
// come from small probe data, so no advanced factoring is needed.
inline std::pair<Integer, Integer> squarefree_decomposition(Integer n) {
    if (sgn(n) <= 0) throw NegativeRadicand("squarefree decomposition of non-positive integer");
    Integer square = 1, free = 1;
    Integer p = 2;
    while (p * p <= n) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            for (int j = 0; j < e / 2; ++j) square *= p;
            if (e % 2) free *= p;
        }
        p += (p == 2) ? 1 : 2;
    }
    free *= n;  // leftover prime
    return {square, free};
}

// sqrt(q) = coeff * sqrt(d) with d squarefree positive, q > 0 rational.
inline std::pair<Rational, Integer> rational_sqrt_parts(const Rational& q) {
    if (sgn(q) <= 0) throw NegativeRadicand();
    Integer num = q.get_num(), den = q.get_den();
    // sqrt(p/r) = sqrt(p*r)/r
    auto [sq, d] = squarefree_decomposition(num * den);
    Rational coeff(sq, den);
    coeff.canonicalize();
    return {coeff, d};
}

inline Rational binomial(const Rational& a, unsigned k) {
    Rational result = 1;
    for (unsigned j = 0; j < k; ++j) {
        result *= a - Rational(static_cast<long>(j));
        result /= Rational(static_cast<long>(j + 1));
    }
    return result;
}

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned j = 2; j <= n; ++j) r *= static_cast<long>(j);
    return r;
}

// (2m-1)!! with the empty product equal to 1.
inline Integer double_factorial_odd(unsigned m) {
    Integer r = 1;
    for (unsigned j = 1; j <= m; ++j) r *= static_cast<long>(2 * j - 1);
    return r;
}

// Element of Q(i) used for Gaussian phase data and formal exponent tags.
struct ComplexRational {
    Rational re, im;

    ComplexRational() : re(0), im(0) {}
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit ComplexRational(const Rational& r) : re(r), im(0) {}

    static ComplexRational zero() { return {}; }
    static ComplexRational one() { return ComplexRational(Rational(1), Rational(0)); }
    static ComplexRational i() { return ComplexRational(Rational(0), Rational(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_imaginary() const { return sgn(re) == 0; }

    ComplexRational conj() const { return {re, -im}; }

    ComplexRational operator-() const { return {-re, -im}; }
    ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
    ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
    ComplexRational operator*(const ComplexRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexRational operator*(const Rational& q) const { return {re * q, im * q}; }
    ComplexRational operator/(const ComplexRational& o) const {
        Rational n = o.re * o.re + o.im * o.im;
        if (sgn(n) == 0) throw DivisionByNonUnit("complex division by zero");
        ComplexRational c = *this * o.conj();
        return {c.re / n, c.im / n};
    }
    bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const ComplexRational& o) const { return !(*this == o); }
};

inline int compare(const ComplexRational& a, const ComplexRational& b) {
    if (int c = cmp(a.re, b.re)) return c;
    return cmp(a.im, b.im);
}

inline std::string to_string(const ComplexRational& c) {
    return c.re.get_str() + (sgn(c.im) < 0 ? "" : "+") + c.im.get_str() + "i";
}

}  // namespace jetweil
