#pragma once

// The exact coefficient tower: finite sums of  gamma * sqrt(d) * tau^k  with
// gamma in Q(z8), d an odd squarefree positive integer, and tau a central
// invertible formal transcendental standing for pi.
//
// Canonical form keeps radicands odd: any factor sqrt(2) is folded into the
// cyclotomic coefficient as z - z^3.  With odd radicands the representation
// is faithful -- syntactic equality of canonical forms is value equality --
// because sqrt(d) for odd squarefree d > 1 is not contained in Q(z8), and
// distinct odd radicands stay independent over it.

#include <map>
#include <string>
#include <utility>

#include "cyclo.hpp"
#include "rational.hpp"

namespace jetweil {

struct Scalar {
    // (radicand, tau power) -> coefficient; zero coefficients are dropped.
    using Key = std::pair<Integer, int>;
    std::map<Key, CycloRational> terms;

    Scalar() = default;
    explicit Scalar(const Rational& q) { insert(Integer(1), 0, CycloRational(q)); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(Rational(1)); }
    static Scalar from_cyclo(const CycloRational& v) {
        Scalar s;
        s.insert(Integer(1), 0, v);
        return s;
    }
    static Scalar from_complex(const ComplexRational& v) { return from_cyclo(CycloRational::from_complex(v)); }
    static Scalar i() { return from_cyclo(CycloRational::i()); }
    static Scalar zeta(long k) { return from_cyclo(CycloRational::zeta_power(k)); }
    static Scalar tau(int power) {
        Scalar s;
        s.insert(Integer(1), power, CycloRational::one());
        return s;
    }
    // gamma * sqrt(radicand) * tau^k with the radicand canonicalized.
    static Scalar term(const CycloRational& gamma, const Integer& radicand, int tau_power) {
        Scalar s;
        s.insert(radicand, tau_power, gamma);
        return s;
    }

    // Folds square factors and the prime 2 out of the radicand, then adds the
    // coefficient into the map.  All mutation funnels through here.
    void insert(Integer radicand, int tau_power, CycloRational coeff) {
        if (coeff.is_zero()) return;
        if (sgn(radicand) <= 0) throw NegativeRadicand("radicand must be positive");
        auto [sq, d] = squarefree_decomposition(radicand);
        if (sq != 1) coeff = coeff * Rational(sq);
        if (d % 2 == 0) {
            d /= 2;
            coeff = coeff * CycloRational::sqrt2();
        }
        auto it = terms.find({d, tau_power});
        if (it == terms.end()) {
            terms.emplace(Key{d, tau_power}, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }
    bool is_one() const { return *this == one(); }

    bool is_single_term() const { return terms.size() == 1; }
    // Every nonzero single term is a unit of the tower.
    bool is_unit() const { return is_single_term(); }

    bool is_rational() const {
        if (terms.empty()) return true;
        if (terms.size() != 1) return false;
        const auto& [key, coeff] = *terms.begin();
        return key.first == 1 && key.second == 0 && coeff.is_rational();
    }
    Rational as_rational() const {
        if (terms.empty()) return Rational(0);
        if (!is_rational()) throw Error("scalar is not rational");
        return terms.begin()->second.c[0];
    }
    bool is_complex_rational() const {
        if (terms.empty()) return true;
        if (terms.size() != 1) return false;
        const auto& [key, coeff] = *terms.begin();
        return key.first == 1 && key.second == 0 && coeff.is_complex_rational();
    }
    ComplexRational as_complex() const {
        if (terms.empty()) return ComplexRational::zero();
        if (!is_complex_rational()) throw Error("scalar is not in Q(i)");
        return terms.begin()->second.as_complex();
    }

    Scalar operator-() const {
        Scalar r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, -v);
        return r;
    }
    Scalar operator+(const Scalar& o) const {
        Scalar r = *this;
        for (const auto& [k, v] : o.terms) r.insert(k.first, k.second, v);
        return r;
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator*(const Scalar& o) const {
        Scalar r;
        for (const auto& [ka, va] : terms) {
            for (const auto& [kb, vb] : o.terms) {
                // sqrt(d1) sqrt(d2) = g sqrt((d1/g)(d2/g)) with g = gcd(d1,d2)
                Integer g = gcd(ka.first, kb.first);
                CycloRational coeff = va * vb * Rational(g);
                r.insert((ka.first / g) * (kb.first / g), ka.second + kb.second, coeff);
            }
        }
        return r;
    }
    Scalar operator*(const Rational& q) const {
        if (sgn(q) == 0) return Scalar();
        Scalar r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, v * q);
        return r;
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const { return terms == o.terms; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Inverse of a single-term scalar: (g sqrt(d) tau^k)^-1 = g^-1 d^-1 sqrt(d) tau^-k.
    Scalar inverse() const {
        if (terms.size() != 1) throw DivisionByNonUnit();
        const auto& [key, coeff] = *terms.begin();
        Scalar r;
        Rational inv_d(Integer(1), key.first);
        inv_d.canonicalize();
        r.insert(key.first, -key.second, coeff.inverse() * inv_d);
        return r;
    }

    // Complex conjugation: z -> z^7 on coefficients; tau and radicands are real.
    Scalar conj() const {
        Scalar r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, v.conj());
        return r;
    }
};

inline int compare(const Scalar& a, const Scalar& b) {
    auto ia = a.terms.begin(), ib = b.terms.begin();
    for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
        if (int c = compare(ia->first.first, ib->first.first)) return c;
        if (ia->first.second != ib->first.second) return ia->first.second < ib->first.second ? -1 : 1;
        if (int c = compare(ia->second, ib->second)) return c;
    }
    if (ia != a.terms.end()) return 1;
    if (ib != b.terms.end()) return -1;
    return 0;
}

// Principal square root of a positive rational, as a tower element.
inline Scalar sqrt_positive_rational(const Rational& q) {
    auto [coeff, d] = rational_sqrt_parts(q);  // throws NegativeRadicand for q <= 0
    return Scalar::term(CycloRational(coeff), d, 0);
}

// Square root on the restricted branch set:
//   positive rational c        -> principal root
//   +i * c  (c > 0 rational)   -> z   * sqrt(c)   (Fresnel branch)
//   -i * c  (c > 0 rational)   -> z^7 * sqrt(c)
// with an even tau power coming along for the ride.  Anything else raises
// BranchUndetermined.
inline Scalar sqrt_special(const Scalar& a) {
    if (a.terms.size() != 1) throw BranchUndetermined("square root of a multi-term scalar");
    const auto& [key, gamma] = *a.terms.begin();
    const auto& [radicand, tau_power] = key;
    if (tau_power % 2 != 0) throw BranchUndetermined("odd tau power under square root");
    if (radicand != 1) throw BranchUndetermined("irrational radicand under square root");
    if (!gamma.is_complex_rational()) throw BranchUndetermined("coefficient outside Q(i) under square root");
    ComplexRational v = gamma.as_complex();
    Scalar root;
    if (v.is_real()) {
        if (sgn(v.re) <= 0) throw BranchUndetermined("non-positive real part under square root");
        root = sqrt_positive_rational(v.re);
    } else if (v.is_imaginary()) {
        if (sgn(v.im) > 0)
            root = Scalar::zeta(1) * sqrt_positive_rational(v.im);
        else
            root = Scalar::zeta(7) * sqrt_positive_rational(-v.im);
    } else {
        throw BranchUndetermined("mixed real/imaginary value under square root");
    }
    if (tau_power != 0) root = root * Scalar::tau(tau_power / 2);
    return root;
}

inline std::string to_string(const Scalar& s) {
    if (s.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, coeff] : s.terms) {
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(coeff) + ")";
        if (key.first != 1) out += "*sqrt(" + key.first.get_str() + ")";
        if (key.second != 0) out += "*tau^" + std::to_string(key.second);
    }
    return out;
}

}  // namespace jetweil
