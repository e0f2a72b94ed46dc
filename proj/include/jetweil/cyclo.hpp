#pragma once

// Arithmetic in the cyclotomic field Q(z) with z a primitive 8th root of
// unity, stored on the basis 1, z, z^2, z^3 with z^4 = -1.  The field
// contains i = z^2 and sqrt(2) = z - z^3, which is everything the Weil
// generator formulas need: i^{1/2}, Fresnel phases, and the 2-part of
// (det A)^{-1/2} prefactors.

#include <array>
#include <string>

#include "rational.hpp"

namespace jetweil {

struct CycloRational {
    std::array<Rational, 4> c{};  // c[0] + c[1] z + c[2] z^2 + c[3] z^3

    CycloRational() = default;
    explicit CycloRational(const Rational& r) { c[0] = r; }
    CycloRational(Rational a, Rational b, Rational d, Rational e) : c{a, b, d, e} {}

    static CycloRational zero() { return CycloRational(); }
    static CycloRational one() { return CycloRational(Rational(1)); }
    static CycloRational i() { return zeta_power(2); }
    static CycloRational sqrt2() {
        CycloRational r;
        r.c[1] = 1;
        r.c[3] = -1;
        return r;
    }

    // z^k for any integer k, using z^4 = -1 (so z has order 8).
    static CycloRational zeta_power(long k) {
        k %= 8;
        if (k < 0) k += 8;
        CycloRational r;
        if (k < 4)
            r.c[static_cast<size_t>(k)] = 1;
        else
            r.c[static_cast<size_t>(k - 4)] = -1;
        return r;
    }

    static CycloRational from_complex(const ComplexRational& v) {
        CycloRational r;
        r.c[0] = v.re;
        r.c[2] = v.im;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (sgn(x) != 0) return false;
        return true;
    }
    bool is_rational() const { return sgn(c[1]) == 0 && sgn(c[2]) == 0 && sgn(c[3]) == 0; }
    // a + b*i, i.e. no z or z^3 component.
    bool is_complex_rational() const { return sgn(c[1]) == 0 && sgn(c[3]) == 0; }

    Rational as_rational() const {
        if (!is_rational()) throw Error("cyclotomic value is not rational");
        return c[0];
    }
    ComplexRational as_complex() const {
        if (!is_complex_rational()) throw Error("cyclotomic value is not in Q(i)");
        return {c[0], c[2]};
    }

    CycloRational operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
    CycloRational operator+(const CycloRational& o) const {
        return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
    }
    CycloRational operator-(const CycloRational& o) const {
        return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
    }
    CycloRational operator*(const CycloRational& o) const {
        std::array<Rational, 7> raw{};
        for (size_t a = 0; a < 4; ++a) {
            if (sgn(c[a]) == 0) continue;
            for (size_t b = 0; b < 4; ++b) raw[a + b] += c[a] * o.c[b];
        }
        CycloRational r;
        for (size_t k = 0; k < 7; ++k) {
            if (k < 4)
                r.c[k] += raw[k];
            else
                r.c[k - 4] -= raw[k];  // z^4 = -1
        }
        return r;
    }
    CycloRational operator*(const Rational& q) const { return {c[0] * q, c[1] * q, c[2] * q, c[3] * q}; }

    CycloRational& operator+=(const CycloRational& o) { return *this = *this + o; }
    CycloRational& operator*=(const CycloRational& o) { return *this = *this * o; }

    bool operator==(const CycloRational& o) const { return c == o.c; }
    bool operator!=(const CycloRational& o) const { return !(*this == o); }

    // Galois conjugation z -> z^k for odd k; k = 7 is complex conjugation.
    CycloRational galois(long k) const {
        CycloRational r;
        for (long a = 0; a < 4; ++a) {
            if (sgn(c[static_cast<size_t>(a)]) == 0) continue;
            r += zeta_power(a * k) * c[static_cast<size_t>(a)];
        }
        return r;
    }
    CycloRational conj() const { return galois(7); }

    // Inverse via the product of the nontrivial Galois conjugates over the
    // rational norm.
    CycloRational inverse() const {
        if (is_zero()) throw DivisionByNonUnit("inverse of zero cyclotomic value");
        CycloRational cof = galois(3) * galois(5) * galois(7);
        CycloRational norm = *this * cof;
        if (!norm.is_rational()) throw Error("cyclotomic norm failed to be rational");
        return cof * Rational(1 / norm.c[0]);
    }
};

inline int compare(const CycloRational& a, const CycloRational& b) {
    for (size_t k = 0; k < 4; ++k)
        if (int c = cmp(a.c[k], b.c[k])) return c;
    return 0;
}

inline std::string to_string(const CycloRational& v) {
    static const char* names[4] = {"", "z", "z^2", "z^3"};
    std::string out;
    for (size_t k = 0; k < 4; ++k) {
        if (sgn(v.c[k]) == 0) continue;
        if (!out.empty() && sgn(v.c[k]) > 0) out += "+";
        if (k == 0) {
            out += v.c[k].get_str();
        } else if (v.c[k] == 1) {
            out += names[k];
        } else if (v.c[k] == -1) {
            out += std::string("-") + names[k];
        } else {
            out += v.c[k].get_str() + std::string("*") + names[k];
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace jetweil
