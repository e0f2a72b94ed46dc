#pragma once

// Truncated power series in eps = s - s0 at a nonzero rational base point,
// with Scalar coefficients.  These model the order-k quotients of Schwartz
// functions on the nontrivial-character line by functions flat at s0, and
// the operator S = multiplication by sqrt(s) acts here.

#include <string>
#include <vector>

#include "scalar.hpp"

namespace jetweil {

struct JetScalar {
    Rational base;               // s0 != 0
    std::vector<Scalar> coeff;   // size = order k >= 1

    JetScalar() : base(1) { coeff.resize(1); }
    JetScalar(Rational s0, int order) : base(std::move(s0)) {
        if (sgn(base) == 0) throw Error("jet base point must be nonzero");
        if (order < 1) throw Error("jet order must be at least 1");
        coeff.resize(static_cast<size_t>(order));
    }

    int order() const { return static_cast<int>(coeff.size()); }

    static JetScalar constant(const Scalar& value, const Rational& s0, int order) {
        JetScalar j(s0, order);
        j.coeff[0] = value;
        return j;
    }
    static JetScalar constant(const Rational& value, const Rational& s0, int order) {
        return constant(Scalar(value), s0, order);
    }
    // The jet of the coordinate function s itself: s0 + eps.
    static JetScalar of_s(const Rational& s0, int order) {
        JetScalar j(s0, order);
        j.coeff[0] = Scalar(s0);
        if (order >= 2) j.coeff[1] = Scalar::one();
        return j;
    }

    void require_same_shape(const JetScalar& o) const {
        if (base != o.base || coeff.size() != o.coeff.size()) throw BaseMismatch();
    }

    bool is_zero() const {
        for (const auto& c : coeff)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_one() const {
        if (!coeff[0].is_one()) return false;
        for (size_t j = 1; j < coeff.size(); ++j)
            if (!coeff[j].is_zero()) return false;
        return true;
    }
    // Nilpotent in the jet ring, i.e. zero constant coefficient.
    bool is_nilpotent() const { return coeff[0].is_zero(); }
    bool is_unit() const { return coeff[0].is_unit(); }

    JetScalar operator-() const {
        JetScalar r = *this;
        for (auto& c : r.coeff) c = -c;
        return r;
    }
    JetScalar operator+(const JetScalar& o) const {
        require_same_shape(o);
        JetScalar r = *this;
        for (size_t j = 0; j < coeff.size(); ++j) r.coeff[j] += o.coeff[j];
        return r;
    }
    JetScalar operator-(const JetScalar& o) const { return *this + (-o); }
    JetScalar operator*(const JetScalar& o) const {
        require_same_shape(o);
        JetScalar r(base, order());
        for (size_t a = 0; a < coeff.size(); ++a) {
            if (coeff[a].is_zero()) continue;
            for (size_t b = 0; a + b < coeff.size(); ++b) r.coeff[a + b] += coeff[a] * o.coeff[b];
        }
        return r;
    }
    JetScalar operator*(const Scalar& s) const {
        JetScalar r = *this;
        for (auto& c : r.coeff) c = c * s;
        return r;
    }
    JetScalar operator*(const Rational& q) const {
        JetScalar r = *this;
        for (auto& c : r.coeff) c = c * q;
        return r;
    }
    JetScalar& operator+=(const JetScalar& o) { return *this = *this + o; }
    JetScalar& operator-=(const JetScalar& o) { return *this = *this - o; }
    JetScalar& operator*=(const JetScalar& o) { return *this = *this * o; }

    bool operator==(const JetScalar& o) const { return base == o.base && coeff == o.coeff; }
    bool operator!=(const JetScalar& o) const { return !(*this == o); }

    // Truncated geometric-series inverse; exact two-sided inverse in the ring.
    JetScalar inverse() const {
        if (!coeff[0].is_unit()) throw NonUnitLeadingCoefficient();
        Scalar lead_inv = coeff[0].inverse();
        JetScalar r(base, order());
        r.coeff[0] = lead_inv;
        for (size_t m = 1; m < coeff.size(); ++m) {
            Scalar acc;
            for (size_t j = 1; j <= m; ++j) acc += coeff[j] * r.coeff[m - j];
            r.coeff[m] = -(lead_inv * acc);
        }
        return r;
    }

    // Square root via the binomial series: r = sqrt(a0) * sum binom(1/2,j) u^j
    // with u = a/a0 - 1 nilpotent.  The leading root delegates to sqrt_special,
    // so the same branch restrictions apply.
    JetScalar sqrt() const {
        Scalar lead_root = sqrt_special(coeff[0]);
        Scalar lead_inv = coeff[0].inverse();
        JetScalar u = (*this * lead_inv);
        u.coeff[0] = Scalar();  // u = a/a0 - 1
        JetScalar acc = JetScalar::constant(Scalar::one(), base, order());
        JetScalar upow = acc;
        Rational half(1, 2);
        for (int j = 1; j < order(); ++j) {
            upow *= u;
            if (upow.is_zero()) break;
            acc += upow * binomial(half, static_cast<unsigned>(j));
        }
        return acc * lead_root;
    }
};

// Matrix of multiplication by f on the jet ring in the Taylor-coefficient
// basis 1, eps, ..., eps^{k-1}: upper-triangular Toeplitz with entry
// (j, m) = f_{m-j}.  This convention reproduces the printed action of the
// central character on 2- and 3-dimensional jet modules.
inline std::vector<std::vector<Scalar>> mult_matrix(const JetScalar& f) {
    int k = f.order();
    std::vector<std::vector<Scalar>> m(static_cast<size_t>(k), std::vector<Scalar>(static_cast<size_t>(k)));
    for (int row = 0; row < k; ++row)
        for (int col = row; col < k; ++col) m[static_cast<size_t>(row)][static_cast<size_t>(col)] = f.coeff[static_cast<size_t>(col - row)];
    return m;
}

// Re-expands a(s) as a function of s^ = 1/s around 1/s0, same order.  An
// involutive ring isomorphism J_k(s0) -> J_k(1/s0).
inline JetScalar involution(const JetScalar& a) {
    Rational hat_base = 1 / a.base;
    int k = a.order();
    // w = jet of 1/s^ at hat_base:  1/(1/s0 + delta) = sum (-1)^m s0^{m+1} delta^m
    JetScalar w(hat_base, k);
    Rational p = a.base;
    for (int m = 0; m < k; ++m) {
        w.coeff[static_cast<size_t>(m)] = Scalar(m % 2 == 0 ? p : -p);
        p *= a.base;
    }
    JetScalar shift = w - JetScalar::constant(a.base, hat_base, k);  // nilpotent
    JetScalar result(hat_base, k);
    JetScalar pow = JetScalar::constant(Rational(1), hat_base, k);
    for (int j = 0; j < k; ++j) {
        result += pow * a.coeff[static_cast<size_t>(j)];
        pow *= shift;
    }
    return result;
}

inline int compare(const JetScalar& a, const JetScalar& b) {
    if (int c = compare(a.base, b.base)) return c;
    if (a.coeff.size() != b.coeff.size()) return a.coeff.size() < b.coeff.size() ? -1 : 1;
    for (size_t j = 0; j < a.coeff.size(); ++j)
        if (int c = compare(a.coeff[j], b.coeff[j])) return c;
    return 0;
}

inline std::string to_string(const JetScalar& j) {
    std::string out = "[";
    for (size_t m = 0; m < j.coeff.size(); ++m) {
        if (m) out += ", ";
        out += to_string(j.coeff[m]);
    }
    return out + "] @ s0=" + rational_str(j.base);
}

}  // namespace jetweil
