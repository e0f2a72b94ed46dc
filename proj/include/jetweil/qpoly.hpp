#pragma once

// Univariate polynomials over Q and the Smith normal form of xI - A, which
// gives the invariant-factor list: the exact similarity invariant used to
// compare z-actions up to base change.

#include <string>
#include <vector>

#include "qlinalg.hpp"

namespace jetweil {

struct QPoly {
    std::vector<Rational> c;  // c[j] * x^j, no trailing zeros

    QPoly() = default;
    explicit QPoly(Rational constant) {
        if (sgn(constant) != 0) c.push_back(std::move(constant));
    }

    static QPoly x() {
        QPoly p;
        p.c = {Rational(0), Rational(1)};
        return p;
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }

    QPoly operator+(const QPoly& o) const {
        QPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
        for (size_t j = 0; j < c.size(); ++j) r.c[j] += c[j];
        for (size_t j = 0; j < o.c.size(); ++j) r.c[j] += o.c[j];
        r.trim();
        return r;
    }
    QPoly operator-() const {
        QPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    QPoly operator-(const QPoly& o) const { return *this + (-o); }
    QPoly operator*(const QPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        QPoly r;
        r.c.assign(c.size() + o.c.size() - 1, Rational(0));
        for (size_t a = 0; a < c.size(); ++a)
            for (size_t b = 0; b < o.c.size(); ++b) r.c[a + b] += c[a] * o.c[b];
        r.trim();
        return r;
    }
    QPoly operator*(const Rational& q) const {
        if (sgn(q) == 0) return {};
        QPoly r = *this;
        for (auto& v : r.c) v *= q;
        return r;
    }
    bool operator==(const QPoly& o) const { return c == o.c; }

    // division with remainder by a nonzero divisor
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw DivisionByNonUnit("polynomial division by zero");
        QPoly rem = *this, quot;
        quot.c.assign(degree() >= d.degree() ? static_cast<size_t>(degree() - d.degree() + 1) : 0, Rational(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            Rational f = rem.c.back() / d.c.back();
            size_t shift = static_cast<size_t>(rem.degree() - d.degree());
            quot.c[shift] = f;
            for (size_t j = 0; j < d.c.size(); ++j) rem.c[shift + j] -= f * d.c[j];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    QPoly monic() const {
        if (is_zero()) return {};
        return *this * (1 / c.back());
    }
};

inline std::string to_string(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (size_t j = p.c.size(); j-- > 0;) {
        if (sgn(p.c[j]) == 0) continue;
        if (!out.empty()) out += " + ";
        if (j == 0 || p.c[j] != 1) out += p.c[j].get_str();
        if (j >= 1) out += "x";
        if (j >= 2) out += "^" + std::to_string(j);
    }
    return out;
}

// Invariant factors of A (nonunit diagonal of the Smith normal form of
// xI - A over Q[x]), monic, in divisibility order.
inline std::vector<QPoly> invariant_factors(const QMatrix& A) {
    if (A.rows != A.cols) throw Error("invariant factors of a non-square matrix");
    size_t k = A.rows;
    std::vector<std::vector<QPoly>> m(k, std::vector<QPoly>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            QPoly e(-A.at(i, j));
            if (i == j) e = e + QPoly::x();
            m[i][j] = e;
        }
    std::vector<QPoly> diag;
    for (size_t t = 0; t < k; ++t) {
        for (;;) {
            // minimal-degree nonzero entry in the trailing block
            size_t bi = t, bj = t;
            int best = -1;
            for (size_t i = t; i < k; ++i)
                for (size_t j = t; j < k; ++j)
                    if (!m[i][j].is_zero() && (best < 0 || m[i][j].degree() < best)) {
                        best = m[i][j].degree();
                        bi = i;
                        bj = j;
                    }
            if (best < 0) {
                t = k;  // all remaining entries vanish
                break;
            }
            std::swap(m[bi], m[t]);
            for (size_t i = t; i < k; ++i) std::swap(m[i][bj], m[i][t]);
            bool changed = false;
            for (size_t i = t + 1; i < k; ++i) {
                if (m[i][t].is_zero()) continue;
                auto [q, r] = m[i][t].divmod(m[t][t]);
                for (size_t j = t; j < k; ++j) m[i][j] = m[i][j] - q * m[t][j];
                if (!r.is_zero()) changed = true;
            }
            for (size_t j = t + 1; j < k; ++j) {
                if (m[t][j].is_zero()) continue;
                auto [q, r] = m[t][j].divmod(m[t][t]);
                for (size_t i = t; i < k; ++i) m[i][j] = m[i][j] - m[i][t] * q;
                if (!r.is_zero()) changed = true;
            }
            if (changed) continue;
            bool off_clear = true;
            for (size_t i = t + 1; i < k && off_clear; ++i)
                if (!m[i][t].is_zero()) off_clear = false;
            for (size_t j = t + 1; j < k && off_clear; ++j)
                if (!m[t][j].is_zero()) off_clear = false;
            if (!off_clear) continue;
            // pivot must divide the rest of the block
            bool divides = true;
            for (size_t i = t + 1; i < k && divides; ++i)
                for (size_t j = t + 1; j < k && divides; ++j) {
                    auto [q, r] = m[i][j].divmod(m[t][t]);
                    (void)q;
                    if (!r.is_zero()) {
                        for (size_t jj = t; jj < k; ++jj) m[t][jj] = m[t][jj] + m[i][jj];
                        divides = false;
                    }
                }
            if (!divides) continue;
            if (m[t][t].degree() >= 1) diag.push_back(m[t][t].monic());
            break;
        }
        if (t == k) break;
    }
    return diag;
}

inline bool similar_matrices(const QMatrix& A, const QMatrix& B) {
    if (A.rows != B.rows) return false;
    auto fa = invariant_factors(A), fb = invariant_factors(B);
    if (fa.size() != fb.size()) return false;
    for (size_t j = 0; j < fa.size(); ++j)
        if (!(fa[j] == fb[j])) return false;
    return true;
}

}  // namespace jetweil
