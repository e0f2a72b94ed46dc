#pragma once

// The Weyl algebra in n variables with exact coefficients, kept in normal
// order (all x to the left of all d).  Hosts the infinitesimal Weil
// representation dsigma of sp(2n) and the bracket-homomorphism check that
// pins down its general-n block formulas.

#include <map>
#include <string>
#include <vector>

#include "jet.hpp"
#include "multiindex.hpp"
#include "qlinalg.hpp"

namespace jetweil {

template <class R>
struct WeylOp {
    size_t vars = 0;
    // (x exponents, d exponents) -> coefficient, zero coefficients dropped
    std::map<std::pair<MultiIndex, MultiIndex>, R> terms;

    WeylOp() = default;
    explicit WeylOp(size_t n) : vars(n) {}

    static WeylOp monomial(size_t n, const MultiIndex& xe, const MultiIndex& de, const R& coeff) {
        WeylOp op(n);
        op.add_term(xe, de, coeff);
        return op;
    }
    static WeylOp x(size_t n, size_t j, const R& coeff) {
        MultiIndex e = zero_index(n);
        e[j] = 1;
        return monomial(n, e, zero_index(n), coeff);
    }
    static WeylOp d(size_t n, size_t j, const R& coeff) {
        MultiIndex e = zero_index(n);
        e[j] = 1;
        return monomial(n, zero_index(n), e, coeff);
    }
    static WeylOp constant(size_t n, const R& coeff) { return monomial(n, zero_index(n), zero_index(n), coeff); }

    void add_term(const MultiIndex& xe, const MultiIndex& de, const R& coeff) {
        if (coeff.is_zero()) return;
        auto key = std::make_pair(xe, de);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    void require_same_arity(const WeylOp& o) const {
        if (vars != o.vars) throw ArityMismatch();
    }

    WeylOp operator+(const WeylOp& o) const {
        require_same_arity(o);
        WeylOp r = *this;
        for (const auto& [k, v] : o.terms) r.add_term(k.first, k.second, v);
        return r;
    }
    WeylOp operator-() const {
        WeylOp r(vars);
        for (const auto& [k, v] : terms) r.terms.emplace(k, -v);
        return r;
    }
    WeylOp operator-(const WeylOp& o) const { return *this + (-o); }

    // Normal-ordered product.  Per variable,
    //   d^b x^a = sum_j C(b,j) C(a,j) j!  x^{a-j} d^{b-j},
    // applied to the inner pair (d exponents of the left factor, x exponents
    // of the right factor); outer x/d exponents multiply through.
    WeylOp operator*(const WeylOp& o) const {
        require_same_arity(o);
        WeylOp r(vars);
        for (const auto& [ka, va] : terms) {
            const auto& [ax, ad] = ka;
            for (const auto& [kb, vb] : o.terms) {
                const auto& [bx, bd] = kb;
                // iterate over contraction multi-indices j <= min(ad, bx)
                MultiIndex j(vars, 0);
                for (;;) {
                    Rational factor(1);
                    MultiIndex xe(vars), de(vars);
                    for (size_t v = 0; v < vars; ++v) {
                        unsigned jj = j[v];
                        factor *= Rational(binomial(Rational(ad[v]), jj) * binomial(Rational(bx[v]), jj) *
                                           Rational(factorial(jj)));
                        xe[v] = ax[v] + bx[v] - jj;
                        de[v] = ad[v] + bd[v] - jj;
                    }
                    if (sgn(factor) != 0) r.add_term(xe, de, (va * vb) * factor);
                    // odometer increment of j bounded by min(ad, bx)
                    size_t pos = 0;
                    while (pos < vars) {
                        unsigned cap = std::min(ad[pos], bx[pos]);
                        if (j[pos] < cap) {
                            ++j[pos];
                            break;
                        }
                        j[pos] = 0;
                        ++pos;
                    }
                    if (pos == vars) break;
                }
            }
        }
        return r;
    }

    WeylOp operator*(const Rational& q) const {
        WeylOp r(vars);
        if (sgn(q) == 0) return r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, v * q);
        return r;
    }

    bool operator==(const WeylOp& o) const { return vars == o.vars && terms == o.terms; }
    bool operator!=(const WeylOp& o) const { return !(*this == o); }
};

template <class R>
WeylOp<R> commutator(const WeylOp<R>& a, const WeylOp<R>& b) {
    return a * b - b * a;
}

// Element of sp(2n, Q) in block form (A, B; C, -A^t), B and C symmetric.
struct SpElement {
    size_t n = 0;
    QMatrix A, B, C;

    SpElement(size_t n_, QMatrix a, QMatrix b, QMatrix c) : n(n_), A(std::move(a)), B(std::move(b)), C(std::move(c)) {
        if (A.rows != n || A.cols != n || B.rows != n || B.cols != n || C.rows != n || C.cols != n)
            throw NotInSp("block sizes do not match n");
        if (!B.is_symmetric() || !C.is_symmetric()) throw NotInSp("B and C blocks must be symmetric");
    }

    static SpElement from_matrix(const QMatrix& m) {
        if (m.rows != m.cols || m.rows % 2 != 0) throw NotInSp("matrix must be 2n x 2n");
        size_t n = m.rows / 2;
        QMatrix A(n, n), B(n, n), C(n, n), D(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                A.at(i, j) = m.at(i, j);
                B.at(i, j) = m.at(i, j + n);
                C.at(i, j) = m.at(i + n, j);
                D.at(i, j) = m.at(i + n, j + n);
            }
        if (!(D == -A.transpose())) throw NotInSp("lower-right block must be -A^t");
        return SpElement(n, A, B, C);
    }

    QMatrix matrix() const {
        QMatrix m(2 * n, 2 * n);
        QMatrix D = -A.transpose();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                m.at(i, j) = A.at(i, j);
                m.at(i, j + n) = B.at(i, j);
                m.at(i + n, j) = C.at(i, j);
                m.at(i + n, j + n) = D.at(i, j);
            }
        return m;
    }
};

inline SpElement sp_bracket(const SpElement& u, const SpElement& v) {
    QMatrix m = u.matrix() * v.matrix() - v.matrix() * u.matrix();
    return SpElement::from_matrix(m);
}

// Basis of sp(2n, Q): all A = e_{jk}; symmetric B and C matrices.
inline std::vector<SpElement> sp_basis(size_t n) {
    std::vector<SpElement> basis;
    auto zero = QMatrix(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            QMatrix A(n, n);
            A.at(j, k) = 1;
            basis.emplace_back(n, A, zero, zero);
        }
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j; k < n; ++k) {
            QMatrix S(n, n);
            S.at(j, k) = 1;
            S.at(k, j) = 1;
            basis.emplace_back(n, zero, S, zero);
            basis.emplace_back(n, zero, zero, S);
        }
    return basis;
}

// Ring constants needed by the dsigma formulas; embeds the central parameter
// s (and its inverse), the imaginary unit, and tau = pi.
template <class R>
struct WeylContext {
    R one, s, s_inv, imag, tau, tau_inv;

    R embed(const Rational& q) const { return one * q; }
};

inline WeylContext<JetScalar> jet_weyl_context(const Rational& s0, int order) {
    JetScalar s = JetScalar::of_s(s0, order);
    return {JetScalar::constant(Rational(1), s0, order),
            s,
            s.inverse(),
            JetScalar::constant(Scalar::i(), s0, order),
            JetScalar::constant(Scalar::tau(1), s0, order),
            JetScalar::constant(Scalar::tau(-1), s0, order)};
}

// The infinitesimal Weil operator.  Differentiating the three generator
// families gives
//   A block:  - sum A_{jk} x_k d_j - tr(A)/2
//   C block:  - tau i s  x^t C x
//   B block:  (4 tau i s)^{-1} d^t B d
// For n = 1 these are sigma(Y) = -pi i s x^2, sigma(H) = -E,
// sigma(X) = (4 pi i s)^{-1} d^2.
template <class R>
WeylOp<R> dsigma(const SpElement& u, const WeylContext<R>& ctx) {
    size_t n = u.n;
    WeylOp<R> op(n);
    Rational trace(0);
    for (size_t j = 0; j < n; ++j) {
        trace += u.A.at(j, j);
        for (size_t k = 0; k < n; ++k) {
            const Rational& a = u.A.at(j, k);
            if (sgn(a) == 0) continue;
            MultiIndex xe = zero_index(n), de = zero_index(n);
            xe[k] += 1;
            de[j] += 1;
            op.add_term(xe, de, ctx.embed(-a));
        }
    }
    if (sgn(trace) != 0) op.add_term(zero_index(n), zero_index(n), ctx.embed(-trace / 2));

    R c_coeff = ctx.tau * ctx.imag * ctx.s * Rational(-1);
    R b_coeff = ctx.tau_inv * ctx.imag * ctx.s_inv * Rational(-1, 4);  // (4 tau i s)^{-1}
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            if (sgn(u.C.at(j, k)) != 0) {
                MultiIndex xe = zero_index(n);
                xe[j] += 1;
                xe[k] += 1;
                op.add_term(xe, zero_index(n), c_coeff * u.C.at(j, k));
            }
            if (sgn(u.B.at(j, k)) != 0) {
                MultiIndex de = zero_index(n);
                de[j] += 1;
                de[k] += 1;
                op.add_term(zero_index(n), de, b_coeff * u.B.at(j, k));
            }
        }
    return op;
}

// Verifies [dsigma(u), dsigma(v)] = dsigma([u, v]) over every pair of basis
// elements; returns descriptions of the failing pairs (must be empty).
template <class R>
std::vector<std::string> bracket_homomorphism_failures(size_t n, const WeylContext<R>& ctx) {
    std::vector<std::string> failures;
    auto basis = sp_basis(n);
    std::vector<WeylOp<R>> images;
    images.reserve(basis.size());
    for (const auto& u : basis) images.push_back(dsigma(u, ctx));
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = 0; b < basis.size(); ++b) {
            WeylOp<R> lhs = commutator(images[a], images[b]);
            WeylOp<R> rhs = dsigma(sp_bracket(basis[a], basis[b]), ctx);
            if (!(lhs == rhs)) failures.push_back("basis pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    return failures;
}

template <class R>
std::string to_string(const WeylOp<R>& op) {
    if (op.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, coeff] : op.terms) {
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(coeff) + ")";
        for (size_t v = 0; v < op.vars; ++v)
            if (key.first[v]) out += "*x" + std::to_string(v) + "^" + std::to_string(key.first[v]);
        for (size_t v = 0; v < op.vars; ++v)
            if (key.second[v]) out += "*d" + std::to_string(v) + "^" + std::to_string(key.second[v]);
    }
    return out;
}

}  // namespace jetweil
