#pragma once

// Exact model of jet-valued Schwartz vectors as finite sums of
// (polynomial) * exp(tau * s * (x^t Q x + l^t x)) terms, where
//   tau     is the formal transcendental standing for pi,
//   s       is the jet coordinate s0 + eps,
//   Q       is a complex-rational symmetric matrix with Re(Q) <= 0,
//   l       is a vector of jet coefficients,
// together with a formal unitary tag U^c = exp(tau * s0 * c), c in Q(i),
// carrying the non-nilpotent constant exponents (central characters,
// completed-square constants).  The imaginary part of a tag is folded into
// an 8th root of unity whenever exp(i pi s0 Im c) lands in Q(z8), so equal
// values get equal canonical forms.
//
// Closure: every operation below either returns a vector in this grammar or
// raises one of the branch errors.  Nothing is approximated.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jet.hpp"
#include "multiindex.hpp"
#include "qlinalg.hpp"

namespace jetweil {

struct JetContext {
    Rational s0;
    int order = 1;

    bool operator==(const JetContext& o) const { return s0 == o.s0 && order == o.order; }

    JetScalar zero() const { return JetScalar(s0, order); }
    JetScalar one() const { return JetScalar::constant(Rational(1), s0, order); }
    JetScalar constant(const Scalar& v) const { return JetScalar::constant(v, s0, order); }
    JetScalar constant(const Rational& v) const { return JetScalar::constant(v, s0, order); }
    JetScalar of_s() const { return JetScalar::of_s(s0, order); }
};

using GaussPoly = std::map<MultiIndex, JetScalar>;

inline void poly_add_term(GaussPoly& p, const MultiIndex& m, const JetScalar& c) {
    if (c.is_zero()) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline GaussPoly poly_mul(const GaussPoly& a, const GaussPoly& b) {
    GaussPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            MultiIndex m = ma;
            for (size_t v = 0; v < m.size(); ++v) m[v] += mb[v];
            poly_add_term(r, m, ca * cb);
        }
    return r;
}

inline GaussPoly poly_scale(const GaussPoly& a, const JetScalar& c) {
    GaussPoly r;
    for (const auto& [m, v] : a) poly_add_term(r, m, v * c);
    return r;
}

struct GaussPhase {
    CMatrix Q;                 // n x n symmetric, Re(Q) negative semidefinite
    std::vector<JetScalar> l;  // size n

    void validate() const {
        if (Q.rows != Q.cols || Q.rows != l.size()) throw DimensionMismatch("phase shape is inconsistent");
        if (!Q.is_symmetric()) throw Error("phase quadratic form must be symmetric");
        if (!is_negative_semidefinite(real_part(Q)))
            throw NonIntegrablePhase("real part of the quadratic form is not negative semidefinite");
    }

    bool operator==(const GaussPhase& o) const { return Q == o.Q && l == o.l; }
};

inline int compare(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows) return a.rows < b.rows ? -1 : 1;
    if (a.cols != b.cols) return a.cols < b.cols ? -1 : 1;
    for (size_t j = 0; j < a.data.size(); ++j)
        if (int c = compare(a.data[j], b.data[j])) return c;
    return 0;
}

struct GaussTerm {
    ComplexRational tag;  // formal factor exp(tau * s0 * tag)
    GaussPhase phase;
    GaussPoly poly;
};

inline int compare(const GaussTerm& a, const GaussTerm& b) {
    if (int c = compare(a.tag, b.tag)) return c;
    if (int c = compare(a.phase.Q, b.phase.Q)) return c;
    for (size_t j = 0; j < a.phase.l.size(); ++j)
        if (int c = compare(a.phase.l[j], b.phase.l[j])) return c;
    return 0;
}

struct GaussVector {
    size_t vars = 0;
    JetContext ctx;
    std::vector<GaussTerm> terms;

    GaussVector() = default;
    GaussVector(size_t n, JetContext c) : vars(n), ctx(std::move(c)) {}

    static GaussVector zero(size_t n, const JetContext& ctx) { return GaussVector(n, ctx); }

    // poly * exp(tau s x^t Q x), no linear part and no tag.
    static GaussVector from_parts(size_t n, const JetContext& ctx, const CMatrix& Q, GaussPoly poly) {
        GaussVector v(n, ctx);
        GaussTerm t;
        t.phase.Q = Q;
        t.phase.l.assign(n, ctx.zero());
        t.phase.validate();
        t.poly = std::move(poly);
        v.terms.push_back(std::move(t));
        v.normalize();
        return v;
    }

    void require_shape(const GaussVector& o) const {
        if (vars != o.vars) throw DimensionMismatch();
        if (!(ctx == o.ctx)) throw BaseMismatch("jet parameters differ");
    }

    bool is_zero() const { return terms.empty(); }

    // Canonical form: fold root-of-unity tags into coefficients, merge terms
    // with equal (tag, phase), drop zeros, sort.
    void normalize() {
        for (auto& t : terms) fold_tag(t);
        std::sort(terms.begin(), terms.end(), [](const GaussTerm& a, const GaussTerm& b) { return compare(a, b) < 0; });
        std::vector<GaussTerm> merged;
        for (auto& t : terms) {
            if (!merged.empty() && compare(merged.back(), t) == 0) {
                for (const auto& [m, c] : t.poly) poly_add_term(merged.back().poly, m, c);
            } else {
                merged.push_back(std::move(t));
            }
        }
        terms.clear();
        for (auto& t : merged)
            if (!t.poly.empty()) terms.push_back(std::move(t));
    }

    // exp(i pi s0 y) is the 8th root of unity z^k for y = k / (4 s0); reduce
    // the imaginary tag part into [0, 1/(4 s0)) and fold the zeta power into
    // the polynomial, so value-equal tags get equal canonical forms.
    void fold_tag(GaussTerm& t) const {
        if (sgn(t.tag.im) == 0) return;
        Rational lam = Rational(4) * ctx.s0 * t.tag.im;
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), lam.get_num().get_mpz_t(), lam.get_den().get_mpz_t());
        if (sgn(k) == 0) return;
        long km = mpz_class(k % 8).get_si();
        if (km < 0) km += 8;
        if (km != 0) t.poly = poly_scale(t.poly, ctx.constant(Scalar::zeta(km)));
        t.tag.im = (lam - Rational(k)) / (Rational(4) * ctx.s0);
    }

    GaussVector operator+(const GaussVector& o) const {
        require_shape(o);
        GaussVector r = *this;
        r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
        r.normalize();
        return r;
    }
    GaussVector operator-() const {
        GaussVector r = *this;
        for (auto& t : r.terms)
            for (auto& [m, c] : t.poly) c = -c;
        return r;
    }
    GaussVector operator-(const GaussVector& o) const { return *this + (-o); }

    GaussVector operator*(const JetScalar& c) const {
        GaussVector r = *this;
        for (auto& t : r.terms) t.poly = poly_scale(t.poly, c);
        r.normalize();
        return r;
    }
    GaussVector operator*(const Scalar& c) const { return *this * ctx.constant(c); }
    GaussVector operator*(const Rational& c) const { return *this * ctx.constant(Scalar(c)); }

    bool operator==(const GaussVector& o) const {
        if (vars != o.vars || !(ctx == o.ctx) || terms.size() != o.terms.size()) return false;
        for (size_t j = 0; j < terms.size(); ++j) {
            if (compare(terms[j], o.terms[j]) != 0) return false;
            if (!(terms[j].poly == o.terms[j].poly)) return false;
        }
        return true;
    }
    bool operator!=(const GaussVector& o) const { return !(*this == o); }

    GaussVector mul_poly(const GaussPoly& p) const {
        GaussVector r = *this;
        for (auto& t : r.terms) t.poly = poly_mul(t.poly, p);
        r.normalize();
        return r;
    }

    // Multiply by exp(tau * s * expoly(x)) for a polynomial exponent of
    // degree <= 2 with jet coefficients.  The eps^0 part of the quadratic
    // coefficients must be complex rational (it moves into Q); the eps^0 part
    // of the constant moves into the tag; every nilpotent remainder is
    // expanded as a finite exponential series into the polynomial.
    GaussVector mul_exponent(const GaussPoly& expoly) const {
        GaussVector r(vars, ctx);
        for (const auto& t : terms) {
            GaussTerm nt = t;
            GaussPoly correction;  // nilpotent-jet exponent, times tau*s
            JetScalar s_jet = ctx.of_s();
            Scalar tau = Scalar::tau(1);
            for (const auto& [mono, coeff] : expoly) {
                unsigned deg = index_total(mono);
                if (deg > 2) throw Error("exponent polynomial degree exceeds 2");
                if (deg == 2) {
                    // find the two variable slots
                    size_t j = 0, k = 0;
                    bool first = true;
                    for (size_t v = 0; v < vars; ++v)
                        for (unsigned rep = 0; rep < mono[v]; ++rep) {
                            (first ? j : k) = v;
                            first = false;
                        }
                    Scalar lead = coeff.coeff[0];
                    if (!lead.is_complex_rational())
                        throw ConstantPhaseNotExpandable("quadratic exponent coefficient outside Q(i)");
                    ComplexRational q0 = lead.as_complex();
                    // x_j x_k covers both off-diagonal slots of Q
                    if (j == k) {
                        nt.phase.Q.at(j, j) = nt.phase.Q.at(j, j) + q0;
                    } else {
                        ComplexRational half = q0 * Rational(1, 2);
                        nt.phase.Q.at(j, k) = nt.phase.Q.at(j, k) + half;
                        nt.phase.Q.at(k, j) = nt.phase.Q.at(k, j) + half;
                    }
                    JetScalar rem = coeff - ctx.constant(Scalar::from_complex(q0));
                    if (!rem.is_zero()) poly_add_term(correction, mono, rem * tau * s_jet);
                } else if (deg == 1) {
                    size_t j = 0;
                    for (size_t v = 0; v < vars; ++v)
                        if (mono[v]) j = v;
                    nt.phase.l[j] += coeff;
                } else {
                    Scalar lead = coeff.coeff[0];
                    if (!lead.is_complex_rational())
                        throw ConstantPhaseNotExpandable("constant exponent outside Q(i)");
                    ComplexRational c0 = lead.as_complex();
                    nt.tag = nt.tag + c0;
                    // tau * s * c0 leaves tau * eps * c0 beyond the tag
                    JetScalar eps(ctx.s0, ctx.order);
                    if (ctx.order >= 2) eps.coeff[1] = Scalar::one();
                    JetScalar rest = coeff - ctx.constant(Scalar::from_complex(c0));
                    JetScalar nil = (eps * Scalar::from_complex(c0) + rest * s_jet) * tau;
                    if (!nil.is_zero()) poly_add_term(correction, mono, nil);
                }
            }
            nt.phase.validate();
            if (!correction.empty()) {
                // exp(correction): all coefficients are nilpotent jets
                GaussPoly series{{zero_index(vars), ctx.one()}};
                GaussPoly power{{zero_index(vars), ctx.one()}};
                for (int m = 1; m < ctx.order; ++m) {
                    power = poly_mul(power, correction);
                    if (power.empty()) break;
                    Rational inv_fact(1);
                    inv_fact /= Rational(factorial(static_cast<unsigned>(m)));
                    for (const auto& [mono, c] : power) poly_add_term(series, mono, c * inv_fact);
                }
                nt.poly = poly_mul(nt.poly, series);
            }
            r.terms.push_back(std::move(nt));
        }
        r.normalize();
        return r;
    }

    // Multiply by the pure phase exp(tau s (x^t Qc x + lc^t x)), Qc complex
    // rational.
    GaussVector mul_phase(const CMatrix& Qc, const std::vector<JetScalar>& lc) const {
        if (Qc.rows != vars || lc.size() != vars) throw DimensionMismatch();
        GaussPoly expoly;
        for (size_t j = 0; j < vars; ++j) {
            for (size_t k = j; k < vars; ++k) {
                ComplexRational q = Qc.at(j, k);
                if (j != k) q = q + Qc.at(k, j);
                if (q.is_zero()) continue;
                MultiIndex m = zero_index(vars);
                m[j] += 1;
                m[k] += 1;
                poly_add_term(expoly, m, ctx.constant(Scalar::from_complex(q)));
            }
            if (!lc[j].is_zero()) {
                MultiIndex m = zero_index(vars);
                m[j] = 1;
                poly_add_term(expoly, m, lc[j]);
            }
        }
        return mul_exponent(expoly);
    }

    // v(x - a)
    GaussVector translate(const std::vector<Rational>& a) const {
        if (a.size() != vars) throw DimensionMismatch();
        GaussVector r(vars, ctx);
        for (const auto& t : terms) {
            GaussTerm nt;
            nt.tag = t.tag;
            nt.phase.Q = t.phase.Q;
            nt.phase.l = t.phase.l;
            // substitute into the polynomial: x_j -> x_j - a_j
            nt.poly = substitute_shift(t.poly, a);
            GaussVector tmp(vars, ctx);
            tmp.terms.push_back(std::move(nt));
            // exponent: tau s [ -2 (Qa)^t x + a^t Q a - l^t a ]
            GaussPoly expoly;
            ComplexRational quad_const;
            JetScalar lin_const = ctx.zero();
            for (size_t j = 0; j < vars; ++j) {
                ComplexRational qa;
                for (size_t m = 0; m < vars; ++m) qa = qa + t.phase.Q.at(j, m) * a[m];
                quad_const = quad_const + qa * a[j];
                lin_const += t.phase.l[j] * a[j];
                ComplexRational coeff = -(qa + qa);
                if (!coeff.is_zero()) {
                    MultiIndex mi = zero_index(vars);
                    mi[j] = 1;
                    poly_add_term(expoly, mi, ctx.constant(Scalar::from_complex(coeff)));
                }
            }
            JetScalar cexp = ctx.constant(Scalar::from_complex(quad_const)) - lin_const;
            if (!cexp.is_zero()) poly_add_term(expoly, zero_index(vars), cexp);
            GaussVector shifted = expoly.empty() ? tmp : tmp.mul_exponent(expoly);
            r.terms.insert(r.terms.end(), shifted.terms.begin(), shifted.terms.end());
        }
        r.normalize();
        return r;
    }

    // v(M x) for an invertible rational matrix M
    GaussVector linear_substitute(const QMatrix& M) const {
        if (M.rows != vars || M.cols != vars) throw DimensionMismatch();
        if (FieldOps<Rational>::is_zero(M.det())) throw SingularSubstitution();
        CMatrix Mc = complexify(M);
        CMatrix Mt = Mc.transpose();
        GaussVector r(vars, ctx);
        for (const auto& t : terms) {
            GaussTerm nt;
            nt.tag = t.tag;
            nt.phase.Q = Mt * t.phase.Q * Mc;
            nt.phase.l.assign(vars, ctx.zero());
            for (size_t m = 0; m < vars; ++m)
                for (size_t j = 0; j < vars; ++j) nt.phase.l[m] += t.phase.l[j] * M.at(j, m);
            nt.phase.validate();
            nt.poly = substitute_linear(t.poly, M);
            r.terms.push_back(std::move(nt));
        }
        r.normalize();
        return r;
    }

    GaussVector parity() const {
        QMatrix m = QMatrix::identity(vars) * Rational(-1);
        return linear_substitute(m);
    }

    // x -> f * x for a unit jet f (used by the square-class dilation).
    GaussVector jet_dilate(const JetScalar& f) const {
        JetScalar f2 = f * f;
        GaussVector r(vars, ctx);
        for (const auto& t : terms) {
            GaussTerm nt;
            nt.tag = t.tag;
            nt.phase.Q = CMatrix(vars, vars);
            nt.phase.l.assign(vars, ctx.zero());
            // polynomial coefficients pick up f^{|alpha|}
            for (const auto& [mono, c] : t.poly) {
                JetScalar scaled = c;
                for (unsigned rep = 0; rep < index_total(mono); ++rep) scaled *= f;
                poly_add_term(nt.poly, mono, scaled);
            }
            GaussVector tmp(vars, ctx);
            tmp.terms.push_back(std::move(nt));
            // exponent tau s [ x^t (f^2 Q) x + (f l)^t x ] with jet matrix f^2 Q
            GaussPoly expoly;
            for (size_t j = 0; j < vars; ++j) {
                for (size_t k = j; k < vars; ++k) {
                    ComplexRational q = t.phase.Q.at(j, k);
                    if (j != k) q = q + t.phase.Q.at(k, j);
                    if (q.is_zero()) continue;
                    MultiIndex mi = zero_index(vars);
                    mi[j] += 1;
                    mi[k] += 1;
                    poly_add_term(expoly, mi, f2 * Scalar::from_complex(q));
                }
                if (!t.phase.l[j].is_zero()) {
                    MultiIndex mi = zero_index(vars);
                    mi[j] = 1;
                    poly_add_term(expoly, mi, t.phase.l[j] * f);
                }
            }
            GaussVector scaled = expoly.empty() ? tmp : tmp.mul_exponent(expoly);
            r.terms.insert(r.terms.end(), scaled.terms.begin(), scaled.terms.end());
        }
        r.normalize();
        return r;
    }

    // d/dx_j: product rule, polynomial derivative plus the phase gradient.
    GaussVector differentiate(size_t j) const {
        if (j >= vars) throw DimensionMismatch();
        JetScalar taus = ctx.of_s() * Scalar::tau(1);
        GaussVector r(vars, ctx);
        for (const auto& t : terms) {
            GaussTerm nt;
            nt.tag = t.tag;
            nt.phase = t.phase;
            GaussPoly dp;
            for (const auto& [mono, c] : t.poly) {
                if (mono[j] == 0) continue;
                MultiIndex m = mono;
                m[j] -= 1;
                poly_add_term(dp, m, c * Rational(mono[j]));
            }
            // phase gradient: tau s (2 sum_m Q_{jm} x_m + l_j)
            GaussPoly grad;
            for (size_t m = 0; m < vars; ++m) {
                ComplexRational q2 = t.phase.Q.at(j, m) + t.phase.Q.at(j, m);
                if (q2.is_zero()) continue;
                MultiIndex mi = zero_index(vars);
                mi[m] = 1;
                poly_add_term(grad, mi, taus * Scalar::from_complex(q2));
            }
            if (!t.phase.l[j].is_zero()) poly_add_term(grad, zero_index(vars), taus * t.phase.l[j]);
            GaussPoly total = poly_mul(t.poly, grad);
            for (const auto& [m, c] : dp) poly_add_term(total, m, c);
            nt.poly = std::move(total);
            r.terms.push_back(std::move(nt));
        }
        r.normalize();
        return r;
    }

    // Integrates out the listed variables in one closed-form pass per
    // variable; the result lives on the remaining variables (renumbered in
    // increasing order).
    GaussVector gauss_integrate(std::vector<size_t> vars_to_integrate) const {
        std::sort(vars_to_integrate.begin(), vars_to_integrate.end());
        GaussVector cur = *this;
        // integrate highest index first so earlier indices stay valid
        for (auto it = vars_to_integrate.rbegin(); it != vars_to_integrate.rend(); ++it)
            cur = cur.integrate_one(*it);
        return cur;
    }

    GaussVector fourier(int direction) const;
    GaussVector kernel_transform(const JetScalar& cross) const;

    // Complex conjugation: i -> -i everywhere, s fixed.
    GaussVector conjugate() const {
        GaussVector r(vars, ctx);
        for (const auto& t : terms) {
            GaussTerm nt;
            nt.tag = t.tag.conj();
            nt.phase.Q = t.phase.Q;
            for (auto& e : nt.phase.Q.data) e = e.conj();
            nt.phase.l.reserve(vars);
            for (const auto& lj : t.phase.l) nt.phase.l.push_back(conj_jet(lj));
            for (const auto& [m, c] : t.poly) nt.poly.emplace(m, conj_jet(c));
            r.terms.push_back(std::move(nt));
        }
        r.normalize();
        return r;
    }

    static JetScalar conj_jet(const JetScalar& j) {
        JetScalar r = j;
        for (auto& c : r.coeff) c = c.conj();
        return r;
    }

   private:
    GaussPoly substitute_shift(const GaussPoly& p, const std::vector<Rational>& a) const {
        GaussPoly out;
        for (const auto& [mono, c] : p) {
            GaussPoly factor{{zero_index(vars), c}};
            for (size_t v = 0; v < vars; ++v) {
                if (mono[v] == 0) continue;
                GaussPoly base;
                MultiIndex mv = zero_index(vars);
                mv[v] = 1;
                poly_add_term(base, mv, ctx.one());
                poly_add_term(base, zero_index(vars), ctx.constant(Scalar(-a[v])));
                for (unsigned rep = 0; rep < mono[v]; ++rep) factor = poly_mul(factor, base);
            }
            for (const auto& [m, cc] : factor) poly_add_term(out, m, cc);
        }
        return out;
    }

    GaussPoly substitute_linear(const GaussPoly& p, const QMatrix& M) const {
        GaussPoly out;
        for (const auto& [mono, c] : p) {
            GaussPoly factor{{zero_index(vars), c}};
            for (size_t v = 0; v < vars; ++v) {
                if (mono[v] == 0) continue;
                GaussPoly image;  // (M x)_v = sum_m M_{vm} x_m
                for (size_t m = 0; m < vars; ++m) {
                    if (sgn(M.at(v, m)) == 0) continue;
                    MultiIndex mi = zero_index(vars);
                    mi[m] = 1;
                    poly_add_term(image, mi, ctx.constant(Scalar(M.at(v, m))));
                }
                for (unsigned rep = 0; rep < mono[v]; ++rep) factor = poly_mul(factor, image);
            }
            for (const auto& [m, cc] : factor) poly_add_term(out, m, cc);
        }
        return out;
    }

    GaussVector integrate_one(size_t j) const {
        GaussVector out(vars - 1, ctx);
        JetScalar s_jet = ctx.of_s();
        for (const auto& t : terms) {
            ComplexRational q = t.phase.Q.at(j, j);
            if (sgn(q.re) > 0) throw NonIntegrablePhase();
            if (q.is_zero()) throw NonIntegrablePhase("no quadratic part in the integration variable");
            // a = -q s; branch conditions are enforced by the jet square root
            JetScalar a_jet = s_jet * Scalar::from_complex(-q);
            JetScalar rt_inv = a_jet.sqrt().inverse();
            JetScalar a_inv = a_jet.inverse();

            // B(x) = l_j + 2 sum_{m != j} Q_{jm} x_m   (jet constant + linear form)
            GaussPoly B;
            if (!t.phase.l[j].is_zero()) poly_add_term(B, zero_index(vars), t.phase.l[j]);
            for (size_t m = 0; m < vars; ++m) {
                if (m == j) continue;
                ComplexRational q2 = t.phase.Q.at(j, m) + t.phase.Q.at(j, m);
                if (q2.is_zero()) continue;
                MultiIndex mi = zero_index(vars);
                mi[m] = 1;
                poly_add_term(B, mi, ctx.constant(Scalar::from_complex(q2)));
            }
            // shift y = u + beta, beta = -B / (2q)
            ComplexRational inv2q = ComplexRational::one() / (q + q);
            GaussPoly beta = poly_scale(B, ctx.constant(Scalar::from_complex(-inv2q)));

            // expand the polynomial in powers of y_j and substitute
            // y_j^r = sum_m C(r,m) u^m beta^{r-m}
            std::map<unsigned, GaussPoly> by_upower;  // u-power -> poly in remaining vars (old indexing)
            for (const auto& [mono, c] : t.poly) {
                unsigned r = mono[j];
                MultiIndex rest = mono;
                rest[j] = 0;
                GaussPoly restpoly{{rest, c}};
                GaussPoly beta_pow{{zero_index(vars), ctx.one()}};
                // m runs down from r so beta powers build up incrementally
                std::vector<GaussPoly> beta_powers(r + 1);
                beta_powers[0] = beta_pow;
                for (unsigned p = 1; p <= r; ++p) beta_powers[p] = poly_mul(beta_powers[p - 1], beta);
                for (unsigned m = 0; m <= r; ++m) {
                    Rational binom_rm = binomial(Rational(r), m);
                    GaussPoly contrib = poly_mul(restpoly, beta_powers[r - m]);
                    for (auto& [mm, cc] : contrib) poly_add_term(by_upower[m], mm, cc * binom_rm);
                }
            }
            // even moments: int u^{2m} e^{tau s q u^2} du
            //             = (2m-1)!! 2^{-m} tau^{-m} a^{-m} * a^{-1/2}
            GaussPoly integrated;
            for (const auto& [upow, p] : by_upower) {
                if (upow % 2 == 1) continue;
                unsigned m = upow / 2;
                JetScalar moment = rt_inv;
                Rational factor = Rational(double_factorial_odd(m)) / Rational(Integer(1) << m);
                moment = moment * Scalar::tau(-static_cast<int>(m)) * factor;
                for (unsigned rep = 0; rep < m; ++rep) moment *= a_inv;
                for (const auto& [mm, cc] : p) poly_add_term(integrated, mm, cc * moment);
            }

            // completed-square exponent correction: tau s ( -B^2 / (4q) )
            GaussPoly correction = poly_mul(B, B);
            correction = poly_scale(correction, ctx.constant(Scalar::from_complex(-(inv2q * inv2q) * (q))));
            // -B^2/(4q) = -(B/(2q))^2 * q

            // assemble the lower-dimensional term (old variable j removed)
            GaussTerm nt;
            nt.tag = t.tag;
            nt.phase.Q = CMatrix(vars - 1, vars - 1);
            nt.phase.l.clear();
            auto newidx = [&](size_t old) { return old < j ? old : old - 1; };
            for (size_t a = 0; a < vars; ++a) {
                if (a == j) continue;
                for (size_t b = 0; b < vars; ++b) {
                    if (b == j) continue;
                    nt.phase.Q.at(newidx(a), newidx(b)) = t.phase.Q.at(a, b);
                }
            }
            for (size_t a = 0; a < vars; ++a)
                if (a != j) nt.phase.l.push_back(t.phase.l[a]);
            nt.poly = reindex_poly(integrated, j);
            nt.phase.validate();

            GaussVector tmp(vars - 1, ctx);
            tmp.terms.push_back(std::move(nt));
            GaussPoly corr_re = reindex_poly(correction, j);
            GaussVector done = corr_re.empty() ? tmp : tmp.mul_exponent(corr_re);
            out.terms.insert(out.terms.end(), done.terms.begin(), done.terms.end());
        }
        out.normalize();
        return out;
    }

    static GaussPoly reindex_poly(const GaussPoly& p, size_t removed) {
        GaussPoly out;
        for (const auto& [mono, c] : p) {
            if (mono[removed] != 0) throw Error("internal: residual power of an integrated variable");
            MultiIndex m;
            m.reserve(mono.size() - 1);
            for (size_t v = 0; v < mono.size(); ++v)
                if (v != removed) m.push_back(mono[v]);
            poly_add_term(out, m, c);
        }
        return out;
    }
};

// Integral transform with kernel exp(tau * s * cross * x^t y): the old
// variables become integration variables y, new ones take their indices.
inline GaussVector GaussVector::kernel_transform(const JetScalar& cross) const {
    size_t n = vars;
    GaussVector aug(2 * n, ctx);
    for (const auto& t : terms) {
        GaussTerm nt;
        nt.tag = t.tag;
        nt.phase.Q = CMatrix(2 * n, 2 * n);
        // old variables shift to the block n..2n-1
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) nt.phase.Q.at(n + a, n + b) = t.phase.Q.at(a, b);
        nt.phase.l.assign(2 * n, ctx.zero());
        for (size_t a = 0; a < n; ++a) nt.phase.l[n + a] = t.phase.l[a];
        for (const auto& [mono, c] : t.poly) {
            MultiIndex m = zero_index(2 * n);
            for (size_t v = 0; v < n; ++v) m[n + v] = mono[v];
            nt.poly.emplace(std::move(m), c);
        }
        nt.phase.validate();
        aug.terms.push_back(std::move(nt));
    }
    aug.normalize();
    GaussPoly kernel;
    for (size_t a = 0; a < n; ++a) {
        MultiIndex m = zero_index(2 * n);
        m[a] += 1;
        m[n + a] += 1;
        poly_add_term(kernel, m, cross);
    }
    GaussVector with_kernel = kernel.empty() ? aug : aug.mul_exponent(kernel);
    std::vector<size_t> to_integrate;
    for (size_t v = n; v < 2 * n; ++v) to_integrate.push_back(v);
    return with_kernel.gauss_integrate(to_integrate);
}

// Analogue of the Fourier transform on the induced model:
//   direction -1:  multiply by exp(+2 tau i s x^t y), integrate over y,
//                  then multiply by sqrt(s)^n      (this is F_s^{-1})
//   direction +1:  kernel exp(-2 tau i s x^t y), factor sqrt(s)^n; this is
//                  the exact two-sided inverse of direction -1.  (The raw
//                  kernel transforms compose to s^{-n} id, so both directions
//                  carry the same sqrt(s)^n factor, one per integrated
//                  variable; with it (F_s^{-1})^2 = parity at every n.)
inline GaussVector GaussVector::fourier(int direction) const {
    if (direction != 1 && direction != -1) throw Error("fourier direction must be +1 or -1");
    JetScalar cross = ctx.constant(Scalar::i() * Rational(direction == -1 ? 2 : -2));
    GaussVector result = kernel_transform(cross);
    JetScalar root = ctx.of_s().sqrt();
    JetScalar factor = ctx.one();
    for (size_t j = 0; j < vars; ++j) factor *= root;
    return result * factor;
}

// Product as functions (same variables): polynomials multiply, phases add.
inline GaussVector pointwise_product(const GaussVector& a, const GaussVector& b) {
    a.require_shape(b);
    GaussVector r(a.vars, a.ctx);
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            GaussTerm nt;
            nt.tag = ta.tag + tb.tag;
            nt.phase.Q = ta.phase.Q + tb.phase.Q;
            nt.phase.l.reserve(a.vars);
            for (size_t j = 0; j < a.vars; ++j) nt.phase.l.push_back(ta.phase.l[j] + tb.phase.l[j]);
            nt.phase.validate();
            nt.poly = poly_mul(ta.poly, tb.poly);
            r.terms.push_back(std::move(nt));
        }
    r.normalize();
    return r;
}

// int f * conj(g) dx over all variables.  The result is a 0-variable
// GaussVector (a formal-tag combination of jets); pairing_jet extracts the
// plain jet when no tags remain.
inline GaussVector pairing_full(const GaussVector& f, const GaussVector& g) {
    GaussVector prod = pointwise_product(f, g.conjugate());
    std::vector<size_t> all;
    for (size_t v = 0; v < prod.vars; ++v) all.push_back(v);
    return prod.gauss_integrate(all);
}

inline JetScalar pairing_jet(const GaussVector& f, const GaussVector& g) {
    GaussVector p = pairing_full(f, g);
    if (p.terms.empty()) return p.ctx.zero();
    if (p.terms.size() != 1 || !p.terms[0].tag.is_zero())
        throw Error("pairing carries a formal unitary tag; use pairing_full");
    return p.terms[0].poly.at(MultiIndex{});
}

// sign comparison: +1 if a == b, -1 if a == -b, nullopt otherwise.
inline std::optional<int> compare_up_to_sign(const GaussVector& a, const GaussVector& b) {
    if (a == b) return 1;
    if (a == -b) return -1;
    return std::nullopt;
}

inline std::string to_string(const GaussPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : p) {
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(c) + ")";
        for (size_t v = 0; v < mono.size(); ++v)
            if (mono[v]) out += "*x" + std::to_string(v) + "^" + std::to_string(mono[v]);
    }
    return out;
}

inline std::string to_string(const GaussVector& v) {
    if (v.terms.empty()) return "0";
    std::string out;
    for (size_t j = 0; j < v.terms.size(); ++j) {
        const auto& t = v.terms[j];
        if (j) out += "  +  ";
        if (!t.tag.is_zero()) out += "U{" + to_string(t.tag) + "} ";
        out += "[" + to_string(t.poly) + "] * exp(tau s (";
        bool started = false;
        for (size_t a = 0; a < v.vars; ++a)
            for (size_t b = a; b < v.vars; ++b) {
                ComplexRational q = t.phase.Q.at(a, b);
                if (a != b) q = q + t.phase.Q.at(b, a);
                if (q.is_zero()) continue;
                if (started) out += " + ";
                started = true;
                out += "(" + to_string(q) + ")x" + std::to_string(a) + "x" + std::to_string(b);
            }
        for (size_t a = 0; a < v.vars; ++a) {
            if (t.phase.l[a].is_zero()) continue;
            if (started) out += " + ";
            started = true;
            out += "(" + to_string(t.phase.l[a]) + ")x" + std::to_string(a);
        }
        if (!started) out += "0";
        out += "))";
    }
    return out;
}

}  // namespace jetweil
