#pragma once

// The Heisenberg group action and the Weil generator operators on
// GaussVectors, plus the verification suites: Fourier inversion, covariance,
// group law, cocycle consistency, intertwiners, and pairing invariance.
//
// Conventions frozen here:
//   rho(a,b,t) v(x) = exp(2 tau i s (t + b^t x + a^t b / 2)) v(x + a)
// which satisfies the group law
//   (a,b,t)(a',b',t') = (a+a', b+b', t+t' + (a^t b' - b^t a')/2)
// exactly, with central character exp(2 tau i s t).  The generator operators
// follow the standard polarized model:
//   sigma(DiagA)  v = (det A)^{-1/2} v(A^{-1} x)
//   sigma(LowerC) v = exp(-tau i s x^t C x) v      [chi_s(-x^t C x / 2)]
//   sigma(J)      v = zeta^n sqrt(s) int exp(2 tau i s x^t y) v(y) dy
// with (det A)^{-1/2} = zeta^2 |det A|^{-1/2} when det A < 0.

#include <random>
#include <string>
#include <vector>

#include "gauss.hpp"
#include "metaplectic.hpp"
#include "report.hpp"

namespace jetweil {

struct HeisenbergElement {
    std::vector<Rational> a, b;
    Rational t;

    size_t dim() const { return a.size(); }
};

inline Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational r(0);
    for (size_t j = 0; j < x.size(); ++j) r += x[j] * y[j];
    return r;
}

inline HeisenbergElement heisenberg_multiply(const HeisenbergElement& h1, const HeisenbergElement& h2) {
    if (h1.dim() != h2.dim()) throw DimensionMismatch();
    HeisenbergElement r;
    r.a.resize(h1.dim());
    r.b.resize(h1.dim());
    for (size_t j = 0; j < h1.dim(); ++j) {
        r.a[j] = h1.a[j] + h2.a[j];
        r.b[j] = h1.b[j] + h2.b[j];
    }
    r.t = h1.t + h2.t + (dot(h1.a, h2.b) - dot(h1.b, h2.a)) / 2;
    return r;
}

inline GaussVector rho(const HeisenbergElement& h, const GaussVector& v) {
    if (h.dim() != v.vars) throw DimensionMismatch();
    std::vector<Rational> minus_a(h.dim());
    for (size_t j = 0; j < h.dim(); ++j) minus_a[j] = -h.a[j];
    GaussVector moved = v.translate(minus_a);  // v(x + a)
    GaussPoly expoly;
    Rational c0 = h.t + dot(h.a, h.b) / 2;
    JetScalar cjet = moved.ctx.constant(Scalar::i() * (c0 * 2));
    if (!cjet.is_zero()) poly_add_term(expoly, zero_index(v.vars), cjet);
    for (size_t j = 0; j < h.dim(); ++j) {
        if (sgn(h.b[j]) == 0) continue;
        MultiIndex m = zero_index(v.vars);
        m[j] = 1;
        poly_add_term(expoly, m, moved.ctx.constant(Scalar::i() * (h.b[j] * 2)));
    }
    return expoly.empty() ? moved : moved.mul_exponent(expoly);
}

// The symplectic action on (a, b) with t fixed: stacked (a; b) -> M (a; b).
inline HeisenbergElement symplectic_on_heisenberg(const QMatrix& M, const HeisenbergElement& h) {
    size_t n = h.dim();
    if (M.rows != 2 * n || M.cols != 2 * n) throw DimensionMismatch();
    std::vector<Rational> v(2 * n, Rational(0));
    for (size_t i = 0; i < 2 * n; ++i)
        for (size_t j = 0; j < 2 * n; ++j) v[i] += M.at(i, j) * (j < n ? h.a[j] : h.b[j - n]);
    HeisenbergElement r;
    r.a.assign(v.begin(), v.begin() + static_cast<long>(n));
    r.b.assign(v.begin() + static_cast<long>(n), v.end());
    r.t = h.t;
    return r;
}

// (det A)^{-1/2} with the fixed branch zeta^2 |det A|^{-1/2} for det A < 0.
inline Scalar det_inverse_root(const Rational& det) {
    if (sgn(det) == 0) throw NotAGenerator("diag block is singular");
    Scalar root_inv = sqrt_positive_rational(abs(det)).inverse();
    return sgn(det) < 0 ? Scalar::zeta(2) * root_inv : root_inv;
}

inline GaussVector sigma_generator(const Generator& g, const GaussVector& v) {
    size_t n = v.vars;
    if (std::holds_alternative<DiagGen>(g)) {
        const QMatrix& A = std::get<DiagGen>(g).A;
        if (A.rows != n) throw DimensionMismatch();
        return v.linear_substitute(A.inverse()) * det_inverse_root(A.det());
    }
    if (std::holds_alternative<LowerGen>(g)) {
        const QMatrix& C = std::get<LowerGen>(g).C;
        if (C.rows != n) throw DimensionMismatch();
        if (!C.is_symmetric()) throw NotAGenerator("lower block must be symmetric");
        CMatrix Qc = complexify(C) * ComplexRational(Rational(0), Rational(-1));  // -i C
        return v.mul_phase(Qc, std::vector<JetScalar>(n, v.ctx.zero()));
    }
    return v.fourier(-1) * Scalar::zeta(static_cast<long>(n));
}

inline GaussVector sigma_word(const GeneratorWord& w, const GaussVector& v) {
    GaussVector cur = v;
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) cur = sigma_generator(*it, cur);
    return cur;
}

// --- probe families ---------------------------------------------------------

// Monomial times exp(tau s x^t Q x) for diagonal Q.
inline GaussVector monomial_probe(const JetContext& ctx, const MultiIndex& m, const ComplexRational& qdiag) {
    size_t n = m.size();
    CMatrix Q(n, n);
    for (size_t j = 0; j < n; ++j) Q.at(j, j) = qdiag;
    GaussPoly p;
    p.emplace(m, JetScalar::constant(Rational(1), ctx.s0, ctx.order));
    return GaussVector::from_parts(n, ctx, Q, std::move(p));
}

// Hermite-type probes x^alpha exp(-tau s |x|^2), total degree <= max_degree.
inline std::vector<GaussVector> hermite_probes(size_t n, const JetContext& ctx, unsigned max_degree) {
    std::vector<GaussVector> out;
    MultiIndex m = zero_index(n);
    for (;;) {
        if (index_total(m) <= max_degree) out.push_back(monomial_probe(ctx, m, ComplexRational(Rational(-1))));
        size_t pos = 0;
        while (pos < n) {
            if (m[pos] < max_degree) {
                ++m[pos];
                break;
            }
            m[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return out;
}

// Fresnel probes x^alpha exp(tau s i c |x|^2); closed under all three
// generator families, which makes arbitrary words checkable.
inline std::vector<GaussVector> fresnel_probes(size_t n, const JetContext& ctx, const Rational& c,
                                               unsigned max_degree) {
    std::vector<GaussVector> out;
    MultiIndex m = zero_index(n);
    for (;;) {
        if (index_total(m) <= max_degree) out.push_back(monomial_probe(ctx, m, ComplexRational(Rational(0), c)));
        size_t pos = 0;
        while (pos < n) {
            if (m[pos] < max_degree) {
                ++m[pos];
                break;
            }
            m[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return out;
}

// --- check suites ------------------------------------------------------------

// sigma(J)^2 = i^n * parity on every probe (i * parity in one variable).
inline Report fourier_inversion_check(const JetContext& ctx, const std::vector<GaussVector>& probes) {
    Report rep{"fourier", {}};
    int idx = 0;
    for (const auto& v : probes) {
        std::string name = "sigmaJ-squared-probe-" + std::to_string(idx++);
        GaussVector lhs = sigma_generator(JGen{}, sigma_generator(JGen{}, v));
        GaussVector rhs = v.parity() * Scalar::zeta(2 * static_cast<long>(v.vars));
        if (lhs == rhs)
            rep.add(CheckCase::pass(name, to_string(lhs), to_string(rhs)));
        else
            rep.add(CheckCase::fail(name, to_string(lhs), to_string(rhs)));
    }
    // the jet factor sqrt(s) commutes with the raw kernel transform, so both
    // placements of S agree
    if (!probes.empty()) {
        const GaussVector& v = probes.front();
        JetScalar root = ctx.of_s().sqrt();
        JetScalar cross = ctx.constant(Scalar::i() * Rational(2));
        GaussVector after = v.kernel_transform(cross) * root;
        GaussVector before = (v * root).kernel_transform(cross);
        if (after == before)
            rep.add(CheckCase::pass("s-factor-placement-agrees", to_string(after), to_string(before)));
        else
            rep.add(CheckCase::fail("s-factor-placement-agrees", to_string(after), to_string(before)));
    }
    return rep;
}

// sigma(g) rho(h) = rho(g.h) sigma(g) up to one global sign per (g, h).
inline CheckCase covariance_case(const std::string& name, const Generator& g, const HeisenbergElement& h,
                                 const std::vector<GaussVector>& probes) {
    size_t n = h.dim();
    QMatrix gm = generator_matrix(g, n);
    HeisenbergElement gh = symplectic_on_heisenberg(gm, h);
    std::optional<int> sign;
    std::string last_l, last_r;
    for (const auto& v : probes) {
        GaussVector lhs = sigma_generator(g, rho(h, v));
        GaussVector rhs = rho(gh, sigma_generator(g, v));
        last_l = to_string(lhs);
        last_r = to_string(rhs);
        auto s = compare_up_to_sign(lhs, rhs);
        if (!s) return CheckCase::fail(name, last_l, last_r, "not equal up to sign");
        if (sign && *sign != *s) return CheckCase::fail(name, last_l, last_r, "sign differs between probes");
        sign = s;
    }
    return CheckCase::pass(name, last_l, last_r, sign);
}

inline Report covariance_check(const JetContext& ctx, size_t n, unsigned samples, std::uint64_t seed) {
    Report rep{"covariance", {}};
    std::mt19937_64 rng(seed);
    auto probes = hermite_probes(n, ctx, n == 1 ? 4 : 2);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    auto rand_q = [&]() {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    for (unsigned trial = 0; trial < samples; ++trial) {
        HeisenbergElement h;
        h.a.resize(n);
        h.b.resize(n);
        for (size_t j = 0; j < n; ++j) {
            h.a[j] = rand_q();
            h.b[j] = rand_q();
        }
        h.t = rand_q();
        // one generator of each type per sampled h
        QMatrix A(n, n);
        do {
            for (auto& e : A.data) e = rand_q();
        } while (FieldOps<Rational>::is_zero(A.det()));
        QMatrix C(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) C.at(i, j) = C.at(j, i) = rand_q();
        std::string tag = "-h" + std::to_string(trial);
        rep.add(covariance_case("covariance-diag" + tag, DiagGen{A}, h, probes));
        rep.add(covariance_case("covariance-lower" + tag, LowerGen{C}, h, probes));
        rep.add(covariance_case("covariance-J" + tag, JGen{}, h, probes));
    }
    return rep;
}

// rho(h1) rho(h2) = rho(h1 h2) and the central character.
inline Report heisenberg_check(const JetContext& ctx, size_t n, unsigned samples, std::uint64_t seed) {
    Report rep{"heisenberg", {}};
    std::mt19937_64 rng(seed);
    auto probes = hermite_probes(n, ctx, n == 1 ? 3 : 2);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    auto rand_q = [&]() {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    auto rand_h = [&]() {
        HeisenbergElement h;
        h.a.resize(n);
        h.b.resize(n);
        for (size_t j = 0; j < n; ++j) {
            h.a[j] = rand_q();
            h.b[j] = rand_q();
        }
        h.t = rand_q();
        return h;
    };
    for (unsigned trial = 0; trial < samples; ++trial) {
        HeisenbergElement h1 = rand_h(), h2 = rand_h();
        HeisenbergElement h12 = heisenberg_multiply(h1, h2);
        const GaussVector& v = probes[trial % probes.size()];
        GaussVector lhs = rho(h1, rho(h2, v));
        GaussVector rhs = rho(h12, v);
        std::string name = "group-law-" + std::to_string(trial);
        if (lhs == rhs)
            rep.add(CheckCase::pass(name, to_string(lhs), to_string(rhs)));
        else
            rep.add(CheckCase::fail(name, to_string(lhs), to_string(rhs)));
    }
    // identity and central character
    {
        HeisenbergElement e;
        e.a.assign(n, Rational(0));
        e.b.assign(n, Rational(0));
        e.t = 0;
        const GaussVector& v = probes.front();
        if (rho(e, v) == v)
            rep.add(CheckCase::pass("identity-element", to_string(v), to_string(v)));
        else
            rep.add(CheckCase::fail("identity-element", to_string(rho(e, v)), to_string(v)));
        HeisenbergElement z = e;
        z.t = rand_q();
        GaussVector lhs = rho(z, v);
        GaussPoly expc{{zero_index(n), ctx.constant(Scalar::i() * (z.t * 2))}};
        GaussVector rhs = v.mul_exponent(expc);  // chi_s(t) = exp(2 tau i s t)
        if (lhs == rhs)
            rep.add(CheckCase::pass("central-character", to_string(lhs), to_string(rhs)));
        else
            rep.add(CheckCase::fail("central-character", to_string(lhs), to_string(rhs)));
    }
    return rep;
}

// sigma(w1) sigma(w2) = c sigma(w12), c in {+1, -1} independent of the probe.
inline CheckCase cocycle_case(const std::string& name, const GeneratorWord& w1, const GeneratorWord& w2,
                              const GeneratorWord& w12, const std::vector<GaussVector>& probes) {
    std::optional<int> sign;
    std::string last_l, last_r;
    for (const auto& v : probes) {
        GaussVector lhs = sigma_word(w1, sigma_word(w2, v));
        GaussVector rhs = sigma_word(w12, v);
        last_l = to_string(lhs);
        last_r = to_string(rhs);
        auto s = compare_up_to_sign(lhs, rhs);
        if (!s) return CheckCase::fail(name, last_l, last_r, "not proportional by a sign");
        if (sign && *sign != *s)
            return CheckCase::fail(name, last_l, last_r, "SignInconsistent: sign depends on the probe");
        sign = s;
    }
    return CheckCase::pass(name, last_l, last_r, sign);
}

// Tries a ladder of Fresnel scales; a word pair may degenerate at finitely
// many scales (an intermediate quadratic coefficient can hit zero), in which
// case the next scale is tried.
inline CheckCase cocycle_case_auto(const std::string& name, const GeneratorWord& w1, const GeneratorWord& w2,
                                   const GeneratorWord& w12, const JetContext& ctx, size_t n,
                                   unsigned max_degree = 2) {
    static const long scales[] = {1, -1, 2, -2, 3, -3, 5, -5};
    std::string last_error;
    for (long c : scales) {
        try {
            auto probes = fresnel_probes(n, ctx, Rational(c), max_degree);
            return cocycle_case(name, w1, w2, w12, probes);
        } catch (const NonIntegrablePhase& e) {
            last_error = e.what();
        } catch (const BranchUndetermined& e) {
            last_error = e.what();
        }
    }
    return CheckCase::error(name, "no branch-safe Fresnel scale found: " + last_error);
}

// n = 1: random SL(2, Q) pairs, the third word from the factorization.
// n = 2: instances of word relations with known alternative factorizations.
inline Report cocycle_check_suite(const JetContext& ctx, size_t n, unsigned samples, std::uint64_t seed) {
    Report rep{"cocycle", {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    auto rand_q = [&]() {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    auto rand_nonzero = [&]() {
        Rational q;
        do {
            q = rand_q();
        } while (sgn(q) == 0);
        return q;
    };
    if (n == 1) {
        auto rand_sl2 = [&]() {
            // a d - b c = 1 with a != 0
            Rational a = rand_nonzero(), b = rand_q(), c = rand_q();
            Rational d = (1 + b * c) / a;
            QMatrix m(2, 2);
            m.at(0, 0) = a;
            m.at(0, 1) = b;
            m.at(1, 0) = c;
            m.at(1, 1) = d;
            return SymplecticMatrix(m);
        };
        for (unsigned trial = 0; trial < samples; ++trial) {
            SymplecticMatrix m1 = rand_sl2(), m2 = rand_sl2();
            GeneratorWord w1 = factorize(m1), w2 = factorize(m2);
            GeneratorWord w12 = factorize(SymplecticMatrix(m1.m * m2.m));
            rep.add(cocycle_case_auto("cocycle-pair-" + std::to_string(trial), w1, w2, w12, ctx, 1));
        }
        return rep;
    }
    // relation templates for n >= 2
    auto rand_gl = [&]() {
        QMatrix A(n, n);
        do {
            for (auto& e : A.data) e = rand_q();
        } while (FieldOps<Rational>::is_zero(A.det()));
        return A;
    };
    auto rand_sym = [&]() {
        QMatrix C(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) C.at(i, j) = C.at(j, i) = rand_q();
        return C;
    };
    for (unsigned trial = 0; trial < samples; ++trial) {
        GeneratorWord w1(n, {}), w2(n, {}), w12(n, {});
        switch (trial % 5) {
            case 0: {  // DiagA(A) DiagA(B) = DiagA(AB)
                QMatrix A = rand_gl(), B = rand_gl();
                w1.gens = {DiagGen{A}};
                w2.gens = {DiagGen{B}};
                w12.gens = {DiagGen{A * B}};
                break;
            }
            case 1: {  // LowerC(C1) LowerC(C2) = LowerC(C1 + C2)
                QMatrix C1 = rand_sym(), C2 = rand_sym();
                w1.gens = {LowerGen{C1}};
                w2.gens = {LowerGen{C2}};
                w12.gens = {LowerGen{C1 + C2}};
                break;
            }
            case 2: {  // J DiagA(A) = DiagA(A^{-t}) J
                QMatrix A = rand_gl();
                w1.gens = {JGen{}};
                w2.gens = {DiagGen{A}, LowerGen{rand_sym()}};
                // J DiagA(A) LowerC(C) = DiagA(A^{-t}) J LowerC(C)
                w12.gens = {DiagGen{A.inverse().transpose()}, JGen{}, w2.gens[1]};
                break;
            }
            case 3: {  // J^2 = DiagA(-I), projectively
                w1.gens = {JGen{}};
                w2.gens = {JGen{}, DiagGen{rand_gl()}};
                QMatrix minus = QMatrix::identity(n) * Rational(-1);
                w12.gens = {DiagGen{minus}, std::get<DiagGen>(w2.gens[1])};
                break;
            }
            default: {  // empty second word
                QMatrix A = rand_gl();
                w1.gens = {DiagGen{A}, JGen{}};
                w2.gens = {};
                w12.gens = w1.gens;
                break;
            }
        }
        rep.add(cocycle_case_auto("cocycle-relation-" + std::to_string(trial), w1, w2, w12, ctx, n, 1));
    }
    return rep;
}

// --- intertwiners -------------------------------------------------------------

// Realization change between the two standard Lagrangians: the raw kernel
// transform with kernel exp(2 tau i s x^t y) (no jet prefactor, no zeta^n).
inline GaussVector lagrangian_intertwiner(const GaussVector& v) {
    return v.kernel_transform(v.ctx.constant(Scalar::i() * Rational(2)));
}
// Two-sided inverse: kernel exp(-2 tau i s x^t y) times the central factor s^n.
inline GaussVector lagrangian_intertwiner_inverse(const GaussVector& v) {
    GaussVector raw = v.kernel_transform(v.ctx.constant(Scalar::i() * Rational(-2)));
    JetScalar s_pow = v.ctx.one();
    for (size_t j = 0; j < v.vars; ++j) s_pow *= v.ctx.of_s();
    return raw * s_pow;
}

// Square-class dilation x -> sqrt(s) x; s0 must be a perfect rational square.
inline GaussVector square_class_intertwiner(const GaussVector& v) {
    auto [root, d] = rational_sqrt_parts(v.ctx.s0);
    if (d != 1) throw NonSquareBase();
    (void)root;
    return v.jet_dilate(v.ctx.of_s().sqrt());
}
inline GaussVector square_class_intertwiner_inverse(const GaussVector& v) {
    auto [root, d] = rational_sqrt_parts(v.ctx.s0);
    if (d != 1) throw NonSquareBase();
    (void)root;
    return v.jet_dilate(v.ctx.of_s().sqrt().inverse());
}

inline Report intertwiner_check(const JetContext& ctx, size_t n, unsigned jet_samples, std::uint64_t seed) {
    Report rep{"intertwiners", {}};
    auto probes = hermite_probes(n, ctx, n == 1 ? 4 : 2);
    // invertibility and H-equivariance of the Lagrangian change
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    auto rand_q = [&]() {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    QMatrix Jm = symplectic_form(n);
    int idx = 0;
    for (const auto& v : probes) {
        std::string tag = "-probe-" + std::to_string(idx++);
        GaussVector round = lagrangian_intertwiner_inverse(lagrangian_intertwiner(v));
        rep.add(round == v ? CheckCase::pass("lagrangian-roundtrip" + tag, to_string(round), to_string(v))
                           : CheckCase::fail("lagrangian-roundtrip" + tag, to_string(round), to_string(v)));
        HeisenbergElement h;
        h.a.resize(n);
        h.b.resize(n);
        for (size_t j = 0; j < n; ++j) {
            h.a[j] = rand_q();
            h.b[j] = rand_q();
        }
        h.t = rand_q();
        GaussVector lhs = lagrangian_intertwiner(rho(h, v));
        GaussVector rhs = rho(symplectic_on_heisenberg(Jm, h), lagrangian_intertwiner(v));
        rep.add(lhs == rhs ? CheckCase::pass("lagrangian-equivariance" + tag, to_string(lhs), to_string(rhs))
                           : CheckCase::fail("lagrangian-equivariance" + tag, to_string(lhs), to_string(rhs)));
    }
    // square-class dilation conjugates the s-operators into the s = 1 operators
    auto [root, d] = rational_sqrt_parts(ctx.s0);
    (void)root;
    if (d == 1) {
        JetScalar s_inv = ctx.of_s().inverse();
        int pidx = 0;
        for (const auto& v : probes) {
            std::string tag = "-probe-" + std::to_string(pidx++);
            // identity: square_class at s0 = 1 is the identity map at jet
            // order 1 (the classical case; at higher order sqrt(s) != 1)
            if (ctx.s0 == 1 && ctx.order == 1) {
                GaussVector sc = square_class_intertwiner(v);
                rep.add(sc == v ? CheckCase::pass("square-class-identity" + tag, to_string(sc), to_string(v))
                                : CheckCase::fail("square-class-identity" + tag, to_string(sc), to_string(v)));
            }
            GaussVector back = square_class_intertwiner_inverse(square_class_intertwiner(v));
            rep.add(back == v ? CheckCase::pass("square-class-roundtrip" + tag, to_string(back), to_string(v))
                              : CheckCase::fail("square-class-roundtrip" + tag, to_string(back), to_string(v)));
            // DiagA commutes with the dilation
            QMatrix A(n, n);
            do {
                for (auto& e : A.data) e = rand_q();
            } while (FieldOps<Rational>::is_zero(A.det()));
            GaussVector lhs = square_class_intertwiner_inverse(
                sigma_generator(DiagGen{A}, square_class_intertwiner(v)));
            GaussVector rhs = sigma_generator(DiagGen{A}, v);
            rep.add(lhs == rhs
                        ? CheckCase::pass("square-class-diag" + tag, to_string(lhs), to_string(rhs))
                        : CheckCase::fail("square-class-diag" + tag, to_string(lhs), to_string(rhs)));
            // LowerC conjugates to the classical phase exp(-tau i x^t C x)
            QMatrix C(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j2 = i; j2 < n; ++j2) C.at(i, j2) = C.at(j2, i) = rand_q();
            GaussVector lhs2 = square_class_intertwiner_inverse(
                sigma_generator(LowerGen{C}, square_class_intertwiner(v)));
            GaussPoly expoly;
            for (size_t i = 0; i < n; ++i)
                for (size_t j2 = i; j2 < n; ++j2) {
                    Rational cc = C.at(i, j2);
                    if (i != j2) cc += C.at(j2, i);
                    if (sgn(cc) == 0) continue;
                    MultiIndex mi = zero_index(n);
                    mi[i] += 1;
                    mi[j2] += 1;
                    poly_add_term(expoly, mi, s_inv * (Scalar::i() * (-cc)));
                }
            GaussVector rhs2 = expoly.empty() ? v : v.mul_exponent(expoly);
            rep.add(lhs2 == rhs2
                        ? CheckCase::pass("square-class-lower" + tag, to_string(lhs2), to_string(rhs2))
                        : CheckCase::fail("square-class-lower" + tag, to_string(lhs2), to_string(rhs2)));
            // J conjugates to the kernel at s = 1 (n = 1 normalization)
            if (n == 1) {
                GaussVector lhs3 =
                    square_class_intertwiner_inverse(sigma_generator(JGen{}, square_class_intertwiner(v)));
                GaussVector rhs3 = v.kernel_transform(s_inv * (Scalar::i() * Rational(2))) * Scalar::zeta(1);
                rep.add(lhs3 == rhs3
                            ? CheckCase::pass("square-class-J" + tag, to_string(lhs3), to_string(rhs3))
                            : CheckCase::fail("square-class-J" + tag, to_string(lhs3), to_string(rhs3)));
            }
        }
    } else {
        rep.add(CheckCase::info("square-class-skipped", "s0 is not a perfect rational square"));
    }
    // projective-line involution identity on random jets:
    // iota(s a) = shat^{-1} iota(a)  and  shat iota(a) = iota(s^{-1} a)
    for (unsigned trial = 0; trial < jet_samples; ++trial) {
        JetScalar a(ctx.s0, ctx.order);
        std::uniform_int_distribution<long> rnum(-5, 5);
        for (auto& c : a.coeff) {
            long x = rnum(rng), y = rnum(rng);
            c = Scalar(Rational(x)) + Scalar::i() * Rational(y);
        }
        JetScalar s_jet = JetScalar::of_s(ctx.s0, ctx.order);
        JetScalar shat_jet = JetScalar::of_s(1 / ctx.s0, ctx.order);
        bool ok = involution(s_jet * a) == involution(a) * shat_jet.inverse() &&
                  shat_jet * involution(a) == involution(s_jet.inverse() * a) &&
                  involution(involution(a)) == a;
        std::string name = "involution-identity-" + std::to_string(trial);
        rep.add(ok ? CheckCase::pass(name, to_string(involution(s_jet * a)),
                                     to_string(involution(a) * shat_jet.inverse()))
                   : CheckCase::fail(name, to_string(involution(s_jet * a)),
                                     to_string(involution(a) * shat_jet.inverse())));
    }
    return rep;
}

// --- pairing invariance --------------------------------------------------------

inline Report pairing_invariance_check(const JetContext& ctx, size_t n, unsigned samples, std::uint64_t seed) {
    Report rep{"pairing", {}};
    auto probes = hermite_probes(n, ctx, n == 1 ? 3 : 2);
    // the classical scalar product: <g, g> = (2s)^{-n/2}
    {
        GaussVector g = monomial_probe(ctx, zero_index(n), ComplexRational(Rational(-1)));
        JetScalar expected = ctx.one();
        JetScalar two_s_root_inv = (ctx.of_s() * Rational(2)).sqrt().inverse();
        for (size_t j = 0; j < n; ++j) expected *= two_s_root_inv;
        JetScalar got = pairing_jet(g, g);
        rep.add(got == expected ? CheckCase::pass("gaussian-pairing-value", to_string(got), to_string(expected))
                                : CheckCase::fail("gaussian-pairing-value", to_string(got), to_string(expected)));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    auto rand_q = [&]() {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    for (unsigned trial = 0; trial < samples; ++trial) {
        const GaussVector& f = probes[trial % probes.size()];
        const GaussVector& g = probes[(trial / probes.size() + trial) % probes.size()];
        std::string tag = "-" + std::to_string(trial);
        // Z acts through chi_s on the left slot
        HeisenbergElement z;
        z.a.assign(n, Rational(0));
        z.b.assign(n, Rational(0));
        z.t = rand_q();
        GaussVector lhs = pairing_full(rho(z, f), g);
        GaussPoly expc{{MultiIndex{}, ctx.constant(Scalar::i() * (z.t * 2))}};
        GaussVector rhs = pairing_full(f, g);
        rhs = expc.at(MultiIndex{}).is_zero() ? rhs : rhs.mul_exponent(expc);
        rep.add(lhs == rhs ? CheckCase::pass("pairing-central" + tag, to_string(lhs), to_string(rhs))
                           : CheckCase::fail("pairing-central" + tag, to_string(lhs), to_string(rhs)));
        // t = 0 elements leave the pairing invariant
        HeisenbergElement h;
        h.a.resize(n);
        h.b.resize(n);
        for (size_t j = 0; j < n; ++j) {
            h.a[j] = rand_q();
            h.b[j] = rand_q();
        }
        h.t = 0;
        GaussVector both = pairing_full(rho(h, f), rho(h, g));
        GaussVector base = pairing_full(f, g);
        rep.add(both == base ? CheckCase::pass("pairing-heisenberg" + tag, to_string(both), to_string(base))
                             : CheckCase::fail("pairing-heisenberg" + tag, to_string(both), to_string(base)));
        // diagonal metaplectic invariance up to sign
        QMatrix A(n, n);
        do {
            for (auto& e : A.data) e = rand_q();
        } while (FieldOps<Rational>::is_zero(A.det()));
        QMatrix C(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) C.at(i, j) = C.at(j, i) = rand_q();
        std::vector<Generator> gens{DiagGen{A}, LowerGen{C}, JGen{}};
        const char* gen_names[] = {"diag", "lower", "J"};
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            GaussVector l2 = pairing_full(sigma_generator(gens[gi], f), sigma_generator(gens[gi], g));
            auto s = compare_up_to_sign(l2, base);
            std::string name = std::string("pairing-sigma-") + gen_names[gi] + tag;
            rep.add(s ? CheckCase::pass(name, to_string(l2), to_string(base), s)
                      : CheckCase::fail(name, to_string(l2), to_string(base)));
        }
    }
    return rep;
}

}  // namespace jetweil
