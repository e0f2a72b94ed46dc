#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "jetweil/weyl.hpp"
#include "test_support.hpp"

using namespace jetweil;
using jetweil::testing::Rng;

namespace {

using SOp = WeylOp<Scalar>;

SOp s_x(size_t n, size_t j) { return SOp::x(n, j, Scalar::one()); }
SOp s_d(size_t n, size_t j) { return SOp::d(n, j, Scalar::one()); }

// Independent oracle: Weyl operators act on polynomials; the product must
// agree with composition of actions.
using Poly = std::map<MultiIndex, Scalar>;

Poly act(const SOp& op, const Poly& p) {
    Poly out;
    for (const auto& [key, coeff] : op.terms) {
        const auto& [xe, de] = key;
        for (const auto& [mono, c] : p) {
            MultiIndex m = mono;
            Rational factor(1);
            bool killed = false;
            for (size_t v = 0; v < op.vars && !killed; ++v) {
                for (unsigned j = 0; j < de[v]; ++j) {
                    if (m[v] == 0) {
                        killed = true;
                        break;
                    }
                    factor *= Rational(m[v]);
                    --m[v];
                }
            }
            if (killed) continue;
            for (size_t v = 0; v < op.vars; ++v) m[v] += xe[v];
            Scalar add = coeff * c * factor;
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(m, add);
            else {
                it->second += add;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

SOp rand_weyl(Rng& rng, size_t n, unsigned max_exp = 2, int max_terms = 3) {
    SOp op(n);
    std::uniform_int_distribution<unsigned> e(0, max_exp);
    std::uniform_int_distribution<int> nt(1, max_terms);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        MultiIndex xe(n), de(n);
        for (size_t v = 0; v < n; ++v) {
            xe[v] = e(rng);
            de[v] = e(rng);
        }
        op.add_term(xe, de, jetweil::testing::rand_scalar(rng, 2));
    }
    return op;
}

}  // namespace

TEST_CASE("canonical commutation") {
    SOp dx = s_d(1, 0) * s_x(1, 0);
    SOp expected = SOp::monomial(1, {1}, {1}, Scalar::one()) + SOp::constant(1, Scalar::one());
    CHECK(dx == expected);
    CHECK(s_x(1, 0) * s_x(1, 0) == SOp::monomial(1, {2}, {0}, Scalar::one()));
}

TEST_CASE("d^2 x^2 normal form") {
    SOp d2 = s_d(1, 0) * s_d(1, 0);
    SOp x2 = s_x(1, 0) * s_x(1, 0);
    SOp prod = d2 * x2;
    SOp expected = SOp::monomial(1, {2}, {2}, Scalar::one()) +
                   SOp::monomial(1, {1}, {1}, Scalar(Rational(4))) + SOp::constant(1, Scalar(Rational(2)));
    CHECK(prod == expected);
}

TEST_CASE("product agrees with composition of polynomial actions") {
    Rng rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 1 + rng() % 2;
        SOp a = rand_weyl(rng, n), b = rand_weyl(rng, n);
        SOp ab = a * b;
        // probe on all monomials of degree <= 4
        MultiIndex mono(n, 0);
        for (;;) {
            Poly p{{mono, Scalar::one()}};
            CHECK((act(ab, p) == act(a, act(b, p))));
            size_t pos = 0;
            while (pos < n) {
                if (mono[pos] < 4) {
                    ++mono[pos];
                    break;
                }
                mono[pos] = 0;
                ++pos;
            }
            if (pos == n) break;
        }
    }
}

TEST_CASE("associativity and Jacobi on random triples") {
    Rng rng(202);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 1 + rng() % 2;
        SOp a = rand_weyl(rng, n), b = rand_weyl(rng, n), c = rand_weyl(rng, n);
        CHECK((a * b) * c == a * (b * c));
        SOp jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                  commutator(c, commutator(a, b));
        CHECK(jac.is_zero());
    }
    CHECK_THROWS_AS(rand_weyl(rng, 1) * rand_weyl(rng, 2), ArityMismatch);
}

TEST_CASE("commutator examples and the Euler operator") {
    SOp d2 = s_d(1, 0) * s_d(1, 0);
    SOp x2 = s_x(1, 0) * s_x(1, 0);
    SOp E = SOp::monomial(1, {1}, {1}, Scalar::one()) + SOp::constant(1, Scalar(Rational(1, 2)));
    CHECK(commutator(d2, x2) == E * Rational(4));
    CHECK(commutator(E, x2) == x2 * Rational(2));
    CHECK(commutator(E, d2) == d2 * Rational(-2));
    CHECK(commutator(s_x(1, 0), x2).is_zero());
}

TEST_CASE("dsigma reproduces the sl2 generator formulas") {
    auto ctx = jet_weyl_context(Rational(1), 2);
    QMatrix zero(1, 1), one(1, 1);
    one.at(0, 0) = 1;
    SpElement Y(1, zero, zero, one);   // lower nilpotent
    SpElement X(1, zero, one, zero);   // upper nilpotent
    QMatrix a(1, 1);
    a.at(0, 0) = 1;
    SpElement H(1, a, zero, zero);     // diagonal

    // sigma(Y) = -tau i s x^2
    WeylOp<JetScalar> sy = dsigma(Y, ctx);
    WeylOp<JetScalar> expect_y =
        WeylOp<JetScalar>::monomial(1, {2}, {0}, ctx.tau * ctx.imag * ctx.s * Rational(-1));
    CHECK(sy == expect_y);

    // sigma(H) = -x d - 1/2 = -E
    WeylOp<JetScalar> sh = dsigma(H, ctx);
    WeylOp<JetScalar> expect_h = WeylOp<JetScalar>::monomial(1, {1}, {1}, ctx.embed(Rational(-1))) +
                                 WeylOp<JetScalar>::constant(1, ctx.embed(Rational(-1, 2)));
    CHECK(sh == expect_h);

    // sigma(X) = (4 tau i s)^{-1} d^2
    WeylOp<JetScalar> sx = dsigma(X, ctx);
    WeylOp<JetScalar> expect_x = WeylOp<JetScalar>::monomial(
        1, {0}, {2}, ctx.tau_inv * ctx.imag * ctx.s_inv * Rational(-1, 4));
    CHECK(sx == expect_x);

    // the sl2 relations
    CHECK(commutator(sx, sy) == sh);
    CHECK(commutator(sh, sx) == sx * Rational(2));
    CHECK(commutator(sh, sy) == sy * Rational(-2));

    // (H, H) commutes
    CHECK(commutator(sh, sh).is_zero());
}

TEST_CASE("dsigma is a Lie algebra homomorphism") {
    for (size_t n : {size_t{1}, size_t{2}}) {
        for (long s0 : {1L, 2L}) {
            for (int order : {1, 2}) {
                auto ctx = jet_weyl_context(Rational(s0), order);
                auto failures = bracket_homomorphism_failures(n, ctx);
                CHECK(failures.empty());
            }
        }
    }
}

TEST_CASE("block form validation") {
    QMatrix bad(2, 2);
    bad.at(0, 0) = 1;
    bad.at(1, 1) = 1;  // D must equal -A^t = -1
    CHECK_THROWS_AS(SpElement::from_matrix(bad), NotInSp);
    QMatrix odd(3, 3);
    CHECK_THROWS_AS(SpElement::from_matrix(odd), NotInSp);
}

// ---------------------------------------------------------------------------
// dsigma over a formal invertible s: Laurent polynomials in S with Scalar
// coefficients, specialized to the jet of s afterwards.  The central factor
// must be transparent: specializing commutes with dsigma term by term.

namespace {

struct LaurentScalar {
    std::map<int, Scalar> c;

    bool is_zero() const { return c.empty(); }
    void insert(int p, const Scalar& v) {
        if (v.is_zero()) return;
        auto it = c.find(p);
        if (it == c.end())
            c.emplace(p, v);
        else {
            it->second += v;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    LaurentScalar operator-() const {
        LaurentScalar r;
        for (const auto& [p, v] : c) r.c.emplace(p, -v);
        return r;
    }
    LaurentScalar operator+(const LaurentScalar& o) const {
        LaurentScalar r = *this;
        for (const auto& [p, v] : o.c) r.insert(p, v);
        return r;
    }
    LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
    LaurentScalar operator*(const LaurentScalar& o) const {
        LaurentScalar r;
        for (const auto& [pa, va] : c)
            for (const auto& [pb, vb] : o.c) r.insert(pa + pb, va * vb);
        return r;
    }
    LaurentScalar operator*(const Rational& q) const {
        LaurentScalar r;
        if (sgn(q) == 0) return r;
        for (const auto& [p, v] : c) r.c.emplace(p, v * q);
        return r;
    }
    bool operator==(const LaurentScalar& o) const { return c == o.c; }
};

std::string to_string(const LaurentScalar&) { return "<laurent>"; }

LaurentScalar laurent(const Scalar& v, int power = 0) {
    LaurentScalar r;
    r.insert(power, v);
    return r;
}

JetScalar specialize(const LaurentScalar& v, const Rational& s0, int order) {
    JetScalar s = JetScalar::of_s(s0, order);
    JetScalar s_inv = s.inverse();
    JetScalar out(s0, order);
    for (const auto& [p, coeff] : v.c) {
        JetScalar pw = JetScalar::constant(Rational(1), s0, order);
        for (int j = 0; j < (p >= 0 ? p : -p); ++j) pw *= (p >= 0 ? s : s_inv);
        out += pw * coeff;
    }
    return out;
}

}  // namespace

TEST_CASE("central parameter is transparent") {
    WeylContext<LaurentScalar> lctx{laurent(Scalar::one()),        laurent(Scalar::one(), 1),
                                    laurent(Scalar::one(), -1),    laurent(Scalar::i()),
                                    laurent(Scalar::tau(1)),       laurent(Scalar::tau(-1))};
    for (long s0 : {1L, 2L, 4L}) {
        for (int order : {1, 2, 3}) {
            auto jctx = jet_weyl_context(Rational(s0), order);
            for (const auto& u : sp_basis(2)) {
                WeylOp<LaurentScalar> formal = dsigma(u, lctx);
                WeylOp<JetScalar> direct = dsigma(u, jctx);
                WeylOp<JetScalar> specialized(formal.vars);
                for (const auto& [k, v] : formal.terms)
                    specialized.add_term(k.first, k.second, specialize(v, Rational(s0), order));
                CHECK(specialized == direct);
            }
        }
    }
}
