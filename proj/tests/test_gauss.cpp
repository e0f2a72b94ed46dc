#include <catch2/catch_amalgamated.hpp>

#include "jetweil/gauss.hpp"
#include "test_support.hpp"

using namespace jetweil;
using jetweil::testing::Rng;

namespace {

CMatrix scalar_q(const ComplexRational& v) {
    CMatrix q(1, 1);
    q.at(0, 0) = v;
    return q;
}

// x^m exp(-tau s x^2)
GaussVector hermite(const JetContext& ctx, unsigned m) {
    GaussPoly p;
    p.emplace(MultiIndex{m}, ctx.one());
    return GaussVector::from_parts(1, ctx, scalar_q(ComplexRational(Rational(-1))), std::move(p));
}

// x^m exp(tau s i c x^2), pure Fresnel phase
GaussVector fresnel(const JetContext& ctx, unsigned m, const Rational& c) {
    GaussPoly p;
    p.emplace(MultiIndex{m}, ctx.one());
    return GaussVector::from_parts(1, ctx, scalar_q(ComplexRational(Rational(0), c)), std::move(p));
}

JetScalar tau_s(const JetContext& ctx) { return ctx.of_s() * Scalar::tau(1); }

}  // namespace

TEST_CASE("parity and differentiate basics") {
    JetContext ctx{Rational(1), 2};
    GaussVector xg = hermite(ctx, 1);
    CHECK(xg.parity() == -xg);
    CHECK(hermite(ctx, 0).parity() == hermite(ctx, 0));

    // d/dx exp(-tau s x^2) = -2 tau s x exp(-tau s x^2)
    GaussVector dg = hermite(ctx, 0).differentiate(0);
    GaussVector expected = xg * (tau_s(ctx) * Rational(-2));
    CHECK(dg == expected);
}

TEST_CASE("translate completes the square into tag, linear part and series") {
    JetContext ctx{Rational(1), 3};
    GaussVector g = hermite(ctx, 0);
    GaussVector moved = g.translate({Rational(1)});

    REQUIRE(moved.terms.size() == 1);
    const GaussTerm& t = moved.terms[0];
    // exp(-tau s (x-1)^2) = U^{-1} exp(-tau eps) exp(tau s(-x^2 + 2x))
    CHECK(t.tag == ComplexRational(Rational(-1)));
    CHECK(t.phase.Q.at(0, 0) == ComplexRational(Rational(-1)));
    CHECK(t.phase.l[0] == ctx.constant(Rational(2)));
    JetScalar c = t.poly.at(zero_index(1));
    CHECK(c.coeff[0] == Scalar::one());
    CHECK(c.coeff[1] == -Scalar::tau(1));
    CHECK(c.coeff[2] == Scalar::tau(2) * Rational(1, 2));

    // translating back is the identity
    CHECK(moved.translate({Rational(-1)}) == g);
    CHECK(g.translate({Rational(0)}) == g);
}

TEST_CASE("gauss_integrate on Gaussian moments") {
    for (long s0 : {1L, 2L, 4L}) {
        for (int order : {1, 2, 3}) {
            JetContext ctx{Rational(s0), order};
            JetScalar s = ctx.of_s();
            // int exp(-tau s y^2) dy = s^{-1/2}
            GaussVector g0 = hermite(ctx, 0).gauss_integrate({0});
            REQUIRE(g0.terms.size() == 1);
            CHECK(g0.vars == 0);
            CHECK(g0.terms[0].poly.at(MultiIndex{}) == s.sqrt().inverse());
            // odd moment vanishes
            CHECK(hermite(ctx, 1).gauss_integrate({0}).is_zero());
            // int y^2 exp(-tau s y^2) dy = (2 tau s)^{-1} s^{-1/2}
            GaussVector g2 = hermite(ctx, 2).gauss_integrate({0});
            JetScalar expected = s.sqrt().inverse() * (s.inverse() * Scalar::tau(-1)) * Rational(1, 2);
            REQUIRE(g2.terms.size() == 1);
            CHECK(g2.terms[0].poly.at(MultiIndex{}) == expected);
        }
    }
}

TEST_CASE("moment recursion (integration by parts oracle)") {
    // int y^{2m} g dy = (2m-1)/(2 tau s) int y^{2m-2} g dy
    JetContext ctx{Rational(1), 3};
    for (unsigned m = 1; m <= 4; ++m) {
        GaussVector lhs = hermite(ctx, 2 * m).gauss_integrate({0});
        GaussVector rhs = hermite(ctx, 2 * m - 2).gauss_integrate({0}) *
                          (tau_s(ctx).inverse() * Rational(2 * m - 1, 2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("fresnel integration uses the fixed branch") {
    JetContext ctx{Rational(1), 2};
    // int exp(tau s i y^2) dy = (-i s)^{-1/2} = zeta s^{-1/2}
    GaussVector f = fresnel(ctx, 0, Rational(1)).gauss_integrate({0});
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].poly.at(MultiIndex{}) == ctx.of_s().sqrt().inverse() * Scalar::zeta(1));
    // mixed real/imaginary quadratic coefficient is an honest branch error
    GaussVector mixed = GaussVector::from_parts(1, ctx, scalar_q(ComplexRational(Rational(-1), Rational(1))),
                                                GaussPoly{{MultiIndex{0}, ctx.one()}});
    CHECK_THROWS_AS(mixed.gauss_integrate({0}), BranchUndetermined);
    // no quadratic part at all
    GaussVector flat = GaussVector::from_parts(1, ctx, scalar_q(ComplexRational(Rational(0))),
                                               GaussPoly{{MultiIndex{0}, ctx.one()}});
    CHECK_THROWS_AS(flat.gauss_integrate({0}), NonIntegrablePhase);
    // positive real part is rejected at construction
    CHECK_THROWS_AS(GaussVector::from_parts(1, ctx, scalar_q(ComplexRational(Rational(1))),
                                            GaussPoly{{MultiIndex{0}, ctx.one()}}),
                    NonIntegrablePhase);
}

TEST_CASE("fourier fixed point and inversion") {
    for (long s0 : {1L, 4L, 9L}) {
        for (int order = 1; order <= 4; ++order) {
            JetContext ctx{Rational(s0), order};
            GaussVector g = hermite(ctx, 0);
            CHECK(g.fourier(-1) == g);  // sqrt(s) prefactor cancels s^{-1/2}
            for (unsigned m = 0; m <= 4; ++m) {
                GaussVector v = hermite(ctx, m);
                // (F_s^{-1})^2 = parity
                CHECK(v.fourier(-1).fourier(-1) == v.parity());
                // F_s o F_s^{-1} = id
                CHECK(v.fourier(-1).fourier(1) == v);
            }
        }
    }
    JetContext ctx{Rational(1), 2};
    CHECK(GaussVector::zero(1, ctx).fourier(-1).is_zero());
}

TEST_CASE("pairing examples") {
    for (long s0 : {1L, 4L}) {
        JetContext ctx{Rational(s0), 3};
        GaussVector g = hermite(ctx, 0);
        // <g, g> = (2s)^{-1/2}
        JetScalar two_s = ctx.of_s() * Rational(2);
        CHECK(pairing_jet(g, g) == two_s.sqrt().inverse());
        // odd integrand
        CHECK(pairing_jet(hermite(ctx, 1), g).is_zero());
    }
}

TEST_CASE("pairing is conjugate-symmetric under swapping") {
    // <f, g> with our conjugation convention satisfies <g, f> = conj_s(<f, g>)
    // where conj_s conjugates coefficients (s is fixed).
    Rng rng(404);
    JetContext ctx{Rational(1), 2};
    for (int trial = 0; trial < 50; ++trial) {
        unsigned mf = rng() % 4, mg = rng() % 4;
        JetScalar cf = jetweil::testing::rand_jet(rng, ctx.s0, ctx.order, 1);
        JetScalar cg = jetweil::testing::rand_jet(rng, ctx.s0, ctx.order, 1);
        GaussVector f = hermite(ctx, mf) * cf;
        GaussVector g = hermite(ctx, mg) * cg;
        GaussVector fg = pairing_full(f, g);
        GaussVector gf = pairing_full(g, f);
        CHECK(gf == fg.conjugate());
    }
}

TEST_CASE("integration commutes with spectator multiplication") {
    // 2 variables: integrate var 1; multiplying by a polynomial in var 0
    // first or last gives the same answer.
    JetContext ctx{Rational(1), 2};
    CMatrix Q(2, 2);
    Q.at(0, 0) = ComplexRational(Rational(-1));
    Q.at(1, 1) = ComplexRational(Rational(-2));
    Q.at(0, 1) = Q.at(1, 0) = ComplexRational(Rational(0), Rational(1, 2));
    GaussPoly p;
    p.emplace(MultiIndex{0, 2}, ctx.one());
    GaussVector v = GaussVector::from_parts(2, ctx, Q, p);
    GaussPoly spectator;
    spectator.emplace(MultiIndex{3, 0}, ctx.constant(Rational(5)));
    spectator.emplace(MultiIndex{1, 0}, ctx.one());
    GaussVector lhs = v.mul_poly(spectator).gauss_integrate({1});
    GaussPoly spectator_low;
    spectator_low.emplace(MultiIndex{3}, ctx.constant(Rational(5)));
    spectator_low.emplace(MultiIndex{1}, ctx.one());
    GaussVector rhs = v.gauss_integrate({1}).mul_poly(spectator_low);
    CHECK(lhs == rhs);
}

TEST_CASE("differentiate commutes with translate") {
    JetContext ctx{Rational(1), 2};
    for (unsigned m = 0; m <= 3; ++m) {
        GaussVector v = hermite(ctx, m);
        std::vector<Rational> a{Rational(2, 3)};
        CHECK(v.differentiate(0).translate(a) == v.translate(a).differentiate(0));
    }
}

TEST_CASE("linear substitution") {
    JetContext ctx{Rational(1), 2};
    GaussVector v = hermite(ctx, 2);
    QMatrix m(1, 1);
    m.at(0, 0) = Rational(2);
    // v(2x): poly picks up 4 x^2, phase exponent -4 tau s x^2
    GaussVector w = v.linear_substitute(m);
    REQUIRE(w.terms.size() == 1);
    CHECK(w.terms[0].phase.Q.at(0, 0) == ComplexRational(Rational(-4)));
    CHECK(w.terms[0].poly.at(MultiIndex{2}) == ctx.constant(Rational(4)));
    QMatrix sing(1, 1);
    CHECK_THROWS_AS(v.linear_substitute(sing), SingularSubstitution);

    // substitution by M then by M^{-1} is the identity
    Rng rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix r(2, 2);
        do {
            for (auto& e : r.data) e = jetweil::testing::rand_rational(rng, 3, 3);
        } while (FieldOps<Rational>::is_zero(r.det()));
        CMatrix Q(2, 2);
        Q.at(0, 0) = ComplexRational(Rational(-1));
        Q.at(1, 1) = ComplexRational(Rational(-1));
        GaussPoly p;
        p.emplace(MultiIndex{1, 2}, ctx.one());
        GaussVector u = GaussVector::from_parts(2, ctx, Q, p);
        CHECK(u.linear_substitute(r).linear_substitute(r.inverse()) == u);
    }
}

TEST_CASE("jet dilation re-expands exactly") {
    // x -> sqrt(s) x at a perfect square base: on exp(-tau s x^2) the
    // exponent becomes -tau s^2 x^2, re-expanded with Q = -s0 and nilpotent
    // corrections in the polynomial.
    JetContext ctx{Rational(4), 2};
    JetScalar root = ctx.of_s().sqrt();
    GaussVector g = hermite(ctx, 0);
    GaussVector d = g.jet_dilate(root);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].phase.Q.at(0, 0) == ComplexRational(Rational(-4)));
    // exp(-tau eps s x^2) series: coefficient of eps^1 is -tau s0 x^2 (order 2)
    CHECK(d.terms[0].poly.count(MultiIndex{2}) == 1);
    // undo with the inverse dilation
    CHECK(d.jet_dilate(root.inverse()) == g);
}

TEST_CASE("tag folding turns quarter-integer central phases into roots of unity") {
    JetContext ctx{Rational(1), 2};
    GaussVector g = hermite(ctx, 0);
    // multiply by exp(tau s * i/2): 4 * s0 * 1/2 = 2, so this folds to z^2 = i
    GaussPoly expc{{zero_index(1), ctx.constant(Scalar::i() * Rational(1, 2))}};
    GaussVector v = g.mul_exponent(expc);
    REQUIRE(v.terms.size() == 1);
    CHECK(v.terms[0].tag.is_zero());
    JetScalar c = v.terms[0].poly.at(zero_index(1));
    CHECK(c.coeff[0] == Scalar::i());
    // a constant exponent outside Q(i) cannot be split into a tag
    GaussPoly bad{{zero_index(1), ctx.constant(sqrt_positive_rational(Rational(2)))}};
    CHECK_THROWS_AS(g.mul_exponent(bad), ConstantPhaseNotExpandable);
    // shape errors
    CHECK_THROWS_AS(g.translate({Rational(1), Rational(2)}), DimensionMismatch);
    CHECK_THROWS_AS(g.differentiate(3), DimensionMismatch);
    // exp(tau s * i/3) = zeta * exp(tau s * i/12) canonically: the integer
    // multiple of 1/(4 s0) folds, the remainder stays formal in [0, 1/(4 s0))
    GaussPoly expf{{zero_index(1), ctx.constant(Scalar::i() * Rational(1, 3))}};
    GaussVector w = g.mul_exponent(expf);
    REQUIRE(w.terms.size() == 1);
    CHECK(w.terms[0].tag == ComplexRational(Rational(0), Rational(1, 12)));
    CHECK(w.terms[0].poly.at(zero_index(1)).coeff[0] == Scalar::zeta(1));
    // tags differing by a whole fold compare equal after normalization
    GaussPoly expg{{zero_index(1), ctx.constant(Scalar::i() * Rational(-2, 3))}};
    GaussVector u = g.mul_exponent(expf).mul_exponent(expg);
    GaussPoly exph{{zero_index(1), ctx.constant(Scalar::i() * Rational(-1, 3))}};
    CHECK(u == g.mul_exponent(exph));
}
