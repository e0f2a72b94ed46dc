#include <catch2/catch_amalgamated.hpp>

#include "jetweil/jet.hpp"
#include "test_support.hpp"

using namespace jetweil;
using jetweil::testing::Rng;

namespace {

// Independent Taylor oracle for sqrt(s) at s0 > 0: coefficient of eps^j is
// binom(1/2, j) * s0^{1/2 - j}, i.e. sqrt(s0) * binom(1/2, j) * s0^{-j}.
JetScalar sqrt_jet_oracle(const Rational& s0, int order) {
    JetScalar r(s0, order);
    Scalar root = sqrt_positive_rational(s0);
    Rational p(1);
    for (int j = 0; j < order; ++j) {
        r.coeff[static_cast<size_t>(j)] = root * (binomial(Rational(1, 2), static_cast<unsigned>(j)) * p);
        p /= s0;
    }
    return r;
}

}  // namespace

TEST_CASE("inverse examples") {
    // d(1/s)/ds = -1/s^2 at s0 = 2
    JetScalar s = JetScalar::of_s(Rational(2), 2);
    JetScalar inv = s.inverse();
    CHECK(inv.coeff[0] == Scalar(Rational(1, 2)));
    CHECK(inv.coeff[1] == Scalar(Rational(-1, 4)));

    // geometric-series oracle: 1/(1+eps+eps^2) = 1 - eps + O(eps^3)
    JetScalar g(Rational(1), 3);
    g.coeff[0] = g.coeff[1] = g.coeff[2] = Scalar::one();
    JetScalar ginv = g.inverse();
    CHECK(ginv.coeff[0] == Scalar::one());
    CHECK(ginv.coeff[1] == -Scalar::one());
    CHECK(ginv.coeff[2] == Scalar::zero());
}

TEST_CASE("inverse is two-sided on random unit jets") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Rational base = jetweil::testing::rand_nonzero_rational(rng);
        int order = 1 + static_cast<int>(rng() % 4);
        JetScalar a = jetweil::testing::rand_unit_jet(rng, base, order);
        JetScalar one = JetScalar::constant(Rational(1), base, order);
        CHECK(a * a.inverse() == one);
        CHECK(a.inverse() * a == one);
    }
    JetScalar s = JetScalar::of_s(Rational(3), 2);
    CHECK(s * s.inverse() == JetScalar::constant(Rational(1), Rational(3), 2));
    JetScalar nonunit(Rational(1), 2);
    nonunit.coeff[1] = Scalar::one();
    CHECK_THROWS_AS(nonunit.inverse(), NonUnitLeadingCoefficient);
    CHECK_THROWS_AS(s + JetScalar::of_s(Rational(4), 2), BaseMismatch);
}

TEST_CASE("sqrt of the coordinate jet") {
    // order 2 at s0 = 1: [1, 1/2]
    JetScalar r2 = JetScalar::of_s(Rational(1), 2).sqrt();
    CHECK(r2.coeff[0] == Scalar(Rational(1)));
    CHECK(r2.coeff[1] == Scalar(Rational(1, 2)));

    // order 3 at s0 = 1: [1, 1/2, -1/8] by the Taylor oracle.  Note the
    // eps^2 coefficient is the Taylor coefficient f''/2 = -1/8, not the bare
    // second derivative -1/4 that appears in some printed tables.
    JetScalar r3 = JetScalar::of_s(Rational(1), 3).sqrt();
    CHECK(r3 == sqrt_jet_oracle(Rational(1), 3));
    CHECK(r3.coeff[2] == Scalar(Rational(-1, 8)));

    // order 2 at s0 = 4: [2, 1/4]
    JetScalar r4 = JetScalar::of_s(Rational(4), 2).sqrt();
    CHECK(r4 == sqrt_jet_oracle(Rational(4), 2));
    CHECK(r4.coeff[0] == Scalar(Rational(2)));
    CHECK(r4.coeff[1] == Scalar(Rational(1, 4)));

    for (int order = 1; order <= 5; ++order)
        for (long s0 : {1L, 2L, 4L, 9L})
            CHECK(JetScalar::of_s(Rational(s0), order).sqrt() == sqrt_jet_oracle(Rational(s0), order));

    CHECK_THROWS_AS(JetScalar::of_s(Rational(-1), 2).sqrt(), BranchUndetermined);
}

TEST_CASE("sqrt squares back on random branch-safe jets") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Rational base = jetweil::testing::rand_positive_rational(rng);
        int order = 1 + static_cast<int>(rng() % 4);
        JetScalar a = jetweil::testing::rand_jet(rng, base, order);
        a.coeff[0] = Scalar(jetweil::testing::rand_positive_rational(rng));
        JetScalar r = a.sqrt();
        CHECK(r * r == a);
        // Fresnel leading coefficients work too
        JetScalar b = a * Scalar::i();
        JetScalar rb = b.sqrt();
        CHECK(rb * rb == b);
    }
}

TEST_CASE("mult_matrix reproduces the S matrix and is a homomorphism") {
    auto m = mult_matrix(JetScalar::of_s(Rational(1), 2).sqrt());
    REQUIRE(m.size() == 2);
    CHECK(m[0][0] == Scalar(Rational(1)));
    CHECK(m[0][1] == Scalar(Rational(1, 2)));
    CHECK(m[1][0] == Scalar::zero());
    CHECK(m[1][1] == Scalar(Rational(1)));

    auto m1 = mult_matrix(JetScalar::constant(Rational(1), Rational(5), 3));
    for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 3; ++c) CHECK(m1[r][c] == (r == c ? Scalar::one() : Scalar::zero()));

    // order 3: upper-triangular Toeplitz with diagonals (1, 1/2, -1/8)
    auto m3 = mult_matrix(JetScalar::of_s(Rational(1), 3).sqrt());
    CHECK(m3[0][2] == Scalar(Rational(-1, 8)));
    CHECK(m3[1][2] == Scalar(Rational(1, 2)));
    CHECK(m3[0][0] == m3[1][1]);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Rational base = jetweil::testing::rand_nonzero_rational(rng);
        int order = 1 + static_cast<int>(rng() % 4);
        JetScalar f = jetweil::testing::rand_jet(rng, base, order);
        JetScalar g = jetweil::testing::rand_jet(rng, base, order);
        auto mf = mult_matrix(f), mg = mult_matrix(g), mfg = mult_matrix(f * g);
        // matrix product equals the matrix of the product
        for (size_t r = 0; r < mf.size(); ++r)
            for (size_t c = 0; c < mf.size(); ++c) {
                Scalar acc;
                for (size_t k = 0; k < mf.size(); ++k) acc += mf[r][k] * mg[k][c];
                CHECK(acc == mfg[r][c]);
            }
    }
}

TEST_CASE("involution examples") {
    JetScalar a = JetScalar::of_s(Rational(2), 2);
    JetScalar b = involution(a);
    CHECK(b.base == Rational(1, 2));
    CHECK(b.coeff[0] == Scalar(Rational(2)));
    CHECK(b.coeff[1] == Scalar(Rational(-4)));
}

TEST_CASE("involution is an involutive ring isomorphism") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        Rational base = jetweil::testing::rand_nonzero_rational(rng);
        int order = 1 + static_cast<int>(rng() % 4);
        JetScalar a = jetweil::testing::rand_jet(rng, base, order);
        JetScalar b = jetweil::testing::rand_jet(rng, base, order);
        CHECK(involution(involution(a)) == a);
        CHECK(involution(a * b) == involution(a) * involution(b));
        CHECK(involution(a + b) == involution(a) + involution(b));
    }
}

TEST_CASE("involution intertwines multiplication by s with inverse multiplication") {
    // With iota the re-expansion along s -> 1/s and s, s^ the coordinate jets
    // at s0 and 1/s0:  iota(s * a) = s^{-1}... concretely
    //   iota(s_jet * a) = involution(a) * inverse(shat_jet)
    //   shat_jet * iota(a) = iota(s_jet^{-1} * a)
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        Rational base = jetweil::testing::rand_nonzero_rational(rng);
        int order = 1 + static_cast<int>(rng() % 4);
        JetScalar a = jetweil::testing::rand_jet(rng, base, order);
        JetScalar s_jet = JetScalar::of_s(base, order);
        JetScalar shat_jet = JetScalar::of_s(1 / base, order);
        CHECK(involution(s_jet * a) == involution(a) * shat_jet.inverse());
        CHECK(shat_jet * involution(a) == involution(s_jet.inverse() * a));
    }
}
