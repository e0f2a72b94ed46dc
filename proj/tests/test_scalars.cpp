#include <catch2/catch_amalgamated.hpp>

#include "jetweil/scalar.hpp"
#include "test_support.hpp"

using namespace jetweil;
using jetweil::testing::Rng;

namespace {

// Independent oracle: largest square divisor by brute-force search.
std::pair<long, long> brute_squarefree(long n) {
    long best = 1;
    for (long t = 1; t * t <= n; ++t)
        if (n % (t * t) == 0) best = t;
    return {best, n / (best * best)};
}

}  // namespace

TEST_CASE("zeta relations") {
    Scalar zeta = Scalar::zeta(1);
    CHECK(zeta * zeta == Scalar::i());
    // zeta^4 = -1
    CHECK(zeta * zeta * zeta * zeta == -Scalar::one());
    // (z + z^7)^2 = 2
    Scalar r2 = Scalar::zeta(1) + Scalar::zeta(7);
    CHECK(r2 * r2 == Scalar(Rational(2)));
    CHECK(r2 == Scalar::from_cyclo(CycloRational::sqrt2()));
}

TEST_CASE("registry multiplicativity") {
    Scalar a = sqrt_positive_rational(Rational(2)) * Scalar::tau(1);
    Scalar b = sqrt_positive_rational(Rational(2)) * Scalar::tau(-1);
    CHECK(a * b == Scalar(Rational(2)));

    // sqrt(d1) sqrt(d2) = q sqrt(d3), d3 squarefree
    Scalar s6 = sqrt_positive_rational(Rational(6));
    Scalar s10 = sqrt_positive_rational(Rational(10));
    Scalar s15 = sqrt_positive_rational(Rational(15));
    CHECK(s6 * s10 == s15 * Rational(2));
    CHECK(sqrt_positive_rational(Rational(1)) == Scalar::one());
}

TEST_CASE("sqrt_positive_rational examples") {
    CHECK(sqrt_positive_rational(Rational(4)) == Scalar(Rational(2)));
    CHECK(sqrt_positive_rational(Rational(1, 2)) ==
          Scalar::from_cyclo(CycloRational::sqrt2()) * Rational(1, 2));
    // 18 -> 3 sqrt(2), cross-checked against the brute-force factorization oracle
    auto [t, d] = brute_squarefree(18);
    CHECK(t == 3);
    CHECK(d == 2);
    CHECK(sqrt_positive_rational(Rational(18)) ==
          Scalar::from_cyclo(CycloRational::sqrt2()) * Rational(t));
    CHECK_THROWS_AS(sqrt_positive_rational(Rational(0)), NegativeRadicand);
    CHECK_THROWS_AS(sqrt_positive_rational(Rational(-3)), NegativeRadicand);
}

TEST_CASE("squarefree decomposition matches brute force") {
    for (long n = 1; n <= 400; ++n) {
        auto [sq, fr] = squarefree_decomposition(Integer(n));
        auto [bt, bd] = brute_squarefree(n);
        CHECK(sq == bt);
        CHECK(fr == bd);
    }
}

TEST_CASE("sqrt_special branches") {
    // i*4 -> 2 zeta
    CHECK(sqrt_special(Scalar::i() * Rational(4)) == Scalar::zeta(1) * Rational(2));
    CHECK(sqrt_special(Scalar(Rational(9))) == Scalar(Rational(3)));
    // -i*2 -> zeta^-1 sqrt(2)
    CHECK(sqrt_special(-(Scalar::i() * Rational(2))) ==
          Scalar::zeta(7) * sqrt_positive_rational(Rational(2)));

    CHECK_THROWS_AS(sqrt_special(Scalar(Rational(-1))), BranchUndetermined);
    CHECK_THROWS_AS(sqrt_special(Scalar()), BranchUndetermined);
    CHECK_THROWS_AS(sqrt_special(Scalar(Rational(1)) + Scalar::i()), BranchUndetermined);
    CHECK_THROWS_AS(sqrt_special(sqrt_positive_rational(Rational(2))), BranchUndetermined);
    CHECK_THROWS_AS(sqrt_special(Scalar::tau(1)), BranchUndetermined);
    // even tau powers ride along
    CHECK(sqrt_special(Scalar(Rational(4)) * Scalar::tau(-2)) == Scalar(Rational(2)) * Scalar::tau(-1));
}

TEST_CASE("sqrt squares back") {
    Rng rng(20240811);
    for (int trial = 0; trial < 1000; ++trial) {
        Rational q = jetweil::testing::rand_positive_rational(rng, 300, 60);
        Scalar r = sqrt_positive_rational(q);
        CHECK(r * r == Scalar(q));
    }
    for (int trial = 0; trial < 200; ++trial) {
        Rational c = jetweil::testing::rand_positive_rational(rng);
        for (Scalar a : {Scalar(c), Scalar::i() * c, -(Scalar::i() * c)}) {
            Scalar r = sqrt_special(a);
            CHECK(r * r == a);
        }
    }
}

TEST_CASE("ring axioms hold exactly") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = jetweil::testing::rand_scalar(rng);
        Scalar b = jetweil::testing::rand_scalar(rng);
        Scalar c = jetweil::testing::rand_scalar(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar::zero());
    }
}

TEST_CASE("single-term inverse") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Scalar u = jetweil::testing::rand_unit_scalar(rng);
        CHECK(u * u.inverse() == Scalar::one());
    }
    CHECK_THROWS_AS(Scalar::zero().inverse(), DivisionByNonUnit);
    CHECK_THROWS_AS((Scalar::one() + sqrt_positive_rational(Rational(3))).inverse(), DivisionByNonUnit);
}

TEST_CASE("canonical form is idempotent and syntactic") {
    // sqrt(8) enters as radicand 8 and must normalize to 2 sqrt(2) = 2(z - z^3).
    Scalar via_radicand = Scalar::term(CycloRational::one(), Integer(8), 0);
    Scalar via_parts = Scalar::from_cyclo(CycloRational::sqrt2()) * Rational(2);
    CHECK(via_radicand == via_parts);
    // re-inserting the canonical pieces changes nothing
    Scalar again;
    for (const auto& [k, v] : via_radicand.terms) again.insert(k.first, k.second, v);
    CHECK(again == via_radicand);
    // zero coefficients are dropped
    Scalar z = via_radicand - via_parts;
    CHECK(z.terms.empty());
}

TEST_CASE("conjugation") {
    Scalar v = Scalar::zeta(1) * Rational(2) + Scalar::i() * Scalar::tau(3);
    CHECK(v.conj().conj() == v);
    CHECK((Scalar::i()).conj() == -Scalar::i());
    // sqrt(2) is real: fixed by conjugation
    CHECK(Scalar::from_cyclo(CycloRational::sqrt2()).conj() == Scalar::from_cyclo(CycloRational::sqrt2()));
}
