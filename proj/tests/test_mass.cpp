#include <catch2/catch.hpp>

#include "leafmass/mass.hpp"

using namespace leafmass;

TEST_CASE("maximal-lattice masses") {
    CHECK(mass_maximal(3, 1, 2) == Rational(Integer(1), pow_int(2, 10) * 9 * 5));
    CHECK(mass_maximal(3, 2, 1) == Rational(Integer(1), pow_int(2, 10) * 81));
    CHECK(mass_maximal(4, 1, 2) == Rational(Integer(1), pow_int(2, 15) * 9 * 25));
    CHECK(mass_maximal(2, 1, 66) == Rational(1, 2));
    CHECK(mass_maximal(1, 2, 1) == Rational(1, 24));
    CHECK(mass_maximal(2, 2, 1) == Rational(1, 1152));
}

TEST_CASE("genus labels are validated") {
    CHECK_THROWS_AS(mass_maximal(2, 4, 1), domain_error);   // not squarefree
    CHECK_THROWS_AS(mass_maximal(2, 2, 3), domain_error);   // even number of primes
    CHECK_THROWS_AS(mass_maximal(2, 6, 2), domain_error);   // shared factor
    CHECK_THROWS_AS(mass_maximal(0, 2, 1), domain_error);
}

TEST_CASE("superspecial masses") {
    CHECK(mass_superspecial(4, 2, 2) == Rational(Integer(1), pow_int(2, 15) * 9 * 25));
    // (4, 1, p): v_4 * (p-1)(p^2+1)(p^4+1)(p^6-1), checked at p = 2, 3, 5.
    for (long pl : {2L, 3L, 5L}) {
        Integer p(pl);
        Rational expected = Rational((p - 1) * (p * p + 1) * (pow_int(p, 4) + 1) * (pow_int(p, 6) - 1),
                                     pow_int(2, 15) * pow_int(3, 5) * 25 * 7);
        CHECK(mass_superspecial(4, 1, p) == expected);
    }
    // c = 0 agrees with the principal-genus mass.
    for (long g = 1; g <= 5; ++g)
        for (long pl : {2L, 3L}) CHECK(mass_superspecial(g, 0, pl) == mass_maximal(g, pl, 1));
    CHECK_THROWS_AS(mass_superspecial(4, 3, 2), domain_error);
}

TEST_CASE("eichler class numbers") {
    for (long d : {2L, 3L, 5L, 7L, 13L}) CHECK(eichler_class_number(d) == 1);
    CHECK(eichler_class_number(42) == 2);
    CHECK(eichler_class_number(11) == 2);
    CHECK(eichler_class_number(30) == 2);
    CHECK_THROWS_AS(eichler_class_number(6), domain_error);
}

TEST_CASE("genus-2 leaf class numbers") {
    CHECK(class_number_g2_nonss({2, G2ParameterField::BeyondFp4}) == 1);
    CHECK(class_number_g2_nonss({2, G2ParameterField::InP1Fp4NotFp2}) == 1);
    CHECK(class_number_g2_nonss({3, G2ParameterField::BeyondFp4}) == 1);
    CHECK(class_number_g2_nonss({3, G2ParameterField::InP1Fp4NotFp2}) == 1);
    // p = 7 = +-2 mod 5 takes the third branch: 1 + 4*10*36*78/2880 = 40.
    CHECK(class_number_g2_nonss({7, G2ParameterField::InP1Fp4NotFp2}) == 40);
    // p = 5 deliberately follows the middle branch.
    CHECK(class_number_g2_nonss({5, G2ParameterField::InP1Fp4NotFp2}) == 5);
    CHECK_THROWS_AS(class_number_g2_nonss({2, G2ParameterField::InP1Fp2}), domain_error);

    for (long pl : primes_upto(50)) {
        bool one_beyond = class_number_g2_nonss({pl, G2ParameterField::BeyondFp4}) == 1;
        bool one_mid = class_number_g2_nonss({pl, G2ParameterField::InP1Fp4NotFp2}) == 1;
        CHECK(one_beyond == (pl == 2 || pl == 3));
        CHECK(one_mid == (pl == 2 || pl == 3));
    }
}

TEST_CASE("genus-2 leaf masses") {
    CHECK(mass_g2_nonss({2, G2ParameterField::InP1Fp4NotFp2}) == Rational(1, 160));
    CHECK(mass_g2_nonss({2, G2ParameterField::BeyondFp4}) == Rational(1, 32));
    CHECK(mass_g2_nonss({3, G2ParameterField::BeyondFp4}) == Rational(1, 2));
    // class number 1 at p = 2 means the mass is exactly 1/|Aut|.
    for (auto c : {G2ParameterField::InP1Fp4NotFp2, G2ParameterField::BeyondFp4}) {
        Rational m = mass_g2_nonss({2, c});
        CHECK(m.num() == 1);
    }
}

TEST_CASE("genus-3 a >= 2 leaf masses at p = 2") {
    CHECK(mass_g3_a2(2, G3UCase::UFp2) == Rational(Integer(1), pow_int(2, 10) * 81));
    CHECK(mass_g3_a2(2, G3UCase::UFp4NotFp2) == Rational(Integer(1), pow_int(2, 8) * 15));
    CHECK(mass_g3_a2(2, G3UCase::BeyondFp4) == Rational(Integer(1), pow_int(2, 8) * 3));
}

TEST_CASE("genus-3 a = 1 leaf masses at p = 2") {
    CHECK(mass_g3_a1(2, 3, true, true) == Rational(1, 18));
    CHECK(mass_g3_a1(2, 3, true, false) == Rational(1, 6));
    CHECK(mass_g3_a1(2, 3, false, false) == Rational(1, 2));
    CHECK(mass_g3_a1(2, 3, false, true) == Rational(1, 2)); // d(t)=3 branch ignores t when y not in D
    // 1/18 = 1/72 + 1/24: the two-class split of the smallest stratum.
    CHECK(mass_g3_a1(2, 3, true, true) == Rational(1, 72) + Rational(1, 24));
    CHECK_THROWS_AS(mass_g3_a1(2, 4, true, false), domain_error);  // d forced to 3 at p = 2
    CHECK_THROWS_AS(mass_g3_a1(3, 4, true, true), domain_error);   // t in F_{p^6} forces d = 3
    CHECK_THROWS_AS(mass_g3_a1(3, 3, true, false), domain_error);  // and conversely for p != 2
}

TEST_CASE("masses are positive and class numbers integral") {
    for (long n = 1; n <= 5; ++n)
        for (long p : {2L, 3L, 5L}) {
            CHECK(mass_maximal(n, p, 1) > Rational(0));
            CHECK(mass_maximal(n, 1, p) > Rational(0));
        }
    for (long pl : primes_upto(30)) {
        Integer h = class_number_g2_nonss({pl, G2ParameterField::BeyondFp4});
        CHECK(h > 0);
    }
}

TEST_CASE("consistency of leaf masses with class-number-one aut orders") {
    // a >= 2 strata at p = 2 are singletons; reciprocal masses are the orders
    // 24^3*6, 24*160, 24*32.
    CHECK(mass_g3_a2(2, G3UCase::UFp2).inverse() == Rational(82944));
    CHECK(mass_g3_a2(2, G3UCase::UFp4NotFp2).inverse() == Rational(24 * 160));
    CHECK(mass_g3_a2(2, G3UCase::BeyondFp4).inverse() == Rational(24 * 32));
    // a = 1 strata: |Lambda| = 4, 4, 2 with |Aut| = 8, 24, (72, 24).
    CHECK(mass_g3_a1(2, 3, false, false) == Rational(4, 8));
    CHECK(mass_g3_a1(2, 3, true, false) == Rational(4, 24));
}
