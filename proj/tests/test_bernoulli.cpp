#include <catch2/catch.hpp>

#include "leafmass/bernoulli.hpp"

using namespace leafmass;

TEST_CASE("bernoulli numbers from the convolution recurrence") {
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK_THROWS_AS(bernoulli(3), domain_error);
    CHECK_THROWS_AS(bernoulli(0), domain_error);
}

TEST_CASE("sign convention is (-1)^{n/2+1} |B_n|") {
    for (long n = 2; n <= 40; n += 2) {
        Rational b = bernoulli(n);
        int expected = (n / 2 + 1) % 2 == 0 ? 1 : -1;
        CHECK(b.sign() == expected);
    }
}

TEST_CASE("zeta_half on the classical table") {
    CHECK(zeta_half(1) == Rational(1, 24));
    CHECK(zeta_half(2) == Rational(1, 240));
    CHECK(zeta_half(3) == Rational(1, 504));
    CHECK(zeta_half(4) == Rational(1, 480));
    CHECK(zeta_half(5) == Rational(1, 264));
    CHECK(zeta_half(6) == Rational(691, 65520));
    CHECK(zeta_half(7) == Rational(1, 24));
    CHECK_THROWS_AS(zeta_half(0), domain_error);
}

TEST_CASE("v_n closed values") {
    CHECK(v(1) == Rational(Integer(1), pow_int(2, 3) * 3));
    CHECK(v(2) == Rational(Integer(1), pow_int(2, 7) * 9 * 5));
    CHECK(v(3) == Rational(Integer(1), pow_int(2, 10) * 81 * 5 * 7));
    CHECK(v(4) == Rational(Integer(1), pow_int(2, 15) * pow_int(3, 5) * 25 * 7));
    CHECK(v(5) == Rational(Integer(1), pow_int(2, 18) * pow_int(3, 6) * 25 * 7 * 11));
}

TEST_CASE("clausen-von staudt denominators") {
    CHECK(clausen_von_staudt_denominator(2) == 6);
    CHECK(clausen_von_staudt_denominator(4) == 30);
    CHECK(clausen_von_staudt_denominator(12) == 2730);
    CHECK(clausen_von_staudt_denominator(16) == 510);
    CHECK(clausen_von_staudt_denominator(22) == 138);
    CHECK_THROWS_AS(clausen_von_staudt_denominator(7), domain_error);
}

TEST_CASE("clausen-von staudt integrality for even n <= 64") {
    for (long n = 2; n <= 64; n += 2) {
        Rational sum = bernoulli(n);
        for (long p : primes_upto(n + 1))
            if (n % (p - 1) == 0) sum += Rational(1, p);
        CHECK(sum.is_integer());
        CHECK(bernoulli(n).den() == clausen_von_staudt_denominator(n));
    }
}

TEST_CASE("zeta_half ratio exceeds one from n = 4 on") {
    for (long n = 4; n <= 400; ++n) CHECK(zeta_half(n + 1) > zeta_half(n));
}

TEST_CASE("v_n monotone down to n = 5, large again by n = 17") {
    for (long n = 1; n < 5; ++n) CHECK(v(n + 1) < v(n));
    CHECK(v(17) > Rational(1));
}

TEST_CASE("691 divides the numerator of v_n for 6 <= n <= 344") {
    for (long n = 6; n <= 344; ++n) CHECK(v(n).num() % 691 == 0);
}
