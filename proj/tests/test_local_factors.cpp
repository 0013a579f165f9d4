#include <catch2/catch.hpp>

#include "leafmass/local_factors.hpp"

using namespace leafmass;

namespace {
// Ratio-of-products Gaussian binomial, the independent route for the tests.
Rational gaussian_by_ratio(long n, long k, const Integer& q) {
    Rational num(1), den(1);
    for (long i = 1; i <= n; ++i) num *= Rational(pow_int(q, static_cast<unsigned long>(i)) - 1);
    for (long i = 1; i <= k; ++i) den *= Rational(pow_int(q, static_cast<unsigned long>(i)) - 1);
    for (long i = 1; i <= n - k; ++i) den *= Rational(pow_int(q, static_cast<unsigned long>(i)) - 1);
    return num / den;
}
} // namespace

TEST_CASE("principal local factors") {
    CHECK(l_principal(1, 2) == 1);
    CHECK(l_principal(3, 2) == 35);
    CHECK(l_principal(4, 2) == 595);
    CHECK(l_principal(3, 3) == 2 * 10 * 26);
    CHECK_THROWS_AS(l_principal(0, 2), domain_error);
}

TEST_CASE("non-principal local factors") {
    CHECK(l_nonprincipal(2, 2) == 3);
    CHECK(l_nonprincipal(3, 2) == 63);
    CHECK(l_nonprincipal(4, 2) == 189);
    // closed forms used in the rank-3..5 classification
    for (long pl : {2L, 3L, 5L, 7L}) {
        Integer p(pl);
        CHECK(l_nonprincipal(2, p) == p * p - 1);
        CHECK(l_nonprincipal(3, p) == (p - 1) * (pow_int(p, 6) - 1));
        CHECK(l_nonprincipal(4, p) == (p * p - 1) * (pow_int(p, 6) - 1));
        CHECK(l_nonprincipal(5, p) == (p - 1) * (pow_int(p, 6) - 1) * (pow_int(p, 10) - 1));
    }
}

TEST_CASE("gaussian binomial recurrence equals the ratio definition") {
    CHECK(gaussian_binomial(5, 0, 3) == 1);
    CHECK(gaussian_binomial(2, 1, 3) == 4);
    for (long n = 0; n <= 8; ++n)
        for (long k = 0; k <= n; ++k)
            for (long q : {2L, 3L, 4L, 9L})
                CHECK(Rational(gaussian_binomial(n, k, q)) == gaussian_by_ratio(n, k, q));
    CHECK_THROWS_AS(gaussian_binomial(3, 4, 2), domain_error);
}

TEST_CASE("gaussian binomial symmetry") {
    for (long n = 0; n <= 9; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(gaussian_binomial(n, k, 4) == gaussian_binomial(n, n - k, 4));
}

TEST_CASE("superspecial local factor specialisations") {
    // c = 0 is the principal factor.
    for (long g = 1; g <= 6; ++g)
        for (long p : {2L, 3L, 5L}) CHECK(l_superspecial(g, 0, p) == l_principal(g, p));
    // c = g/2 for even g is the non-principal factor.
    CHECK(l_superspecial(4, 2, 2) == l_nonprincipal(4, 2));
    CHECK(l_superspecial(2, 1, 3) == l_nonprincipal(2, 3));
    CHECK(l_superspecial(6, 3, 2) == l_nonprincipal(6, 2));
    // (5, 1): the intermediate case with its own closed form.
    for (long pl : {2L, 3L}) {
        Integer p(pl);
        Integer expected = (p - 1) * (p * p + 1) * (pow_int(p, 3) - 1) * (pow_int(p, 4) + 1) *
                           (pow_int(p, 10) - 1);
        CHECK(l_superspecial(5, 1, p) == expected);
    }
    CHECK_THROWS_AS(l_superspecial(4, 3, 2), domain_error);
}

TEST_CASE("local factor degree formula") {
    for (long g = 1; g <= 8; ++g) CHECK(l_degree(g, 0) == g * (g + 1) / 2);
    for (long m = 1; m <= 4; ++m) CHECK(l_degree(2 * m, m) == 2 * m * m);
    // (p-1)(p^2+1)(p^3-1)(p^4+1)(p^10-1) has degree 1+2+3+4+10 = 20.
    CHECK(l_degree(5, 1) == 20);

    // Empirical degree by exact finite differences: evaluating the factor at
    // consecutive integers, the d-th difference row of a degree-d polynomial
    // is constant and the (d+1)-st vanishes.
    auto empirical_degree = [](long g, long c) {
        std::vector<Integer> row;
        for (long x = 2; x <= 2 + 30; ++x) row.push_back(l_superspecial(g, c, x));
        long d = 0;
        while (true) {
            bool all_zero = true;
            for (const auto& v : row) all_zero = all_zero && v == 0;
            if (all_zero) return d - 1;
            std::vector<Integer> next;
            for (size_t i = 0; i + 1 < row.size(); ++i) next.push_back(row[i + 1] - row[i]);
            row = std::move(next);
            ++d;
            REQUIRE(!row.empty());
        }
    };
    for (long g = 1; g <= 6; ++g)
        for (long c = 0; 2 * c <= g; ++c) CHECK(l_degree(g, c) == empirical_degree(g, c));
}

TEST_CASE("degree minimum sits at c = 0 for odd g, c = g/2 for even g") {
    for (long g = 1; g <= 8; ++g) {
        long argmin = 0;
        for (long c = 0; 2 * c <= g; ++c)
            if (l_degree(g, c) < l_degree(g, argmin)) argmin = c;
        if (g % 2 == 1)
            CHECK(argmin == 0);
        else
            CHECK(argmin == g / 2);
    }
}

TEST_CASE("superspecial factor positivity and p^3 - 1 divisibility") {
    for (long g = 1; g <= 6; ++g)
        for (long c = 0; 2 * c <= g; ++c)
            for (long p : {2L, 3L, 5L}) CHECK(l_superspecial(g, c, p) > 0);
    for (long n : {3L, 4L, 5L})
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
            Integer cube = pow_int(Integer(p), 3) - 1;
            CHECK(l_principal(n, p) % cube == 0);
            CHECK(l_nonprincipal(n, p) % cube == 0);
        }
}
