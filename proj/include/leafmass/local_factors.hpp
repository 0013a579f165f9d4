#pragma once

#include "leafmass/numbers.hpp"
#include "leafmass/rational.hpp"

namespace leafmass {

/// L_n(p,1) = prod_{i=1}^{n} (p^i + (-1)^i), the principal-genus local factor.
inline Integer l_principal(long n, const Integer& p) {
    require(n >= 1, "l_principal: n must be >= 1");
    Integer out = 1;
    for (long i = 1; i <= n; ++i) {
        Integer t = pow_int(p, static_cast<unsigned long>(i));
        out *= (i % 2 == 0) ? Integer(t + 1) : Integer(t - 1);
    }
    return out;
}

/// L_n(1,p), the non-principal-genus local factor. For n = 2c+1 odd the
/// quotient (p-1)(p^{4c+2}-1)/(p^2-1) is an integer; the division is exact.
inline Integer l_nonprincipal(long n, const Integer& p) {
    require(n >= 1, "l_nonprincipal: n must be >= 1");
    long c = n / 2;
    Integer out = 1;
    for (long i = 1; i <= c; ++i) out *= pow_int(p, static_cast<unsigned long>(4 * i - 2)) - 1;
    if (n % 2 == 1) {
        Integer head = (p - 1) * (pow_int(p, static_cast<unsigned long>(4 * c + 2)) - 1);
        Integer q = p * p - 1;
        ensure(head % q == 0, "l_nonprincipal: non-integral odd-rank head");
        out *= head / q;
    }
    return out;
}

/// Gaussian binomial [n; k]_q computed by the integral recurrence
/// [n+1; k]_q = [n; k]_q + q^{n-k+1} [n; k-1]_q, never by division.
inline Integer gaussian_binomial(long n, long k, const Integer& q) {
    require(n >= 0 && k >= 0, "gaussian_binomial: negative argument");
    require(k <= n, "gaussian_binomial: k > n");
    // row[j] = [m; j]_q, grown from m = 0 upwards.
    std::vector<Integer> row = {Integer(1)};
    for (long m = 0; m < n; ++m) {
        std::vector<Integer> next(static_cast<size_t>(std::min(m + 1, k)) + 1);
        next[0] = 1;
        for (long j = 1; j < static_cast<long>(next.size()); ++j) {
            Integer upper = (j <= m) ? row[static_cast<size_t>(j)] : Integer(0);
            next[static_cast<size_t>(j)] =
                upper + pow_int(q, static_cast<unsigned long>(m - j + 1)) * row[static_cast<size_t>(j - 1)];
        }
        row = std::move(next);
    }
    return row[static_cast<size_t>(k)];
}

/// L_{g,p^c}: the superspecial local factor, assembled with the Gaussian
/// binomial [g; 2c]_{p^2} as its third factor so every intermediate is an
/// integer.
inline Integer l_superspecial(long g, long c, const Integer& p) {
    require(g >= 1, "l_superspecial: g must be >= 1");
    require(c >= 0 && 2 * c <= g, "l_superspecial: c out of range [0, g/2]");
    Integer out = 1;
    for (long i = 1; i <= g - 2 * c; ++i) {
        Integer t = pow_int(p, static_cast<unsigned long>(i));
        out *= (i % 2 == 0) ? Integer(t + 1) : Integer(t - 1);
    }
    for (long i = 1; i <= c; ++i) out *= pow_int(p, static_cast<unsigned long>(4 * i - 2)) - 1;
    out *= gaussian_binomial(g, 2 * c, p * p);
    return out;
}

/// Degree of L_{g,p^c} as a polynomial in p: (g^2 + 4gc - 8c^2 + g - 2c)/2.
inline long l_degree(long g, long c) {
    require(g >= 1, "l_degree: g must be >= 1");
    require(c >= 0 && 2 * c <= g, "l_degree: c out of range [0, g/2]");
    long num = g * g + 4 * g * c - 8 * c * c + g - 2 * c;
    ensure(num % 2 == 0, "l_degree: odd numerator");
    return num / 2;
}

} // namespace leafmass
