#pragma once

#include <map>
#include <utility>
#include <vector>

#include "leafmass/rational.hpp"

namespace leafmass {

inline Integer isqrt(const Integer& n) {
    require(n >= 0, "isqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Deterministic trial-division factorisation, complete for the integer sizes
/// arising in this project. Returns (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& m) {
    require(m >= 1, "factor_integer: argument must be >= 1");
    std::vector<std::pair<Integer, unsigned>> out;
    Integer n = m;
    auto strip = [&](const Integer& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    Integer d = 5;
    while (d * d <= n) {
        strip(d);
        strip(d + 2);
        d += 6;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    auto f = factor_integer(n);
    return f.size() == 1 && f[0].second == 1;
}

inline std::vector<long> primes_upto(long n) {
    std::vector<long> ps;
    if (n < 2) return ps;
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    for (long i = 2; i <= n; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        ps.push_back(i);
        for (long j = 2 * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = false;
    }
    return ps;
}

/// Kronecker symbol (a|n), the standard extension of the Jacobi symbol.
inline int kronecker_symbol(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker_symbol(long a, long n) {
    return kronecker_symbol(Integer(a), Integer(n));
}

/// True iff m is squarefree with an odd number of prime factors, i.e. a valid
/// discriminant of a definite quaternion Q-algebra.
inline bool is_definite_discriminant(const Integer& m) {
    if (m < 2) return false;
    auto f = factor_integer(m);
    for (const auto& [p, e] : f)
        if (e > 1) return false;
    return f.size() % 2 == 1;
}

} // namespace leafmass
