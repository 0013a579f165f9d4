#pragma once

#include <mutex>
#include <vector>

#include "leafmass/numbers.hpp"
#include "leafmass/rational.hpp"

namespace leafmass {

namespace detail {

// Signed Bernoulli numbers B_0, B_1, B_2, ... (B_1 = -1/2) by the convolution
// recurrence from t/(e^t - 1): sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
// Odd indices > 1 vanish and are skipped. The memo table is append-only and
// guarded by a mutex, so concurrent callers see idempotent writes.
class BernoulliTable {
public:
    static BernoulliTable& instance() {
        static BernoulliTable t;
        return t;
    }

    Rational get(unsigned n) {
        std::lock_guard<std::mutex> lock(mu_);
        extend(n);
        return table_[n];
    }

private:
    BernoulliTable() { table_ = {Rational(1), Rational(-1, 2)}; }

    void extend(unsigned n) {
        for (unsigned m = static_cast<unsigned>(table_.size()); m <= n; ++m) {
            if (m % 2 == 1) {
                table_.push_back(Rational(0));
                continue;
            }
            // binom tracks C(m+1, j) incrementally.
            Integer binom = 1;
            Rational acc(0);
            for (unsigned j = 0; j < m; ++j) {
                if (j > 0) binom = binom * (m + 2 - j) / j; // exact division
                if (j <= 1 || j % 2 == 0) acc += Rational(binom) * table_[j];
            }
            acc /= Rational(Integer(m) + 1);
            table_.push_back(-acc);
        }
    }

    std::mutex mu_;
    std::vector<Rational> table_;
};

} // namespace detail

/// Signed Bernoulli number B_n for even n >= 2; the sign is (-1)^{n/2+1}|B_n|.
inline Rational bernoulli(long n) {
    require(n >= 2 && n % 2 == 0, "bernoulli: n must be even and >= 2");
    return detail::BernoulliTable::instance().get(static_cast<unsigned>(n));
}

/// |zeta(1-2n)|/2 = |B_{2n}|/(4n), always positive.
inline Rational zeta_half(long n) {
    require(n >= 1, "zeta_half: n must be >= 1");
    return bernoulli(2 * n).abs() / Rational(4 * n);
}

/// v_n = prod_{i=1}^{n} |zeta(1-2i)|/2, the zeta factor of every mass formula.
inline Rational v(long n) {
    require(n >= 1, "v: n must be >= 1");
    static std::mutex mu;
    static std::vector<Rational> prefix = {Rational(1)}; // prefix[i] = v_i
    std::lock_guard<std::mutex> lock(mu);
    for (long i = static_cast<long>(prefix.size()); i <= n; ++i)
        prefix.push_back(prefix[static_cast<size_t>(i) - 1] * zeta_half(i));
    return prefix[static_cast<size_t>(n)];
}

/// prod p over primes with (p-1) | n; by Clausen-von Staudt this is exactly
/// the denominator of B_n for even n.
inline Integer clausen_von_staudt_denominator(long n) {
    require(n >= 2 && n % 2 == 0, "clausen_von_staudt_denominator: n must be even and >= 2");
    Integer d = 1;
    for (long p : primes_upto(n + 1))
        if (n % (p - 1) == 0) d *= p;
    return d;
}

} // namespace leafmass
