#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "leafmass/errors.hpp"

namespace leafmass {

using Integer = mpz_class;

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer pow_int(long base, unsigned long e) { return pow_int(Integer(base), e); }

/// Exact reduced fraction. The only number type that may appear in a verdict:
/// every comparison is exact and no floating-point representation exists here.
/// Invariants (maintained by GMP canonicalisation): gcd(|num|, den) = 1, den >= 1.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(const Integer& n) : q_(n) {}
    /// Accepts GMP expression templates (e.g. p * p - 1) transparently.
    template <class T, class U>
    Rational(const __gmp_expr<T, U>& e) : q_(Integer(e)) {}
    Rational(const Integer& num, const Integer& den) {
        require(den != 0, "Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Parses "n" or "n/d" with optional leading '-'.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            return Rational(Integer(s), Integer(1));
        }
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    }

    Integer num() const { return Integer(q_.get_num()); }
    Integer den() const { return Integer(q_.get_den()); }

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_one() const { return q_ == 1; }
    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        require(!o.is_zero(), "Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational inverse() const {
        require(!is_zero(), "Rational: inverse of zero");
        return Rational(den(), num());
    }

    /// "n" when integral, "n/d" otherwise.
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    /// Wire form: numerator and denominator as decimal strings, never native
    /// JSON numbers (consumers must not be forced through 64-bit integers).
    std::string json() const {
        return "{\"num\":\"" + q_.get_num().get_str() + "\",\"den\":\"" + q_.get_den().get_str() + "\"}";
    }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace leafmass
