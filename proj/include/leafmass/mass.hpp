#pragma once

#include <optional>
#include <string>

#include "leafmass/bernoulli.hpp"
#include "leafmass/local_factors.hpp"
#include "leafmass/numbers.hpp"

namespace leafmass {

/// A genus of maximal lattices: rank n, principal-class primes dividing D1,
/// non-principal-class primes dividing D2. D = D1*D2 must be squarefree with
/// an odd number of prime factors (a definite quaternion discriminant).
struct GenusLabel {
    long n = 1;
    Integer d1 = 1;
    Integer d2 = 1;

    Integer discriminant() const { return d1 * d2; }

    void validate() const {
        require(n >= 1, "GenusLabel: rank must be >= 1");
        require(d1 >= 1 && d2 >= 1, "GenusLabel: D1, D2 must be positive");
        Integer g;
        mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
        require(g == 1, "GenusLabel: D1 and D2 must be coprime");
        require(is_definite_discriminant(d1 * d2),
                "GenusLabel: D = D1*D2 must be squarefree with an odd number of prime factors");
    }

    friend bool operator<(const GenusLabel& a, const GenusLabel& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.d1 != b.d1) return a.d1 < b.d1;
        return a.d2 < b.d2;
    }
    friend bool operator==(const GenusLabel& a, const GenusLabel& b) {
        return a.n == b.n && a.d1 == b.d1 && a.d2 == b.d2;
    }
};

/// M_n(D1,D2) = v_n * prod_{p|D1} L_n(p,1) * prod_{p|D2} L_n(1,p).
inline Rational mass_maximal(const GenusLabel& label) {
    label.validate();
    Rational m = v(label.n);
    for (const auto& [p, e] : factor_integer(label.d1)) m *= Rational(l_principal(label.n, p));
    for (const auto& [p, e] : factor_integer(label.d2)) m *= Rational(l_nonprincipal(label.n, p));
    return m;
}

inline Rational mass_maximal(long n, const Integer& d1, const Integer& d2) {
    return mass_maximal(GenusLabel{n, d1, d2});
}

/// Mass(Lambda_{g,p^c}) = v_g * L_{g,p^c}.
inline Rational mass_superspecial(long g, long c, const Integer& p) {
    require(is_prime(p), "mass_superspecial: p must be prime");
    return v(g) * Rational(l_superspecial(g, c, p));
}

/// Eichler class number H_1(D,1) for squarefree D with an odd number of prime
/// factors; always a positive integer.
inline Integer eichler_class_number(const Integer& d) {
    require(is_definite_discriminant(d), "eichler_class_number: invalid discriminant");
    Rational mass_term(1);
    Rational e4(1);
    Rational e3(1);
    for (const auto& [p, e] : factor_integer(d)) {
        mass_term *= Rational(p - 1);
        e4 *= Rational(Integer(1 - kronecker_symbol(Integer(-4), p)));
        e3 *= Rational(Integer(1 - kronecker_symbol(Integer(-3), p)));
    }
    Rational h = mass_term / Rational(12) + e4 / Rational(4) + e3 / Rational(3);
    ensure(h.is_integer() && h.sign() > 0, "eichler_class_number: non-integral result");
    return h.num();
}

/// 2^{-e(p)} factor shared by the leaf mass formulas: e(2)=0, e(p>2)=1.
inline Rational half_unless_two(const Integer& p) {
    return p == 2 ? Rational(1) : Rational(1, 2);
}

// ---------------------------------------------------------------------------
// Genus-2 central leaves away from the superspecial locus (a-number 1).
// The Moret-Bailly parameter field of definition is an enumerated input.
// ---------------------------------------------------------------------------

enum class G2ParameterField {
    InP1Fp2,        // a-number >= 2; excluded from the a=1 formulas
    InP1Fp4NotFp2,  // t in P^1(F_{p^4}) \ P^1(F_{p^2})   (case II)
    BeyondFp4,      // t in P^1(k) \ P^1(F_{p^4})          (case I)
};

struct LeafCaseG2 {
    Integer p;
    G2ParameterField parameter_field;
};

/// Class number of Lambda_x for a non-superspecial supersingular surface.
/// Case II branches on p mod 5; p = 5 deliberately follows the middle branch.
inline Integer class_number_g2_nonss(const LeafCaseG2& c) {
    require(is_prime(c.p), "class_number_g2_nonss: p must be prime");
    require(c.parameter_field != G2ParameterField::InP1Fp2,
            "class_number_g2_nonss: a-number >= 2 case has no a=1 class number");
    const Integer& p = c.p;
    Rational h;
    if (c.parameter_field == G2ParameterField::BeyondFp4) {
        if (p == 2) return 1;
        h = Rational(p * p * (pow_int(p, 4) - 1) * (p * p - 1), Integer(5760));
    } else {
        if (p == 2) return 1;
        long r = mpz_fdiv_ui(p.get_mpz_t(), 5);
        if (r == 1 || r == 4 || r == 0) {
            h = Rational(p * p * (p * p - 1) * (p * p - 1), Integer(2880));
        } else {
            Integer t = (p - 3) * (p + 3) * (p * p - 3 * p + 8) * (p * p + 3 * p + 8);
            h = Rational(1) + Rational(t, Integer(2880));
        }
    }
    ensure(h.is_integer() && h.sign() > 0, "class_number_g2_nonss: non-integral class number");
    return h.num();
}

/// Mass(Lambda_x) = L_p / 5760 for the same two a=1 cases.
inline Rational mass_g2_nonss(const LeafCaseG2& c) {
    require(is_prime(c.p), "mass_g2_nonss: p must be prime");
    require(c.parameter_field != G2ParameterField::InP1Fp2,
            "mass_g2_nonss: a-number >= 2 case is not covered by this formula");
    const Integer& p = c.p;
    Rational lp;
    if (c.parameter_field == G2ParameterField::InP1Fp4NotFp2) {
        lp = Rational((p * p - 1) * (pow_int(p, 4) - p * p));
    } else {
        lp = half_unless_two(p) * Rational((pow_int(p, 4) - 1) * (pow_int(p, 4) - p * p));
    }
    return lp / Rational(5760);
}

// ---------------------------------------------------------------------------
// Genus-3 central leaves. The moduli coordinates (t, u), the d-value and
// the divisor membership y in D are enumerated inputs, not computed geometry.
// ---------------------------------------------------------------------------

enum class G3UCase {
    UFp2,         // u in P^1_t(F_{p^2})   (a-number 3)
    UFp4NotFp2,   // u in P^1_t(F_{p^4}) \ P^1_t(F_{p^2})
    BeyondFp4,    // u not in P^1_t(F_{p^4})
};

inline Integer g3_denominator() {
    return pow_int(2, 10) * pow_int(3, 4) * 5 * 7; // 2^10 * 3^4 * 5 * 7
}

/// Mass(y) for points with a-number >= 2 (t defined over F_{p^2}).
inline Rational mass_g3_a2(const Integer& p, G3UCase u_case) {
    require(is_prime(p), "mass_g3_a2: p must be prime");
    Rational lp;
    Integer p2 = p * p, p3 = p * p * p, p4 = pow_int(p, 4);
    switch (u_case) {
        case G3UCase::UFp2:
            lp = Rational((p - 1) * (p2 + 1) * (p3 - 1));
            break;
        case G3UCase::UFp4NotFp2:
            lp = Rational((p - 1) * (p3 + 1) * (p3 - 1) * (p4 - p2));
            break;
        case G3UCase::BeyondFp4:
            lp = half_unless_two(p) * Rational((p - 1) * (p3 + 1) * (p3 - 1) * p2 * (p4 - 1));
            break;
    }
    return lp / Rational(g3_denominator());
}

/// Mass(y) = p^3 L_p / (2^10*3^4*5*7) for points with a-number 1.
/// Constraints from the cited stratification: d in {3,4,5,6}; d = 3 is forced
/// when p = 2; for p != 2, d = 3 holds exactly when t lies in C(F_{p^6}).
inline Rational mass_g3_a1(const Integer& p, int d, bool in_divisor, bool t_in_f_p6) {
    require(is_prime(p), "mass_g3_a1: p must be prime");
    require(d >= 3 && d <= 6, "mass_g3_a1: d must lie in {3,4,5,6}");
    if (p == 2) require(d == 3, "mass_g3_a1: d = 3 is forced when p = 2");
    if (p != 2) {
        require((d == 3) == t_in_f_p6,
                "mass_g3_a1: for p != 2, d = 3 holds iff t is defined over F_{p^6}");
    }
    Integer p2 = p * p, p3 = p * p * p, p4 = pow_int(p, 4), p6 = pow_int(p, 6);
    Integer p2d = pow_int(p, static_cast<unsigned long>(2 * d));
    Rational lp;
    if (!in_divisor) {
        lp = half_unless_two(p) * Rational(p2d * (p2 - 1) * (p4 - 1) * (p6 - 1));
    } else if (!t_in_f_p6) {
        lp = Rational(p2d * (p - 1) * (p4 - 1) * (p6 - 1));
    } else {
        lp = Rational(p6 * (p2 - 1) * (p3 - 1) * (p4 - 1));
    }
    return Rational(p3) * lp / Rational(g3_denominator());
}

} // namespace leafmass
