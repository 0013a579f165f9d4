#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "leafmass/linalg.hpp"
#include "leafmass/numbers.hpp"

namespace leafmass {

/// Element of a rational quaternion algebra (a,b | Q): i^2 = a, j^2 = b,
/// k = ij, written in 1,i,j,k coordinates.
struct Quat {
    std::array<Rational, 4> c{Rational(0), Rational(0), Rational(0), Rational(0)};

    static Quat zero() { return {}; }
    static Quat one() {
        Quat q;
        q.c[0] = Rational(1);
        return q;
    }
    static Quat scalar(const Rational& r) {
        Quat q;
        q.c[0] = r;
        return q;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_scalar() const { return c[1].is_zero() && c[2].is_zero() && c[3].is_zero(); }

    Quat conj() const { return Quat{{c[0], -c[1], -c[2], -c[3]}}; }
    Rational trd() const { return Rational(2) * c[0]; }

    friend Quat operator+(const Quat& x, const Quat& y) {
        return Quat{{x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]}};
    }
    friend Quat operator-(const Quat& x, const Quat& y) {
        return Quat{{x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]}};
    }
    Quat operator-() const { return Quat{{-c[0], -c[1], -c[2], -c[3]}}; }

    friend bool operator==(const Quat& x, const Quat& y) { return x.c == y.c; }
    friend bool operator!=(const Quat& x, const Quat& y) { return !(x.c == y.c); }
};

inline Quat operator*(const Rational& s, const Quat& q) {
    return Quat{{s * q.c[0], s * q.c[1], s * q.c[2], s * q.c[3]}};
}

/// Multiplication in (a,b | Q): ij = k = -ji, ik = aj, jk = -bi, k^2 = -ab.
struct QuatAlgebra {
    Integer a;
    Integer b;

    Quat mul(const Quat& x, const Quat& y) const {
        Rational ra(a), rb(b);
        const auto& u = x.c;
        const auto& v = y.c;
        Quat r;
        r.c[0] = u[0] * v[0] + ra * u[1] * v[1] + rb * u[2] * v[2] - ra * rb * u[3] * v[3];
        r.c[1] = u[0] * v[1] + u[1] * v[0] - rb * u[2] * v[3] + rb * u[3] * v[2];
        r.c[2] = u[0] * v[2] + u[2] * v[0] + ra * u[1] * v[3] - ra * u[3] * v[1];
        r.c[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
        return r;
    }

    Rational nrd(const Quat& x) const {
        const auto& u = x.c;
        return u[0] * u[0] - Rational(a) * u[1] * u[1] - Rational(b) * u[2] * u[2] +
               Rational(a * b) * u[3] * u[3];
    }

    bool is_integral(const Quat& x) const { return x.trd().is_integer() && nrd(x).is_integer(); }
};

/// Element of a fixed maximal order, stored in order-basis coordinates.
using OrderElement = std::array<Integer, 4>;

/// A maximal order in the definite quaternion algebra B_{p,infty}, with a
/// fixed Z-basis and a two-sided prime Pi with Pi * conj(Pi) = p. The
/// construction data is verified, not trusted: basis closure, reduced
/// discriminant p (via the trace-form Gram determinant p^2) and the
/// two-sidedness of Pi are all checked before the order is handed out.
class QuaternionOrder {
public:
    Integer p;
    QuatAlgebra alg;
    std::array<Quat, 4> basis;      // rows: order basis in 1,i,j,k coordinates
    RatMat basis_mat;               // 4x4, row r = basis[r].c
    RatMat basis_inv;               // inverse of basis_mat
    OrderElement pi;                // two-sided prime, order coordinates

    Quat to_quat(const OrderElement& e) const {
        Quat q;
        for (size_t r = 0; r < 4; ++r)
            for (size_t c = 0; c < 4; ++c) q.c[c] += Rational(e[r]) * basis[r].c[c];
        return q;
    }

    /// Order coordinates of a quaternion; requires integrality.
    OrderElement from_quat(const Quat& q) const {
        RatVec coords = coords_of(q);
        OrderElement e;
        for (size_t r = 0; r < 4; ++r) {
            require(coords[r].is_integer(), "QuaternionOrder: element not in the order");
            e[r] = coords[r].num();
        }
        return e;
    }

    RatVec coords_of(const Quat& q) const {
        RatVec out(4, Rational(0));
        for (size_t r = 0; r < 4; ++r)
            for (size_t c = 0; c < 4; ++c) out[r] += q.c[c] * basis_inv[c][r];
        return out;
    }

    bool contains(const Quat& q) const {
        for (const auto& x : coords_of(q))
            if (!x.is_integer()) return false;
        return true;
    }

    OrderElement mul(const OrderElement& x, const OrderElement& y) const {
        return from_quat(alg.mul(to_quat(x), to_quat(y)));
    }
    OrderElement conj(const OrderElement& x) const { return from_quat(to_quat(x).conj()); }
    Integer nrd(const OrderElement& x) const {
        Rational n = alg.nrd(to_quat(x));
        ensure(n.is_integer(), "QuaternionOrder: non-integral reduced norm");
        return n.num();
    }

    Quat pi_quat() const { return to_quat(pi); }

    /// Gram of the trace form Trd(e_r * conj(e_c)) on the order basis;
    /// positive definite with determinant p^2.
    RatMat norm_gram() const {
        RatMat g(4, RatVec(4, Rational(0)));
        for (size_t r = 0; r < 4; ++r)
            for (size_t c = 0; c < 4; ++c) g[r][c] = alg.mul(basis[r], basis[c].conj()).trd();
        return g;
    }

    /// All x in O with Nrd(x) = 1, enumerated from the trace form at value 2.
    std::vector<OrderElement> unit_group() const {
        std::vector<OrderElement> units;
        for (const auto& v : enumerate_short_vectors(norm_gram(), Rational(2))) {
            OrderElement e{v[0], v[1], v[2], v[3]};
            if (nrd(e) == 1) {
                units.push_back(e);
                units.push_back({-v[0], -v[1], -v[2], -v[3]});
            }
        }
        // Closure under multiplication is part of the contract.
        for (size_t i = 0; i < units.size(); ++i)
            for (size_t j = 0; j < units.size(); j += 7)
                ensure(nrd(mul(units[i], units[j])) == 1,
                       "unit_group: product escaped the unit group");
        std::sort(units.begin(), units.end());
        return units;
    }
};

namespace detail {

// Z-span closure: rows are 1,i,j,k coordinates scaled by den.
struct QLattice {
    Integer den = 1;
    IntMat rows; // HNF rows, rank 4

    bool contains_int_rows(const IntMat& probe) const {
        IntMat stack = rows;
        for (const auto& r : probe) stack.push_back(r);
        IntMat h = stack;
        hnf_rows(h);
        IntMat base = rows;
        hnf_rows(base);
        return int_mat_equal(h, base);
    }
};

inline IntVec scaled_coords(const Quat& q, const Integer& den) {
    IntVec out(4);
    for (size_t c = 0; c < 4; ++c) {
        Rational s = q.c[c] * Rational(den);
        require(s.is_integer(), "scaled_coords: denominator too small");
        out[c] = s.num();
    }
    return out;
}

// Attempts to close the lattice spanned by `gens` (quats) under
// multiplication; returns false if it fails to stabilise as an order.
inline bool ring_closure(const QuatAlgebra& alg, std::vector<Quat> gens, const Integer& den,
                         QLattice& out) {
    IntMat rows;
    for (const auto& g : gens) rows.push_back(scaled_coords(g, den));
    hnf_rows(rows);
    for (int iter = 0;; ++iter) {
        if (iter >= 12 || rows.size() != 4) return false;
        std::vector<Quat> basis;
        for (const auto& r : rows) {
            Quat q;
            for (size_t c = 0; c < 4; ++c) q.c[c] = Rational(r[c], den);
            basis.push_back(q);
        }
        IntMat stack = rows;
        bool representable = true;
        for (const auto& x : basis)
            for (const auto& y : basis) {
                Quat prod = alg.mul(x, y);
                if (!alg.is_integral(prod)) return false;
                // Products must stay in the den-grid to be representable.
                for (const auto& cc : prod.c)
                    if (!(cc * Rational(den)).is_integer()) representable = false;
                if (!representable) return false;
                stack.push_back(scaled_coords(prod, den));
            }
        hnf_rows(stack);
        if (int_mat_equal(stack, rows)) break;
        rows = stack;
    }
    out.den = den;
    out.rows = rows;
    return true;
}

} // namespace detail

/// Builds the verified maximal order of B_{p,infty} for p in {2,3,5,7,13}.
/// Structure constants: p=2 -> (-1,-1); p=3 -> (-1,-3); p=5 -> (-2,-5);
/// p=7 -> (-1,-7); p=13 -> (-2,-13). The order itself is found by saturating
/// Z<1,i,j,k> inside the quarter-integer grid until the discriminant is p^2,
/// so no basis data is trusted blindly.
inline QuaternionOrder make_order(const Integer& p) {
    Integer a, b;
    if (p == 2) {
        a = -1; b = -1;
    } else if (p == 3 || p == 7) {
        a = -1; b = -p;
    } else if (p == 5 || p == 13) {
        a = -2; b = -p;
    } else {
        throw domain_error("make_order: supported primes are {2,3,5,7,13}");
    }
    QuatAlgebra alg{a, b};

    const Integer den = 4;
    std::vector<Quat> gens;
    for (int r = 0; r < 4; ++r) {
        Quat q;
        q.c[static_cast<size_t>(r)] = Rational(1);
        gens.push_back(q);
    }
    detail::QLattice lat;
    ensure(detail::ring_closure(alg, gens, den, lat), "make_order: base ring closure failed");

    auto disc_of = [&](const detail::QLattice& l) {
        RatMat g(4, RatVec(4, Rational(0)));
        std::vector<Quat> basis;
        for (const auto& r : l.rows) {
            Quat q;
            for (size_t c = 0; c < 4; ++c) q.c[c] = Rational(r[c], l.den);
            basis.push_back(q);
        }
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) g[i][j] = alg.mul(basis[i], basis[j].conj()).trd();
        return rat_det(g);
    };

    // Greedy saturation over the quarter-integer grid.
    Rational target(p * p);
    bool progress = true;
    while (disc_of(lat) != target && progress) {
        progress = false;
        for (long c0 = 0; c0 < 4 && !progress; ++c0)
            for (long c1 = 0; c1 < 4 && !progress; ++c1)
                for (long c2 = 0; c2 < 4 && !progress; ++c2)
                    for (long c3 = 0; c3 < 4 && !progress; ++c3) {
                        Quat q;
                        q.c = {Rational(c0, 4), Rational(c1, 4), Rational(c2, 4), Rational(c3, 4)};
                        if (q.is_zero() || !alg.is_integral(q)) continue;
                        if (lat.contains_int_rows({detail::scaled_coords(q, den)})) continue;
                        std::vector<Quat> trial;
                        for (const auto& r : lat.rows) {
                            Quat t;
                            for (size_t c = 0; c < 4; ++c) t.c[c] = Rational(r[c], den);
                            trial.push_back(t);
                        }
                        trial.push_back(q);
                        detail::QLattice bigger;
                        if (!detail::ring_closure(alg, trial, den, bigger)) continue;
                        lat = bigger;
                        progress = true;
                    }
    }
    ensure(disc_of(lat) == target, "make_order: saturation did not reach discriminant p^2");

    QuaternionOrder o;
    o.p = p;
    o.alg = alg;
    o.basis_mat = RatMat(4, RatVec(4, Rational(0)));
    for (size_t r = 0; r < 4; ++r) {
        for (size_t c = 0; c < 4; ++c) {
            o.basis[r].c[c] = Rational(lat.rows[r][c], den);
            o.basis_mat[r][c] = o.basis[r].c[c];
        }
    }
    o.basis_inv = rat_inverse(o.basis_mat);

    // Closure check in the final coordinates.
    for (size_t r = 0; r < 4; ++r)
        for (size_t c = 0; c < 4; ++c)
            ensure(o.contains(alg.mul(o.basis[r], o.basis[c])), "make_order: basis not closed");
    ensure(o.contains(Quat::one()), "make_order: 1 not in order");

    // Two-sided prime: prefer 1+i at p = 2, otherwise first norm-p element
    // whose left and right ideals coincide.
    auto two_sided = [&](const Quat& cand) {
        IntMat left, right;
        Integer d2 = den * den;
        for (const auto& bq : o.basis) {
            left.push_back(detail::scaled_coords(alg.mul(cand, bq), d2));
            right.push_back(detail::scaled_coords(alg.mul(bq, cand), d2));
        }
        hnf_rows(left);
        hnf_rows(right);
        return int_mat_equal(left, right);
    };
    std::vector<Quat> candidates;
    if (p == 2) {
        Quat onei;
        onei.c = {Rational(1), Rational(1), Rational(0), Rational(0)};
        candidates.push_back(onei);
    }
    for (const auto& v : enumerate_short_vectors(o.norm_gram(), Rational(2 * p))) {
        OrderElement e{v[0], v[1], v[2], v[3]};
        Quat q = o.to_quat(e);
        if (alg.nrd(q) == Rational(p)) candidates.push_back(q);
    }
    bool found = false;
    for (const auto& cand : candidates) {
        if (two_sided(cand)) {
            o.pi = o.from_quat(cand);
            found = true;
            break;
        }
    }
    ensure(found, "make_order: no two-sided prime of norm p found");
    ensure(alg.nrd(o.pi_quat()) == Rational(p), "make_order: Pi has wrong norm");
    return o;
}

/// Shared construction cache: orders are immutable, so handing out the same
/// verified instance is safe for concurrent readers.
inline std::shared_ptr<const QuaternionOrder> make_order_shared(const Integer& p) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const QuaternionOrder>> cache;
    std::lock_guard<std::mutex> lock(mu);
    long key = static_cast<long>(p.get_si());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto made = std::make_shared<const QuaternionOrder>(make_order(p));
    cache[key] = made;
    return made;
}

} // namespace leafmass
