#pragma once

#include <algorithm>
#include <functional>
#include <random>

#include "leafmass/gf.hpp"

namespace leafmass {

enum class GroupLabel { Unitary, G_EGH, Gamma_EGH, H_EGH, Symplectic, Custom };

/// A fully enumerated matrix group, canonically ordered (lexicographic on
/// entry codes). Closure under product and inverse is spot-checked on seeded
/// random pairs at construction.
struct GroupEnumeration {
    std::shared_ptr<const FiniteField> field;
    std::vector<GFMatrix> elements;
    GroupLabel label = GroupLabel::Custom;

    size_t size() const { return elements.size(); }

    void canonicalise_and_check(uint64_t seed = 0) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        std::mt19937_64 rng(seed);
        auto find = [&](const GFMatrix& m) {
            return std::binary_search(elements.begin(), elements.end(), m);
        };
        size_t checks = std::min<size_t>(24, elements.size());
        for (size_t t = 0; t < checks; ++t) {
            const GFMatrix& a = elements[rng() % elements.size()];
            const GFMatrix& b = elements[rng() % elements.size()];
            ensure(find(a.mul(b)), "GroupEnumeration: not closed under product");
            auto inv = a.inverse();
            ensure(inv && find(*inv), "GroupEnumeration: not closed under inverse");
        }
    }
};

/// U_g(F_p) = {A in Mat_g(F_{p^2}) : A A* = I}, enumerated row by row (rows
/// orthonormal under the Hermitian pairing sum_k u_k v_k^p). This is the
/// oracle for unitary group orders; nothing is taken from order formulas.
inline GroupEnumeration unitary_group(long g, long p) {
    require(g >= 1, "unitary_group: g must be >= 1");
    if (g > 3 || p > 3)
        throw resource_error("unitary_group: enumeration supported for g <= 3, p <= 3; "
                             "use a generator-based approach beyond that");
    auto field = make_field(p, 2);
    size_t q2 = field->size();
    size_t dim = static_cast<size_t>(g);

    // All vectors with h(v, v) = 1.
    std::vector<std::vector<FiniteField::El>> norm_one;
    std::vector<FiniteField::El> v(dim, 0);
    auto hermitian = [&](const std::vector<FiniteField::El>& x, const std::vector<FiniteField::El>& y) {
        FiniteField::El acc = 0;
        for (size_t k = 0; k < dim; ++k)
            acc = field->add(acc, field->mul(x[k], field->frobenius(y[k])));
        return acc;
    };
    std::function<void(size_t)> gen = [&](size_t i) {
        if (i == dim) {
            if (hermitian(v, v) == 1) norm_one.push_back(v);
            return;
        }
        for (size_t c = 0; c < q2; ++c) {
            v[i] = static_cast<FiniteField::El>(c);
            gen(i + 1);
        }
        v[i] = 0;
    };
    gen(0);

    GroupEnumeration out;
    out.field = field;
    out.label = GroupLabel::Unitary;
    std::vector<const std::vector<FiniteField::El>*> rows;
    std::function<void(size_t)> build = [&](size_t r) {
        if (r == dim) {
            GFMatrix m(field, dim, dim);
            for (size_t i = 0; i < dim; ++i)
                for (size_t j = 0; j < dim; ++j) m.at(i, j) = (*rows[i])[j];
            out.elements.push_back(std::move(m));
            return;
        }
        for (const auto& cand : norm_one) {
            bool ok = true;
            for (size_t i = 0; i < r && ok; ++i) ok = hermitian(cand, *rows[i]) == 0;
            if (!ok) continue;
            rows.push_back(&cand);
            build(r + 1);
            rows.pop_back();
        }
    };
    build(0);
    out.canonicalise_and_check();
    return out;
}

/// A matrix eta in U_g(F_p) of multiplicative order p^g + 1 generating a
/// degree-g subfield of Mat_g(F_{p^2}) stable under *.
///
/// Such an eta exists only for odd g: for even g the eigenvalue multiset of
/// the norm-one cycle is not stable under lambda -> lambda^{-p}, so no
/// invariant Hermitian form exists (already |U_2(F_2)| = 18 has no element
/// of order 5). Even g is rejected as a domain error.
inline GFMatrix embed_norm_one_cycle(long g, long p) {
    require(g >= 1, "embed_norm_one_cycle: g must be >= 1");
    require(2 * g <= 8, "embed_norm_one_cycle: field F_{p^{2g}} out of the supported tower");
    require(g % 2 == 1,
            "embed_norm_one_cycle: no norm-one cycle embeds in U_g for even g "
            "(no invariant Hermitian form exists)");
    auto f2 = make_field(p, 2);

    if (g == 1) {
        // Generator of the norm-one subgroup of F_{p^2}^x, order p + 1.
        FiniteField::El gen = f2->generator();
        FiniteField::El eta = f2->pow(gen, static_cast<unsigned long>(p - 1));
        GFMatrix m(f2, 1, 1);
        m.at(0, 0) = eta;
        ensure(f2->element_order(eta) == static_cast<unsigned long>(p + 1),
               "embed_norm_one_cycle: wrong order");
        return m;
    }
    if (g == 3 && p == 2) {
        // The fixed explicit choice: rows (0,0,z), (1,0,0), (0,1,0) with
        // z^2 + z + 1 = 0. Companion matrix of x^3 - z; order 9.
        GFMatrix eta(f2, 3, 3);
        FiniteField::El zeta = 2; // code of z in F_4 = F_2[z]
        eta.at(0, 2) = zeta;
        eta.at(1, 0) = 1;
        eta.at(2, 1) = 1;
        ensure(eta.mul(eta.conj_transpose()).is_identity(), "embed_norm_one_cycle: eta not unitary");
        ensure(eta.multiplicative_order() == 9, "embed_norm_one_cycle: eta has wrong order");
        return eta;
    }

    // General odd g: regular representation of a norm-one generator of
    // F_{p^{2g}} over F_{p^2}, made unitary through the invariant Hermitian
    // form H = sum_{c in C} c* c (Gram-Schmidt split H = T* T).
    auto big = make_field(p, 2 * g);
    FieldEmbedding emb(f2, big);
    unsigned long cycle = 1;
    for (long i = 0; i < g; ++i) cycle *= static_cast<unsigned long>(p);
    cycle += 1; // p^g + 1
    FiniteField::El alpha = big->pow(big->generator(), (big->size() - 1) / cycle);
    ensure(big->element_order(alpha) == cycle, "embed_norm_one_cycle: alpha order mismatch");

    // Basis of F_{p^{2g}} over F_{p^2}: powers of the big-field generator t.
    // Coordinates are solved through the prime field.
    size_t dim = static_cast<size_t>(g);
    FiniteField::El t = static_cast<FiniteField::El>(big->from_digits([&] {
        std::vector<long> d(static_cast<size_t>(2 * g), 0);
        d[1] = 1;
        return d;
    }()));
    std::vector<FiniteField::El> basis(dim);
    for (size_t i = 0; i < dim; ++i) basis[i] = big->pow(t, static_cast<unsigned long>(i));

    // Solve K-coordinates by F_p-linear algebra: each big element is a vector
    // of 2g prime digits; each K-coefficient contributes 2 unknowns.
    auto coords_in_basis = [&](FiniteField::El x) {
        size_t n = static_cast<size_t>(2 * g);
        // unknowns: for each basis slot i, an element of K with 2 digits
        std::vector<std::vector<long>> a(n, std::vector<long>(n + 1, 0));
        for (size_t i = 0; i < dim; ++i)
            for (long dgt = 0; dgt < 2; ++dgt) {
                std::vector<long> kd(2, 0);
                kd[static_cast<size_t>(dgt)] = 1;
                FiniteField::El contrib = big->mul(emb(f2->from_digits(kd)), basis[i]);
                auto digs = big->digits(contrib);
                for (size_t r = 0; r < n; ++r) a[r][2 * i + static_cast<size_t>(dgt)] = digs[r];
            }
        auto xd = big->digits(x);
        for (size_t r = 0; r < n; ++r) a[r][n] = xd[r];
        // Gaussian elimination mod p.
        size_t rank = 0;
        std::vector<long> pivot_col;
        for (size_t col = 0; col < n && rank < n; ++col) {
            size_t piv = rank;
            while (piv < n && a[piv][col] % p == 0) ++piv;
            if (piv == n) continue;
            std::swap(a[piv], a[rank]);
            long inv = 1;
            for (long tt = 1; tt < p; ++tt)
                if (tt * a[rank][col] % p == 1) inv = tt;
            for (auto& val : a[rank]) val = val * inv % p;
            for (size_t r = 0; r < n; ++r) {
                if (r == rank || a[r][col] % p == 0) continue;
                long fmul = a[r][col] % p;
                for (size_t cc = 0; cc <= n; ++cc)
                    a[r][cc] = ((a[r][cc] - fmul * a[rank][cc]) % p + p) % p;
            }
            pivot_col.push_back(static_cast<long>(col));
            ++rank;
        }
        ensure(rank == n, "embed_norm_one_cycle: basis is not a basis");
        std::vector<long> sol(n, 0);
        for (size_t r = 0; r < rank; ++r) sol[static_cast<size_t>(pivot_col[r])] = a[r][n];
        std::vector<FiniteField::El> out(dim);
        for (size_t i = 0; i < dim; ++i)
            out[i] = f2->from_digits({sol[2 * i], sol[2 * i + 1]});
        return out;
    };

    GFMatrix m(f2, dim, dim);
    for (size_t j = 0; j < dim; ++j) {
        auto col = coords_in_basis(big->mul(alpha, basis[j]));
        for (size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
    }
    ensure(m.multiplicative_order() == cycle, "embed_norm_one_cycle: matrix order mismatch");

    // Invariant Hermitian form H = sum over the cycle of c* c.
    GFMatrix h(f2, dim, dim);
    GFMatrix c = GFMatrix::identity(f2, dim);
    for (unsigned long i = 0; i < cycle; ++i) {
        h = h.add(c.conj_transpose().mul(c));
        c = c.mul(m);
    }
    ensure(h.inverse().has_value(), "embed_norm_one_cycle: invariant form degenerate");
    // Hermitian Gram-Schmidt: U upper triangular with U* H U diagonal.
    GFMatrix u = GFMatrix::identity(f2, dim);
    GFMatrix work = h;
    for (size_t i = 0; i < dim; ++i) {
        // Find a vector with nonzero self-pairing in the remaining space.
        // For Hermitian forms such a vector always exists.
        GFMatrix cur = u.conj_transpose().mul(h).mul(u);
        if (cur.at(i, i) == 0) {
            size_t j = i + 1;
            while (j < dim && cur.at(i, j) == 0 && cur.at(j, j) == 0) ++j;
            ensure(j < dim, "embed_norm_one_cycle: Gram-Schmidt stuck");
            // add column j to column i (or swap) to make (i,i) nonzero
            for (size_t r = 0; r < dim; ++r) {
                if (cur.at(j, j) != 0)
                    std::swap(u.at(r, i), u.at(r, j));
                else
                    u.at(r, i) = f2->add(u.at(r, i), u.at(r, j));
            }
            cur = u.conj_transpose().mul(h).mul(u);
            ensure(cur.at(i, i) != 0, "embed_norm_one_cycle: Gram-Schmidt stuck");
        }
        cur = u.conj_transpose().mul(h).mul(u);
        FiniteField::El d = cur.at(i, i);
        FiniteField::El dinv = f2->inv(d);
        for (size_t j = i + 1; j < dim; ++j) {
            FiniteField::El coef = f2->mul(cur.at(i, j), dinv);
            for (size_t r = 0; r < dim; ++r)
                u.at(r, j) = f2->sub(u.at(r, j), f2->mul(coef, u.at(r, i)));
        }
    }
    GFMatrix diag = u.conj_transpose().mul(h).mul(u);
    // Scale: each diagonal d_i lies in F_p^x and is a norm lambda^(p+1).
    GFMatrix scale = GFMatrix::identity(f2, dim);
    for (size_t i = 0; i < dim; ++i) {
        FiniteField::El d = diag.at(i, i);
        FiniteField::El lam = 0;
        for (size_t x = 1; x < f2->size(); ++x)
            if (f2->mul(static_cast<FiniteField::El>(x), f2->frobenius(static_cast<FiniteField::El>(x))) == d) {
                lam = static_cast<FiniteField::El>(x);
                break;
            }
        ensure(lam != 0, "embed_norm_one_cycle: diagonal entry is not a norm");
        scale.at(i, i) = f2->inv(lam);
    }
    // T = (U * scale)^{-1}: then T* T = H and eta = T m T^{-1} is unitary.
    GFMatrix us = u.mul(scale);
    auto usinv = us.inverse();
    ensure(usinv.has_value(), "embed_norm_one_cycle: transform not invertible");
    GFMatrix eta = usinv->mul(m).mul(us);
    ensure(eta.mul(eta.conj_transpose()).is_identity(), "embed_norm_one_cycle: eta not unitary");
    ensure(eta.multiplicative_order() == cycle, "embed_norm_one_cycle: eta order mismatch");
    return eta;
}

} // namespace leafmass
