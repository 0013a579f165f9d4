#pragma once

#include <set>
#include <functional>

#include "leafmass/gf.hpp"
#include "leafmass/mass.hpp"

namespace leafmass {

/// |Sp_{2c}(F_q)| = q^{c^2} prod_{i=1}^{c} (q^{2i} - 1).
inline Integer symplectic_order(long two_c, const Integer& q) {
    require(two_c >= 2 && two_c % 2 == 0, "symplectic_order: dimension must be even and >= 2");
    long c = two_c / 2;
    Integer out = pow_int(q, static_cast<unsigned long>(c * c));
    for (long i = 1; i <= c; ++i) out *= pow_int(q, static_cast<unsigned long>(2 * i)) - 1;
    return out;
}

struct IsotropicStabilizerReport {
    long d = 0;                 // End(V_0, W) = Mat_{2c/d}(F_{q^d})
    long matrix_size = 0;       // 2c/d
    Integer stabilizer_order;   // |Sp(V_0, W)|
    long end_dim = 0;           // dim_{F_q} End(V_0, W)
};

/// Realises V_0 = F_{q^{2c}} as a symplectic F_q-space carrying the norm-one
/// cycle C_{q^c+1} (multiplication by alpha), takes W = the span of the
/// eigenlines indexed by J, and computes End(V_0, W) and Sp(V_0, W) by exact
/// linear algebra over F_q. J must avoid its dual shift: J ∩ (J + c) = ∅.
inline IsotropicStabilizerReport isotropic_stabilizer(long two_c, long q,
                                                      const std::set<long>& eigen_subset) {
    require(two_c == 2 || two_c == 4, "isotropic_stabilizer: 2c must be 2 or 4");
    require(q == 2 || q == 4, "isotropic_stabilizer: q must be 2 or 4");
    require(!eigen_subset.empty(), "isotropic_stabilizer: J must be nonempty");
    long c = two_c / 2;
    for (long j : eigen_subset) {
        require(j >= 0 && j < two_c, "isotropic_stabilizer: index out of Z/2c");
        require(!eigen_subset.count(((j + c) % two_c)),
                "isotropic_stabilizer: J ∩ (J + c) must be empty (isotropy)");
    }

    long p = (q == 4) ? 2 : q;
    long s = (q == 4) ? 2 : 1;                 // q = p^s
    auto fq = make_field(p, s);
    auto big = make_field(p, s * two_c);       // F_{q^{2c}}
    FieldEmbedding emb(fq, big);

    // Norm-one generator alpha of order q^c + 1.
    unsigned long qc = 1;
    for (long i = 0; i < c; ++i) qc *= static_cast<unsigned long>(q);
    unsigned long cycle = qc + 1;
    FiniteField::El alpha = big->pow(big->generator(), (big->size() - 1) / cycle);
    ensure(big->element_order(alpha) == cycle, "isotropic_stabilizer: alpha order mismatch");

    // F_q-basis of the big field: powers of its generator class t.
    size_t dim = static_cast<size_t>(two_c);
    std::vector<long> tdig(static_cast<size_t>(s * two_c), 0);
    tdig[1] = 1;
    FiniteField::El t = big->from_digits(tdig);
    std::vector<FiniteField::El> basis(dim);
    for (size_t i = 0; i < dim; ++i) basis[i] = big->pow(t, static_cast<unsigned long>(i));

    // F_q-coordinates through the prime field (s digits per coefficient).
    size_t n_prime = static_cast<size_t>(s) * dim;
    auto coords = [&](FiniteField::El x) {
        std::vector<std::vector<long>> a(n_prime, std::vector<long>(n_prime + 1, 0));
        for (size_t i = 0; i < dim; ++i)
            for (long dg = 0; dg < s; ++dg) {
                std::vector<long> kd(static_cast<size_t>(s), 0);
                kd[static_cast<size_t>(dg)] = 1;
                FiniteField::El contrib = big->mul(emb(fq->from_digits(kd)), basis[i]);
                auto digs = big->digits(contrib);
                for (size_t r = 0; r < n_prime; ++r)
                    a[r][i * static_cast<size_t>(s) + static_cast<size_t>(dg)] = digs[r];
            }
        auto xd = big->digits(x);
        for (size_t r = 0; r < n_prime; ++r) a[r][n_prime] = xd[r];
        size_t rank = 0;
        std::vector<size_t> pivots;
        for (size_t col = 0; col < n_prime && rank < n_prime; ++col) {
            size_t piv = rank;
            while (piv < n_prime && a[piv][col] % p == 0) ++piv;
            if (piv == n_prime) continue;
            std::swap(a[piv], a[rank]);
            long inv = 1;
            for (long tt = 1; tt < p; ++tt)
                if (tt * a[rank][col] % p == 1) inv = tt;
            for (auto& val : a[rank]) val = val * inv % p;
            for (size_t r = 0; r < n_prime; ++r) {
                if (r == rank || a[r][col] % p == 0) continue;
                long f = a[r][col] % p;
                for (size_t cc = 0; cc <= n_prime; ++cc)
                    a[r][cc] = ((a[r][cc] - f * a[rank][cc]) % p + p) % p;
            }
            pivots.push_back(col);
            ++rank;
        }
        ensure(rank == n_prime, "isotropic_stabilizer: power basis failed");
        std::vector<long> sol(n_prime, 0);
        for (size_t r = 0; r < rank; ++r) sol[pivots[r]] = a[r][n_prime];
        std::vector<FiniteField::El> out(dim);
        for (size_t i = 0; i < dim; ++i) {
            std::vector<long> kd(static_cast<size_t>(s));
            for (long dg = 0; dg < s; ++dg)
                kd[static_cast<size_t>(dg)] = sol[i * static_cast<size_t>(s) + static_cast<size_t>(dg)];
            out[i] = fq->from_digits(kd);
        }
        return out;
    };

    // Multiplication-by-alpha matrix over F_q.
    GFMatrix m(fq, dim, dim);
    for (size_t j = 0; j < dim; ++j) {
        auto col = coords(big->mul(alpha, basis[j]));
        for (size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
    }
    ensure(m.multiplicative_order() == cycle, "isotropic_stabilizer: matrix order mismatch");

    // Symplectic form psi(x, y) = Tr_{F/F_q}(delta x conj(y)), conj = ^(q^c).
    // In characteristic 2, delta = 1 works (the form is alternating because
    // the inner trace to the fixed field kills it on the diagonal).
    auto conj_big = [&](FiniteField::El x) { return big->pow(x, qc); };
    auto trace_fq = [&](FiniteField::El x) {
        FiniteField::El acc = 0;
        FiniteField::El cur = x;
        for (long i = 0; i < two_c; ++i) {
            acc = big->add(acc, cur);
            cur = big->pow(cur, static_cast<unsigned long>(q));
        }
        // acc lies in the embedded copy of F_q; pull it back.
        for (size_t v = 0; v < fq->size(); ++v)
            if (emb(static_cast<FiniteField::El>(v)) == acc) return static_cast<FiniteField::El>(v);
        throw internal_error("isotropic_stabilizer: trace left the base field");
    };
    GFMatrix psi(fq, dim, dim);
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            psi.at(i, j) = trace_fq(big->mul(basis[i], conj_big(basis[j])));
    ensure(psi.inverse().has_value(), "isotropic_stabilizer: degenerate symplectic form");
    for (size_t i = 0; i < dim; ++i)
        ensure(psi.at(i, i) == 0, "isotropic_stabilizer: form not alternating");
    // Multiplication by the norm-one cycle preserves psi.
    ensure(m.transpose().mul(psi).mul(m) == psi, "isotropic_stabilizer: cycle not symplectic");

    // Eigenvectors of m over the big field: eigenvalue alpha^{q^i} for slot i.
    auto eigenvector = [&](FiniteField::El lambda) {
        // Solve (M - lambda I) v = 0 over the big field.
        size_t n = dim;
        std::vector<std::vector<FiniteField::El>> a(n, std::vector<FiniteField::El>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = emb(m.at(i, j));
                if (i == j) a[i][j] = big->sub(a[i][j], lambda);
            }
        // Gaussian elimination; extract one kernel vector.
        std::vector<long> pivot_of_col(n, -1);
        size_t rank = 0;
        for (size_t col = 0; col < n && rank < n; ++col) {
            size_t piv = rank;
            while (piv < n && a[piv][col] == 0) ++piv;
            if (piv == n) continue;
            std::swap(a[piv], a[rank]);
            FiniteField::El inv = big->inv(a[rank][col]);
            for (auto& val : a[rank]) val = big->mul(val, inv);
            for (size_t r = 0; r < n; ++r) {
                if (r == rank || a[r][col] == 0) continue;
                FiniteField::El f = a[r][col];
                for (size_t cc = 0; cc < n; ++cc)
                    a[r][cc] = big->sub(a[r][cc], big->mul(f, a[rank][cc]));
            }
            pivot_of_col[col] = static_cast<long>(rank);
            ++rank;
        }
        ensure(rank == n - 1, "isotropic_stabilizer: eigenspace not one-dimensional");
        size_t free_col = 0;
        for (size_t col = 0; col < n; ++col)
            if (pivot_of_col[col] < 0) free_col = col;
        std::vector<FiniteField::El> v(n, 0);
        v[free_col] = 1;
        for (size_t col = 0; col < n; ++col)
            if (pivot_of_col[col] >= 0)
                v[col] = big->neg(a[static_cast<size_t>(pivot_of_col[col])][free_col]);
        return v;
    };

    std::vector<std::vector<FiniteField::El>> w_basis;
    for (long j : eigen_subset) {
        FiniteField::El lambda = alpha;
        for (long i = 0; i < j; ++i) lambda = big->pow(lambda, static_cast<unsigned long>(q));
        w_basis.push_back(eigenvector(lambda));
    }

    // Covectors cutting out W: the eigen-coordinates indexed outside J in the
    // dual eigenbasis. Equivalently: A(W) ⊆ W  <=>  u_k^T A v_j = 0 for all
    // v_j in W and dual covectors u_k with k outside J.  The dual basis comes
    // from inverting the full eigenvector matrix.
    std::vector<std::vector<FiniteField::El>> all_eigen;
    for (long k = 0; k < two_c; ++k) {
        FiniteField::El lambda = alpha;
        for (long i = 0; i < k; ++i) lambda = big->pow(lambda, static_cast<unsigned long>(q));
        all_eigen.push_back(eigenvector(lambda));
    }
    GFMatrix emat(big, dim, dim);
    for (size_t col = 0; col < dim; ++col)
        for (size_t row = 0; row < dim; ++row) emat.at(row, col) = all_eigen[col][row];
    auto einv = emat.inverse();
    ensure(einv.has_value(), "isotropic_stabilizer: eigenbasis singular");

    // Solve for A in Mat_{2c}(F_q) with A(W) ⊆ W: unknowns are the (2c)^2
    // entries over F_q; each condition row_k(einv) * A * v_j = 0 over the big
    // field splits into s*2c prime-field equations.
    size_t unknowns = dim * dim;
    std::vector<std::vector<long>> sys; // prime-field rows
    for (long krow = 0; krow < two_c; ++krow) {
        if (eigen_subset.count(krow)) continue;
        for (const auto& vj : w_basis) {
            // coefficient of A[r][cc]: einv[k][r] * vj[cc]
            std::vector<FiniteField::El> coeff(unknowns, 0);
            for (size_t r = 0; r < dim; ++r)
                for (size_t cc = 0; cc < dim; ++cc)
                    coeff[r * dim + cc] = big->mul(einv->at(static_cast<size_t>(krow), r), vj[cc]);
            // Split: for each unknown entry a (in F_q, s prime digits) the
            // contribution is emb(a) * coeff; expand over the prime basis.
            for (size_t pr = 0; pr < static_cast<size_t>(s * two_c); ++pr) {
                std::vector<long> row(unknowns * static_cast<size_t>(s), 0);
                bool nonzero = false;
                for (size_t u = 0; u < unknowns; ++u)
                    for (long dg = 0; dg < s; ++dg) {
                        std::vector<long> kd(static_cast<size_t>(s), 0);
                        kd[static_cast<size_t>(dg)] = 1;
                        FiniteField::El term = big->mul(emb(fq->from_digits(kd)), coeff[u]);
                        long digit = big->digits(term)[pr];
                        row[u * static_cast<size_t>(s) + static_cast<size_t>(dg)] = digit;
                        nonzero = nonzero || digit != 0;
                    }
                if (nonzero) sys.push_back(std::move(row));
            }
        }
    }
    // Kernel dimension over F_p; End dimension over F_q is that divided by s.
    size_t cols = unknowns * static_cast<size_t>(s);
    size_t rank = 0;
    std::vector<size_t> pivcols;
    for (size_t col = 0; col < cols && rank < sys.size(); ++col) {
        size_t piv = rank;
        while (piv < sys.size() && sys[piv][col] % p == 0) ++piv;
        if (piv == sys.size()) continue;
        std::swap(sys[piv], sys[rank]);
        long inv = 1;
        for (long tt = 1; tt < p; ++tt)
            if (tt * sys[rank][col] % p == 1) inv = tt;
        for (auto& val : sys[rank]) val = val * inv % p;
        for (size_t r = 0; r < sys.size(); ++r) {
            if (r == rank || sys[r][col] % p == 0) continue;
            long f = sys[r][col] % p;
            for (size_t cc = 0; cc < cols; ++cc)
                sys[r][cc] = ((sys[r][cc] - f * sys[rank][cc]) % p + p) % p;
        }
        pivcols.push_back(col);
        ++rank;
    }
    size_t kernel_prime_dim = cols - rank;
    ensure(kernel_prime_dim % static_cast<size_t>(s) == 0,
           "isotropic_stabilizer: kernel not F_q-rational");
    long end_dim = static_cast<long>(kernel_prime_dim) / s;

    IsotropicStabilizerReport rep;
    rep.end_dim = end_dim;
    // End(V_0, W) = Mat_{2c/d}(F_{q^d}) has F_q-dimension (2c)^2/d.
    require(end_dim > 0 && (two_c * two_c) % end_dim == 0,
            "isotropic_stabilizer: unexpected endomorphism dimension");
    rep.d = (two_c * two_c) / end_dim;
    ensure(two_c % rep.d == 0, "isotropic_stabilizer: d does not divide 2c");
    rep.matrix_size = two_c / rep.d;

    // Cross-check d against the combinatorial definition: the smallest
    // divisor of 2c whose negative shift stabilises J.
    long d_shift = 0;
    for (long dd = 1; dd <= two_c; ++dd) {
        if (two_c % dd != 0) continue;
        bool stable = true;
        for (long j : eigen_subset)
            stable = stable && eigen_subset.count(((j - dd) % two_c + two_c) % two_c) > 0;
        if (stable) {
            d_shift = dd;
            break;
        }
    }
    ensure(d_shift == rep.d, "isotropic_stabilizer: algebra shape disagrees with the shift rule");

    // Enumerate End(V_0, W) from the kernel basis and count Sp(V_0, W).
    std::vector<std::vector<long>> kernel_basis;
    {
        std::vector<bool> is_piv(cols, false);
        for (size_t cdx : pivcols) is_piv[cdx] = true;
        for (size_t freec = 0; freec < cols; ++freec) {
            if (is_piv[freec]) continue;
            std::vector<long> v(cols, 0);
            v[freec] = 1;
            for (size_t r = 0; r < rank; ++r) {
                long val = sys[r][freec] % p;
                v[pivcols[r]] = ((-val) % p + p) % p;
            }
            kernel_basis.push_back(std::move(v));
        }
    }
    Integer count = 0;
    std::vector<long> combo(kernel_basis.size(), 0);
    std::function<void(size_t)> walk = [&](size_t i) {
        if (i == kernel_basis.size()) {
            std::vector<long> flat(cols, 0);
            for (size_t k = 0; k < kernel_basis.size(); ++k)
                for (size_t cdx = 0; cdx < cols; ++cdx)
                    flat[cdx] = (flat[cdx] + combo[k] * kernel_basis[k][cdx]) % p;
            GFMatrix a(fq, dim, dim);
            for (size_t r = 0; r < dim; ++r)
                for (size_t cc = 0; cc < dim; ++cc) {
                    std::vector<long> kd(static_cast<size_t>(s));
                    for (long dg = 0; dg < s; ++dg)
                        kd[static_cast<size_t>(dg)] = flat[(r * dim + cc) * static_cast<size_t>(s) +
                                                          static_cast<size_t>(dg)];
                    a.at(r, cc) = fq->from_digits(kd);
                }
            if (a.transpose().mul(psi).mul(a) == psi) count += 1;
            return;
        }
        for (long v = 0; v < p; ++v) {
            combo[i] = v;
            walk(i + 1);
        }
        combo[i] = 0;
    };
    walk(0);
    rep.stabilizer_order = count;
    return rep;
}

/// Eq-level identity for the g = 4 endgame: 17/(2^7 |Gbar|), which must agree
/// exactly with Mass(Lambda_{4,4}) * |Sp_4(F_4)| / |Gbar|.
inline Rational mass17_identity(const Integer& gbar_order) {
    require(gbar_order >= 1, "mass17_identity: order must be >= 1");
    Rational direct = Rational(Integer(17), pow_int(2, 7) * gbar_order);
    Rational via_mass = mass_superspecial(4, 2, 2) * Rational(symplectic_order(4, Integer(4))) /
                        Rational(gbar_order);
    ensure(direct == via_mass, "mass17_identity: the two routes disagree");
    return direct;
}

} // namespace leafmass
