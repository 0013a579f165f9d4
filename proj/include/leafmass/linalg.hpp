#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "leafmass/rational.hpp"

namespace leafmass {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<std::vector<Rational>>;
using IntVec = std::vector<Integer>;
using IntMat = std::vector<std::vector<Integer>>;

inline RatMat rat_identity(size_t n) {
    RatMat m(n, RatVec(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat c(n, RatVec(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

/// Exact Gauss-Jordan inverse; throws domain_error on singular input.
inline RatMat rat_inverse(const RatMat& a) {
    size_t n = a.size();
    RatMat m = a, inv = rat_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        require(piv < n, "rat_inverse: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline Rational rat_det(RatMat m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational d = m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational f = m[r][col] / d;
            for (size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

/// LDL^T data for a symmetric positive-definite rational matrix:
/// q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2.
struct Ldl {
    std::vector<Rational> d;
    RatMat u; // unit upper triangular
    bool positive_definite = false;
};

inline Ldl ldl_decompose(const RatMat& g) {
    size_t n = g.size();
    Ldl out;
    out.d.assign(n, Rational(0));
    out.u = rat_identity(n);
    RatMat a = g;
    for (size_t i = 0; i < n; ++i) {
        out.d[i] = a[i][i];
        if (!(out.d[i] > Rational(0))) return out; // not positive definite
        for (size_t j = i + 1; j < n; ++j) out.u[i][j] = a[i][j] / out.d[i];
        for (size_t r = i + 1; r < n; ++r)
            for (size_t c = r; c < n; ++c) {
                a[r][c] -= a[i][r] * a[i][c] / out.d[i];
                a[c][r] = a[r][c];
            }
    }
    out.positive_definite = true;
    return out;
}

inline bool is_positive_definite(const RatMat& g) { return ldl_decompose(g).positive_definite; }

// ---------------------------------------------------------------------------
// Integer row-lattice utilities (row span over Z).
// ---------------------------------------------------------------------------

/// In-place row Hermite normal form (lower-echelon, positive pivots).
/// Returns the rank; zero rows are dropped.
inline size_t hnf_rows(IntMat& rows) {
    size_t nrows = rows.size();
    if (nrows == 0) return 0;
    size_t ncols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < nrows; ++col) {
        // Euclid on the column below the current pivot row.
        while (true) {
            size_t nz = nrows;
            for (size_t r = rank; r < nrows; ++r)
                if (rows[r][col] != 0 && (nz == nrows || cmp(abs(rows[r][col]), abs(rows[nz][col])) < 0))
                    nz = r;
            if (nz == nrows) break;
            std::swap(rows[rank], rows[nz]);
            bool reduced = true;
            for (size_t r = rank + 1; r < nrows; ++r) {
                if (rows[r][col] == 0) continue;
                Integer q = rows[r][col] / rows[rank][col]; // truncated is fine, loop continues
                if (q != 0)
                    for (size_t j = 0; j < ncols; ++j) rows[r][j] -= q * rows[rank][j];
                if (rows[r][col] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (rows[rank][col] == 0) continue;
        if (rows[rank][col] < 0)
            for (size_t j = 0; j < ncols; ++j) rows[rank][j] = -rows[rank][j];
        // Reduce the rows above the pivot.
        for (size_t r = 0; r < rank; ++r) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[rank][col].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < ncols; ++j) rows[r][j] -= q * rows[rank][j];
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

inline bool int_mat_equal(const IntMat& a, const IntMat& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

/// Product of HNF pivots = index of the row span in Z^n (full-rank case).
inline Integer hnf_index(const IntMat& hnf) {
    Integer idx = 1;
    size_t col = 0;
    for (const auto& row : hnf) {
        while (col < row.size() && row[col] == 0) ++col;
        ensure(col < row.size(), "hnf_index: short row");
        idx *= row[col];
    }
    return idx;
}

// ---------------------------------------------------------------------------
// Fincke-Pohst enumeration, exact arithmetic throughout.
// ---------------------------------------------------------------------------

namespace detail {

// Largest y >= 0 with y^2 * sd <= yn (yn, sd > 0); -1 when yn < 0.
inline Integer bounded_isqrt(const Integer& yn, const Integer& sd) {
    if (yn < 0) return Integer(-1);
    Integer q = yn / sd;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    while ((r + 1) * (r + 1) * sd <= yn) ++r;
    while (r >= 0 && r * r * sd > yn) --r;
    return r;
}

} // namespace detail

/// All x in Z^n with 0 < x^T G x <= bound, one representative per {x, -x}
/// (first nonzero coordinate positive), sorted lexicographically.
inline std::vector<IntVec> enumerate_short_vectors(const RatMat& gram, const Rational& bound) {
    size_t n = gram.size();
    Ldl ldl = ldl_decompose(gram);
    require(ldl.positive_definite, "enumerate_short_vectors: form is not positive definite");
    std::vector<IntVec> out;
    IntVec x(n, Integer(0));

    // Descend from the last coordinate; c = offset sum_{j>i} u[i][j] x_j.
    std::function<void(size_t, const Rational&)> rec = [&](size_t level, const Rational& rem) {
        if (level == 0) {
            for (const auto& v : x) {
                if (v == 0) continue;
                if (v > 0) out.push_back(x); // one representative per sign class
                return;
            }
            return; // zero vector
        }
        size_t i = level - 1;
        Rational c(0);
        for (size_t j = i + 1; j < n; ++j) c += ldl.u[i][j] * Rational(x[j]);
        // d_i (x_i + c)^2 <= rem  <=>  (cd x_i + cn)^2 * sd <= sn * cd^2
        Rational s = rem / ldl.d[i];
        Integer cn = c.num(), cd = c.den();
        Integer ymax = detail::bounded_isqrt(s.num() * cd * cd, s.den());
        if (ymax < 0) return;
        Integer lo, hi;
        mpz_cdiv_q(lo.get_mpz_t(), Integer(-ymax - cn).get_mpz_t(), cd.get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), Integer(ymax - cn).get_mpz_t(), cd.get_mpz_t());
        for (Integer xi = lo; xi <= hi; ++xi) {
            x[i] = xi;
            Rational term = ldl.d[i] * (Rational(xi) + c) * (Rational(xi) + c);
            if (term <= rem) rec(i, rem - term);
        }
        x[i] = 0;
    };
    rec(n, bound);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace leafmass
