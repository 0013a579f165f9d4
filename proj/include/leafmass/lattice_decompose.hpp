#pragma once

#include <numeric>
#include <random>

#include "leafmass/lattice_aut.hpp"

namespace leafmass {

struct DecompositionBudget {
    long max_trace_bound = 64;       // generation-bound ceiling
    long long node_budget = 500000000;
};

/// One indecomposable orthogonal summand: its free-basis presentation and the
/// basis vectors inside the ambient lattice.
struct Component {
    HermitianLattice lattice;
    std::vector<IntVec> basis; // rows: ambient flat coordinates
};

struct DecompositionResult {
    std::vector<Component> components;
    /// Isometry classes: each entry lists component indices of one class.
    std::vector<std::vector<size_t>> classes;

    std::vector<long> multiplicities() const {
        std::vector<long> out;
        for (const auto& c : classes) out.push_back(static_cast<long>(c.size()));
        return out;
    }
};

namespace detail {

// Z-span of {omega_b * v : b, v in vecs} as HNF rows in ambient coordinates.
inline IntMat omodule_span(const HermitianLattice& l, const std::vector<IntVec>& vecs) {
    IntMat rows;
    for (const auto& v : vecs)
        for (size_t b = 0; b < 4; ++b)
            rows.push_back(l.scalar_mul(l.order().from_quat(l.order().basis[b]), v));
    hnf_rows(rows);
    return rows;
}

inline bool spans_everything(const HermitianLattice& l, const std::vector<IntVec>& vecs) {
    IntMat h = omodule_span(l, vecs);
    if (h.size() != l.zdim()) return false;
    return hnf_index(h) == 1;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t(0)); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

} // namespace detail

/// Orthogonal decomposition into indecomposable O-sublattices: grow a short
/// vector set S until it generates L over O, strip reducible vectors (x = y
/// + z with f(y,z) = 0 forces both parts into S), and read the components
/// off the connectivity graph of the primitive vectors.
inline DecompositionResult orthogonal_decompose(const HermitianLattice& l,
                                                const DecompositionBudget& budget = {}) {
    const auto& ord = l.order();

    std::vector<IntVec> svecs;
    Rational bound(0);
    for (long b = 1; b <= budget.max_trace_bound; ++b) {
        bound = Rational(b);
        svecs = l.short_vectors(bound);
        if (!svecs.empty() && detail::spans_everything(l, svecs)) break;
        if (b == budget.max_trace_bound)
            throw resource_error("orthogonal_decompose: generation bound ceiling reached");
    }

    // Trace norms and twisted pairing rows for every sign class.
    size_t m = svecs.size();
    std::vector<Rational> norm(m);
    const RatMat& t = l.trace_gram_rat();
    auto pairing = [&](const IntVec& u, const IntVec& w) {
        Rational acc(0);
        for (size_t r = 0; r < u.size(); ++r) {
            if (u[r] == 0) continue;
            for (size_t c = 0; c < w.size(); ++c)
                if (w[c] != 0) acc += t[r][c] * Rational(u[r] * w[c]);
        }
        return acc;
    };
    std::vector<std::array<IntVec, 4>> twisted(m);
    for (size_t i = 0; i < m; ++i) {
        norm[i] = pairing(svecs[i], svecs[i]);
        for (size_t b = 0; b < 4; ++b)
            twisted[i][b] = l.scalar_mul(ord.from_quat(ord.basis[b]), svecs[i]);
    }
    // f(x, y) = 0 iff Trd f(omega_b x, y) = 0 for all four b.
    auto form_zero = [&](size_t i, size_t j) {
        for (size_t b = 0; b < 4; ++b)
            if (!pairing(twisted[i][b], svecs[j]).is_zero()) return false;
        return true;
    };

    // Primitivity: x is reducible iff some strictly shorter y (either sign)
    // satisfies f(y, x - y) = 0, i.e. f(y, x) = f(y, y) as quaternions.
    std::vector<bool> primitive(m, true);
    for (size_t x = 0; x < m; ++x) {
        for (size_t y = 0; y < m && primitive[x]; ++y) {
            if (!(norm[y] < norm[x])) continue;
            bool plus = true, minus = true;
            for (size_t b = 0; b < 4 && (plus || minus); ++b) {
                Rational lhs = pairing(twisted[y][b], svecs[x]);
                Rational rhs = pairing(twisted[y][b], svecs[y]);
                plus = plus && lhs == rhs;
                minus = minus && lhs == -rhs;
            }
            if (plus || minus) primitive[x] = false;
        }
    }

    std::vector<size_t> prim;
    for (size_t i = 0; i < m; ++i)
        if (primitive[i]) prim.push_back(i);
    ensure(detail::spans_everything(l, [&] {
               std::vector<IntVec> pv;
               for (size_t i : prim) pv.push_back(svecs[i]);
               return pv;
           }()),
           "orthogonal_decompose: primitive vectors fail to generate");

    detail::UnionFind uf(prim.size());
    for (size_t i = 0; i < prim.size(); ++i)
        for (size_t j = i + 1; j < prim.size(); ++j)
            if (!form_zero(prim[i], prim[j])) uf.unite(i, j);

    std::map<size_t, std::vector<size_t>> groups; // root -> indices into prim
    for (size_t i = 0; i < prim.size(); ++i) groups[uf.find(i)].push_back(i);

    DecompositionResult out;
    for (const auto& [root, idxs] : groups) {
        std::vector<IntVec> vecs;
        for (size_t i : idxs) vecs.push_back(svecs[prim[i]]);
        IntMat span = detail::omodule_span(l, vecs);
        ensure(span.size() % 4 == 0, "orthogonal_decompose: component Z-rank not divisible by 4");
        long r = static_cast<long>(span.size() / 4);

        // Free O-basis from the component's own primitive vectors, ordered by
        // norm then lexicographically; backtracking with rank-growth pruning.
        std::vector<size_t> order_idx(vecs.size());
        std::iota(order_idx.begin(), order_idx.end(), size_t(0));
        std::stable_sort(order_idx.begin(), order_idx.end(), [&](size_t a, size_t b) {
            Rational na = pairing(vecs[a], vecs[a]), nb = pairing(vecs[b], vecs[b]);
            if (na != nb) return na < nb;
            return vecs[a] < vecs[b];
        });
        std::vector<IntVec> basis;
        std::function<bool(size_t)> pick = [&](size_t from) -> bool {
            if (static_cast<long>(basis.size()) == r) {
                IntMat h = detail::omodule_span(l, basis);
                return int_mat_equal(h, span);
            }
            for (size_t k = from; k < order_idx.size(); ++k) {
                basis.push_back(vecs[order_idx[k]]);
                IntMat h = detail::omodule_span(l, basis);
                if (h.size() == basis.size() * 4 && pick(k + 1)) return true;
                basis.pop_back();
            }
            return false;
        };
        ensure(pick(0), "orthogonal_decompose: no free O-basis found (non-free component?)");

        std::vector<std::vector<Quat>> gram(static_cast<size_t>(r),
                                            std::vector<Quat>(static_cast<size_t>(r)));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j)
                gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    l.form(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
        out.components.push_back(Component{HermitianLattice(l.order_ptr(), r, gram), basis});
    }

    // Cross-component orthogonality and total covolume.
    {
        std::vector<IntVec> all;
        for (const auto& comp : out.components)
            for (const auto& v : comp.basis) all.push_back(v);
        ensure(detail::spans_everything(l, all), "orthogonal_decompose: components do not sum to L");
        for (size_t i = 0; i < out.components.size(); ++i)
            for (size_t j = i + 1; j < out.components.size(); ++j)
                for (const auto& u : out.components[i].basis)
                    for (const auto& w : out.components[j].basis)
                        ensure(l.form(u, w).is_zero(), "orthogonal_decompose: components not orthogonal");
    }

    // Group components into isometry classes.
    std::vector<bool> placed(out.components.size(), false);
    for (size_t i = 0; i < out.components.size(); ++i) {
        if (placed[i]) continue;
        std::vector<size_t> cls{i};
        placed[i] = true;
        for (size_t j = i + 1; j < out.components.size(); ++j) {
            if (placed[j]) continue;
            if (isometric(out.components[i].lattice, out.components[j].lattice, budget.node_budget)) {
                cls.push_back(j);
                placed[j] = true;
            }
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

/// Random element of GL_n(O) as a product of elementary transvections,
/// unit scalings and swaps; unimodularity is certified by construction.
inline OMatrix random_unimodular(const QuaternionOrder& ord, long n, std::mt19937_64& rng,
                                 int steps = 12) {
    OrderElement zero{Integer(0), Integer(0), Integer(0), Integer(0)};
    OrderElement one = ord.from_quat(Quat::one());
    OMatrix u(static_cast<size_t>(n), std::vector<OrderElement>(static_cast<size_t>(n), zero));
    for (long i = 0; i < n; ++i) u[static_cast<size_t>(i)][static_cast<size_t>(i)] = one;

    auto units = ord.unit_group();
    auto left_mul_row = [&](long dst, long src, const OrderElement& lam) {
        // row_dst += lam * row_src
        for (long c = 0; c < n; ++c) {
            Quat acc = ord.to_quat(u[static_cast<size_t>(dst)][static_cast<size_t>(c)]) +
                       ord.alg.mul(ord.to_quat(lam), ord.to_quat(u[static_cast<size_t>(src)][static_cast<size_t>(c)]));
            u[static_cast<size_t>(dst)][static_cast<size_t>(c)] = ord.from_quat(acc);
        }
    };
    for (int s = 0; s < steps; ++s) {
        switch (rng() % 3) {
            case 0: {
                long a = static_cast<long>(rng() % static_cast<unsigned long>(n));
                long b = static_cast<long>(rng() % static_cast<unsigned long>(n));
                if (a == b) break;
                OrderElement lam{Integer(static_cast<long>(rng() % 3) - 1),
                                 Integer(static_cast<long>(rng() % 3) - 1),
                                 Integer(static_cast<long>(rng() % 3) - 1), Integer(0)};
                left_mul_row(a, b, lam);
                break;
            }
            case 1: {
                long a = static_cast<long>(rng() % static_cast<unsigned long>(n));
                const auto& w = units[rng() % units.size()];
                for (long c = 0; c < n; ++c)
                    u[static_cast<size_t>(a)][static_cast<size_t>(c)] =
                        ord.mul(w, u[static_cast<size_t>(a)][static_cast<size_t>(c)]);
                break;
            }
            default: {
                long a = static_cast<long>(rng() % static_cast<unsigned long>(n));
                long b = static_cast<long>(rng() % static_cast<unsigned long>(n));
                std::swap(u[static_cast<size_t>(a)], u[static_cast<size_t>(b)]);
                break;
            }
        }
    }
    return u;
}

/// Gram of the basis change e'_a = sum_c U[a][c] e_c: U G U^*.
inline HermitianLattice transform_lattice(const HermitianLattice& l, const OMatrix& u) {
    const auto& ord = l.order();
    long n = l.rank();
    std::vector<std::vector<Quat>> ug(static_cast<size_t>(n), std::vector<Quat>(static_cast<size_t>(n), Quat::zero()));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Quat acc = Quat::zero();
            for (long k = 0; k < n; ++k)
                acc = acc + ord.alg.mul(ord.to_quat(u[static_cast<size_t>(i)][static_cast<size_t>(k)]),
                                        l.gram_at(k, j));
            ug[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
        }
    std::vector<std::vector<Quat>> g(static_cast<size_t>(n), std::vector<Quat>(static_cast<size_t>(n), Quat::zero()));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Quat acc = Quat::zero();
            for (long k = 0; k < n; ++k)
                acc = acc + ord.alg.mul(ug[static_cast<size_t>(i)][static_cast<size_t>(k)],
                                        ord.to_quat(u[static_cast<size_t>(j)][static_cast<size_t>(k)]).conj());
            g[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
        }
    return HermitianLattice(l.order_ptr(), n, g);
}

// ---------------------------------------------------------------------------
// The non-principal rank-2 lattice at p = 2.
// ---------------------------------------------------------------------------

struct NonprincipalSearch {
    HermitianLattice lattice;          // free presentation (O^2, Gram)
    int lines_passing = 0;             // how many of the 5 candidate lines pass
    int lines_total = 5;
};

/// Searches the five O-stable F_4-lines Pi O^2 <= L <= O^2 inside the
/// standard form I_2, keeps those whose norm ideal is exactly Pi O and which
/// are maximal with that norm, and returns the free presentation of the
/// first survivor. All survivors are pairwise isometric; the caller can
/// replay that via lines_passing.
inline NonprincipalSearch nonprincipal_lattice_p2_uncached() {
    auto ord = make_order_shared(2);
    HermitianLattice ambient = HermitianLattice::standard(ord, 2);

    // omega: a unit of order 3 generating O/PiO = F_4 over F_2.
    OrderElement omega{};
    {
        bool found = false;
        for (const auto& u : ord->unit_group()) {
            Quat q = ord->to_quat(u);
            if (q.is_scalar()) continue;
            OrderElement u2 = ord->mul(u, u);
            OrderElement u3 = ord->mul(u2, u);
            if (ord->to_quat(u3) == Quat::one() && !(ord->to_quat(u2) == Quat::one())) {
                omega = u;
                found = true;
                break;
            }
        }
        ensure(found, "nonprincipal_lattice_p2: no order-3 unit found");
    }

    Quat pi = ord->pi_quat();
    Quat pi_inv = Rational(1, 2) * pi.conj(); // Pi^{-1} = conj(Pi)/Nrd(Pi)

    auto in_pi_o = [&](const Quat& q) { return ord->contains(ord->alg.mul(pi_inv, q)); };
    auto in_two_o = [&](const Quat& q) {
        Quat half = Rational(1, 2) * q;
        return ord->contains(half);
    };

    OrderElement one = ord->from_quat(Quat::one());
    OrderElement zero{Integer(0), Integer(0), Integer(0), Integer(0)};
    OrderElement omega2 = ord->mul(omega, omega);

    // Line directions (1,0), (0,1), (1,1), (1,w), (1,w^2) in F_4^2.
    std::vector<std::array<OrderElement, 2>> lines = {
        {one, zero}, {zero, one}, {one, one}, {one, omega}, {one, omega2}};

    auto slot_vec = [&](const OrderElement& x, const OrderElement& y) {
        IntVec v(8, Integer(0));
        for (size_t b = 0; b < 4; ++b) {
            v[b] = x[b];
            v[4 + b] = y[b];
        }
        return v;
    };

    std::optional<HermitianLattice> first;
    int passing = 0;
    for (const auto& line : lines) {
        // Z-basis of L = Pi O^2 + O w.
        std::vector<IntVec> gens;
        for (size_t b = 0; b < 4; ++b) {
            OrderElement pib = ord->mul(ord->from_quat(ord->basis[b]), ord->pi);
            gens.push_back(slot_vec(pib, zero));
            gens.push_back(slot_vec(zero, pib));
            OrderElement wb0 = ord->mul(ord->from_quat(ord->basis[b]), line[0]);
            OrderElement wb1 = ord->mul(ord->from_quat(ord->basis[b]), line[1]);
            gens.push_back(slot_vec(wb0, wb1));
        }
        IntMat zbasis;
        for (const auto& g : gens) zbasis.push_back(g);
        hnf_rows(zbasis);
        ensure(zbasis.size() == 8, "nonprincipal_lattice_p2: line lattice has wrong rank");

        // Norm ideal: every pairwise value in Pi O, not all in 2 O.
        bool norm_in_pi = true, some_odd = false;
        for (size_t i = 0; i < 8 && norm_in_pi; ++i)
            for (size_t j = 0; j < 8 && norm_in_pi; ++j) {
                Quat val = ambient.form(zbasis[i], zbasis[j]);
                if (!in_pi_o(val)) norm_in_pi = false;
                if (!in_two_o(val)) some_odd = true;
            }
        if (!norm_in_pi || !some_odd) continue;

        // Maximality with norm Pi O: a strictly larger M with N(M) <= Pi O
        // would live inside O^2, so it suffices to test the cosets of O^2/L.
        IntMat base = zbasis;
        std::vector<IntVec> coset_reps;
        {
            // Diagonal of the HNF gives the elementary ranges.
            std::vector<Integer> piv(8, Integer(1));
            size_t col = 0;
            for (const auto& row : zbasis) {
                while (col < 8 && row[col] == 0) ++col;
                piv[col] = row[col];
                ++col;
            }
            std::function<void(size_t, IntVec&)> walk = [&](size_t i, IntVec& acc) {
                if (i == 8) {
                    coset_reps.push_back(acc);
                    return;
                }
                for (Integer r = 0; r < piv[i]; ++r) {
                    acc[i] = r;
                    walk(i + 1, acc);
                }
                acc[i] = 0;
            };
            IntVec acc(8, Integer(0));
            walk(0, acc);
        }
        bool maximal = true;
        for (const auto& rep : coset_reps) {
            bool zero_rep = true;
            for (const auto& x : rep) zero_rep = zero_rep && x == 0;
            if (zero_rep) continue;
            bool ok = in_pi_o(ambient.form(rep, rep));
            for (size_t j = 0; j < 8 && ok; ++j) ok = in_pi_o(ambient.form(rep, zbasis[j]));
            if (ok) {
                maximal = false;
                break;
            }
        }
        if (!maximal) continue;

        // Free O-basis from short vectors of the sublattice.
        RatMat tsub(8, RatVec(8, Rational(0)));
        for (size_t i = 0; i < 8; ++i)
            for (size_t j = 0; j < 8; ++j)
                tsub[i][j] = ambient.form(zbasis[i], zbasis[j]).trd();
        std::vector<IntVec> shorts; // ambient coordinates
        for (const auto& c : enumerate_short_vectors(tsub, Rational(8))) {
            IntVec amb(8, Integer(0));
            for (size_t i = 0; i < 8; ++i)
                for (size_t j = 0; j < 8; ++j) amb[j] += c[i] * zbasis[i][j];
            shorts.push_back(amb);
        }
        std::sort(shorts.begin(), shorts.end());
        std::optional<std::array<IntVec, 2>> obasis;
        for (size_t i = 0; i < shorts.size() && !obasis; ++i)
            for (size_t j = i + 1; j < shorts.size() && !obasis; ++j) {
                IntMat span = detail::omodule_span(ambient, {shorts[i], shorts[j]});
                if (int_mat_equal(span, base)) obasis = {shorts[i], shorts[j]};
            }
        ensure(obasis.has_value(), "nonprincipal_lattice_p2: no free O-basis found");

        std::vector<std::vector<Quat>> gram(2, std::vector<Quat>(2));
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j)
                gram[i][j] = ambient.form((*obasis)[i], (*obasis)[j]);
        HermitianLattice cand(ord, 2, gram);
        ++passing;
        if (!first) first = cand;
        else ensure(isometric(*first, cand), "nonprincipal_lattice_p2: passing lines not isometric");
    }
    ensure(first.has_value(), "nonprincipal_lattice_p2: no candidate line passed (order-data bug)");
    return NonprincipalSearch{*first, passing, 5};
}

/// The search is deterministic and its result immutable; repeat callers get
/// a copy of the first run.
inline NonprincipalSearch nonprincipal_lattice_p2() {
    static std::mutex mu;
    static std::optional<NonprincipalSearch> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache) cache = nonprincipal_lattice_p2_uncached();
    return *cache;
}

} // namespace leafmass
