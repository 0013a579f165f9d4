#pragma once

#include <cstdint>
#include <deque>
#include <map>

#include "leafmass/rational.hpp"
#include "leafmass/unitary.hpp"

namespace leafmass {

struct DoubleCosetReport {
    Integer group_order;
    long count = 0;
    std::vector<GFMatrix> representatives;    // lexicographically smallest members
    std::vector<Integer> orbit_sizes;
    std::vector<Integer> left_stabilizer_orders; // |Gamma ∩ c H c^{-1}|
    Rational mass_sum;                         // sum of 1/stabiliser
    size_t identity_coset = 0;                 // index of the coset containing 1
};

/// Generic double cosets L\G/R for fully enumerated groups: orbit BFS of the
/// (L x R)-action g -> l g r^{-1}. Representatives are the lexicographically
/// smallest orbit members.
inline DoubleCosetReport double_cosets(const GroupEnumeration& g, const GroupEnumeration& left,
                                       const GroupEnumeration& right) {
    require(!g.elements.empty(), "double_cosets: empty group");
    std::map<GFMatrix, size_t> index;
    for (size_t i = 0; i < g.elements.size(); ++i) index[g.elements[i]] = i;
    for (const auto& l : left.elements)
        require(index.count(l) > 0, "double_cosets: left subgroup not inside G");
    for (const auto& r : right.elements)
        require(index.count(r) > 0, "double_cosets: right subgroup not inside G");

    std::vector<long> label(g.elements.size(), -1);
    DoubleCosetReport out;
    out.group_order = Integer(static_cast<long>(g.elements.size()));
    long next = 0;
    for (size_t seed = 0; seed < g.elements.size(); ++seed) {
        if (label[seed] >= 0) continue;
        std::deque<size_t> queue{seed};
        label[seed] = next;
        Integer orbit = 0;
        while (!queue.empty()) {
            size_t cur = queue.front();
            queue.pop_front();
            orbit += 1;
            for (const auto& l : left.elements) {
                auto it = index.find(l.mul(g.elements[cur]));
                ensure(it != index.end(), "double_cosets: left action escaped G");
                if (label[it->second] < 0) {
                    label[it->second] = next;
                    queue.push_back(it->second);
                }
            }
            for (const auto& r : right.elements) {
                auto it = index.find(g.elements[cur].mul(r));
                ensure(it != index.end(), "double_cosets: right action escaped G");
                if (label[it->second] < 0) {
                    label[it->second] = next;
                    queue.push_back(it->second);
                }
            }
        }
        out.orbit_sizes.push_back(orbit);
        ++next;
    }
    out.count = next;
    // Lexicographically smallest member per orbit; identity coset index.
    out.representatives.assign(static_cast<size_t>(next), GFMatrix());
    std::vector<bool> seen(static_cast<size_t>(next), false);
    for (size_t i = 0; i < g.elements.size(); ++i) {
        size_t lb = static_cast<size_t>(label[i]);
        if (!seen[lb]) {
            out.representatives[lb] = g.elements[i];
            seen[lb] = true;
        }
        if (g.elements[i].is_identity()) out.identity_coset = lb;
    }
    Integer lh = Integer(static_cast<long>(left.size())) * Integer(static_cast<long>(right.size()));
    Integer check = 0;
    for (long c = 0; c < next; ++c) {
        Integer orbit = out.orbit_sizes[static_cast<size_t>(c)];
        ensure(lh % orbit == 0, "double_cosets: orbit size does not divide |L||R|");
        Integer stab = lh / orbit;
        out.left_stabilizer_orders.push_back(stab);
        out.mass_sum += Rational(Integer(1), stab);
        check += orbit;
    }
    ensure(check == out.group_order, "double_cosets: orbits do not partition G");
    return out;
}

// ---------------------------------------------------------------------------
// The groups of the EGH double-coset setup at p = 2: G is the extension of
// U_g(F_2) (block pairs (A, conj A)) by the unipotent part Sym_g(F_4),
// Gamma uses norm-one monomial matrices with diagonal B, and H uses the
// norm-one cycle <eta> with zero-diagonal symmetric B. Elements are packed
// as (symmetric-part bit code) * |U| + (unitary index), with the group law
// (B, A) (B', A') = (B + conj(A) B' conj(A)^T, A A').
// ---------------------------------------------------------------------------

class EghContext {
public:
    EghContext(long g, long p) : g_(g), p_(p) {
        require(p == 2, "EghContext: the packed double-coset engine requires p = 2 "
                        "(Sym^0 is U_g-stable only there)");
        require(g >= 1 && g <= 3, "EghContext: g must be in [1, 3]");
        field_ = make_field(2, 2);
        unitary_ = unitary_group(g, p);
        nsym_ = static_cast<size_t>(g * (g + 1) / 2);
        sym_bits_ = 2 * nsym_;
        sym_codes_ = size_t(1) << sym_bits_;
        nu_ = unitary_.size();
        build_tables();
    }

    long g() const { return g_; }
    const FiniteField& field() const { return *field_; }
    std::shared_ptr<const FiniteField> field_ptr() const { return field_; }
    const GroupEnumeration& unitary() const { return unitary_; }
    size_t group_order() const { return sym_codes_ * nu_; }

    size_t uindex(const GFMatrix& a) const {
        auto it = std::lower_bound(unitary_.elements.begin(), unitary_.elements.end(), a);
        ensure(it != unitary_.elements.end() && *it == a, "EghContext: matrix not unitary");
        return static_cast<size_t>(it - unitary_.elements.begin());
    }

    uint32_t pack(size_t sym_code, size_t uidx) const {
        return static_cast<uint32_t>(sym_code * nu_ + uidx);
    }
    std::pair<size_t, size_t> unpack(uint32_t code) const {
        return {code / nu_, code % nu_};
    }

    uint32_t mul(uint32_t x, uint32_t y) const {
        auto [bx, ax] = unpack(x);
        auto [by, ay] = unpack(y);
        size_t b = bx ^ conj_table_[ax * sym_codes_ + by];
        return pack(b, umul_[ax * nu_ + ay]);
    }

    uint32_t identity() const { return pack(0, uindex(GFMatrix::identity(field_, static_cast<size_t>(g_)))); }

    /// Full 2g x 2g matrix [[A, 0], [B A, conj A]] of a packed element.
    GFMatrix materialize(uint32_t code) const {
        auto [b, a] = unpack(code);
        const GFMatrix& A = unitary_.elements[a];
        GFMatrix B = sym_matrix(b);
        GFMatrix BA = B.mul(A);
        GFMatrix Ac = A.conj();
        size_t n = static_cast<size_t>(g_);
        GFMatrix m(field_, 2 * n, 2 * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                m.at(i, j) = A.at(i, j);
                m.at(n + i, j) = BA.at(i, j);
                m.at(n + i, n + j) = Ac.at(i, j);
            }
        return m;
    }

    GFMatrix sym_matrix(size_t code) const {
        size_t n = static_cast<size_t>(g_);
        GFMatrix b(field_, n, n);
        size_t pos = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                auto bits = (code >> (2 * pos)) & 3;
                b.at(i, j) = static_cast<FiniteField::El>(bits);
                b.at(j, i) = static_cast<FiniteField::El>(bits);
                ++pos;
            }
        return b;
    }

    size_t sym_code(const GFMatrix& b) const {
        size_t code = 0, pos = 0;
        size_t n = static_cast<size_t>(g_);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                ensure(b.at(i, j) == b.at(j, i), "EghContext: matrix not symmetric");
                code |= static_cast<size_t>(b.at(i, j)) << (2 * pos);
                ++pos;
            }
        return code;
    }

    /// Generators of Gamma: permutations, a diagonal norm-one scalar, and
    /// the diagonal unipotent bits.
    std::vector<uint32_t> gamma_generators() const {
        std::vector<uint32_t> gens;
        size_t n = static_cast<size_t>(g_);
        GFMatrix diag = GFMatrix::identity(field_, n);
        diag.at(0, 0) = 2; // zeta, a norm-one scalar at p = 2
        gens.push_back(pack(0, uindex(diag)));
        if (n >= 2) {
            GFMatrix swp(field_, n, n);
            swp.at(0, 1) = 1;
            swp.at(1, 0) = 1;
            for (size_t i = 2; i < n; ++i) swp.at(i, i) = 1;
            gens.push_back(pack(0, uindex(swp)));
        }
        if (n >= 3) {
            GFMatrix cyc(field_, n, n);
            for (size_t i = 0; i < n; ++i) cyc.at((i + 1) % n, i) = 1;
            gens.push_back(pack(0, uindex(cyc)));
        }
        size_t pos = 0;
        size_t id = uindex(GFMatrix::identity(field_, n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                if (i == j)
                    for (int bit = 0; bit < 2; ++bit)
                        gens.push_back(pack(size_t(1) << (2 * pos + static_cast<size_t>(bit)), id));
                ++pos;
            }
        return gens;
    }

    /// Generators of H for a given eta: <eta> plus the zero-diagonal bits.
    std::vector<uint32_t> h_generators(const GFMatrix& eta) const {
        std::vector<uint32_t> gens;
        size_t n = static_cast<size_t>(g_);
        gens.push_back(pack(0, uindex(eta)));
        size_t pos = 0;
        size_t id = uindex(GFMatrix::identity(field_, n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                if (i != j)
                    for (int bit = 0; bit < 2; ++bit)
                        gens.push_back(pack(size_t(1) << (2 * pos + static_cast<size_t>(bit)), id));
                ++pos;
            }
        return gens;
    }

    /// Subgroup size by BFS closure from the identity under left products.
    Integer subgroup_order(const std::vector<uint32_t>& gens) const {
        std::vector<uint8_t> seen(group_order(), 0);
        std::deque<uint32_t> queue{identity()};
        seen[identity()] = 1;
        Integer count = 0;
        while (!queue.empty()) {
            uint32_t cur = queue.front();
            queue.pop_front();
            count += 1;
            for (uint32_t gen : gens) {
                uint32_t nx = mul(gen, cur);
                if (!seen[nx]) {
                    seen[nx] = 1;
                    queue.push_back(nx);
                }
            }
        }
        return count;
    }

    struct Orbits {
        long count = 0;
        std::vector<Integer> sizes;
        std::vector<uint32_t> lexmin;   // packed lex-min element per orbit
        size_t identity_orbit = 0;
    };

    /// Orbits of (Gamma x H) acting by g -> gamma g h on the whole group.
    Orbits double_coset_orbits(const std::vector<uint32_t>& gamma_gens,
                               const std::vector<uint32_t>& h_gens) const {
        std::vector<uint8_t> label(group_order(), 0xff);
        Orbits out;
        uint8_t next = 0;
        // Identity-first seeding, then canonical order.
        std::vector<uint32_t> seeds{identity()};
        seeds.reserve(group_order() + 1);
        for (uint32_t c = 0; c < group_order(); ++c) seeds.push_back(c);
        for (uint32_t seed : seeds) {
            if (label[seed] != 0xff) continue;
            ensure(next < 0xfe, "EghContext: too many double cosets for the 8-bit labels");
            std::deque<uint32_t> queue{seed};
            label[seed] = next;
            Integer orbit = 0;
            while (!queue.empty()) {
                uint32_t cur = queue.front();
                queue.pop_front();
                orbit += 1;
                for (uint32_t gen : gamma_gens) {
                    uint32_t nx = mul(gen, cur);
                    if (label[nx] == 0xff) {
                        label[nx] = next;
                        queue.push_back(nx);
                    }
                }
                for (uint32_t gen : h_gens) {
                    uint32_t nx = mul(cur, gen);
                    if (label[nx] == 0xff) {
                        label[nx] = next;
                        queue.push_back(nx);
                    }
                }
            }
            out.sizes.push_back(orbit);
            ++next;
        }
        out.count = next;
        out.identity_orbit = label[identity()];

        // Lexicographically smallest materialised matrix per orbit.
        out.lexmin.assign(static_cast<size_t>(next), 0);
        std::vector<std::vector<FiniteField::El>> best(static_cast<size_t>(next));
        for (uint32_t c = 0; c < group_order(); ++c) {
            uint8_t lb = label[c];
            const auto key = materialize(c).entries();
            if (best[lb].empty() || key < best[lb]) {
                best[lb] = key;
                out.lexmin[lb] = c;
            }
        }
        return out;
    }

private:
    void build_tables() {
        // Unitary multiplication table.
        umul_.assign(nu_ * nu_, 0);
        for (size_t a = 0; a < nu_; ++a)
            for (size_t b = 0; b < nu_; ++b)
                umul_[a * nu_ + b] = static_cast<uint16_t>(uindex(
                    unitary_.elements[a].mul(unitary_.elements[b])));

        // conj(A) S conj(A)^T on the F_2-basis of Sym_g(F_4), then the full
        // subset-XOR table. Sym^0-stability at p = 2 is verified on the way:
        // zero-diagonal basis elements must map to zero-diagonal images.
        size_t n = static_cast<size_t>(g_);
        conj_table_.assign(nu_ * sym_codes_, 0);
        for (size_t a = 0; a < nu_; ++a) {
            GFMatrix ac = unitary_.elements[a].conj();
            GFMatrix act = ac.transpose();
            std::vector<size_t> img(sym_bits_, 0);
            for (size_t bit = 0; bit < sym_bits_; ++bit) {
                GFMatrix s = sym_matrix(size_t(1) << bit);
                GFMatrix t = ac.mul(s).mul(act);
                img[bit] = sym_code(t);
                // Lemma-level check: off-diagonal bits stay zero-diagonal.
                size_t pos = bit / 2;
                size_t i = 0, j = 0, k = 0;
                for (i = 0; i < n; ++i) {
                    for (j = i; j < n; ++j) {
                        if (k == pos) goto located;
                        ++k;
                    }
                }
            located:
                if (i != j)
                    for (size_t d = 0; d < n; ++d)
                        ensure(t.at(d, d) == 0, "EghContext: Sym^0 not stable under the action");
            }
            uint16_t* row = &conj_table_[a * sym_codes_];
            row[0] = 0;
            for (size_t code = 1; code < sym_codes_; ++code) {
                size_t low = code & (code - 1);
                size_t bit = static_cast<size_t>(__builtin_ctzll(code));
                row[code] = static_cast<uint16_t>(row[low] ^ img[bit]);
            }
        }
    }

    long g_, p_;
    std::shared_ptr<const FiniteField> field_;
    GroupEnumeration unitary_;
    size_t nsym_ = 0, sym_bits_ = 0, sym_codes_ = 0, nu_ = 0;
    std::vector<uint16_t> umul_;
    std::vector<uint16_t> conj_table_;
};

struct EghReport {
    Integer g_order, gamma_order, h_order;
    DoubleCosetReport cosets;
    /// Geometric automorphism orders: 2^g * stabiliser (the kernel of the
    /// modular reduction contributes C_2^g), and their mass.
    std::vector<Integer> aut_orders;
    Rational geometric_mass;
};

namespace detail {

// g = 1 for any small p: groups are tiny, so build them explicitly as
// 2x2 matrices [[a, 0], [b a, conj a]] and use the generic orbit engine.
// Gamma already equals G here (every scalar is monomial and every diagonal
// is allowed), so the count is 1 for any choice of eta.
inline EghReport egh_rank_one(long p, const GFMatrix* eta_override) {
    auto f = make_field(p, 2);
    auto element = [&](FiniteField::El b, FiniteField::El a) {
        GFMatrix m(f, 2, 2);
        m.at(0, 0) = a;
        m.at(1, 0) = f->mul(b, a);
        m.at(1, 1) = f->frobenius(a);
        return m;
    };
    std::vector<FiniteField::El> norm_one;
    for (size_t a = 1; a < f->size(); ++a)
        if (f->mul(static_cast<FiniteField::El>(a),
                   f->frobenius(static_cast<FiniteField::El>(a))) == 1)
            norm_one.push_back(static_cast<FiniteField::El>(a));

    GroupEnumeration big, gamma, h;
    big.field = gamma.field = h.field = f;
    for (size_t b = 0; b < f->size(); ++b)
        for (FiniteField::El a : norm_one) {
            big.elements.push_back(element(static_cast<FiniteField::El>(b), a));
            gamma.elements.push_back(element(static_cast<FiniteField::El>(b), a));
        }
    FiniteField::El eta = eta_override ? eta_override->at(0, 0)
                                       : embed_norm_one_cycle(1, p).at(0, 0);
    FiniteField::El cur = 1;
    do {
        h.elements.push_back(element(0, cur));
        cur = f->mul(cur, eta);
    } while (cur != 1);
    big.canonicalise_and_check();
    gamma.canonicalise_and_check();
    h.canonicalise_and_check();

    EghReport rep;
    rep.g_order = Integer(static_cast<long>(big.size()));
    rep.gamma_order = Integer(static_cast<long>(gamma.size()));
    rep.h_order = Integer(static_cast<long>(h.size()));
    rep.cosets = double_cosets(big, gamma, h);
    Integer kernel = 2; // C_2^g with g = 1
    for (const auto& s : rep.cosets.left_stabilizer_orders) {
        rep.aut_orders.push_back(kernel * s);
        rep.geometric_mass += Rational(Integer(1), kernel * s);
    }
    return rep;
}

} // namespace detail

/// Builds G, Gamma, H at (g, p) and computes Gamma\G/H with stabilisers.
inline EghReport build_egh_and_cosets(long g, long p, const GFMatrix* eta_override = nullptr) {
    if (g == 1 && p != 2) {
        require(p <= 7, "build_egh_and_cosets: rank-one path supports p <= 7");
        return detail::egh_rank_one(p, eta_override);
    }
    EghContext ctx(g, p);
    GFMatrix eta = eta_override ? *eta_override : embed_norm_one_cycle(g, p);
    ensure(eta.mul(eta.conj_transpose()).is_identity(), "build_egh_and_cosets: eta not unitary");

    auto gamma_gens = ctx.gamma_generators();
    auto h_gens = ctx.h_generators(eta);

    EghReport rep;
    rep.g_order = Integer(static_cast<unsigned long>(ctx.group_order()));
    rep.gamma_order = ctx.subgroup_order(gamma_gens);
    rep.h_order = ctx.subgroup_order(h_gens);

    auto orbits = ctx.double_coset_orbits(gamma_gens, h_gens);
    rep.cosets.group_order = rep.g_order;
    rep.cosets.count = orbits.count;
    rep.cosets.identity_coset = orbits.identity_orbit;
    Integer lh = rep.gamma_order * rep.h_order;
    Integer total = 0;
    for (long c = 0; c < orbits.count; ++c) {
        Integer orbit = orbits.sizes[static_cast<size_t>(c)];
        total += orbit;
        ensure(lh % orbit == 0, "build_egh_and_cosets: orbit size does not divide |Gamma||H|");
        Integer stab = lh / orbit;
        rep.cosets.orbit_sizes.push_back(orbit);
        rep.cosets.left_stabilizer_orders.push_back(stab);
        rep.cosets.mass_sum += Rational(Integer(1), stab);
        rep.cosets.representatives.push_back(ctx.materialize(orbits.lexmin[static_cast<size_t>(c)]));
    }
    ensure(total == rep.g_order, "build_egh_and_cosets: orbits do not partition G");

    Integer kernel = pow_int(2, static_cast<unsigned long>(g));
    for (const auto& s : rep.cosets.left_stabilizer_orders) {
        rep.aut_orders.push_back(kernel * s);
        rep.geometric_mass += Rational(Integer(1), kernel * s);
    }
    return rep;
}

/// The two geometric automorphism orders at (g, p) = (3, 2): stabilisers
/// (9, 3), automorphism orders (72, 24), mass 1/72 + 1/24 = 1/18.
inline std::pair<Integer, Integer> coset_aut_orders_g3_p2() {
    EghReport rep = build_egh_and_cosets(3, 2);
    ensure(rep.cosets.count == 2, "coset_aut_orders_g3_p2: expected two double cosets");
    size_t idc = rep.cosets.identity_coset;
    size_t other = 1 - idc;
    return {rep.cosets.left_stabilizer_orders[idc], rep.cosets.left_stabilizer_orders[other]};
}

/// Conjugates eta by `trials` seeded random unitary matrices, rebuilds H and
/// recounts the double cosets; true iff every count agrees with the base run.
inline bool choice_independence_check(long g, long p, int trials, uint64_t seed = 0) {
    GroupEnumeration u = unitary_group(g, p);
    GFMatrix eta = embed_norm_one_cycle(g, p);
    long base = build_egh_and_cosets(g, p).cosets.count;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto& c = u.elements[rng() % u.size()];
        auto cinv = c.inverse();
        ensure(cinv.has_value(), "choice_independence_check: unitary not invertible");
        GFMatrix eta2 = c.mul(eta).mul(*cinv);
        EghReport rep = build_egh_and_cosets(g, p, &eta2);
        if (rep.cosets.count != base) return false;
    }
    return true;
}

} // namespace leafmass
