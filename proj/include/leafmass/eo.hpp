#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "leafmass/numbers.hpp"
#include "leafmass/rational.hpp"

namespace leafmass {

/// Elementary sequence phi: {1..g} -> Z>=0 with phi(0) = 0 and
/// phi(i) <= phi(i+1) <= phi(i) + 1.
struct ElementarySequence {
    std::vector<long> values; // phi(1), ..., phi(g)

    long g() const { return static_cast<long>(values.size()); }
    long at(long i) const { // phi(i) with phi(0) = 0
        require(i >= 0 && i <= g(), "ElementarySequence: index out of range");
        return i == 0 ? 0 : values[static_cast<size_t>(i - 1)];
    }

    void validate() const {
        require(!values.empty(), "ElementarySequence: empty");
        long prev = 0;
        for (long v : values) {
            require(v >= prev && v <= prev + 1, "ElementarySequence: not an elementary sequence");
            prev = v;
        }
    }

    friend bool operator==(const ElementarySequence& a, const ElementarySequence& b) {
        return a.values == b.values;
    }
    friend bool operator<(const ElementarySequence& a, const ElementarySequence& b) {
        return a.values < b.values;
    }
};

/// p-rank of the stratum S_phi: max{i >= 0 : phi(i) = i}.
inline long p_rank(const ElementarySequence& phi) {
    phi.validate();
    long r = 0;
    for (long i = 1; i <= phi.g(); ++i)
        if (phi.at(i) == i) r = i;
    return r;
}

/// a-number of S_phi: g - phi(g).
inline long a_number(const ElementarySequence& phi) {
    phi.validate();
    return phi.g() - phi.at(phi.g());
}

/// All 2^g elementary sequences, descending lexicographic order; optionally
/// filtered by p-rank.
inline std::vector<ElementarySequence> enumerate_elementary_sequences(
    long g, std::optional<long> p_rank_filter = std::nullopt) {
    require(g >= 1 && g <= 12, "enumerate_elementary_sequences: g must be in [1, 12]");
    std::vector<ElementarySequence> out;
    std::vector<long> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<long>(cur.size()) == g) {
            ElementarySequence phi{cur};
            if (!p_rank_filter || p_rank(phi) == *p_rank_filter) out.push_back(phi);
            return;
        }
        long prev = cur.empty() ? 0 : cur.back();
        for (long v : {prev + 1, prev}) { // descending-lex order of the catalog
            cur.push_back(v);
            rec();
            cur.pop_back();
        }
    };
    rec();
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// S_phi lies inside the supersingular locus S_4 iff phi(2) = 0 (g = 4 only;
/// the criterion is cited for dimension four).
inline bool supersingular_g4(const ElementarySequence& phi) {
    phi.validate();
    require(phi.g() == 4, "supersingular_g4: criterion applies to g = 4 only");
    return phi.at(2) == 0;
}

/// Newton polygon of p-rank zero: 2g slopes in (0,1), symmetric, sum g,
/// each slope's denominator dividing its multiplicity.
struct NewtonPolygon {
    std::vector<Rational> slopes; // ascending

    void validate(long g) const {
        require(static_cast<long>(slopes.size()) == 2 * g, "NewtonPolygon: needs 2g slopes");
        Rational sum(0);
        for (size_t i = 0; i < slopes.size(); ++i) {
            require(slopes[i] > Rational(0) && slopes[i] < Rational(1),
                    "NewtonPolygon: slopes must lie in (0,1) for p-rank zero");
            if (i) require(slopes[i] >= slopes[i - 1], "NewtonPolygon: slopes not sorted");
            require(slopes[i] + slopes[slopes.size() - 1 - i] == Rational(1),
                    "NewtonPolygon: symmetry violated");
            sum += slopes[i];
        }
        require(sum == Rational(g), "NewtonPolygon: slopes must sum to g");
        // denominator divides multiplicity
        for (size_t i = 0; i < slopes.size();) {
            size_t j = i;
            while (j < slopes.size() && slopes[j] == slopes[i]) ++j;
            require(Integer(static_cast<long>(j - i)) % slopes[i].den() == 0,
                    "NewtonPolygon: denominator does not divide multiplicity");
            i = j;
        }
    }

    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) {
        return a.slopes == b.slopes;
    }
    friend bool operator<(const NewtonPolygon& a, const NewtonPolygon& b) {
        for (size_t i = 0; i < std::min(a.slopes.size(), b.slopes.size()); ++i) {
            if (a.slopes[i] != b.slopes[i]) return a.slopes[i] < b.slopes[i];
        }
        return a.slopes.size() < b.slopes.size();
    }
};

/// All symmetric admissible Newton polygons of p-rank zero in dimension g:
/// multisets of isoclinic blocks (a, m), gcd(a, m) = 1, a/m < 1/2 (each
/// contributing m slopes a/m and m slopes (m-a)/m) plus 1/2-pairs, with
/// total weight g.
inline std::vector<NewtonPolygon> newton_prank0(long g) {
    require(g >= 1 && g <= 6, "newton_prank0: g must be in [1, 6]");
    struct Unit {
        long a, m; // slope a/m; a = m = 1 encodes the (1/2, 1/2) pair
        long weight() const { return a == 1 && m == 1 ? 1 : m; }
    };
    std::vector<Unit> units{{1, 1}};
    for (long m = 3; m <= g; ++m)
        for (long a = 1; 2 * a < m; ++a) {
            long x = a, y = m;
            while (y) {
                long t = x % y;
                x = y;
                y = t;
            }
            if (x == 1) units.push_back({a, m});
        }

    std::vector<NewtonPolygon> out;
    std::vector<long> counts(units.size(), 0);
    std::function<void(size_t, long)> rec = [&](size_t i, long left) {
        if (left == 0) {
            std::vector<Rational> slopes;
            for (size_t u = 0; u < units.size(); ++u)
                for (long c = 0; c < counts[u]; ++c) {
                    if (units[u].m == 1) {
                        slopes.push_back(Rational(1, 2));
                        slopes.push_back(Rational(1, 2));
                    } else {
                        for (long k = 0; k < units[u].m; ++k) slopes.push_back(Rational(units[u].a, units[u].m));
                        for (long k = 0; k < units[u].m; ++k)
                            slopes.push_back(Rational(units[u].m - units[u].a, units[u].m));
                    }
                }
            std::sort(slopes.begin(), slopes.end());
            NewtonPolygon np{slopes};
            np.validate(g);
            out.push_back(std::move(np));
            return;
        }
        if (i == units.size()) return;
        for (long c = 0; c * units[i].weight() <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c * units[i].weight());
        }
        counts[i] = 0;
    };
    rec(0, g);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Parahoric level c of the superspecial image Lambda_{4,p^c} for the four
/// supersingular g = 4 strata. Cited data, not derived here.
inline long minimal_parahoric_c(const ElementarySequence& phi) {
    require(phi.g() == 4 && supersingular_g4(phi),
            "minimal_parahoric_c: needs a supersingular g = 4 stratum");
    const std::vector<long>& v = phi.values;
    if (v == std::vector<long>{0, 0, 0, 0}) return 0;
    if (v == std::vector<long>{0, 0, 0, 1}) return 1;
    if (v == std::vector<long>{0, 0, 1, 1}) return 2;
    if (v == std::vector<long>{0, 0, 1, 2}) return 2;
    throw internal_error("minimal_parahoric_c: unreachable stratum");
}

/// Closure-order edges of the p-rank-zero EO strata in dimension 4
/// (upper stratum first). Emitted for documentation; not derived.
inline std::vector<std::pair<ElementarySequence, ElementarySequence>> eo_g4_closure_edges() {
    auto es = [](std::initializer_list<long> v) { return ElementarySequence{std::vector<long>(v)}; };
    return {
        {es({0, 1, 2, 3}), es({0, 1, 2, 2})}, {es({0, 1, 2, 2}), es({0, 1, 1, 2})},
        {es({0, 1, 1, 2}), es({0, 1, 1, 1})}, {es({0, 1, 1, 2}), es({0, 0, 1, 2})},
        {es({0, 1, 1, 1}), es({0, 0, 1, 1})}, {es({0, 0, 1, 2}), es({0, 0, 1, 1})},
        {es({0, 0, 1, 1}), es({0, 0, 0, 1})}, {es({0, 0, 0, 1}), es({0, 0, 0, 0})},
    };
}

enum class LeafVerdict { Singleton, NotSingleton, NeedsANumber };

inline const char* to_string(LeafVerdict v) {
    switch (v) {
        case LeafVerdict::Singleton: return "SINGLETON";
        case LeafVerdict::NotSingleton: return "NOT_SINGLETON";
        case LeafVerdict::NeedsANumber: return "NEEDS_A_NUMBER";
    }
    return "?";
}

/// Final verdict for a supersingular point: the central leaf C(x) is a
/// singleton iff (g=1, p in {2,3,5,7,13}), (g=2, p in {2,3}), or
/// (g=3, p=2, a >= 2). At (g,p) = (3,2) the a-number is decisive.
inline LeafVerdict central_leaf_verdict(long g, const Integer& p,
                                        std::optional<long> a_num = std::nullopt) {
    require(g >= 1, "central_leaf_verdict: g must be >= 1");
    require(is_prime(p), "central_leaf_verdict: p must be prime");
    if (a_num) require(*a_num >= 1 && *a_num <= g, "central_leaf_verdict: a-number out of range");
    if (g == 1)
        return (p == 2 || p == 3 || p == 5 || p == 7 || p == 13) ? LeafVerdict::Singleton
                                                                 : LeafVerdict::NotSingleton;
    if (g == 2) return (p == 2 || p == 3) ? LeafVerdict::Singleton : LeafVerdict::NotSingleton;
    if (g == 3) {
        if (p != 2) return LeafVerdict::NotSingleton;
        if (!a_num) return LeafVerdict::NeedsANumber;
        return *a_num >= 2 ? LeafVerdict::Singleton : LeafVerdict::NotSingleton;
    }
    return LeafVerdict::NotSingleton;
}

} // namespace leafmass
