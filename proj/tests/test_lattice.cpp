#include <catch2/catch.hpp>

#include "leafmass/lattice_decompose.hpp"
#include "leafmass/mass.hpp"

using namespace leafmass;

namespace {
std::shared_ptr<const QuaternionOrder> order2() {
    static auto o = std::make_shared<const QuaternionOrder>(make_order(2));
    return o;
}
} // namespace

TEST_CASE("trace form of the standard lattices at p = 2") {
    auto o = order2();
    HermitianLattice l1 = HermitianLattice::standard(o, 1);
    IntMat t = l1.trace_form();
    REQUIRE(t.size() == 4);
    // Minimum of the norm form is 2, attained by the 24 units (12 sign classes).
    auto sv = l1.short_vectors(2);
    CHECK(sv.size() == 12);
    CHECK(l1.short_vectors(1).empty());

    HermitianLattice l2 = HermitianLattice::standard(o, 2);
    IntMat t2 = l2.trace_form();
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 4; j < 8; ++j) {
            CHECK(t2[i][j] == 0); // block diagonal
            CHECK(t2[i][j - 4] == t[i][j - 4]);
        }
    CHECK(l2.short_vectors(2).size() == 24);

    HermitianLattice l1s = HermitianLattice::standard(o, 1, Rational(2));
    IntMat ts = l1s.trace_form();
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) CHECK(ts[i][j] == 2 * t[i][j]);
}

TEST_CASE("automorphism groups of the standard p = 2 lattices") {
    auto o = order2();
    CHECK(automorphism_order(HermitianLattice::standard(o, 1)) == 24);
    CHECK(automorphism_order(HermitianLattice::standard(o, 1, Rational(2))) == 24);
    CHECK(automorphism_order(HermitianLattice::standard(o, 2)) == 1152);
    CHECK(automorphism_order(HermitianLattice::standard(o, 3)) == 82944);
}

TEST_CASE("automorphism generators close up and preserve the form") {
    auto o = order2();
    HermitianLattice l = HermitianLattice::standard(o, 2);
    AutomorphismGroup g = automorphism_group(l);
    CHECK(g.order == 1152);
    CHECK(!g.generators.empty());
    // Every generator row set reproduces the Gram exactly.
    for (const auto& m : g.generators) {
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) {
                Quat acc = Quat::zero();
                for (long a = 0; a < 2; ++a)
                    for (long b = 0; b < 2; ++b)
                        acc = acc + o->alg.mul(
                                        o->alg.mul(o->to_quat(m[static_cast<size_t>(i)][static_cast<size_t>(a)]),
                                                   l.gram_at(a, b)),
                                        o->to_quat(m[static_cast<size_t>(j)][static_cast<size_t>(b)]).conj());
                CHECK(acc == l.gram_at(i, j));
            }
    }
}

TEST_CASE("nonprincipal lattice at p = 2") {
    NonprincipalSearch s = nonprincipal_lattice_p2();
    CHECK(s.lines_total == 5);
    CHECK(s.lines_passing == 3);
    CHECK(automorphism_order(s.lattice) == 1920);
    // Mass identity: 1/1920 = M_2(1,2).
    CHECK(mass_maximal(2, 1, 2) == Rational(1, 1920));
    // The lattice is genuinely non-principal: not isometric to (O^2, I_2).
    CHECK(!isometric(s.lattice, HermitianLattice::standard(order2(), 2)));
}

TEST_CASE("isometry test basics") {
    auto o = order2();
    HermitianLattice a = HermitianLattice::standard(o, 1);
    HermitianLattice b = HermitianLattice::standard(o, 1, Rational(2));
    CHECK(isometric(a, a));
    CHECK(!isometric(a, b));
}

TEST_CASE("orthogonal decomposition of the elementary cases") {
    auto o = order2();

    // (O^2, I_2): two components, both isometric to (O, I_1).
    auto d1 = orthogonal_decompose(HermitianLattice::standard(o, 2));
    REQUIRE(d1.components.size() == 2);
    REQUIRE(d1.classes.size() == 1);
    CHECK(d1.classes[0].size() == 2);
    for (const auto& comp : d1.components) {
        CHECK(comp.lattice.rank() == 1);
        CHECK(isometric(comp.lattice, HermitianLattice::standard(o, 1)));
    }

    NonprincipalSearch np = nonprincipal_lattice_p2();

    // (O, 2 I_1) + L_np: two non-isometric components.
    auto sum = orthogonal_sum(HermitianLattice::standard(o, 1, Rational(2)), np.lattice);
    auto d2 = orthogonal_decompose(sum);
    REQUIRE(d2.components.size() == 2);
    CHECK(d2.classes.size() == 2);

    // L_np + L_np: two components, mutually isometric.
    auto d3 = orthogonal_decompose(orthogonal_sum(np.lattice, np.lattice));
    REQUIRE(d3.components.size() == 2);
    REQUIRE(d3.classes.size() == 1);
    CHECK(isometric(d3.components[0].lattice, np.lattice));
    CHECK(isometric(d3.components[1].lattice, d3.components[0].lattice));
}

TEST_CASE("decomposition idempotence") {
    auto o = order2();
    NonprincipalSearch np = nonprincipal_lattice_p2();
    auto sum = orthogonal_sum(HermitianLattice::standard(o, 1, Rational(2)), np.lattice);
    for (const auto& comp : orthogonal_decompose(sum).components) {
        auto redo = orthogonal_decompose(comp.lattice);
        CHECK(redo.components.size() == 1);
    }
}

TEST_CASE("decomposition is stable under unimodular basis changes") {
    auto o = order2();
    NonprincipalSearch np = nonprincipal_lattice_p2();
    std::vector<HermitianLattice> cases = {
        HermitianLattice::standard(o, 2),
        orthogonal_sum(HermitianLattice::standard(o, 1, Rational(2)), np.lattice),
        orthogonal_sum(np.lattice, np.lattice),
    };
    std::mt19937_64 rng(0);
    for (const auto& l : cases) {
        auto base = orthogonal_decompose(l);
        for (int trial = 0; trial < 5; ++trial) {
            OMatrix u = random_unimodular(*o, l.rank(), rng);
            HermitianLattice moved = transform_lattice(l, u);
            auto redo = orthogonal_decompose(moved);
            REQUIRE(redo.components.size() == base.components.size());
            // Match components up to isometry (multiset equality).
            std::vector<bool> used(base.components.size(), false);
            for (const auto& comp : redo.components) {
                bool matched = false;
                for (size_t i = 0; i < base.components.size() && !matched; ++i) {
                    if (used[i]) continue;
                    if (isometric(comp.lattice, base.components[i].lattice)) {
                        used[i] = true;
                        matched = true;
                    }
                }
                CHECK(matched);
            }
        }
    }
}

TEST_CASE("aut of orthogonal sums from component data") {
    auto o = order2();
    NonprincipalSearch np = nonprincipal_lattice_p2();
    HermitianLattice scaled = HermitianLattice::standard(o, 1, Rational(2));

    CHECK(aut_of_orthogonal_sum({{np.lattice, 2}}, {Integer(1920)}) == Integer(1920) * 1920 * 2);
    CHECK(aut_of_orthogonal_sum({{scaled, 1}, {np.lattice, 1}}, {Integer(24), Integer(1920)}) ==
          24 * 1920);
    CHECK(aut_of_orthogonal_sum({{HermitianLattice::standard(o, 1), 3}}, {Integer(24)}) ==
          Integer(24) * 24 * 24 * 6);
    CHECK_THROWS_AS(
        aut_of_orthogonal_sum({{np.lattice, 1}, {np.lattice, 1}}, {Integer(1920), Integer(1920)}),
        domain_error);
}

TEST_CASE("mass-aut duality for the certified genera") {
    auto o = order2();
    NonprincipalSearch np = nonprincipal_lattice_p2();
    CHECK(mass_maximal(3, 2, 1) * Rational(automorphism_order(HermitianLattice::standard(o, 3))) ==
          Rational(1));
    Integer aut312 = aut_of_orthogonal_sum(
        {{HermitianLattice::standard(o, 1, Rational(2)), 1}, {np.lattice, 1}},
        {Integer(24), Integer(1920)});
    CHECK(mass_maximal(3, 1, 2) * Rational(aut312) == Rational(1));
    Integer aut412 = aut_of_orthogonal_sum({{np.lattice, 2}}, {Integer(1920)});
    CHECK(mass_maximal(4, 1, 2) * Rational(aut412) == Rational(1));
}

TEST_CASE("aut order equals the orthogonal-sum formula on the corpus") {
    auto o = order2();
    NonprincipalSearch np = nonprincipal_lattice_p2();
    std::vector<HermitianLattice> corpus = {
        HermitianLattice::standard(o, 2),
        orthogonal_sum(HermitianLattice::standard(o, 1, Rational(2)), np.lattice),
    };
    for (const auto& l : corpus) {
        auto dec = orthogonal_decompose(l);
        std::vector<std::pair<HermitianLattice, long>> classes;
        std::vector<Integer> orders;
        for (const auto& cls : dec.classes) {
            classes.emplace_back(dec.components[cls[0]].lattice, static_cast<long>(cls.size()));
            orders.push_back(automorphism_order(dec.components[cls[0]].lattice));
        }
        CHECK(automorphism_order(l) == aut_of_orthogonal_sum(classes, orders));
    }
}
