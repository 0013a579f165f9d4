#include <catch2/catch.hpp>

#include "leafmass/egh.hpp"
#include "leafmass/mass.hpp"
#include "leafmass/symplectic.hpp"

using namespace leafmass;

TEST_CASE("finite fields construct and verify") {
    auto f4 = make_field(2, 2);
    CHECK(f4->size() == 4);
    // z^2 + z + 1 = 0: code 2 is z, so z^2 = z + 1 = code 3.
    CHECK(f4->mul(2, 2) == 3);
    CHECK(f4->element_order(2) == 3);
    auto f9 = make_field(3, 2);
    CHECK(f9->size() == 9);
    CHECK(f9->element_order(f9->generator()) == 8);
    CHECK_THROWS_AS(FiniteField(2, 2, {1, 0, 1}), internal_error); // x^2 + 1 reducible mod 2
}

TEST_CASE("unitary group enumeration") {
    CHECK(unitary_group(1, 2).size() == 3);
    CHECK(unitary_group(1, 3).size() == 4);
    CHECK(unitary_group(2, 2).size() == 18);
    auto u32 = unitary_group(3, 2);
    // Brute-force filter over Mat_3(F_4): every element satisfies A A* = I.
    for (size_t i = 0; i < u32.size(); i += 37)
        CHECK(u32.elements[i].mul(u32.elements[i].conj_transpose()).is_identity());
    // |{A : A A* = I}| = 2^3 * (2+1)(2^2-1)(2^3+1) = 648.
    CHECK(u32.size() == 648);
}

TEST_CASE("norm-one cycle embeds for odd rank only") {
    GFMatrix eta = embed_norm_one_cycle(3, 2);
    CHECK(eta.multiplicative_order() == 9);
    CHECK(eta.mul(eta.conj_transpose()).is_identity());
    // The fixed explicit form: rows (0,0,z), (1,0,0), (0,1,0).
    CHECK(eta.at(0, 2) == 2);
    CHECK(eta.at(1, 0) == 1);
    CHECK(eta.at(2, 1) == 1);
    CHECK(eta.at(0, 0) == 0);

    GFMatrix e1 = embed_norm_one_cycle(1, 3);
    CHECK(e1.multiplicative_order() == 4);

    GFMatrix e33 = embed_norm_one_cycle(3, 3);
    CHECK(e33.multiplicative_order() == 28);
    CHECK(e33.mul(e33.conj_transpose()).is_identity());

    // Even rank: |U_2(F_2)| = 18 has no element of order 5.
    CHECK_THROWS_AS(embed_norm_one_cycle(2, 2), domain_error);
}

TEST_CASE("reduced double cosets of U_3(F_2)") {
    auto u = unitary_group(3, 2);
    auto f4 = u.field;

    // Left factor: monomial matrices with norm-one entries.
    GroupEnumeration mono;
    mono.field = f4;
    mono.label = GroupLabel::Custom;
    for (const auto& m : u.elements) {
        bool is_mono = true;
        for (size_t i = 0; i < 3 && is_mono; ++i) {
            int nz = 0;
            for (size_t j = 0; j < 3; ++j)
                if (m.at(i, j) != 0) ++nz;
            is_mono = nz == 1;
        }
        if (is_mono) mono.elements.push_back(m);
    }
    mono.canonicalise_and_check();
    CHECK(mono.size() == 162); // 3^3 * 3!

    GroupEnumeration cyc;
    cyc.field = f4;
    GFMatrix eta = embed_norm_one_cycle(3, 2);
    GFMatrix x = GFMatrix::identity(f4, 3);
    for (int i = 0; i < 9; ++i) {
        cyc.elements.push_back(x);
        x = x.mul(eta);
    }
    cyc.canonicalise_and_check();
    CHECK(cyc.size() == 9);

    auto rep = double_cosets(u, mono, cyc);
    CHECK(rep.count == 2);
    // The identity coset is mono * <eta> = mono itself (eta is monomial), so
    // the explicit matrix with 1 on the diagonal and z off-diagonal lies in
    // the second coset.
    CHECK(rep.orbit_sizes[rep.identity_coset] == 162);
    GFMatrix a(f4, 3, 3);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) a.at(i, j) = (i == j) ? 1 : 2;
    CHECK(a.mul(a.conj_transpose()).is_identity());
    // Orbit sizes: 162 + 486 = 648.
    Integer total = 0;
    for (const auto& s : rep.orbit_sizes) total += s;
    CHECK(total == 648);
}

TEST_CASE("trivial double coset G\\G/G") {
    auto u = unitary_group(2, 2);
    auto rep = double_cosets(u, u, u);
    CHECK(rep.count == 1);
    CHECK(rep.orbit_sizes[0] == 18);
}

TEST_CASE("EGH groups at (3, 2): orders and double cosets") {
    EghReport rep = build_egh_and_cosets(3, 2);
    CHECK(rep.g_order == Integer(648) * 4096);
    CHECK(rep.gamma_order == 27 * 6 * 64);  // (p+1)^g g! p^{2g}
    CHECK(rep.h_order == 9 * 64);           // (p^g+1) p^{g(g-1)}
    CHECK(rep.cosets.count == 2);

    size_t idc = rep.cosets.identity_coset;
    CHECK(rep.cosets.left_stabilizer_orders[idc] == 9);
    CHECK(rep.cosets.left_stabilizer_orders[1 - idc] == 3);
    CHECK(rep.aut_orders[idc] == 72);
    CHECK(rep.aut_orders[1 - idc] == 24);
    CHECK(rep.geometric_mass == Rational(1, 18));
    CHECK(rep.geometric_mass == Rational(1, 72) + Rational(1, 24));

    // Orbit counting closure: sum of |Gamma||H|/stab = |G|.
    Rational closure(0);
    for (const auto& s : rep.cosets.left_stabilizer_orders)
        closure += Rational(rep.gamma_order * rep.h_order, s);
    CHECK(closure == Rational(rep.g_order));
}

TEST_CASE("coset aut orders and the two-class mass split") {
    auto [s1, s2] = coset_aut_orders_g3_p2();
    CHECK(s1 == 9);
    CHECK(s2 == 3);
    CHECK(Rational(Integer(1), 8 * s1) + Rational(Integer(1), 8 * s2) == Rational(1, 18));
}

TEST_CASE("double-coset mass agrees with the leaf mass formula") {
    // Two independent routes to the same rational: the finite-group orbit
    // computation and the closed-form leaf mass (zeta values and local
    // polynomial factors). The class count matches too.
    EghReport rep = build_egh_and_cosets(3, 2);
    CHECK(rep.geometric_mass == mass_g3_a1(2, 3, true, true));
    CHECK(rep.cosets.count == 2);
}

TEST_CASE("choice independence of the subfield") {
    CHECK(choice_independence_check(3, 2, 5));
    // Rank one collapses to abelian bookkeeping: Gamma = G, one coset.
    CHECK(choice_independence_check(1, 2, 3));
    CHECK(choice_independence_check(1, 3, 3));
    CHECK(build_egh_and_cosets(1, 3).cosets.count == 1);
    CHECK(build_egh_and_cosets(1, 5).cosets.count == 1);
}

TEST_CASE("double-coset reports are byte-identical across runs") {
    EghReport a = build_egh_and_cosets(3, 2);
    EghReport b = build_egh_and_cosets(3, 2);
    REQUIRE(a.cosets.representatives.size() == b.cosets.representatives.size());
    for (size_t i = 0; i < a.cosets.representatives.size(); ++i)
        CHECK(a.cosets.representatives[i] == b.cosets.representatives[i]);
    CHECK(a.cosets.orbit_sizes == b.cosets.orbit_sizes);
    CHECK(a.cosets.identity_coset == b.cosets.identity_coset);
}

TEST_CASE("symplectic group orders") {
    CHECK(symplectic_order(4, 4) == Integer(979200));
    CHECK(symplectic_order(4, 4) == pow_int(2, 8) * 9 * 25 * 17);
    CHECK(symplectic_order(2, 4) == 60);
    CHECK(symplectic_order(2, 2) == 6);
    // |SL_2(F_4)^2 . C_2| = 60^2 * 2 = 7200 = 2^5 3^2 5^2.
    CHECK(Integer(60) * 60 * 2 == pow_int(2, 5) * 9 * 25);
    CHECK_THROWS_AS(symplectic_order(3, 2), domain_error);
}

TEST_CASE("isotropic stabilizers across the desk-scale grid") {
    auto r22 = isotropic_stabilizer(2, 2, {0});
    CHECK(r22.stabilizer_order == 3);
    CHECK(r22.d == 2);
    CHECK(r22.matrix_size == 1);

    auto r24 = isotropic_stabilizer(2, 4, {0});
    CHECK(r24.stabilizer_order == 5);
    CHECK(r24.d == 2);

    auto r42 = isotropic_stabilizer(4, 2, {0});
    CHECK(r42.stabilizer_order == 5);
    CHECK(r42.d == 4);
    CHECK(r42.matrix_size == 1);

    auto r44 = isotropic_stabilizer(4, 4, {0});
    CHECK(r44.stabilizer_order == 17);
    CHECK(r44.d == 4); // End = F_{q^{2c}} = F_256
    CHECK(r44.matrix_size == 1);

    // Two-dimensional isotropic W: J = {0, 1} still has d = 4.
    auto r44b = isotropic_stabilizer(4, 4, {0, 1});
    CHECK(r44b.d == 4);
    CHECK(r44b.stabilizer_order == 17);

    // ord_2(d) = ord_2(2c) in every case.
    for (const auto& rep : {r22, r24, r42, r44}) {
        long d = rep.d;
        long twoc = rep.d * rep.matrix_size;
        auto ord2 = [](long x) {
            long o = 0;
            while (x % 2 == 0) {
                x /= 2;
                ++o;
            }
            return o;
        };
        CHECK(ord2(d) == ord2(twoc));
    }

    CHECK_THROWS_AS(isotropic_stabilizer(4, 2, {0, 2}), domain_error); // J ∩ (J+c) nonempty
    CHECK_THROWS_AS(isotropic_stabilizer(4, 2, std::set<long>{}), domain_error);
}

TEST_CASE("the index-17 mass identity and the cardinality contradiction") {
    CHECK(mass17_identity(17) == Rational(1, 128));
    CHECK(mass17_identity(1) == Rational(17, 128));
    CHECK(Integer(7200) * 17 != symplectic_order(4, 4));
}
