#include <catch2/catch.hpp>

#include <map>
#include <set>
#include <tuple>

#include "leafmass/gauss.hpp"

using namespace leafmass;

namespace {

// Oracle entries justified elsewhere in the suite: unit-group orders come
// from enumeration (test_quaternion), 1920 from the non-principal search
// (test_lattice), and the products from the orthogonal-sum formula.
AutOracle known_oracle() {
    AutOracle o;
    o[{1, 2, 1}] = 24;
    o[{1, 3, 1}] = 12;
    o[{1, 5, 1}] = 6;
    o[{1, 7, 1}] = 4;
    o[{1, 13, 1}] = 2;
    o[{2, 2, 1}] = 24 * 24 * 2;
    o[{2, 3, 1}] = 12 * 12 * 2;
    o[{2, 1, 2}] = 1920;
    o[{3, 2, 1}] = Integer(24 * 24 * 24) * 6;
    o[{3, 1, 2}] = 24 * 1920;
    o[{4, 1, 2}] = Integer(1920) * 1920 * 2;
    return o;
}

} // namespace

TEST_CASE("classify: the certified class-number-one genera") {
    auto oracle = known_oracle();
    auto v1 = classify({3, 2, 1}, oracle);
    CHECK(v1.verdict == Verdict::One);
    CHECK(v1.rule == Rule::ExactAutMatch);
    CHECK(*v1.witness == "82944");

    auto v2 = classify({3, 1, 2}, oracle);
    CHECK(v2.verdict == Verdict::One);
    auto v3 = classify({4, 1, 2}, oracle);
    CHECK(v3.verdict == Verdict::One);
}

TEST_CASE("classify: numerator witnesses") {
    auto oracle = known_oracle();
    auto v1 = classify({4, 2, 1}, oracle);
    CHECK(v1.verdict == Verdict::MoreThanOne);
    CHECK(v1.rule == Rule::NumeratorNotOne);
    CHECK(*v1.witness == "17");

    auto v2 = classify({5, 1, 2}, oracle);
    CHECK(v2.verdict == Verdict::MoreThanOne);
    CHECK(v2.rule == Rule::NumeratorNotOne);
    CHECK(*v2.witness == "31");

    auto v3 = classify({5, 2, 1}, oracle);
    CHECK(v3.verdict == Verdict::MoreThanOne);
    CHECK(v3.rule == Rule::NumeratorNotOne);
}

TEST_CASE("classify: rank-1 via the Eichler formula, rank-2 via cited data") {
    auto oracle = AutOracle{};
    auto v1 = classify({1, 42, 1}, oracle);
    CHECK(v1.verdict == Verdict::MoreThanOne);
    CHECK(v1.rule == Rule::CitedTable);

    auto v2 = classify({2, 1, 66}, oracle);
    CHECK(v2.verdict == Verdict::MoreThanOne);
    CHECK(v2.rule == Rule::CitedTable);

    auto v3 = classify({2, 1, 5}, oracle);
    CHECK(v3.verdict == Verdict::KnownOneCited);

    auto v4 = classify({1, 5, 1}, oracle);
    CHECK(v4.verdict == Verdict::KnownOneCited);
}

TEST_CASE("vn obstruction") {
    CHECK(vn_obstruction(6) == VnObstruction::Numerator691);
    CHECK(vn_obstruction(5) == VnObstruction::None);
    CHECK(vn_obstruction(1) == VnObstruction::None);
    CHECK(vn_obstruction(17) != VnObstruction::None);
    for (long n = 6; n <= 344; ++n) CHECK(vn_obstruction(n) != VnObstruction::None);
    for (long n = 345; n <= 400; ++n) CHECK(vn_obstruction(n) != VnObstruction::None);
}

TEST_CASE("full table n <= 4, D <= 13 reproduces the classification") {
    auto table = full_table(4, 13, known_oracle());
    std::set<std::tuple<long, long, long>> ones;
    for (const auto& row : table) {
        CHECK(row.verdict != Verdict::Undecided);
        if (row.verdict == Verdict::One || row.verdict == Verdict::KnownOneCited)
            ones.insert({row.label.n, row.label.d1.get_si(), row.label.d2.get_si()});
        if (row.label.n != 2) CHECK(row.rule != Rule::CitedTable);
    }
    std::set<std::tuple<long, long, long>> expected = {
        {1, 2, 1}, {1, 3, 1}, {1, 5, 1}, {1, 7, 1}, {1, 13, 1},
        {2, 2, 1}, {2, 3, 1},
        {2, 1, 2}, {2, 1, 3}, {2, 1, 5}, {2, 1, 7}, {2, 1, 11},
        {3, 2, 1}, {3, 1, 2},
        {4, 1, 2},
    };
    CHECK(ones == expected);
}

TEST_CASE("full table: (2, 1, 66) and (1, 42, 1) are settled") {
    auto t1 = full_table(2, 66, known_oracle());
    bool found = false;
    for (const auto& row : t1)
        if (row.label == GenusLabel{2, 1, 66}) {
            found = true;
            CHECK(row.verdict == Verdict::MoreThanOne);
        }
    CHECK(found);

    auto t2 = full_table(1, 42, known_oracle());
    for (const auto& row : t2)
        if (row.label == GenusLabel{1, 42, 1}) CHECK(row.verdict == Verdict::MoreThanOne);
}

TEST_CASE("no rule contradictions across the verification range") {
    auto oracle = known_oracle();
    for (const auto& row : full_table(4, 13, oracle)) {
        if (row.verdict == Verdict::One) {
            // An exact Aut match must reproduce the full mass: numerator 1.
            CHECK(row.mass.num() == 1);
            CHECK(row.mass <= Rational(1));
        }
    }
}

TEST_CASE("no class-number-one genera in ranks 6 through 8") {
    // v_n alone obstructs: 691 in the numerator or mass > 1.
    for (long n = 6; n <= 8; ++n)
        for (long p : {2L, 3L, 17L}) {
            auto v1 = classify({n, p, 1}, AutOracle{});
            auto v2 = classify({n, 1, p}, AutOracle{});
            CHECK(v1.verdict == Verdict::MoreThanOne);
            CHECK(v2.verdict == Verdict::MoreThanOne);
        }
}

TEST_CASE("exact mass comparisons at p = 17") {
    CHECK(mass_maximal(3, 17, 1) > Rational(1));
    CHECK(mass_maximal(4, 1, 17) > Rational(1));
    CHECK(mass_maximal(3, 1, 17) > mass_maximal(3, 17, 1));
    CHECK(mass_maximal(5, 17, 1) > mass_maximal(3, 17, 1));
    CHECK(mass_maximal(4, 17, 1) > mass_maximal(4, 1, 17));
}

TEST_CASE("witness primes above 11 dividing p^3 - 1 match the table") {
    std::map<long, long> expected{{3, 13}, {5, 31}, {7, 19}, {11, 19}, {13, 61}};
    for (const auto& [p, d] : expected) {
        Integer cube = pow_int(Integer(p), 3) - 1;
        auto fs = factor_integer(cube);
        long smallest_big = 0;
        for (const auto& [q, e] : fs)
            if (q > 11 && (smallest_big == 0 || q < smallest_big)) smallest_big = q.get_si();
        CHECK(smallest_big == d);
    }
}
