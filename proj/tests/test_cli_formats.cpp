#include <catch2/catch.hpp>

#include "leafmass/lattice_io.hpp"

using namespace leafmass;

TEST_CASE("lattice JSON round-trip") {
    auto o = std::make_shared<const QuaternionOrder>(make_order(2));
    HermitianLattice l = HermitianLattice::standard(o, 2, Rational(3, 2));
    auto j = lattice_to_json(l);
    CHECK(j["p"] == 2);
    CHECK(j["rank"] == 2);
    CHECK(j["gram"][0][0][0] == "3/2");
    CHECK(j["gram"][0][1][0] == "0");
    HermitianLattice back = lattice_from_json(j);
    CHECK(back == l);
}

TEST_CASE("lattice JSON rejects malformed input") {
    nlohmann::json j;
    j["p"] = 2;
    j["rank"] = 1;
    j["gram"] = nlohmann::json::array();
    CHECK_THROWS_AS(lattice_from_json(j), domain_error);

    nlohmann::json bad = {{"p", 2}, {"rank", 1}};
    CHECK_THROWS_AS(lattice_from_json(bad), domain_error);
}

TEST_CASE("non-Hermitian or indefinite grams are rejected") {
    auto o = std::make_shared<const QuaternionOrder>(make_order(2));
    // Non-Hermitian: off-diagonal pair not conjugate.
    std::vector<std::vector<Quat>> g(2, std::vector<Quat>(2, Quat::zero()));
    g[0][0] = Quat::scalar(Rational(1));
    g[1][1] = Quat::scalar(Rational(1));
    g[0][1] = Quat{{Rational(0), Rational(1), Rational(0), Rational(0)}};
    g[1][0] = g[0][1]; // should be the conjugate
    CHECK_THROWS_AS(HermitianLattice(o, 2, g), domain_error);

    // Indefinite: negative diagonal.
    std::vector<std::vector<Quat>> h(1, std::vector<Quat>(1, Quat::scalar(Rational(-1))));
    CHECK_THROWS_AS(HermitianLattice(o, 1, h), domain_error);
}

TEST_CASE("rational wire form") {
    CHECK(Rational(-7, 3).json() == "{\"num\":\"-7\",\"den\":\"3\"}");
    CHECK(Rational::parse("-7/3").json() == Rational(-7, 3).json());
}
