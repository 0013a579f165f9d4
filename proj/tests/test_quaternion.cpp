#include <catch2/catch.hpp>

#include <algorithm>
#include <map>

#include "leafmass/quaternion.hpp"

using namespace leafmass;

TEST_CASE("orders verify for all supported primes") {
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        QuaternionOrder o = make_order(p);
        // Discriminant check: det Trd(e_i conj(e_j)) = p^2.
        CHECK(rat_det(o.norm_gram()) == Rational(Integer(p) * p));
        // Pi has reduced norm p.
        CHECK(o.nrd(o.pi) == p);
        // 1 lies in the order.
        CHECK(o.contains(Quat::one()));
    }
    CHECK_THROWS_AS(make_order(11), domain_error);
}

TEST_CASE("p = 2 order is the half-integer order with Pi = 1 + i") {
    QuaternionOrder o = make_order(2);
    Quat onei;
    onei.c = {Rational(1), Rational(1), Rational(0), Rational(0)};
    CHECK(o.to_quat(o.pi) == onei);
    CHECK(o.alg.mul(onei, onei.conj()) == Quat::scalar(Rational(2)));
    // The half-integer vector (1+i+j+k)/2 belongs to the order.
    Quat omega;
    omega.c = {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    CHECK(o.contains(omega));
}

TEST_CASE("unit group orders match the rank-1 mass formula") {
    std::map<long, size_t> expected{{2, 24}, {3, 12}, {5, 6}, {7, 4}, {13, 2}};
    for (const auto& [p, n] : expected) {
        QuaternionOrder o = make_order(p);
        auto units = o.unit_group();
        CHECK(units.size() == n);
        // Closed under multiplication and inverse (conjugate).
        for (const auto& u : units) {
            CHECK(o.nrd(u) == 1);
            auto inv = o.conj(u);
            bool found = std::find(units.begin(), units.end(), inv) != units.end();
            CHECK(found);
        }
        // 1/|O^x| equals M_1(p,1) = (p-1)/24.
        CHECK(Rational(Integer(p) - 1, 24) == Rational(1, static_cast<long>(n)));
    }
}

TEST_CASE("two-sidedness of Pi as a module identity") {
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        QuaternionOrder o = make_order(p);
        Quat piq = o.pi_quat();
        // Pi O and O Pi coincide: check omega * Pi in Pi O for each basis omega.
        Quat pi_inv = Rational(1, Integer(p)) * piq.conj();
        for (const auto& b : o.basis) {
            Quat lhs = o.alg.mul(b, piq);             // in O Pi
            Quat moved = o.alg.mul(pi_inv, lhs);      // Pi^{-1} (b Pi)
            CHECK(o.contains(moved));
        }
    }
}

TEST_CASE("quaternion arithmetic identities") {
    QuaternionOrder o = make_order(2);
    auto units = o.unit_group();
    for (size_t i = 0; i < units.size(); i += 5)
        for (size_t j = 0; j < units.size(); j += 7) {
            const auto& x = units[i];
            const auto& y = units[j];
            // Nrd is multiplicative; conj is an anti-automorphism.
            Quat qx = o.to_quat(x), qy = o.to_quat(y);
            CHECK(o.alg.nrd(o.alg.mul(qx, qy)) == o.alg.nrd(qx) * o.alg.nrd(qy));
            CHECK(o.alg.mul(qx, qy).conj() == o.alg.mul(qy.conj(), qx.conj()));
        }
}
