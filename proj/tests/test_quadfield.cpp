#include <map>

#include "doctest.h"
#include "hml/quadfield.hpp"

using namespace hml;

static const i64 kAcceptance[] = {3, 4, 7, 8, 11, 15, 19, 20, 23, 24};

TEST_CASE("make_field") {
    QuadField F3 = make_field(3);
    CHECK(F3.e == 0);
    CHECK(F3.Dprime == 3);
    CHECK(F3.unit_count == 6);
    QuadField F4 = make_field(4);
    CHECK(F4.e == 2);
    CHECK(F4.Dprime == 1);
    CHECK(F4.unit_count == 4);
    CHECK(make_field(24).e == 3);
    CHECK_THROWS_AS(make_field(12), std::invalid_argument);
    CHECK_THROWS(make_field(16));
    CHECK_THROWS(make_field(5));
    CHECK_THROWS(make_field(1));
}

TEST_CASE("classes of the inverse different") {
    auto c3 = classes(make_field(3));
    REQUIRE(c3.size() == 3);
    CHECK(c3[0].dnorm == 0);
    CHECK(c3[1].dnorm == 1);
    CHECK(c3[2].dnorm == 1);
    CHECK(c3[0].mult == 1);
    CHECK(c3[1].mult == 2);
    auto c4 = classes(make_field(4));
    REQUIRE(c4.size() == 4);
    std::vector<i64> dn;
    for (auto& u : c4) dn.push_back(u.dnorm);
    CHECK(dn == std::vector<i64>{0, 1, 1, 2});
}

TEST_CASE("multiplicities match class counts and partition the group") {
    for (i64 D : kAcceptance) {
        QuadField F = make_field(D);
        auto cls = classes(F);
        CHECK(static_cast<i64>(cls.size()) == D);
        std::map<i64, i64> count;
        for (auto& u : cls) count[u.dnorm]++;
        i64 total = 0;
        for (auto& [r, n] : count) total += n;
        CHECK(total == D);
        for (auto& u : cls) {
            CHECK(u.mult == count[u.dnorm]);
            CHECK(u.mult >= 1);
        }
        CHECK(cls[0].dnorm == 0);
        // a_D against the class count for every residue
        for (i64 ell = -3 * D; ell <= 3 * D; ++ell) CHECK(a_D(F, ell) == count[mod(-ell, D)]);
        // classes are closed under index lookup and scaling
        for (auto& u : cls) {
            CHECK(class_index(F, class_point(F, u)) == u.index);
            CHECK(class_scale(F, u, 1) == u.index);
            CHECK(class_scale(F, u, D + 1) == u.index);
        }
    }
}

TEST_CASE("characters") {
    QuadField F4 = make_field(4), F8 = make_field(8);
    CHECK(chi_component(F4, 4)(3) == -1);
    CHECK(chi_component(F8, 8)(3) == 1);
    CHECK(chi_component(F4, 1)(3) == 1);
    CHECK_FALSE(chi_component(F4, 1).epsilon_is_i());
    CHECK_THROWS(chi_component(make_field(24), 2));
    for (i64 D : kAcceptance) {
        QuadField F = make_field(D);
        for (i64 n = 1; n <= 200; ++n) {
            if (gcd(n, D) != 1) continue;
            CHECK(chi(F, n) == kronecker(-D, n));
        }
        for (i64 m : divisors(D)) {
            if (gcd(m, D / m) != 1) continue;
            Character psi = chi_component(F, m);
            for (i64 a = -30; a <= 30; ++a) {
                CHECK((psi(a) == 0) == (gcd(a, m) > 1));
                for (i64 b = -10; b <= 10; ++b) CHECK(psi(a * b) == psi(a) * psi(b));
            }
        }
    }
}

TEST_CASE("a_D examples") {
    CHECK(a_D(make_field(4), 3) == 2);
    CHECK(a_D(make_field(15), 1) == 0);
    for (i64 D : kAcceptance) CHECK(a_D(make_field(D), 0) == 1);
}

TEST_CASE("algebraic integers") {
    for (i64 D : kAcceptance) {
        QuadField F = make_field(D);
        for (i64 a = -4; a <= 4; ++a)
            for (i64 b = -4; b <= 4; ++b) {
                AlgInt x{a, b};
                AlgInt n = alg_mul(F, x, alg_conj(F, x));
                CHECK(n.b == 0);
                CHECK(n.a == alg_norm(F, x));
                CHECK(alg_norm(F, x) >= 0);
                CHECK(alg_conj(F, alg_conj(F, x)) == x);
                KPoint p = to_kpoint(F, x);
                CHECK(D * p.R * p.R + p.S * p.S == 4 * D * alg_norm(F, x));
                CHECK(class_index(F, p) == 0);
            }
    }
}
