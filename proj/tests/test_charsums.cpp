#include <cmath>

#include "doctest.h"
#include "hml/charsums.hpp"

using namespace hml;

static const i64 kAcceptance[] = {3, 4, 7, 8, 11, 15, 19, 20, 23, 24};

TEST_CASE("gauss_sum examples") {
    QuadField F3 = make_field(3);
    Character psi3 = chi_component(F3, 3);
    CHECK(gauss_sum(psi3, 1) == Cyclo::root(1, 3) - Cyclo::root(2, 3));
    CHECK(std::abs(gauss_sum(psi3, 1).embed() - std::complex<double>(0, std::sqrt(3.0))) < 1e-12);
    CHECK(gauss_sum(psi3, 0).is_zero());
    CHECK(gauss_sum(chi_component(F3, 1), 5) == Cyclo::rational(1));
}

TEST_CASE("closed form and twist law for every admissible m") {
    QuadField F3 = make_field(3), F15 = make_field(15);
    CHECK(check_closed_form(chi_component(F3, 3)));
    CHECK(chi_component(F3, 3).epsilon_is_i());
    CHECK(check_closed_form(chi_component(F15, 5)));
    CHECK_FALSE(chi_component(F15, 5).epsilon_is_i());
    for (i64 D : kAcceptance) {
        QuadField F = make_field(D);
        for (i64 m : divisors(D)) {
            if (gcd(m, D / m) != 1) continue;
            Character psi = chi_component(F, m);
            CHECK(check_closed_form(psi));
            Cyclo g1 = gauss_sum(psi, 1);
            for (i64 b = -m; b <= m; ++b) {
                if (gcd(b, m) != 1) continue;
                CHECK(gauss_sum(psi, b) == g1.scaled(psi(b)));
            }
        }
    }
}

TEST_CASE("Gauss-Salie examples") {
    auto r = salie_check(3, 0, 1, 1);
    CHECK(r.equal);
    CHECK(r.lhs == Cyclo::root(1, 3) - Cyclo::root(2, 3));
    auto z = salie_check(3, 0, 0, 1);
    CHECK(z.equal);
    CHECK(z.lhs.is_zero());
    CHECK(salie_check(5, 1, 2, 1).equal);
    CHECK_THROWS(salie_check(5, 1, 2, 5));
    CHECK_THROWS(salie_check(9, 1, 2, 1));
}

TEST_CASE("norm sums") {
    CHECK(norm_sum(make_field(4), 3, 1) == Cyclo::rational(-3));
    CHECK(norm_sum(make_field(3), 2, 1) == Cyclo::rational(-2));
    CHECK(norm_sum_check(make_field(7), 1, 0));
    CHECK_THROWS(norm_sum_check(make_field(3), 3, 1));
    CHECK_THROWS(norm_sum_check(make_field(7), 4, 2));
}
