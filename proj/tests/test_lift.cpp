#include <map>

#include "doctest.h"
#include "hml/charsums.hpp"
#include "hml/lift.hpp"

using namespace hml;

TEST_CASE("plus form to special Jacobi and back is exact") {
    for (i64 D : {3, 4, 8, 15})
        for (i64 N : {1, 7}) {
            const QuadField F = make_field(D);
            const QExpansion g = eisenstein_star_full(F, 8, 300);
            const AlphaSeries a = special_jacobi_alpha(F, N, g);
            const QExpansion back = plus_from_alpha(F, N, g.weight, a, 300);
            CHECK(back.unit == g.unit);
            for (i64 l = 0; l <= 300; ++l) CHECK(back.coeff(l) == g.coeff(l));
        }
}

TEST_CASE("alpha vanishes off the plus support and honours its bound") {
    const QuadField F = make_field(20);
    const AlphaSeries a = special_jacobi_alpha(F, 1, eisenstein_star_full(F, 8, 100));
    for (i64 l = 1; l <= 100; ++l)
        if (a_D(F, l) == 0) CHECK(a.at(l) == 0);
    CHECK_THROWS_AS(a.at(101), TruncationError);
}

TEST_CASE("theta components carry the coefficients on their residue class") {
    const QuadField F = make_field(24);
    const QExpansion g = eisenstein_star_full(F, 8, 200);
    const auto comps = theta_decompose(F, 1, g);
    for (const DiffClass& u : classes(F)) {
        const QExpansion& h = comps[u.index];
        CHECK(h.denom == F.D);
        for (i64 l = 0; l <= 200; ++l) {
            if (mod(l + u.dnorm, F.D) == 0)
                CHECK(h.coeff(l) * u.mult == g.coeff(l));
            else
                CHECK(h.coeff(l) == 0);
        }
    }
}

TEST_CASE("Hermitian keys: D det T and content") {
    const QuadField F = make_field(3);
    CHECK(key_ddet(F, {1, 1, 0, 0}) == 3);
    CHECK(epsilon_T({2, 4, 6, 0}) == 2);
    CHECK(epsilon_T({0, 3, 0, 0}) == 3);
    CHECK_THROWS(epsilon_T({0, 0, 0, 0}));
}

TEST_CASE("Maass coefficients depend only on content and D det T") {
    for (i64 D : {3, 4, 7}) {
        const QuadField F = make_field(D);
        const AlphaSeries a = special_jacobi_alpha(F, 1, eisenstein_star_full(F, 8, 400));
        std::map<std::pair<i64, i64>, std::vector<Rational>> seen;
        for (i64 l = 0; l <= 6; ++l)
            for (i64 m = 0; m <= 6; ++m)
                for (i64 t1 = -4; t1 <= 4; ++t1)
                    for (i64 t2 = -4; t2 <= 4; ++t2) {
                        const HermitianCoeffKey k{l, m, t1, t2};
                        if ((l | m | t1 | t2) == 0 || key_ddet(F, k) < 0 || key_ddet(F, k) > 400) continue;
                        if (l * m == 0 && (t1 | t2) != 0) continue;
                        seen[{epsilon_T(k), key_ddet(F, k)}].push_back(maass_coeff(F, 1, 8, a, k));
                    }
        int crowded = 0;
        for (const auto& [cls, vals] : seen) {
            if (vals.size() >= 3) ++crowded;
            for (const Rational& v : vals) CHECK(v == vals.front());
        }
        CHECK(crowded > 0);
    }
}

TEST_CASE("beta tables read zero outside their domain") {
    const BetaTable b = beta_from_alpha(random_alpha(5), 8, 1);
    CHECK(b(0, 4) == 0);
    CHECK(b(3, -1) == 0);
    const AlphaSeries a = random_alpha(5);
    CHECK(b(1, 7) == a.at(7));
    CHECK(random_alpha(5).at(9) == random_alpha(5).at(9));
}
