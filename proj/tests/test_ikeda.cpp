#include "doctest.h"
#include "hml/ikeda.hpp"

using namespace hml;

TEST_CASE("synthetic eigen data is valid and self-dual") {
    for (i64 D : {3, 4, 15, 24}) {
        const QuadField F = make_field(D);
        const EigenData ed = random_eigendata(F, 7, 1, 42, 50);
        CHECK(eigen_valid(ed));
        for (const auto& [p, a] : ed.ap) {
            if (D % p == 0) continue;
            if (chi(F, p) == 1)
                CHECK(a == a.conj());
            else
                CHECK(a == -a.conj());
        }
    }
    CHECK_THROWS(random_eigendata(make_field(3), 8, 1, 1, 20));
}

TEST_CASE("coefficients are multiplicative with the Hecke recursion") {
    const QuadField F = make_field(7);
    const EigenData ed = random_eigendata(F, 7, 1, 9, 50);
    CHECK(coeff(ed, 6) == coeff(ed, 2) * coeff(ed, 3));
    CHECK(coeff(ed, 4) == coeff(ed, 2) * coeff(ed, 2) - Cyclo::rational(chi(F, 2) * ipow(2, 6)));
    CHECK(coeff(ed, 49) == coeff(ed, 7) * coeff(ed, 7));
    CHECK_THROWS(coeff(ed, 53));
}

TEST_CASE("invalid eigen data is rejected") {
    const QuadField F = make_field(15);
    EigenData ed = random_eigendata(F, 7, 1, 3, 40);
    ed.ap[3] = Cyclo::rational(1);
    CHECK_FALSE(eigen_valid(ed));
    CHECK_THROWS_AS(fstar_coeff(ed, 1, 3), std::invalid_argument);
    EigenData lvl = random_eigendata(F, 7, 1, 3, 40);
    lvl.level_m = 5;
    CHECK_FALSE(eigen_valid(lvl));
}

TEST_CASE("twist lemma needs the complementary character on the q-part") {
    const QuadField F = make_field(15);
    const EigenData ed = random_eigendata(F, 7, 1, 5, 120);
    const PrimeSet Q = 1u;  // {3}
    const EigenData fq = twist(ed, Q);
    CHECK(fQ_coeff(ed, Q, 3) == coeff(fq, 3));
    // chi_3 on the prime-to-3 part alone: drops chi_5(3) = -1
    const Cyclo naive = coeff(ed, 3).conj();
    CHECK(naive != coeff(fq, 3));
    CHECK(twist_lemma_check(ed, 120).ok);
}

TEST_CASE("the three expressions for f* agree") {
    for (i64 D : {3, 20, 24}) {
        const QuadField F = make_field(D);
        const EigenData ed = random_eigendata(F, 11, 1, 77, 200);
        for (i64 ell : {1, 5, 7}) {
            if (gcd(ell, D) != 1) continue;
            for (i64 M = 1; M <= 200; ++M) {
                const FstarPaths r = fstar_paths(ed, ell, M);
                CHECK(r.subset_sum == r.product);
                CHECK(r.subset_sum == r.local_product);
            }
        }
        CHECK(fstar_plus_check(ed, 1, 200));
        CHECK(averaging_check(ed, 1, 100).ok);
    }
}

TEST_CASE("level one prime discriminant: f* = f - f^rho") {
    const EigenData ed = random_eigendata(make_field(7), 9, 1, 13, 100);
    CHECK(rho_remark_check(ed, 100).ok);
    CHECK_THROWS(rho_remark_check(random_eigendata(make_field(15), 9, 1, 13, 100), 10));
}

TEST_CASE("f* with l sharing a factor with D is refused") {
    const EigenData ed = random_eigendata(make_field(15), 7, 1, 1, 30);
    CHECK_THROWS_AS(fstar_coeff(ed, 3, 1), std::invalid_argument);
}
