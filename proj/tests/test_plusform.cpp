#include "doctest.h"
#include "hml/plusform.hpp"

using namespace hml;

namespace {

bool congruent(const Mat2& x, const Mat2& y, i64 M) {
    return mod(x.a - y.a, M) == 0 && mod(x.b - y.b, M) == 0 && mod(x.c - y.c, M) == 0 && mod(x.d - y.d, M) == 0;
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == Rational(-1, 2));
    CHECK(bernoulli_number(2) == Rational(1, 6));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
    CHECK(bernoulli_chi(make_field(3), 1) == Rational(-1, 3));
    CHECK(bernoulli_chi(make_field(4), 1) == Rational(-1, 2));
}

TEST_CASE("P_m satisfies its congruences") {
    for (i64 D : {3, 4, 15, 20, 24})
        for (i64 N : {1, 7, 11})
            for (i64 m : divisors(D)) {
                if (gcd(m, D / m) != 1) continue;
                const PmMatrix P = build_Pm(D, m, N);
                CHECK(check_Pm(P));
                CHECK(P.matrix.det() == 1);
                CHECK(congruent(P.matrix, kJ, m * m));
                CHECK(congruent(P.matrix, Mat2{}, P.n * P.n * N * N));
            }
}

TEST_CASE("lift_sl2 hits the target") {
    const Mat2 t{4, 3, 7, 6};  // det 3 = 1 mod 2
    const Mat2 g = lift_sl2(t, 2);
    CHECK(g.det() == 1);
    CHECK(congruent(g, t, 2));
    const Mat2 s = lift_sl2({2, 0, 0, 5}, 9);
    CHECK(s.det() == 1);
    CHECK(congruent(s, {2, 0, 0, 5}, 9));
}

TEST_CASE("E* lies in the plus space and the full series extends it") {
    for (i64 D : {3, 4, 7, 15, 24}) {
        const QuadField F = make_field(D);
        const QExpansion g = eisenstein_star(F, 8, 200), h = eisenstein_star_full(F, 8, 200);
        CHECK(is_plus(F, g));
        CHECK(is_plus(F, h));
        for (i64 l = 1; l <= 200; ++l) {
            CHECK(h.specified(l));
            if (g.specified(l)) CHECK(g.coeff(l) == h.coeff(l));
        }
    }
}

TEST_CASE("a coefficient off the plus support is detected") {
    const QuadField F = make_field(7);
    QExpansion g = eisenstein_star_full(F, 8, 100);
    i64 off = 1;
    while (a_D(F, off) != 0) ++off;
    g.coeffs[off] = Rational(1);
    CHECK_FALSE(is_plus(F, g));
}

TEST_CASE("unspecified coefficients refuse to be read") {
    const QExpansion g = eisenstein_star(make_field(3), 8, 20);
    CHECK_FALSE(g.specified(3));
    CHECK_THROWS(g.coeff(3));
    CHECK_THROWS(g.coeff(500));
}

TEST_CASE("evaluation refuses an insufficient truncation") {
    const QExpansion g = eisenstein_star_full(make_field(3), 8, 20);
    CHECK_NOTHROW(evaluate(g, {0.1, 2.0}));
    CHECK_THROWS_AS(evaluate(g, {0.1, 0.01}), TruncationError);
}

TEST_CASE("slash action composes") {
    const QExpansion g = eisenstein_star_full(make_field(4), 8, 800);
    const Mat2 A{2, 1, 1, 1}, B{1, 1, 0, 2};
    const std::complex<double> tau(0.2, 1.4);
    const std::complex<double> j = double(B.c) * tau + double(B.d);
    const std::complex<double> Bt = (double(B.a) * tau + double(B.b)) / j;
    const auto lhs = std::pow(j, -g.weight) * slash_eval(g, A, Bt);
    const auto rhs = slash_eval(g, A * B, tau);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
}
