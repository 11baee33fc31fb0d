#include "doctest.h"
#include "hml/hecke.hpp"

using namespace hml;

namespace {

UnitaryMat4 translation(i64 p) {
    UnitaryMat4 g;
    for (int i = 0; i < 4; ++i) g.at(i, i) = {1, 0};
    g.at(0, 2) = {p, 0};
    g.at(1, 3) = {p, 0};
    return g;
}

Rational c_from_beta(const QuadField& F, const BetaTable& b, const HermitianCoeffKey& T) {
    const i64 eps = epsilon_T(T);
    return b(eps, key_ddet(F, T) / (eps * eps));
}

}  // namespace

TEST_CASE("Bezout pair for the level") {
    for (i64 p : {2, 3, 5, 7})
        for (i64 N : {1, 5, 7, 11}) {
            if (N % p == 0) continue;
            const BezoutPair b = hecke_bezout(p, N);
            CHECK(p * b.xi - N * b.lambda == 1);
            CHECK(b.xi >= 1);
            CHECK(b.xi <= N);
        }
    CHECK(hecke_bezout(3, 1).xi == 1);
    CHECK(hecke_bezout(3, 1).lambda == 2);
}

TEST_CASE("inert primes") {
    const QuadField F3 = make_field(3), F4 = make_field(4);
    CHECK(is_inert(F3, 2));
    CHECK(is_inert(F3, 5));
    CHECK_FALSE(is_inert(F3, 7));
    CHECK_FALSE(is_inert(F3, 3));
    CHECK(is_inert(F4, 3));
    CHECK_FALSE(is_inert(F4, 5));
}

TEST_CASE("coset representatives: count, unitarity, level, distinctness") {
    for (auto [D, p] : {std::pair<i64, i64>{3, 2}, {4, 3}, {7, 3}})
        for (i64 N : {1, 5}) {
            const RepsReport r = check_reps(make_field(D), p, N);
            CHECK(r.count == 1 + p + p * p * p + p * p * p * p);
            CHECK(r.passed());
        }
}

TEST_CASE("a left translate by the conjugated subgroup stays in its coset") {
    const QuadField F = make_field(3);
    const i64 p = 2;
    const auto reps = coset_reps(F, p, 5);
    const UnitaryMat4 g = translation(p);
    REQUIRE(similitude(F, g) == std::optional<i64>(1));
    for (const UnitaryMat4& r : reps) CHECK(same_coset(F, p, mat4_mul(F, g, r), r));
    CHECK_FALSE(same_coset(F, p, reps[0], reps[1]));
}

TEST_CASE("unitary inverse") {
    const QuadField F = make_field(4);
    for (const UnitaryMat4& r : coset_reps(F, 3, 1)) {
        const UnitaryMat4 one = mat4_mul(F, r, unitary_inverse(F, r));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(one.at(i, j) == AlgInt{i == j ? 1 : 0, 0});
    }
}

TEST_CASE("upper cosets number 1 + p + p^3 + p^4") {
    for (auto [D, p] : {std::pair<i64, i64>{3, 2}, {4, 3}, {3, 5}})
        CHECK(upper_cosets(make_field(D), p).size() == static_cast<std::size_t>(1 + p + p * p * p + p * p * p * p));
}

TEST_CASE("the beta recursion matches the coset sum, and p^{6-2k} does not") {
    const QuadField F = make_field(3);
    const i64 p = 2;
    const int k = 8;
    const BetaTable bF = beta_from_alpha(random_alpha(11), k, 1);
    const BetaTable bG = beta_Tp(bF, p, F);
    BetaTable wrong = bG;
    const Rational shift = Rational(1, 1) / boost::multiprecision::pow(boost::multiprecision::cpp_int(p), 2 * k - 6) -
                           Rational(1, 1) / boost::multiprecision::pow(boost::multiprecision::cpp_int(p), 2 * k - 4);
    wrong.fn = [bG, bF, shift, p](i64 u, i64 d) { return bG(u, d) + shift * bF(p * u, d); };
    auto cF = [&](const HermitianCoeffKey& T) { return c_from_beta(F, bF, T); };
    bool wrong_differs = false;
    for (i64 l = 0; l <= 3; ++l)
        for (i64 m = 0; m <= 3; ++m)
            for (i64 t1 = -2; t1 <= 2; ++t1)
                for (i64 t2 = -2; t2 <= 2; ++t2) {
                    const HermitianCoeffKey T{l, m, t1, t2};
                    if ((l | m | t1 | t2) == 0 || key_ddet(F, T) < 0) continue;
                    const Rational direct = hecke_coeff_direct(F, p, k, cF, T);
                    CHECK(direct == c_from_beta(F, bG, T));
                    if (direct != c_from_beta(F, wrong, T)) wrong_differs = true;
                }
    CHECK(wrong_differs);
}

TEST_CASE("T_p preserves the beta conditions") {
    for (int k : {8, 12})
        for (i64 N : {1, 5}) {
            const BetaTable bF = beta_from_alpha(random_alpha(k + N), k, N);
            CHECK(verify_beta_conditions(bF, 40, 100, N).ok);
            CHECK(verify_beta_conditions(beta_Tp(bF, 2, make_field(3)), 30, 60, N).ok);
        }
}

TEST_CASE("a perturbed beta table is caught with a witness") {
    const BetaTable good = beta_from_alpha(random_alpha(3), 8, 1);
    BetaTable bad = good;
    bad.fn = [good](i64 u, i64 d) { return good(u, d) + Rational(u == 1 && d == 3 ? 1 : 0); };
    const BetaCheck c = verify_beta_conditions(bad, 20, 40, 1);
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.witness.empty());
}

TEST_CASE("T_p at a split prime or a prime dividing N is refused") {
    const BetaTable b = beta_from_alpha(random_alpha(1), 8, 5);
    CHECK_THROWS(beta_Tp(b, 7, make_field(3)));
    CHECK_THROWS(beta_Tp(b, 5, make_field(3)));
}
