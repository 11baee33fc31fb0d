#include <random>

#include "doctest.h"
#include "hml/arith.hpp"

using namespace hml;

TEST_CASE("factorize small values") {
    CHECK(factorize(1).factors.empty());
    auto f = factorize(24);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<i64, int>{2, 3});
    CHECK(f.factors[1] == std::pair<i64, int>{3, 1});
    auto g = factorize(2310);
    std::vector<std::pair<i64, int>> expect{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}};
    CHECK(g.factors == expect);
}

TEST_CASE("factorization reproduces its value") {
    for (i64 n = 1; n < 3000; ++n) {
        i64 prod = 1;
        i64 last = 1;
        for (auto [p, e] : factorize(n).factors) {
            CHECK(p > last);
            last = p;
            prod *= ipow(p, e);
        }
        CHECK(prod == n);
    }
}

// Legendre-type oracle: Euler's criterion for odd primes, brute force on squares
static int legendre_oracle(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(17, 1) == 1);
    CHECK(kronecker(-5, 1) == 1);
    CHECK_THROWS(kronecker(0, 0));
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(2, 0) == 0);
    for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23})
        for (i64 a = -40; a <= 40; ++a) CHECK(kronecker(a, p) == legendre_oracle(a, p));
    // (-4|n) and (8|n), (-8|n) on odd n by their closed forms
    for (i64 n = 1; n < 60; n += 2) {
        CHECK(kronecker(-4, n) == ((n % 4 == 1) ? 1 : -1));
        CHECK(kronecker(8, n) == ((n % 8 == 1 || n % 8 == 7) ? 1 : -1));
        CHECK(kronecker(-8, n) == ((n % 8 == 1 || n % 8 == 3) ? 1 : -1));
    }
}

TEST_CASE("kronecker is multiplicative in each argument") {
    for (i64 a = -50; a <= 50; ++a)
        for (i64 b = -50; b <= 50; ++b)
            for (i64 n : {1, 2, 3, 5, 8, 12, 15, 21, 24, -7, -9}) {
                if (a * b == 0 && n == 0) continue;
                CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
            }
    for (i64 a : {-7, -3, -1, 1, 2, 5, 6, 11})
        for (i64 n = -30; n <= 30; ++n)
            for (i64 m = -30; m <= 30; ++m) {
                if (n == 0 || m == 0) continue;
                CHECK(kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m));
            }
}

TEST_CASE("crt") {
    CHECK(crt({{0, 9}, {1, 4}}) == 9);
    CHECK(crt({{5, 1}}) == 0);
    CHECK(crt({{2, 3}, {3, 5}, {2, 7}}) == 23);
    CHECK_THROWS(crt({{0, 4}, {1, 6}}));
    CHECK(crt({{2, 4}, {4, 6}}) == 10);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 500; ++it) {
        i64 m1 = 1 + rng() % 50, m2 = 1 + rng() % 50;
        if (gcd(m1, m2) != 1) continue;
        i64 r1 = rng() % 100, r2 = rng() % 100;
        i64 x = crt({{r1, m1}, {r2, m2}});
        CHECK(x >= 0);
        CHECK(x < m1 * m2);
        CHECK(mod(x - r1, m1) == 0);
        CHECK(mod(x - r2, m2) == 0);
    }
}

TEST_CASE("component") {
    CHECK(component(12, 2) == 4);
    CHECK(component(15, 1) == 1);
    CHECK(component(24, 6) == 24);
    for (i64 D : {3, 4, 7, 8, 15, 20, 24, 40, 84})
        for (i64 mu : divisors(D)) {
            i64 m = component(D, mu);
            CHECK(D % m == 0);
            CHECK(gcd(m, D / m) == 1);
        }
}

TEST_CASE("inverses and divisors") {
    CHECK(inv_mod(3, 7) == 5);
    CHECK(inv_mod(5, 1) == 0);
    CHECK_THROWS(inv_mod(2, 4));
    CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
    CHECK(val(2, 24) == 3);
}
