#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hml/plusform.hpp"

namespace hml {

// l -> unit * value(l); the unit is shared by every entry.
struct AlphaSeries {
    enum class Role { plus, special_jacobi, maass };
    Role role = Role::special_jacobi;
    Cyclo unit = Cyclo::rational(1);
    i64 bound = -1;  // largest readable index, -1 when unbounded
    std::function<std::optional<Rational>(i64)> fn;

    Rational at(i64 ell) const;
};

// g_u for every class u, as expansions in e[l tau / D].
std::vector<QExpansion> theta_decompose(const QuadField& F, i64 N, const QExpansion& g);

// alpha*(l) = -i sqrt(D) a_l(g) / (a_D(l) chi(N)), zero where a_D(l) = 0.
AlphaSeries special_jacobi_alpha(const QuadField& F, i64 N, const QExpansion& g);
// The inverse map a_l = i (a_D(l) / sqrt(D)) chi(N) alpha*(l), on 0 <= l <= upto.
QExpansion plus_from_alpha(const QuadField& F, i64 N, int weight, const AlphaSeries& alpha, i64 upto);

// T = [[ell, t], [conj t, m]] with t = (i / sqrt D)(t1 + t2 omega).
struct HermitianCoeffKey {
    i64 ell = 0;
    i64 m = 0;
    i64 t1 = 0;
    i64 t2 = 0;
};

i64 key_ddet(const QuadField& F, const HermitianCoeffKey& key);  // D det T
i64 epsilon_T(const HermitianCoeffKey& key);

// c_F(T) / alpha.unit = sum over d | eps(T), gcd(d, N) = 1 of d^{k-1} alpha(D det T / d^2).
Rational maass_coeff(const QuadField& F, i64 N, int k, const AlphaSeries& alpha, const HermitianCoeffKey& key);

// A function on Z+ x Z>=0, read as zero outside that range.
struct BetaTable {
    int k = 0;
    i64 N = 1;
    std::function<Rational(i64, i64)> fn;

    Rational operator()(i64 u, i64 d) const;
};

BetaTable beta_from_alpha(const AlphaSeries& alpha, int k, i64 N);

// Deterministic pseudo-random rational alpha values, for property tests.
AlphaSeries random_alpha(std::uint64_t seed);

}  // namespace hml
