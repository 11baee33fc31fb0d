#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hml/lift.hpp"

namespace hml {

struct UnitaryMat4 {
    std::array<AlgInt, 16> e{};
    AlgInt& at(int i, int j) { return e[static_cast<std::size_t>(4 * i + j)]; }
    const AlgInt& at(int i, int j) const { return e[static_cast<std::size_t>(4 * i + j)]; }
    bool operator==(const UnitaryMat4&) const = default;
};

UnitaryMat4 mat4_mul(const QuadField& F, const UnitaryMat4& x, const UnitaryMat4& y);
UnitaryMat4 mat4_conj_transpose(const QuadField& F, const UnitaryMat4& x);
// mu with g* J g = mu J for J = [[0, -I], [I, 0]], or nothing if g is not a similitude.
std::optional<i64> similitude(const QuadField& F, const UnitaryMat4& g);
// Inverse of g with similitude 1: [[D*, -B*], [-C*, A*]].
UnitaryMat4 unitary_inverse(const QuadField& F, const UnitaryMat4& g);

bool is_inert(const QuadField& F, i64 p);

struct BezoutPair {
    i64 xi = 0;
    i64 lambda = 0;  // p xi - N lambda = 1
};
BezoutPair hecke_bezout(i64 p, i64 N);

// Right coset representatives of alpha^-1 Gamma_0(Np) alpha in Gamma_0(N), alpha = diag(I, pI).
std::vector<UnitaryMat4> coset_reps(const QuadField& F, i64 p, i64 N);

// True when rho' rho^-1 lies in alpha^-1 Gamma_0(Np) alpha: its B-block vanishes mod p.
bool same_coset(const QuadField& F, i64 p, const UnitaryMat4& rho1, const UnitaryMat4& rho2);

struct RepsReport {
    i64 count = 0;
    i64 expected = 0;
    bool all_unitary = true;
    bool all_level = true;
    bool distinct = true;
    std::string witness;
    bool passed() const { return count == expected && all_unitary && all_level && distinct; }
};

RepsReport check_reps(const QuadField& F, i64 p, i64 N, unsigned threads = 0);
bool verify_reps_distinct(const QuadField& F, i64 p, i64 N);

// The upper triangular representatives [[p D^{-*}, B], [0, D]] of the double coset.
struct UpperCoset {
    std::array<AlgInt, 4> Dm;  // row-major 2x2
    std::array<AlgInt, 4> Bm;
};
std::vector<UpperCoset> upper_cosets(const QuadField& F, i64 p);

BetaTable beta_Tp(const BetaTable& beta, i64 p, const QuadField& F);

// c_G(T) for G = F | T_p straight from the upper triangular cosets, given c_F on S_2.
Rational hecke_coeff_direct(const QuadField& F, i64 p, int k, const std::function<Rational(const HermitianCoeffKey&)>& cF,
                            const HermitianCoeffKey& T);

struct BetaCheck {
    bool ok = true;
    i64 checked = 0;
    std::string witness;
};

// On u <= umax, d <= dmax: beta(p^v q, d) - p^{k-1} beta(p^{v-1} q, d) = beta(q, p^{2v} d) for p not dividing Nq,
// and beta(u, d) = beta(1, u^2 d) when every prime of u divides N.
BetaCheck verify_beta_conditions(const BetaTable& beta, i64 umax, i64 dmax, i64 N);

}  // namespace hml
