#pragma once

#include <string>
#include <vector>

#include "hml/arith.hpp"
#include "hml/cyclotomic.hpp"

namespace hml {

struct QuadField {
    i64 D = 0;
    i64 e = 0;        // val_2(D)
    i64 Dprime = 0;   // odd part of D
    bool omega_half = true;  // true: omega = (1 + sqrt(-D))/2, false: omega = sqrt(-D)/2
    int unit_count = 2;
    std::vector<i64> primes;  // prime divisors of D, increasing
};

// Rejects D for which -D is not a fundamental discriminant (std::invalid_argument).
QuadField make_field(i64 D);
bool is_fundamental(i64 D);

// a + b*omega
struct AlgInt {
    i64 a = 0;
    i64 b = 0;
    bool operator==(const AlgInt&) const = default;
};

AlgInt alg_add(const AlgInt& x, const AlgInt& y);
AlgInt alg_sub(const AlgInt& x, const AlgInt& y);
AlgInt alg_mul(const QuadField& F, const AlgInt& x, const AlgInt& y);
AlgInt alg_conj(const QuadField& F, const AlgInt& x);
i64 alg_norm(const QuadField& F, const AlgInt& x);

// An element of K written as (R + S*i*sqrt(D)/D)/2 with integers R, S; every
// element of the inverse different has this shape.  In these coordinates
// 4D|z|^2 = D R^2 + S^2 and 4D Tr(z conj(y)) = 2(D R_z R_y + S_z S_y).
struct KPoint {
    i64 R = 0;
    i64 S = 0;
};

KPoint to_kpoint(const QuadField& F, const AlgInt& x);

struct DiffClass {
    int index = 0;  // position in canonical order
    i64 x1 = 0;     // 0 for odd D
    i64 x2 = 0;     // odd D: x with u = ix/sqrt(D); even D: u = x1/2 + i x2/sqrt(D)
    i64 dnorm = 0;  // D|u|^2 mod D
    i64 mult = 0;   // a_u
};

std::vector<DiffClass> classes(const QuadField& F);
KPoint class_point(const QuadField& F, const DiffClass& u);
// Canonical class index of a point of the inverse different; throws if the point is not in it.
int class_index(const QuadField& F, const KPoint& z);
// Index of the class t*u for an integer t.
int class_scale(const QuadField& F, const DiffClass& u, i64 t);

// psi_m = product of chi_p over p | m, a quadratic character modulo m.
class Character {
public:
    Character() = default;
    Character(const QuadField& F, i64 m);
    i64 modulus() const { return m_; }
    int operator()(i64 n) const;
    int parity() const { return (*this)(-1); }
    bool epsilon_is_i() const { return m_ > 1 && parity() == -1; }

private:
    QuadField F_;
    i64 m_ = 1;
    std::vector<i64> primes_;
};

Character chi_component(const QuadField& F, i64 m);
int chi_p(const QuadField& F, i64 p, i64 n);  // the p-component, p | D
int chi(const QuadField& F, i64 n);            // chi_K
i64 a_D(const QuadField& F, i64 ell);

}  // namespace hml
