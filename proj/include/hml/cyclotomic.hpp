#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hml/arith.hpp"

namespace hml {

// Dense integer coefficients of the M-th cyclotomic polynomial, lowest degree first.
const std::vector<i64>& cyclotomic_polynomial(i64 M);
i64 euler_phi(i64 M);

// An exact element of Q(zeta_M).
//
// Values are kept canonical: the order M is the smallest one whose field contains
// the value (never 2 mod 4 except M = 1), and the coefficients are the residue of
// the group-ring element modulo Phi_M in the power basis 1, z, ..., z^{phi(M)-1},
// scaled to a common positive denominator.  Equality is therefore plain
// comparison and is_zero is canonical.
class Cyclo {
public:
    struct Term {
        i64 k;    // exponent, meaning e[k/order]
        i64 num;  // coefficient numerator
        i64 den;  // coefficient denominator, > 0
    };

    Cyclo() = default;
    static Cyclo rational(i64 p, i64 q = 1);
    static Cyclo root(i64 num, i64 den);  // e[num/den], den != 0
    // Sum of coefficient * e[k/M] given as a cyclic array of length M.
    static Cyclo from_group_ring(i64 M, std::vector<i128> coeffs, i64 den = 1);

    i64 order() const { return M_; }
    bool is_zero() const { return num_.empty(); }
    bool is_rational() const { return M_ == 1; }
    std::complex<double> embed() const;
    std::vector<Term> terms() const;
    std::string to_string() const;

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    bool operator==(const Cyclo& o) const { return M_ == o.M_ && den_ == o.den_ && num_ == o.num_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo scaled(i64 p, i64 q = 1) const;  // multiply by p/q, q != 0
    Cyclo times_root(i64 num, i64 den) const { return *this * root(num, den); }
    Cyclo conj() const;

private:
    i64 M_ = 1;
    i64 den_ = 1;
    std::vector<i64> num_;  // empty means zero; otherwise length phi(M_)

    static Cyclo reduce_buffer(i64 M, std::vector<i128>& buf, i64 den);
    std::vector<i128> lift_to(i64 M) const;  // cyclic array of length M
    void normalize();
    bool try_descend(i64 p);
};

// Embedded value of e[num/den].
std::complex<double> e_complex(double x);

}  // namespace hml
