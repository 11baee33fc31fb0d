#pragma once

#include "hml/cyclotomic.hpp"
#include "hml/quadfield.hpp"

namespace hml {

// G(psi; b) = sum over a mod m of psi(a) e[ab/m].
Cyclo gauss_sum(const Character& psi, i64 b = 1);
// G(chi_K) as an exact cyclotomic number (equals i*sqrt(D)).
Cyclo gauss_chi(const QuadField& F);
// The inverse of G(psi; b) for gcd(b, m) = 1, as G(psi; -b)/m.
Cyclo gauss_sum_inverse(const Character& psi, i64 b = 1);

bool check_closed_form(const Character& psi);

struct SalieResult {
    Cyclo lhs;
    Cyclo rhs;
    bool equal = false;
};

// sum_{j=1}^{p-1} (j|p) e[z(j x^2 + y^2/j)/p] against its Gauss-sum evaluation.
SalieResult salie_check(i64 p, i64 x, i64 y, i64 z);

// sum over gamma in O_K/N of e[t|gamma|^2/N] compared with chi(N) N.
bool norm_sum_check(const QuadField& F, i64 N, i64 t);
Cyclo norm_sum(const QuadField& F, i64 N, i64 t);

}  // namespace hml
