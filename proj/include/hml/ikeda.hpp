#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hml/quadfield.hpp"

namespace hml {

// Prime coefficients of a normalized eigenform of weight w, level D m and character chi_K.
struct EigenData {
    QuadField field;
    int weight = 0;
    i64 level_m = 1;
    std::map<i64, Cyclo> ap;
};

// Empty when valid; otherwise the reason.
std::string eigen_invalid_reason(const EigenData& ed);
bool eigen_valid(const EigenData& ed);

// Self-dual data: a(p) real when chi(p) = 1, purely imaginary when chi(p) = -1, and
// a(q) = q^{(w-1)/2} times a root of unity for q | D.
EigenData random_eigendata(const QuadField& F, int weight, i64 level_m, std::uint64_t seed, i64 pmax);

Cyclo coeff(const EigenData& ed, i64 M);

// Subsets of the prime divisors of D are bit masks over field.primes.
using PrimeSet = unsigned;

// The local factor at q | D: chi_q on the prime-to-q part times chi'_q = chi / chi_q on the q-part.
int chi_local(const QuadField& F, i64 q, i64 M);

// a_{f_Q}(M) = a_f(M' M'_Q) conj(a_f(M_Q)) prod_{q in Q} chi_local(q, M).
Cyclo fQ_coeff(const EigenData& ed, PrimeSet Q, i64 M);
// Eigen data of f_Q, from its prime coefficients.
EigenData twist(const EigenData& ed, PrimeSet Q);

struct FstarPaths {
    Cyclo subset_sum;
    Cyclo product;      // a_f(M') a_D(l M) prod over q | (D, M)
    Cyclo local_product;  // a_f(M') prod over all q | D
};
FstarPaths fstar_paths(const EigenData& ed, i64 ell, i64 M);
// The subset sum, after checking it against both product forms (std::logic_error on mismatch).
Cyclo fstar_coeff(const EigenData& ed, i64 ell, i64 M);

// Coefficients of f*[l] | sigma_l vanish wherever a_D(n) = 0, for n <= bound.
bool fstar_plus_check(const EigenData& ed, i64 ell, i64 bound);

struct IkedaCheck {
    bool ok = true;
    i64 checked = 0;
    std::string witness;
};

// For each Q, g' = sum_{Q'} chi_{Q'}(-l) chi_Q(-l) (f_{Q'})_Q | sigma_l agrees with g = f*[l] | sigma_l
// at n coprime to the primes of Q, and the sum over Q of g' equals 2^{|Q_D|} g at every n <= bound.
IkedaCheck averaging_check(const EigenData& ed, i64 ell, i64 bound);

// fQ_coeff against the coefficients of twist(ed, Q) for every Q and 1 <= M <= bound.
IkedaCheck twist_lemma_check(const EigenData& ed, i64 bound);

// D prime, level 1: f* = f - f^rho and f_{D} = f^rho coefficientwise.
IkedaCheck rho_remark_check(const EigenData& ed, i64 bound);

}  // namespace hml
