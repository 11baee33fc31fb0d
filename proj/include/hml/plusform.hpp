#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hml/thetamat.hpp"

namespace hml {

using Rational = boost::multiprecision::cpp_rational;

struct TruncationError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// sum over l of unit * coeffs[l] * e[l tau / denom].  Coefficients the source
// does not determine are left empty and refuse to be read.
struct QExpansion {
    int weight = 0;
    i64 level = 1;
    i64 disc = 0;
    i64 denom = 1;
    Cyclo unit = Cyclo::rational(1);
    std::vector<std::optional<Rational>> coeffs;

    std::size_t precision() const { return coeffs.size(); }
    bool specified(i64 ell) const;
    const Rational& coeff(i64 ell) const;
    std::complex<double> value(i64 ell) const;
};

// Coefficients must vanish wherever a_D(l) = 0; unspecified entries are skipped.
bool is_plus(const QuadField& F, const QExpansion& g);

// Coefficients a_D(l) sum_{d | l} chi(d) d^{k-2} for gcd(l, D) = 1, others unspecified.
QExpansion eisenstein_star(const QuadField& F, int k, i64 upto);
// The full series sum over D = mn of psi_m(-1) f(tau; psi_m, psi_n), every coefficient
// filled, for numerical work.
QExpansion eisenstein_star_full(const QuadField& F, int k, i64 upto);

Rational bernoulli_number(int n);
// Generalized Bernoulli number B_{w, chi_K}.
Rational bernoulli_chi(const QuadField& F, int w);

struct PmMatrix {
    i64 m = 1, n = 1, N = 1;
    Mat2 matrix;
};

// A matrix of SL_2(Z) congruent to target modulo M, given det(target) = 1 mod M.
Mat2 lift_sl2(const Mat2& target, i64 M);
PmMatrix build_Pm(i64 D, i64 m, i64 N);
bool check_Pm(const PmMatrix& P);

// Value of the series at tau; throws TruncationError when the omitted tail may exceed tol.
std::complex<double> evaluate(const QExpansion& g, std::complex<double> tau, double tol = 1e-9);
// (c tau + d)^{-weight} g(gamma tau) without a determinant normalization.
std::complex<double> slash_eval(const QExpansion& g, const Mat2& gamma, std::complex<double> tau, double tol = 1e-9);
// (g | U_m | Q_m)(tau).
std::complex<double> apply_Vm(const QExpansion& g, const QuadField& F, i64 m, i64 N, std::complex<double> tau, double tol = 1e-9);

}  // namespace hml
