#pragma once

#include <complex>
#include <vector>

#include "hml/quadfield.hpp"
#include "hml/scalar.hpp"

namespace hml {

struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;
    i64 det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)), checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
                checked_add(checked_mul(c, o.a), checked_mul(d, o.c)), checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
    }
    bool operator==(const Mat2&) const = default;
};

inline const Mat2 kJ{0, -1, 1, 0};
inline const Mat2 kT{1, 1, 0, 1};

template <class S>
struct ThetaMatrixT {
    i64 D = 0;
    Mat2 sigma;
    std::vector<S> entries;  // row-major, rows u and columns v in canonical class order
    const S& at(int u, int v) const { return entries[static_cast<std::size_t>(u) * D + v]; }
    S& at(int u, int v) { return entries[static_cast<std::size_t>(u) * D + v]; }
};

using ThetaMatrix = ThetaMatrixT<Cyclo>;
using ThetaMatrixF = ThetaMatrixT<cplx>;

// The defining exponential sum for an arbitrary sigma in SL_2(Z).
template <class S>
ThetaMatrixT<S> theta_matrix_t(const QuadField& F, const Mat2& sigma);
ThetaMatrix theta_matrix(const QuadField& F, const Mat2& sigma);
ThetaMatrixF theta_matrix_float(const QuadField& F, const Mat2& sigma);

// Closed evaluation for c | D, c > 0.
template <class S>
ThetaMatrixT<S> theta_matrix_closed_t(const QuadField& F, const Mat2& sigma);
ThetaMatrix theta_matrix_closed(const QuadField& F, const Mat2& sigma);

template <class S>
ThetaMatrixT<S> theta_product(const ThetaMatrixT<S>& x, const ThetaMatrixT<S>& y);
template <class S>
bool theta_equal(const ThetaMatrixT<S>& x, const ThetaMatrixT<S>& y);

struct ThetaValue {
    cplx value;
    double tail_bound;  // crude bound on the omitted terms
};

ThetaValue theta_eval(const QuadField& F, const DiffClass& u, cplx tau, cplx z, cplx w, int radius);

// Largest |theta_u|sigma - sum_v M_{u,v} theta_v| over all classes u.
double theta_functional_residual(const QuadField& F, const Mat2& sigma, cplx tau, cplx z, cplx w, int radius);

}  // namespace hml
