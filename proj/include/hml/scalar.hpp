#pragma once

// Two arithmetic back ends share the verification code: exact cyclotomic
// numbers and double-precision complex numbers.  Ring<S> supplies the handful of
// constructors the formulas need.

#include <cmath>
#include <complex>

#include "hml/charsums.hpp"
#include "hml/cyclotomic.hpp"

namespace hml {

using cplx = std::complex<double>;

template <class S>
struct Ring;

template <>
struct Ring<Cyclo> {
    static Cyclo zero() { return {}; }
    static Cyclo rat(i64 p, i64 q = 1) { return Cyclo::rational(p, q); }
    static Cyclo root(i64 n, i64 d) { return Cyclo::root(n, d); }
    static Cyclo from_group_ring(i64 L, std::vector<i128> h) { return Cyclo::from_group_ring(L, std::move(h)); }
    static Cyclo gauss(const Character& psi, i64 b) { return gauss_sum(psi, b); }
    static Cyclo scale(const Cyclo& x, i64 p, i64 q = 1) { return x.scaled(p, q); }
    static bool is_zero(const Cyclo& x) { return x.is_zero(); }
    static bool equal(const Cyclo& x, const Cyclo& y) { return x == y; }
    static cplx embed(const Cyclo& x) { return x.embed(); }
};

template <>
struct Ring<cplx> {
    static constexpr double tol = 1e-9;
    static cplx zero() { return 0.0; }
    static cplx rat(i64 p, i64 q = 1) { return double(p) / double(q); }
    static cplx root(i64 n, i64 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        return e_complex(double(mod(n, d)) / double(d));
    }
    static cplx from_group_ring(i64 L, const std::vector<i128>& h) {
        cplx s = 0;
        for (i64 k = 0; k < L; ++k)
            if (h[k]) s += double(h[k]) * e_complex(double(k) / double(L));
        return s;
    }
    static cplx gauss(const Character& psi, i64 b) {
        const i64 m = psi.modulus();
        cplx s = 0;
        for (i64 a = 0; a < m; ++a)
            if (int c = psi(a)) s += double(c) * e_complex(double(mod(a * mod(b, m), m)) / double(m));
        return s;
    }
    static cplx scale(const cplx& x, i64 p, i64 q = 1) { return x * (double(p) / double(q)); }
    static bool is_zero(const cplx& x) { return std::abs(x) < tol; }
    static bool equal(const cplx& x, const cplx& y) { return std::abs(x - y) < tol; }
    static cplx embed(const cplx& x) { return x; }
};

}  // namespace hml
