#include "hml/quadfield.hpp"

#include <stdexcept>

namespace hml {

namespace {

bool squarefree(i64 n) {
    for (auto& [p, e] : factorize(n).factors)
        if (e > 1) return false;
    return true;
}

}  // namespace

bool is_fundamental(i64 D) {
    if (D < 3) return false;
    if (D % 4 == 3) return squarefree(D);
    if (D % 4 == 0) {
        i64 m = D / 4;
        return (m % 4 == 1 || m % 4 == 2) && squarefree(m);
    }
    return false;
}

QuadField make_field(i64 D) {
    if (!is_fundamental(D))
        throw std::invalid_argument("D=" + std::to_string(D) + " is not a fundamental discriminant");
    QuadField F;
    F.D = D;
    F.e = val(2, D);
    F.Dprime = D >> F.e;
    F.omega_half = (D % 4 == 3);
    F.unit_count = D == 3 ? 6 : (D == 4 ? 4 : 2);
    F.primes = prime_divisors(D);
    return F;
}

AlgInt alg_add(const AlgInt& x, const AlgInt& y) { return {x.a + y.a, x.b + y.b}; }
AlgInt alg_sub(const AlgInt& x, const AlgInt& y) { return {x.a - y.a, x.b - y.b}; }

AlgInt alg_mul(const QuadField& F, const AlgInt& x, const AlgInt& y) {
    // omega^2 = omega - (1+D)/4  or  omega^2 = -D/4
    i64 bb = checked_mul(x.b, y.b);
    i64 a = checked_mul(x.a, y.a);
    i64 b = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
    if (F.omega_half) {
        a = checked_add(a, -checked_mul(bb, (1 + F.D) / 4));
        b = checked_add(b, bb);
    } else {
        a = checked_add(a, -checked_mul(bb, F.D / 4));
    }
    return {a, b};
}

AlgInt alg_conj(const QuadField& F, const AlgInt& x) {
    if (F.omega_half) return {x.a + x.b, -x.b};
    return {x.a, -x.b};
}

i64 alg_norm(const QuadField& F, const AlgInt& x) {
    if (F.omega_half) return x.a * x.a + x.a * x.b + x.b * x.b * ((1 + F.D) / 4);
    return x.a * x.a + x.b * x.b * (F.D / 4);
}

KPoint to_kpoint(const QuadField& F, const AlgInt& x) {
    if (F.omega_half) return {2 * x.a + x.b, F.D * x.b};
    return {2 * x.a, F.D * x.b};
}

std::vector<DiffClass> classes(const QuadField& F) {
    std::vector<DiffClass> out;
    out.reserve(F.D);
    if (F.e == 0) {
        for (i64 x = 0; x < F.D; ++x) out.push_back({static_cast<int>(x), 0, x, mod(x * x, F.D), 0});
    } else {
        const i64 half = F.D / 2;
        const i64 c1 = (F.D / 4);  // 2^{e-2} D'
        for (i64 x1 = 0; x1 < 2; ++x1)
            for (i64 x2 = 0; x2 < half; ++x2)
                out.push_back({static_cast<int>(x1 * half + x2), x1, x2, mod(c1 * x1 * x1 + x2 * x2, F.D), 0});
    }
    for (auto& u : out) u.mult = a_D(F, -u.dnorm);
    return out;
}

KPoint class_point(const QuadField& F, const DiffClass& u) {
    if (F.e == 0) return {0, 2 * u.x2};
    return {u.x1, 2 * u.x2};
}

int class_index(const QuadField& F, const KPoint& z) {
    if (F.e == 0) {
        i64 x = mod(z.S * inv_mod(2, F.D), F.D);
        i64 diff = z.S - 2 * x;
        if (mod(diff, F.D) != 0) throw std::domain_error("point is not in the inverse different");
        i64 b = diff / F.D;
        if (mod(z.R - b, 2) != 0) throw std::domain_error("point is not in the inverse different");
        return static_cast<int>(x);
    }
    if (mod(z.S, 2) != 0) throw std::domain_error("point is not in the inverse different");
    const i64 half = F.D / 2;
    i64 x1 = mod(z.R, 2);
    i64 x2 = mod(z.S / 2, half);
    if (mod(z.S - 2 * x2, F.D) != 0) throw std::domain_error("point is not in the inverse different");
    return static_cast<int>(x1 * half + x2);
}

int class_scale(const QuadField& F, const DiffClass& u, i64 t) {
    KPoint p = class_point(F, u);
    return class_index(F, {checked_mul(p.R, t), checked_mul(p.S, t)});
}

int chi_p(const QuadField& F, i64 p, i64 n) {
    if (p != 2) return kronecker(n, p);
    if (n % 2 == 0) return 0;
    i64 r = mod(n, 8);
    if (F.e == 2) return (r % 4 == 1) ? 1 : -1;
    if (F.Dprime % 4 == 1) return (r == 1 || r == 3) ? 1 : -1;  // (-8|n)
    return (r == 1 || r == 7) ? 1 : -1;                          // (8|n)
}

Character::Character(const QuadField& F, i64 m) : F_(F), m_(m) {
    if (m < 1 || F.D % m != 0 || gcd(m, F.D / m) != 1)
        throw std::invalid_argument("chi_component: m must be a divisor of D coprime to D/m");
    primes_ = prime_divisors(m);
}

int Character::operator()(i64 n) const {
    int r = 1;
    for (i64 p : primes_) {
        r *= chi_p(F_, p, n);
        if (r == 0) return 0;
    }
    return r;
}

Character chi_component(const QuadField& F, i64 m) { return Character(F, m); }

int chi(const QuadField& F, i64 n) {
    int r = 1;
    for (i64 p : F.primes) r *= chi_p(F, p, n);
    return r;
}

i64 a_D(const QuadField& F, i64 ell) {
    i64 r = 1;
    for (i64 p : F.primes) r *= 1 + chi_p(F, p, -ell);
    return r;
}

}  // namespace hml
