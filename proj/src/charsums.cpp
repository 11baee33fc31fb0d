#include "hml/charsums.hpp"

#include <cmath>
#include <stdexcept>

namespace hml {

Cyclo gauss_sum(const Character& psi, i64 b) {
    const i64 m = psi.modulus();
    if (m == 1) return Cyclo::rational(1);
    std::vector<i128> buf(m, 0);
    for (i64 a = 0; a < m; ++a) {
        int s = psi(a);
        if (s) buf[mod(a * mod(b, m), m)] += s;
    }
    return Cyclo::from_group_ring(m, std::move(buf));
}

Cyclo gauss_chi(const QuadField& F) { return gauss_sum(chi_component(F, F.D), 1); }

Cyclo gauss_sum_inverse(const Character& psi, i64 b) {
    if (gcd(b, psi.modulus()) != 1) throw std::domain_error("Gauss sum with non-unit twist is not invertible");
    return gauss_sum(psi, -b).scaled(1, psi.modulus());
}

bool check_closed_form(const Character& psi) {
    const i64 m = psi.modulus();
    Cyclo g = gauss_sum(psi, 1);
    if (g * g != Cyclo::rational(psi.parity() * m)) return false;
    std::complex<double> expect = psi.epsilon_is_i() ? std::complex<double>(0, std::sqrt(double(m)))
                                                     : std::complex<double>(std::sqrt(double(m)), 0);
    return std::abs(g.embed() - expect) < 1e-9;
}

SalieResult salie_check(i64 p, i64 x, i64 y, i64 z) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("salie_check: p must be an odd prime");
    if (mod(z, p) == 0) throw std::invalid_argument("salie_check: p divides z");
    auto leg = [p](i64 n) { return kronecker(n, p); };
    std::vector<i128> lbuf(p, 0);
    for (i64 j = 1; j < p; ++j) {
        i64 jinv = inv_mod(j, p);
        lbuf[mod(z * (j * x % p * x + jinv * y % p * y), p)] += leg(j);
    }
    SalieResult r;
    r.lhs = Cyclo::from_group_ring(p, std::move(lbuf));

    std::vector<i128> gbuf(p, 0);
    for (i64 g = 0; g < p; ++g)
        if (mod(g * g - y * y, p) == 0) gbuf[mod(2 * x * z % p * g, p)] += 1;
    Cyclo gamma_sum = Cyclo::from_group_ring(p, std::move(gbuf));
    // (psi(x^2) + psi(y^2)) / (1 + psi(y^2)); psi(y^2) is 0 or 1 so the denominator never vanishes
    i64 px = leg(x * x), py = leg(y * y);
    std::vector<i128> gs(p, 0);
    for (i64 a = 1; a < p; ++a) gs[mod(a * z, p)] += leg(a);
    Cyclo G = Cyclo::from_group_ring(p, std::move(gs));
    r.rhs = (G * gamma_sum).scaled(px + py, 1 + py);
    r.equal = (r.lhs - r.rhs).is_zero();
    return r;
}

Cyclo norm_sum(const QuadField& F, i64 N, i64 t) {
    std::vector<i128> buf(N, 0);
    for (i64 a = 0; a < N; ++a)
        for (i64 b = 0; b < N; ++b) buf[mod(t * mod(alg_norm(F, {a, b}), N), N)] += 1;
    return Cyclo::from_group_ring(N, std::move(buf));
}

bool norm_sum_check(const QuadField& F, i64 N, i64 t) {
    if (N < 1 || gcd(N, F.D) != 1 || gcd(t, N) != 1)
        throw std::invalid_argument("norm_sum_check: need gcd(D,N) = gcd(t,N) = 1");
    return norm_sum(F, N, t) == Cyclo::rational(chi(F, N) * N);
}

}  // namespace hml
