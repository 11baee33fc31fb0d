#include "hml/plusform.hpp"

#include <cmath>
#include <numbers>

namespace hml {

namespace {

Rational rpow(i64 b, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

bool QExpansion::specified(i64 ell) const {
    return ell >= 0 && static_cast<std::size_t>(ell) < coeffs.size() && coeffs[ell].has_value();
}

const Rational& QExpansion::coeff(i64 ell) const {
    if (ell < 0 || static_cast<std::size_t>(ell) >= coeffs.size())
        throw TruncationError("coefficient index " + std::to_string(ell) + " is beyond the stored precision");
    if (!coeffs[ell]) throw std::domain_error("coefficient " + std::to_string(ell) + " is not specified");
    return *coeffs[ell];
}

std::complex<double> QExpansion::value(i64 ell) const { return unit.embed() * coeff(ell).convert_to<double>(); }

bool is_plus(const QuadField& F, const QExpansion& g) {
    if (g.denom != 1) throw std::invalid_argument("is_plus: expansion must be integral");
    for (std::size_t l = 0; l < g.coeffs.size(); ++l)
        if (g.coeffs[l] && *g.coeffs[l] != 0 && !g.unit.is_zero() && a_D(F, static_cast<i64>(l)) == 0) return false;
    return true;
}

QExpansion eisenstein_star(const QuadField& F, int k, i64 upto) {
    if (k <= 2 || k % 2) throw std::invalid_argument("eisenstein_star: k must be even and > 2");
    QExpansion g;
    g.weight = k - 1;
    g.level = F.D;
    g.disc = F.D;
    g.coeffs.assign(static_cast<std::size_t>(upto + 1), std::nullopt);
    for (i64 l = 1; l <= upto; ++l) {
        if (gcd(l, F.D) != 1) continue;
        Rational s = 0;
        for (i64 d : divisors(l)) s += chi(F, d) * rpow(d, k - 2);
        g.coeffs[l] = a_D(F, l) * s;
    }
    return g;
}

Rational bernoulli_number(int n) {
    std::vector<Rational> B(static_cast<std::size_t>(n + 1));
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int j = 0; j < m; ++j) s += binom(m + 1, j) * B[j];
        B[m] = -s / (m + 1);
    }
    return B[n];
}

Rational bernoulli_chi(const QuadField& F, int w) {
    const i64 f = F.D;
    std::vector<Rational> B(static_cast<std::size_t>(w + 1));
    for (int j = 0; j <= w; ++j) B[j] = bernoulli_number(j);
    Rational total = 0;
    for (i64 a = 1; a <= f; ++a) {
        int c = chi(F, a);
        if (!c) continue;
        Rational x(a, f), bw = 0;
        for (int j = 0; j <= w; ++j) {
            Rational p = 1;
            for (int t = 0; t < w - j; ++t) p *= x;
            bw += binom(w, j) * B[j] * p;
        }
        total += c * bw;
    }
    return total * rpow(f, w - 1);
}

QExpansion eisenstein_star_full(const QuadField& F, int k, i64 upto) {
    QExpansion g = eisenstein_star(F, k, upto);
    const int w = k - 1;
    g.coeffs[0] = -bernoulli_chi(F, w) / (2 * w);
    for (i64 l = 1; l <= upto; ++l) {
        Rational s = 0;
        for (i64 m : divisors(F.D)) {
            if (gcd(m, F.D / m) != 1) continue;
            Character pm = chi_component(F, m), pn = chi_component(F, F.D / m);
            Rational t = 0;
            for (i64 d : divisors(l)) {
                int c = pm(l / d) * pn(d);
                if (c) t += c * rpow(d, k - 2);
            }
            s += pm(-1) * t;
        }
        g.coeffs[l] = s;
    }
    return g;
}

Mat2 lift_sl2(const Mat2& t, i64 M) {
    if (mod(t.det(), M) != 1 % M) throw std::invalid_argument("lift_sl2: determinant is not 1 modulo M");
    i64 c = mod(t.c, M), d = mod(t.d, M);
    if (c == 0 && gcd(c, d) != 1) c = M;
    while (gcd(c, d) != 1) d += M;
    i64 x, y;
    egcd(d, c, x, y);  // d x + c y = 1, so [[x, -y], [c, d]] has det 1
    const i64 a1 = x, b1 = -y;
    i64 al, be;
    egcd(c, d, al, be);  // c al + d be = 1
    const i64 s = mod(checked_add(checked_mul(al, mod(t.a - a1, M)), checked_mul(be, mod(t.b - b1, M))), M);
    Mat2 r{checked_add(a1, checked_mul(s, c)), checked_add(b1, checked_mul(s, d)), c, d};
    if (r.det() != 1 || mod(r.a - t.a, M) || mod(r.b - t.b, M) || mod(r.c - t.c, M) || mod(r.d - t.d, M))
        throw std::logic_error("lift_sl2: lifting failed");
    return r;
}

PmMatrix build_Pm(i64 D, i64 m, i64 N) {
    if (m < 1 || D % m != 0 || gcd(m, D / m) != 1) throw std::invalid_argument("build_Pm: need m | D with gcd(m, D/m) = 1");
    if (N < 1 || gcd(N, D) != 1) throw std::invalid_argument("build_Pm: N must be coprime to D");
    PmMatrix P;
    P.m = m;
    P.n = D / m;
    P.N = N;
    const i64 m2 = m * m, r2 = checked_mul(P.n * N, P.n * N), M = checked_mul(m2, r2);
    auto both = [&](i64 x, i64 y) { return crt({{mod(x, m2), m2}, {mod(y, r2), r2}}); };
    Mat2 t{both(0, 1), both(-1, 0), both(1, 0), both(0, 1)};
    P.matrix = lift_sl2(t, M);
    if (!check_Pm(P)) throw std::logic_error("build_Pm: congruences fail after lifting");
    return P;
}

bool check_Pm(const PmMatrix& P) {
    const Mat2& s = P.matrix;
    const i64 m2 = P.m * P.m, r2 = (P.n * P.N) * (P.n * P.N);
    return s.det() == 1 && mod(s.a, m2) == 0 && mod(s.b + 1, m2) == 0 && mod(s.c - 1, m2) == 0 && mod(s.d, m2) == 0 &&
           mod(s.a - 1, r2) == 0 && mod(s.b, r2) == 0 && mod(s.c, r2) == 0 && mod(s.d - 1, r2) == 0;
}

std::complex<double> evaluate(const QExpansion& g, std::complex<double> tau, double tol) {
    const double r = std::exp(-2 * std::numbers::pi * tau.imag() / double(g.denom));
    const std::complex<double> step = std::exp(std::complex<double>(0, 2 * std::numbers::pi) * tau / double(g.denom));
    const std::size_t P = g.precision();
    if (P == 0) throw TruncationError("evaluate: empty expansion");
    std::complex<double> sum = 0, q = 1;
    double env = 0;
    const double w = std::max(1, std::abs(g.weight));
    for (std::size_t l = 0; l < P; ++l) {
        const std::complex<double> a = g.value(static_cast<i64>(l));
        sum += a * q;
        q *= step;
        if (l > 0) env = std::max(env, std::abs(a) / std::pow(double(l), w));
    }
    // tail bound from the envelope |a_l| <= env * l^w
    double tail = 0;
    if (env > 0) {
        if (r >= 1) throw TruncationError("evaluate: tau is not in the upper half plane");
        double term = 0;
        for (std::size_t l = P; l < P + 100000000; ++l) {
            term = env * std::exp(w * std::log(double(l)) + double(l) * std::log(r));
            tail += term;
            if (term < 1e-30 || (term < tail * 1e-17 && (double(l + 1) / double(l)) * r < 0.999)) break;
        }
    }
    if (tail > tol * std::max(1.0, std::abs(sum)))
        throw TruncationError("evaluate: truncation tail " + std::to_string(tail) + " exceeds tolerance");
    return sum;
}

std::complex<double> slash_eval(const QExpansion& g, const Mat2& gm, std::complex<double> tau, double tol) {
    if (tau.imag() <= 0) throw std::invalid_argument("slash_eval: Im(tau) must be positive");
    if (gm.det() <= 0) throw std::invalid_argument("slash_eval: det(gamma) must be positive");
    const std::complex<double> j = double(gm.c) * tau + double(gm.d);
    const std::complex<double> t2 = (double(gm.a) * tau + double(gm.b)) / j;
    return std::pow(j, -g.weight) * evaluate(g, t2, tol);
}

std::complex<double> apply_Vm(const QExpansion& g, const QuadField& F, i64 m, i64 N, std::complex<double> tau, double tol) {
    const Mat2 P = build_Pm(F.D, m, N).matrix;
    const Mat2 Q = P * Mat2{m, 0, 0, 1};
    std::complex<double> s = 0;
    for (i64 j = 0; j < m; ++j) s += slash_eval(g, Mat2{1, j, 0, m} * Q, tau, tol);
    return s;
}

}  // namespace hml
