#include "hml/lift.hpp"

#include <stdexcept>

#include "hml/charsums.hpp"

namespace hml {

namespace {

Rational rpow(i64 b, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_plus(const QuadField& F, i64 N, const QExpansion& g) {
    if (gcd(F.D, N) != 1) throw std::invalid_argument("level N must be coprime to D");
    if (!is_plus(F, g)) throw std::invalid_argument("input is not in the plus space");
}

}  // namespace

Rational AlphaSeries::at(i64 ell) const {
    if (ell < 0) throw std::domain_error("alpha index " + std::to_string(ell) + " is negative");
    if (bound >= 0 && ell > bound)
        throw TruncationError("alpha index " + std::to_string(ell) + " is beyond the table bound " + std::to_string(bound));
    std::optional<Rational> v = fn ? fn(ell) : std::optional<Rational>(Rational(0));
    if (!v) throw std::domain_error("alpha value at " + std::to_string(ell) + " is not specified");
    return *v;
}

std::vector<QExpansion> theta_decompose(const QuadField& F, i64 N, const QExpansion& g) {
    require_plus(F, N, g);
    const Cyclo unit = (-gauss_chi(F)) * g.unit.scaled(chi(F, N));
    std::vector<QExpansion> out;
    for (const DiffClass& u : classes(F)) {
        QExpansion h;
        h.weight = g.weight;
        h.level = g.level;
        h.disc = F.D;
        h.denom = F.D;
        h.unit = unit;
        h.coeffs.assign(g.coeffs.size(), Rational(0));
        for (std::size_t l = 0; l < g.coeffs.size(); ++l) {
            if (mod(static_cast<i64>(l) + u.dnorm, F.D) != 0) continue;
            h.coeffs[l] = g.coeffs[l] ? std::optional<Rational>(*g.coeffs[l] / u.mult) : std::nullopt;
        }
        out.push_back(std::move(h));
    }
    return out;
}

AlphaSeries special_jacobi_alpha(const QuadField& F, i64 N, const QExpansion& g) {
    require_plus(F, N, g);
    if (g.denom != 1) throw std::invalid_argument("special_jacobi_alpha: expansion must be integral");
    AlphaSeries a;
    a.role = AlphaSeries::Role::special_jacobi;
    a.unit = (-gauss_chi(F)) * g.unit.scaled(chi(F, N));
    a.bound = static_cast<i64>(g.coeffs.size()) - 1;
    auto coeffs = std::make_shared<std::vector<std::optional<Rational>>>(g.coeffs);
    auto field = std::make_shared<QuadField>(F);
    a.fn = [coeffs, field](i64 l) -> std::optional<Rational> {
        const i64 w = a_D(*field, l);
        if (w == 0) return Rational(0);
        const auto& c = (*coeffs)[static_cast<std::size_t>(l)];
        if (!c) return std::nullopt;
        return *c / w;
    };
    return a;
}

QExpansion plus_from_alpha(const QuadField& F, i64 N, int weight, const AlphaSeries& alpha, i64 upto) {
    if (gcd(F.D, N) != 1) throw std::invalid_argument("level N must be coprime to D");
    QExpansion g;
    g.weight = weight;
    g.level = F.D * N;
    g.disc = F.D;
    g.unit = (gauss_chi(F) * alpha.unit).scaled(chi(F, N), F.D);
    g.coeffs.assign(static_cast<std::size_t>(upto + 1), std::nullopt);
    for (i64 l = 0; l <= upto; ++l) {
        const i64 w = a_D(F, l);
        if (w == 0) {
            g.coeffs[l] = Rational(0);
            continue;
        }
        try {
            g.coeffs[l] = w * alpha.at(l);
        } catch (const std::domain_error&) {
            // left unspecified, as in the input series
        }
    }
    return g;
}

i64 key_ddet(const QuadField& F, const HermitianCoeffKey& key) {
    return checked_add(checked_mul(checked_mul(F.D, key.ell), key.m), -alg_norm(F, AlgInt{key.t1, key.t2}));
}

i64 epsilon_T(const HermitianCoeffKey& key) {
    const i64 e = gcd(gcd(key.ell, key.m), gcd(key.t1, key.t2));
    if (e == 0) throw std::invalid_argument("epsilon_T: T = 0");
    return e;
}

Rational maass_coeff(const QuadField& F, i64 N, int k, const AlphaSeries& alpha, const HermitianCoeffKey& key) {
    const i64 dd = key_ddet(F, key);
    if (key.ell < 0 || key.m < 0 || dd < 0) throw std::invalid_argument("maass_coeff: T is not positive semi-definite");
    const i64 eps = epsilon_T(key);
    Rational s = 0;
    for (i64 d : divisors(eps))
        if (gcd(d, N) == 1) s += rpow(d, k - 1) * alpha.at(dd / (d * d));
    return s;
}

Rational BetaTable::operator()(i64 u, i64 d) const {
    if (u <= 0 || d < 0) return 0;
    return fn(u, d);
}

BetaTable beta_from_alpha(const AlphaSeries& alpha, int k, i64 N) {
    BetaTable b;
    b.k = k;
    b.N = N;
    b.fn = [alpha, k, N](i64 u, i64 v) {
        Rational s = 0;
        for (i64 d : divisors(u)) {
            if (gcd(d, N) != 1) continue;
            const i64 q = u / d;
            s += rpow(d, k - 1) * alpha.at(checked_mul(v, checked_mul(q, q)));
        }
        return s;
    };
    return b;
}

AlphaSeries random_alpha(std::uint64_t seed) {
    AlphaSeries a;
    a.role = AlphaSeries::Role::maass;
    a.fn = [seed](i64 l) -> std::optional<Rational> {
        const std::uint64_t h = splitmix(seed ^ splitmix(static_cast<std::uint64_t>(l)));
        const i64 num = static_cast<i64>(h % 41) - 20;
        const i64 den = static_cast<i64>((h >> 8) % 6) + 1;
        return Rational(num, den);
    };
    return a;
}

}  // namespace hml
