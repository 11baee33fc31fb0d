#include "hml/ikeda.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hml {

namespace {

i64 part(i64 M, i64 q) {
    i64 r = 1;
    while (M % q == 0) {
        M /= q;
        r *= q;
    }
    return r;
}

// The component of D at the primes in Q.
i64 subset_modulus(const QuadField& F, PrimeSet Q) {
    i64 m = 1;
    for (std::size_t i = 0; i < F.primes.size(); ++i)
        if (Q >> i & 1u) m *= component(F.D, F.primes[i]);
    return m;
}

int chi_Q(const QuadField& F, PrimeSet Q, i64 n) { return Character(F, subset_modulus(F, Q))(n); }
int chi_Q_prime(const QuadField& F, PrimeSet Q, i64 n) { return Character(F, F.D / subset_modulus(F, Q))(n); }

PrimeSet all_primes(const QuadField& F) { return (1u << F.primes.size()) - 1u; }

void require_valid(const EigenData& ed) {
    const std::string why = eigen_invalid_reason(ed);
    if (!why.empty()) throw std::invalid_argument("invalid eigen data: " + why);
}

std::string describe(const Cyclo& c) { return c.to_string(); }

}  // namespace

std::string eigen_invalid_reason(const EigenData& ed) {
    const QuadField& F = ed.field;
    if (ed.weight < 1 || ed.weight % 2 == 0) return "weight must be odd and positive";
    if (ed.level_m < 1 || gcd(ed.level_m, F.D) != 1) return "level_m must be positive and coprime to D";
    for (i64 q : F.primes) {
        auto it = ed.ap.find(q);
        if (it == ed.ap.end()) return "missing a(" + std::to_string(q) + ")";
        if (it->second * it->second.conj() != Cyclo::rational(ipow(q, ed.weight - 1)))
            return "|a(" + std::to_string(q) + ")|^2 != " + std::to_string(q) + "^" + std::to_string(ed.weight - 1);
    }
    return {};
}

bool eigen_valid(const EigenData& ed) { return eigen_invalid_reason(ed).empty(); }

EigenData random_eigendata(const QuadField& F, int weight, i64 level_m, std::uint64_t seed, i64 pmax) {
    if (weight < 1 || weight % 2 == 0) throw std::invalid_argument("random_eigendata: weight must be odd");
    EigenData ed;
    ed.field = F;
    ed.weight = weight;
    ed.level_m = level_m;
    std::mt19937_64 rng(seed);
    const int h = (weight - 1) / 2;
    std::vector<i64> ps;
    for (i64 p = 2; p <= pmax; ++p)
        if (is_prime(p)) ps.push_back(p);
    for (i64 q : F.primes)
        if (q > pmax) ps.push_back(q);
    for (i64 p : ps) {
        if (F.D % p == 0) {
            static const i64 orders[] = {1, 2, 3, 4, 6};
            const i64 s = orders[rng() % 5];
            const i64 j = static_cast<i64>(rng() % static_cast<std::uint64_t>(s));
            ed.ap[p] = Cyclo::root(j, s).scaled(ipow(p, h));
            continue;
        }
        const i64 B = 2 * ipow(p, h);
        const i64 r = static_cast<i64>(rng() % static_cast<std::uint64_t>(2 * B + 1)) - B;
        ed.ap[p] = chi(F, p) == -1 ? Cyclo::root(1, 4).scaled(r) : Cyclo::rational(r);
    }
    return ed;
}

Cyclo coeff(const EigenData& ed, i64 M) {
    if (M < 1) throw std::invalid_argument("coeff: M must be positive");
    const QuadField& F = ed.field;
    Cyclo out = Cyclo::rational(1);
    for (const auto& [p, e] : factorize(M).factors) {
        auto it = ed.ap.find(p);
        if (it == ed.ap.end()) throw std::out_of_range("coeff: no data for the prime " + std::to_string(p));
        const Cyclo& a = it->second;
        Cyclo pe;
        if ((F.D * ed.level_m) % p == 0) {
            pe = Cyclo::rational(1);
            for (int i = 0; i < e; ++i) pe *= a;
        } else {
            const i64 c = e > 1 ? checked_mul(chi(F, p), ipow(p, ed.weight - 1)) : 0;
            Cyclo prev = Cyclo::rational(1), cur = a;
            for (int i = 1; i < e; ++i) {
                Cyclo next = a * cur - prev.scaled(c);
                prev = cur;
                cur = next;
            }
            pe = cur;
        }
        out *= pe;
    }
    return out;
}

int chi_local(const QuadField& F, i64 q, i64 M) {
    if (M == 0) throw std::invalid_argument("chi_local: M = 0");
    const i64 Mq = part(M < 0 ? -M : M, q);
    return chi_p(F, q, M / Mq) * Character(F, F.D / component(F.D, q))(Mq);
}

Cyclo fQ_coeff(const EigenData& ed, PrimeSet Q, i64 M) {
    const QuadField& F = ed.field;
    i64 inQ = 1;
    int sign = 1;
    for (std::size_t i = 0; i < F.primes.size(); ++i) {
        if (!(Q >> i & 1u)) continue;
        inQ *= part(M, F.primes[i]);
        sign *= chi_local(F, F.primes[i], M);
    }
    if (sign == 0) return Cyclo{};
    return (coeff(ed, M / inQ) * coeff(ed, inQ).conj()).scaled(sign);
}

EigenData twist(const EigenData& ed, PrimeSet Q) {
    const QuadField& F = ed.field;
    const i64 mQ = subset_modulus(F, Q);
    EigenData out = ed;
    for (auto& [p, a] : out.ap) {
        if (mQ % p == 0)
            a = ed.ap.at(p).conj().scaled(chi_Q_prime(F, Q, p));
        else
            a = ed.ap.at(p).scaled(chi_Q(F, Q, p));
    }
    return out;
}

FstarPaths fstar_paths(const EigenData& ed, i64 ell, i64 M) {
    const QuadField& F = ed.field;
    if (gcd(ell, F.D) != 1) throw std::invalid_argument("fstar: l must be coprime to D");
    require_valid(ed);
    FstarPaths r;
    for (PrimeSet Q = 0; Q <= all_primes(F); ++Q) {
        const int c = chi_Q(F, Q, -ell);
        if (c) r.subset_sum += fQ_coeff(ed, Q, M).scaled(c);
    }
    i64 Mp = M;
    for (i64 q : F.primes) Mp /= part(M, q);
    const Cyclo aMp = coeff(ed, Mp);
    Cyclo prod = aMp.scaled(a_D(F, checked_mul(ell, M)));
    Cyclo local = aMp;
    for (i64 q : F.primes) {
        const i64 Mq = part(M, q);
        const Cyclo a = coeff(ed, Mq), ac = a.conj();
        local *= a + ac.scaled(chi_p(F, q, ell) * chi_local(F, q, -M));
        if (Mq > 1) prod *= a + ac.scaled(chi_p(F, q, -1) * chi_p(F, q, ell) * chi_local(F, q, M));
    }
    r.product = prod;
    r.local_product = local;
    return r;
}

Cyclo fstar_coeff(const EigenData& ed, i64 ell, i64 M) {
    const FstarPaths r = fstar_paths(ed, ell, M);
    if (r.subset_sum != r.product || r.subset_sum != r.local_product)
        throw std::logic_error("fstar_coeff: subset sum " + describe(r.subset_sum) + " disagrees with product " +
                               describe(r.product) + " / " + describe(r.local_product) + " at M=" + std::to_string(M));
    return r.subset_sum;
}

bool fstar_plus_check(const EigenData& ed, i64 ell, i64 bound) {
    require_valid(ed);
    for (i64 n = 1; n <= bound; ++n) {
        if (n % ell != 0 || a_D(ed.field, n) != 0) continue;
        if (!fstar_coeff(ed, ell, n / ell).is_zero()) return false;
    }
    return true;
}

IkedaCheck averaging_check(const EigenData& ed, i64 ell, i64 bound) {
    require_valid(ed);
    const QuadField& F = ed.field;
    const PrimeSet all = all_primes(F);
    // doubled[Q][Q'] = (f_{Q'})_Q
    std::vector<std::vector<EigenData>> doubled(all + 1);
    for (PrimeSet Qp = 0; Qp <= all; ++Qp) {
        const EigenData once = twist(ed, Qp);
        for (PrimeSet Q = 0; Q <= all; ++Q) doubled[Q].push_back(twist(once, Q));
    }
    IkedaCheck rep;
    for (i64 n = 1; n <= bound; ++n) {
        if (n % ell != 0) continue;
        const i64 M = n / ell;
        const Cyclo g = fstar_coeff(ed, ell, M);
        Cyclo total;
        for (PrimeSet Q = 0; Q <= all; ++Q) {
            Cyclo gq;
            for (PrimeSet Qp = 0; Qp <= all; ++Qp) {
                const int c = chi_Q(F, Qp, -ell) * chi_Q(F, Q, -ell);
                if (c) gq += coeff(doubled[Q][Qp], M).scaled(c);
            }
            total += gq;
            if (gcd(n, subset_modulus(F, Q)) == 1) {
                ++rep.checked;
                if (gq != g && rep.ok) {
                    rep.ok = false;
                    rep.witness = "g' differs from g at n=" + std::to_string(n) + " for subset " + std::to_string(Q);
                }
            }
        }
        ++rep.checked;
        if (total != g.scaled(i64(1) << F.primes.size()) && rep.ok) {
            rep.ok = false;
            rep.witness = "sum over subsets differs from 2^|Q_D| g at n=" + std::to_string(n);
        }
    }
    return rep;
}

IkedaCheck twist_lemma_check(const EigenData& ed, i64 bound) {
    const PrimeSet all = all_primes(ed.field);
    IkedaCheck rep;
    for (PrimeSet Q = 0; Q <= all; ++Q) {
        const EigenData fq = twist(ed, Q);
        for (i64 M = 1; M <= bound; ++M) {
            ++rep.checked;
            if (fQ_coeff(ed, Q, M) != coeff(fq, M) && rep.ok) {
                rep.ok = false;
                rep.witness = "subset " + std::to_string(Q) + ", M=" + std::to_string(M);
            }
        }
    }
    return rep;
}

IkedaCheck rho_remark_check(const EigenData& ed, i64 bound) {
    require_valid(ed);
    const QuadField& F = ed.field;
    if (F.primes.size() != 1 || F.D % 2 == 0 || ed.level_m != 1)
        throw std::invalid_argument("rho_remark_check: needs prime D and level 1");
    const EigenData frho = twist(ed, 1u);
    IkedaCheck rep;
    for (i64 M = 1; M <= bound; ++M) {
        const Cyclo a = coeff(ed, M), ac = a.conj();
        rep.checked += 2;
        if (coeff(frho, M) != ac && rep.ok) {
            rep.ok = false;
            rep.witness = "f_{D} differs from f^rho at M=" + std::to_string(M);
        }
        if (fstar_coeff(ed, 1, M) != a - ac && rep.ok) {
            rep.ok = false;
            rep.witness = "f* differs from f - f^rho at M=" + std::to_string(M);
        }
    }
    return rep;
}

}  // namespace hml
