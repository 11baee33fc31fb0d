#include "hml/criterion.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace hml {

SigmaContext sigma_context(const QuadField& F, const Mat2& s, i64 j) {
    if (s.det() != 1) throw std::invalid_argument("sigma_context: det(sigma) must be 1");
    const i64 D = F.D;
    SigmaContext x;
    x.sigma = s;
    x.j = j;
    x.apcj = checked_add(s.a, checked_mul(s.c, j));
    x.mu = gcd(x.apcj, D);
    x.m = component(D, x.mu);
    x.n = D / x.m;
    const i64 top = checked_add(s.b, checked_mul(s.d, j));
    if (x.apcj == 0) {
        x.kappa = 0;
        x.lambda = top / x.n;
        return x;
    }
    std::vector<std::pair<i64, i64>> res{{mod(mod(top, x.n) * inv_mod(x.apcj, x.n), x.n), x.n}};
    if (x.m != x.mu) {
        x.f = val(2, x.apcj);
        const i64 pf = i64(1) << x.f, k = x.m / x.mu;
        if (mod(top + s.c, pf) != 0) throw std::logic_error("sigma_context: 2^f does not divide b + dj + c");
        res.push_back({mod(mod((top + s.c) / pf, k) * inv_mod(x.apcj / pf, k), k), k});
    }
    x.kappa = crt(res);
    const i64 num = checked_add(top, -checked_mul(x.kappa, x.apcj));
    if (num % x.n != 0) throw std::logic_error("sigma_context: lambda is not integral");
    x.lambda = num / x.n;
    return x;
}

SigmaContext with_kappa(const SigmaContext& ctx, i64 kappa) {
    SigmaContext x = ctx;
    x.kappa = kappa;
    x.lambda = checked_add(checked_add(ctx.sigma.b, checked_mul(ctx.sigma.d, ctx.j)), -checked_mul(kappa, ctx.apcj)) / ctx.n;
    return x;
}

template <class S>
S R_factor_t(const QuadField& F, const SigmaContext& x, const DiffClass& v) {
    if (x.m != 4 * x.mu) return Ring<S>::rat(1);
    const int c2 = chi_p(F, 2, 5 - 2 * x.n * x.sigma.c);
    S t = Ring<S>::scale(Ring<S>::root(-mod(x.apcj, 2 * x.m) * v.dnorm, 2 * x.m), c2);
    return Ring<S>::scale(Ring<S>::rat(1) + t, 1, 2);
}

Cyclo R_factor(const QuadField& F, const SigmaContext& ctx, const DiffClass& v) { return R_factor_t<Cyclo>(F, ctx, v); }

namespace {

struct Term {
    SigmaContext ctx;
    Character psi_m;
    Character psi_n;
};

std::vector<Term> contexts(const QuadField& F, const Mat2& s) {
    std::vector<Term> out;
    out.reserve(static_cast<std::size_t>(F.D));
    for (i64 j = 0; j < F.D; ++j) {
        SigmaContext x = sigma_context(F, s, j);
        out.push_back({x, chi_component(F, x.m), chi_component(F, x.n)});
    }
    return out;
}

template <class S>
S sum_over_j(const QuadField& F, const std::vector<Term>& terms, const DiffClass& w, const DiffClass& u, i64 shift) {
    const i64 D = F.D;
    S acc = Ring<S>::zero();
    for (const Term& t : terms) {
        const SigmaContext& x = t.ctx;
        if (gcd(w.dnorm, x.m) != x.mu) continue;
        const int pn = t.psi_n(x.apcj);
        if (pn == 0) continue;
        const i64 kappa = mod(x.kappa + shift * x.n * (x.m / x.mu), D);
        S g = Ring<S>::gauss(t.psi_m, x.n * x.sigma.c);
        S e = Ring<S>::root(mod(u.dnorm * x.j - w.dnorm * kappa, D), D);
        acc += Ring<S>::scale(R_factor_t<S>(F, x, w) * g * e, pn);
    }
    return Ring<S>::scale(acc, w.mult, u.mult);
}

// Distinct values of D|u|^2 mod D with one representative class each.
struct NormIndex {
    std::vector<int> rep;          // class index of the representative
    std::vector<int> of_class;     // position of each class among the representatives
};

NormIndex norm_index(const std::vector<DiffClass>& cls) {
    NormIndex ix;
    std::map<i64, int> seen;
    ix.of_class.resize(cls.size());
    for (auto& u : cls) {
        auto [it, fresh] = seen.emplace(u.dnorm, static_cast<int>(ix.rep.size()));
        if (fresh) ix.rep.push_back(u.index);
        ix.of_class[u.index] = it->second;
    }
    return ix;
}

template <class S>
std::vector<S> inner_table(const QuadField& F, const std::vector<DiffClass>& cls, const NormIndex& ix, const Mat2& s, i64 shift) {
    auto terms = contexts(F, s);
    const std::size_t K = ix.rep.size();
    std::vector<S> tab(K * K);
    for (std::size_t iu = 0; iu < K; ++iu)
        for (std::size_t iw = 0; iw < K; ++iw)
            tab[iu * K + iw] = sum_over_j<S>(F, terms, cls[ix.rep[iw]], cls[ix.rep[iu]], shift);
    return tab;
}

// lhs[v * D + w]
template <class S>
std::vector<S> lhs_matrix(const QuadField& F, const std::vector<DiffClass>& cls, const NormIndex& ix, const ThetaMatrixT<S>& M,
                          const std::vector<S>& tab) {
    const std::size_t D = cls.size(), K = ix.rep.size();
    std::vector<S> out(D * D, Ring<S>::zero());
    for (std::size_t v = 0; v < D; ++v)
        for (std::size_t u = 0; u < D; ++u) {
            const S& muv = M.at(static_cast<int>(u), static_cast<int>(v));
            if (Ring<S>::is_zero(muv)) continue;
            for (std::size_t w = 0; w < D; ++w) {
                const S& a = tab[ix.of_class[u] * K + ix.of_class[w]];
                if (Ring<S>::is_zero(a)) continue;
                out[v * D + w] += muv * a;
            }
        }
    for (auto& x : out) x = Ring<S>::scale(x, 1, F.D);
    return out;
}

Cyclo eroot(i64 num, i64 den) { return Cyclo::root(mod(num, den), den); }

// e[(p / q) / M] in the sense of the inverse modulo M
Cyclo eroot_inv(i64 p, i64 q, i64 M) {
    if (M == 1) return Cyclo::rational(1);
    return eroot(mod(p, M) * inv_mod(mod(q, M), M) % M, M);
}

Cyclo closed_odd(const QuadField& F, const Mat2& s, const DiffClass& w, const DiffClass& u) {
    const i64 D = F.D, a = s.a, b = s.b, c = s.c, d = s.d;
    const i64 Ds = D / c;
    if (mod(u.dnorm - d * d % c * w.dnorm, c) != 0) return {};
    const i64 h = crt({{mod(b, c), c}, {inv_mod(c, Ds), Ds}});
    const i64 h2 = mod(h * h, std::max<i64>(Ds, 1));
    const i64 x = u.x2;
    std::vector<i128> buf(static_cast<std::size_t>(Ds), 0);
    for (i64 g = 0; g < Ds; ++g)
        if (mod(g * g - w.dnorm, Ds) == 0) buf[mod(2 * x % Ds * h2 % Ds * g, Ds)] += 1;
    Cyclo Fu = Cyclo::from_group_ring(Ds, std::move(buf));
    Cyclo G = gauss_sum(chi_component(F, Ds), 1);
    const int pc = chi_component(F, c)(a);
    Cyclo e = eroot(-(w.dnorm * mod(d * h, D)), D) * eroot(-(u.dnorm * mod(a * h2, Ds)), Ds);
    return (Fu * G * e).scaled(c * pc);
}

Cyclo closed_even(const QuadField& F, const Mat2& s, const DiffClass& w, const DiffClass& u) {
    const i64 D = F.D, a = s.a, b = s.b, c = s.c, d = s.d;
    const i64 e = F.e, Dp = F.Dprime;
    const i64 f = val(2, c), cp = c >> f;
    const i64 cstar = f >= 1 ? (i64(1) << e) * cp : c;
    const i64 Ds = D / cstar;
    const i64 f2 = f >= 1 ? 0 : e;
    const i64 q = Dp / cp;
    const i64 du = u.dnorm, dw = w.dnorm;
    const i64 f1 = dw == 0 ? f2 : std::min(f2, val(2, dw));
    const i64 two_e = i64(1) << e;
    auto chi2 = [&](i64 n) { return chi_p(F, 2, n); };
    const Character chi2c = chi_component(F, two_e);

    // E_u
    Cyclo E;
    if (f == 0) {
        E = gauss_sum(chi2c, Dp * c).scaled(chi2(du + dw));
    } else if (mod(du - dw - c, two_e / 2) == 0) {
        Cyclo inner = Cyclo::rational(1) +
                      eroot(Dp * (du - dw * (2 * b * c + 1) - dw * c * d), two_e).scaled(chi2(1 + a * c));
        E = (eroot(-Dp * dw * a * b, two_e) * inner).scaled((two_e / 2) * chi2(a));
    }

    // F_u with x = x2, since D|u|^2 = x2^2 mod D'/c'
    std::vector<i128> buf(static_cast<std::size_t>(q), 0);
    const i64 t = q == 1 ? 0 : inv_mod(mod(c * cstar * (i64(1) << f2), q), q);
    for (i64 g = 0; g < q; ++g)
        if (mod(g * g - dw, q) == 0) buf[mod(2 * mod(u.x2, q) * t % q * g, q)] += 1;
    Cyclo Fu = Cyclo::from_group_ring(q, std::move(buf));

    Cyclo K = eroot_inv(-du * a % cp * b, D / cp, cp) * eroot_inv(-du * a, c * cstar, Ds) * eroot_inv(-dw * d, c * cstar, Ds);

    const int cu = chi2(du), cw = chi2(dw);
    if (cu == -1) throw std::logic_error("inner_sum_closed: chi_2(D|u|^2) = -1");
    Cyclo out;
    if (mod(du - d * d % cp * dw, cp) == 0) {
        Cyclo G = gauss_sum(chi_component(F, q), (i64(1) << f2) * cstar * c);
        out = (Fu * K * E * G).scaled(cp * (1 + cw) * chi_component(F, cp)(a), 1 + cu);
    }
    if (f1 != 0 && mod(du - d * d % c * dw, c) == 0) {
        int Ep;
        const i64 g = e - f1;
        if (g == 0) Ep = 1;
        else if (g == 1) Ep = du % 2 ? -1 : 1;
        else if (du % 2 == 0) Ep = (du / 2) % 2 ? -1 : 1;
        else Ep = (mod((du + dw / 2) / 2, 2) ? -1 : 1) * chi2(-1);
        Cyclo G = gauss_sum(chi_component(F, Ds), 1);
        out += (Fu * K * G).scaled(c * Ep * chi_component(F, c)(a), 1 + cu);
    }
    return out;
}

}  // namespace

template <class S>
S inner_sum_direct_t(const QuadField& F, const Mat2& s, const DiffClass& w, const DiffClass& u, i64 shift) {
    return sum_over_j<S>(F, contexts(F, s), w, u, shift);
}

template Cyclo R_factor_t<Cyclo>(const QuadField&, const SigmaContext&, const DiffClass&);
template cplx R_factor_t<cplx>(const QuadField&, const SigmaContext&, const DiffClass&);
template Cyclo inner_sum_direct_t<Cyclo>(const QuadField&, const Mat2&, const DiffClass&, const DiffClass&, i64);
template cplx inner_sum_direct_t<cplx>(const QuadField&, const Mat2&, const DiffClass&, const DiffClass&, i64);

Cyclo inner_sum_direct(const QuadField& F, const Mat2& s, const DiffClass& w, const DiffClass& u) {
    return inner_sum_direct_t<Cyclo>(F, s, w, u, 0);
}

Cyclo inner_sum_closed(const QuadField& F, const Mat2& s, const DiffClass& w, const DiffClass& u) {
    if (s.det() != 1) throw std::invalid_argument("inner_sum_closed: det(sigma) must be 1");
    if (s.c <= 0 || F.D % s.c != 0) throw std::invalid_argument("inner_sum_closed: need c | D and c > 0");
    return F.e == 0 ? closed_odd(F, s, w, u) : closed_even(F, s, w, u);
}

Cyclo criterion_lhs(const QuadField& F, const Mat2& s, const DiffClass& v, const DiffClass& w) {
    auto cls = classes(F);
    ThetaMatrix M = theta_matrix(F, s);
    auto terms = contexts(F, s);
    Cyclo acc;
    for (auto& u : cls) {
        const Cyclo& muv = M.at(u.index, v.index);
        if (muv.is_zero()) continue;
        acc += muv * sum_over_j<Cyclo>(F, terms, w, u, 0);
    }
    return acc.scaled(1, F.D);
}

std::vector<Mat2> sweep_sigmas(i64 D) {
    std::vector<Mat2> out{{1, 0, 0, 1}};
    for (i64 c : divisors(D))
        for (i64 d = 0; d < D; ++d) {
            if (gcd(c, d) != 1) continue;
            // a d - b c = 1
            i64 x, y;
            egcd(d, c, x, y);  // d x + c y = 1
            out.push_back({x, -y, c, d});
        }
    return out;
}

namespace {

Mat2 random_gamma0(i64 D, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> pick(1, 4 * D);
    const i64 z = (rng() & 1) ? 1 : -1;
    i64 t;
    do t = pick(rng) * ((rng() & 1) ? 1 : -1);
    while (gcd(t, D) != 1);
    const i64 x = inv_mod(mod(t, D), D) + D * (pick(rng) % 3);
    const i64 y = (x * t - 1) / (D * z);
    return {x, y, D * z, t};
}

Mat2 random_level(i64 N, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> pick(1, 9);
    for (;;) {
        const i64 c = N * pick(rng) * ((rng() & 1) ? 1 : -1);
        const i64 d = pick(rng) * ((rng() & 1) ? 1 : -1) + 3 * c;
        if (gcd(c, d) != 1) continue;
        i64 x, y;
        egcd(d, c, x, y);
        return {x, -y, c, d};
    }
}

template <class S>
bool delta_ok(const S& val, bool expect) {
    return Ring<S>::equal(val, Ring<S>::rat(expect ? 1 : 0));
}

std::string show(const Cyclo& x) { return x.to_string(); }
std::string show(const cplx& x) { return std::to_string(x.real()) + (x.imag() < 0 ? "" : "+") + std::to_string(x.imag()) + "i"; }

template <class S>
void check_lhs(const std::vector<DiffClass>& cls, const std::vector<S>& L, const Mat2& s, const std::string& kind,
               std::vector<CriterionFailure>& fails) {
    const std::size_t D = cls.size();
    for (std::size_t v = 0; v < D; ++v)
        for (std::size_t w = 0; w < D; ++w) {
            const bool expect = cls[v].dnorm == cls[w].dnorm;
            if (!delta_ok(L[v * D + w], expect))
                fails.push_back({kind, s, int(v), int(w), show(L[v * D + w]), expect ? "1" : "0"});
        }
}

}  // namespace

CriterionReport verify_criterion(const QuadField& F, i64 N, const VerifyOptions& opt) {
    if (N < 1 || gcd(F.D, N) != 1) throw std::invalid_argument("verify_criterion: need gcd(D, N) = 1");
    const auto t0 = std::chrono::steady_clock::now();
    const auto cls = classes(F);
    const NormIndex ix = norm_index(cls);
    const i64 D = F.D;
    const auto sigmas = sweep_sigmas(D);

    CriterionReport rep;
    rep.D = D;
    rep.N = N;
    rep.seed = opt.seed;
    rep.float_mode = opt.float_mode;
    rep.sigmas = static_cast<i64>(sigmas.size());

    std::mutex mu;
    std::atomic<std::size_t> next{0};
    const std::size_t jobs = sigmas.size() + static_cast<std::size_t>(std::max(opt.extras, 0));
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next++;
            if (k >= jobs) return;
            std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
            std::vector<CriterionFailure> fails;
            CriterionReport local;
            if (k >= sigmas.size()) {
                const Mat2 s = random_level(N, rng);
                auto L = lhs_matrix(F, cls, ix, theta_matrix(F, s), inner_table<Cyclo>(F, cls, ix, s, 0));
                std::vector<CriterionFailure> extra;
                check_lhs(cls, L, s, "extra", extra);
                std::lock_guard lk(mu);
                rep.extras_checked += D * D;
                rep.extras_failed += static_cast<i64>(extra.size());
                continue;
            }
            const Mat2 s = sigmas[k];
            const ThetaMatrix M = theta_matrix(F, s);
            const auto tab = inner_table<Cyclo>(F, cls, ix, s, 0);
            check_lhs(cls, lhs_matrix(F, cls, ix, M, tab), s, "criterion", fails);
            local.triples_checked += D * D;

            const i64 shift = std::uniform_int_distribution<i64>(1, 5)(rng);
            const auto tab2 = inner_table<Cyclo>(F, cls, ix, s, shift);
            for (std::size_t i = 0; i < tab.size(); ++i)
                if (tab[i] != tab2[i])
                    fails.push_back({"kappa", s, 0, int(i), tab2[i].to_string(), tab[i].to_string()});
            local.kappa_checked += static_cast<i64>(tab.size());

            if (opt.check_closed && s.c > 0) {
                for (auto& u : cls)
                    for (auto& w : cls) {
                        Cyclo cl = inner_sum_closed(F, s, w, u);
                        const Cyclo& dr = tab[ix.of_class[u.index] * ix.rep.size() + ix.of_class[w.index]];
                        if (cl != dr) fails.push_back({"closed", s, u.index, w.index, cl.to_string(), dr.to_string()});
                    }
                local.closed_checked += D * D;
            }

            for (int r = 0; r < opt.translates; ++r) {
                const Mat2 g = random_gamma0(D, rng);
                const Mat2 sg = s * g;
                const ThetaMatrix Mg = theta_product(M, theta_matrix(F, g));
                check_lhs(cls, lhs_matrix(F, cls, ix, Mg, inner_table<Cyclo>(F, cls, ix, sg, 0)), sg, "translate", fails);
                local.translate_triples += D * D;
            }

            if (opt.float_mode) {
                auto Lf = lhs_matrix(F, cls, ix, theta_matrix_float(F, s), inner_table<cplx>(F, cls, ix, s, 0));
                check_lhs(cls, Lf, s, "float", fails);
                local.float_checked += D * D;
            }

            std::lock_guard lk(mu);
            rep.triples_checked += local.triples_checked;
            rep.kappa_checked += local.kappa_checked;
            rep.closed_checked += local.closed_checked;
            rep.translate_triples += local.translate_triples;
            rep.float_checked += local.float_checked;
            rep.failures.insert(rep.failures.end(), fails.begin(), fails.end());
        }
    };
    unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, jobs));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    // deterministic order regardless of scheduling
    std::sort(rep.failures.begin(), rep.failures.end(), [](const CriterionFailure& x, const CriterionFailure& y) {
        return std::tie(x.kind, x.sigma.c, x.sigma.d, x.sigma.a, x.sigma.b, x.v, x.w) <
               std::tie(y.kind, y.sigma.c, y.sigma.d, y.sigma.a, y.sigma.b, y.v, y.w);
    });
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace hml
