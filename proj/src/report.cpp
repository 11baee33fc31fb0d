#include "hml/report.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "hml/charsums.hpp"

namespace hml {

namespace {

json mat_json(const Mat2& m) { return json::array({m.a, m.b, m.c, m.d}); }
json alg_json(const AlgInt& x) { return json::array({x.a, x.b}); }

json cplx_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

i64 isqrt_floor(i64 n) {
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<HermitianCoeffKey> keys_up_to(const QuadField& F, i64 bound) {
    std::vector<HermitianCoeffKey> out;
    const i64 t2max = 2 * isqrt_floor(bound / F.D) + 1, t1max = isqrt_floor(bound) + t2max + 1;
    for (i64 l = 0; F.D * l <= bound; ++l)
        for (i64 m = 0; F.D * l * m <= bound; ++m) {
            if (l * m == 0) {
                if (l + m > 0) out.push_back({l, m, 0, 0});
                if (l == 0 && F.D * m > bound) break;
                continue;
            }
            for (i64 t1 = -t1max; t1 <= t1max; ++t1)
                for (i64 t2 = -t2max; t2 <= t2max; ++t2) {
                    HermitianCoeffKey k{l, m, t1, t2};
                    if (key_ddet(F, k) >= 0) out.push_back(k);
                }
        }
    return out;
}

// Smallest primes p with chi(p) = -1 and p not dividing N.
std::vector<i64> inert_primes(const QuadField& F, i64 N, std::size_t count) {
    std::vector<i64> out;
    for (i64 p = 2; out.size() < count; ++p)
        if (is_inert(F, p) && N % p != 0) out.push_back(p);
    return out;
}

json check_theta(const QuadField& F, const RunOptions& opt) {
    std::mt19937_64 rng(opt.seed ^ static_cast<std::uint64_t>(F.D));
    json r;
    i64 bad_pairs = 0, bad_closed = 0, closed = 0;
    for (int i = 0; i < 20; ++i) {
        const Mat2 s = random_sl2(rng, 3), t = random_sl2(rng, 3);
        if (!theta_equal(theta_product(theta_matrix(F, s), theta_matrix(F, t)), theta_matrix(F, s * t))) {
            ++bad_pairs;
            r["pair_witness"] = {mat_json(s), mat_json(t)};
        }
    }
    for (const Mat2& s : sweep_sigmas(F.D)) {
        if (s.c <= 0) continue;
        ++closed;
        if (!theta_equal(theta_matrix_closed(F, s), theta_matrix(F, s))) {
            ++bad_closed;
            r["closed_witness"] = mat_json(s);
        }
    }
    const std::vector<Mat2> sig{kJ, {1, 0, 1, 1}, {2, 1, 1, 1}};
    const std::vector<cplx> taus{{0.1, 1.2}, {-0.3, 0.9}, {0.25, 1.5}};
    double worst = 0;
    for (const Mat2& s : sig)
        for (const cplx& tau : taus) worst = std::max(worst, theta_functional_residual(F, s, tau, {0.1, 0.05}, {-0.07, 0.02}, 14));
    r["product_pairs"] = 20;
    r["product_failures"] = bad_pairs;
    r["closed_checked"] = closed;
    r["closed_failures"] = bad_closed;
    r["functional_residual"] = worst;
    r["passed"] = bad_pairs == 0 && bad_closed == 0 && worst < 1e-6;
    return r;
}

json check_salie() {
    json r;
    i64 n = 0, bad = 0;
    for (i64 p : {3, 5, 7, 11, 13})
        for (i64 x = 0; x < p; ++x)
            for (i64 y = 0; y < p; ++y)
                for (i64 z = 1; z < p; ++z) {
                    ++n;
                    if (!salie_check(p, x, y, z).equal) {
                        ++bad;
                        r["witness"] = {p, x, y, z};
                    }
                }
    r["checked"] = n;
    r["failures"] = bad;
    r["passed"] = bad == 0;
    return r;
}

json check_gauss(const QuadField& F) {
    json r, ms = json::array();
    bool ok = true;
    for (i64 m : divisors(F.D)) {
        if (m == 1 || gcd(m, F.D / m) != 1) continue;
        const Character psi(F, m);
        const bool good = check_closed_form(psi);
        ok = ok && good;
        ms.push_back(json{{"m", m}, {"G", cyclo_json(gauss_sum(psi))}, {"ok", good}});
    }
    r["moduli"] = ms;
    r["passed"] = ok;
    return r;
}

json check_normsum(const QuadField& F) {
    json r;
    i64 n = 0, bad = 0;
    for (i64 M = 1; M <= 20; ++M) {
        if (gcd(M, F.D) != 1) continue;
        for (i64 t = 1; t <= M; ++t) {
            if (gcd(t, M) != 1) continue;
            ++n;
            if (!norm_sum_check(F, M, t)) {
                ++bad;
                r["witness"] = {M, t};
            }
        }
    }
    r["checked"] = n;
    r["failures"] = bad;
    r["passed"] = bad == 0;
    return r;
}

json check_lift(const QuadField& F, i64 N, const RunOptions& opt) {
    json r;
    const i64 upto = 2000;
    const QExpansion g = eisenstein_star_full(F, opt.k, upto);
    bool ok = is_plus(F, g);
    r["plus"] = ok;

    const AlphaSeries alpha = special_jacobi_alpha(F, N, g);
    const QExpansion back = plus_from_alpha(F, N, g.weight, alpha, upto);
    bool round = back.unit == g.unit;
    for (i64 l = 0; l <= upto && round; ++l) round = back.coeff(l) == g.coeff(l);
    r["round_trip"] = round;

    const std::vector<QExpansion> comps = theta_decompose(F, N, g);
    const auto cls = classes(F);
    const Cyclo unit = (-gauss_chi(F)) * g.unit.scaled(chi(F, N));
    bool decomp = true;
    for (const DiffClass& u : cls) {
        const QExpansion& h = comps[u.index];
        decomp = decomp && h.unit == unit && h.denom == F.D;
        for (i64 l = 0; l <= upto && decomp; ++l) {
            const bool on = mod(l + u.dnorm, F.D) == 0;
            decomp = on ? h.coeff(l) * u.mult == g.coeff(l) : h.coeff(l) == 0;
        }
        for (const DiffClass& v : cls)
            if (u.dnorm == v.dnorm) decomp = decomp && comps[v.index].coeffs == h.coeffs;
    }
    r["theta_decomposition"] = decomp;

    // c_F depends on T only through (eps(T), D det T)
    std::map<std::pair<i64, i64>, std::vector<Rational>> byclass;
    for (const HermitianCoeffKey& key : keys_up_to(F, 12 * F.D)) {
        if (key_ddet(F, key) > upto) continue;
        byclass[{epsilon_T(key), key_ddet(F, key)}].push_back(maass_coeff(F, N, opt.k, alpha, key));
    }
    i64 classes3 = 0;
    bool welldef = true;
    for (const auto& [cl, vals] : byclass) {
        if (vals.size() >= 3) ++classes3;
        for (const Rational& v : vals) welldef = welldef && v == vals.front();
    }
    r["maass_classes_with_3_keys"] = classes3;
    r["maass_well_defined"] = welldef && classes3 > 0;

    const BetaCheck rand = verify_beta_conditions(beta_from_alpha(random_alpha(opt.seed), opt.k, N), 50, 200, N);
    const BetaCheck lifted = verify_beta_conditions(beta_from_alpha(alpha, opt.k, N), 6, 50, N);
    r["beta_random"] = json{{"ok", rand.ok}, {"checked", rand.checked}, {"witness", rand.witness}};
    r["beta_lifted"] = json{{"ok", lifted.ok}, {"checked", lifted.checked}, {"witness", lifted.witness}};
    r["passed"] = ok && round && decomp && welldef && classes3 > 0 && rand.ok && lifted.ok;
    return r;
}

json check_hecke(const QuadField& F, i64 N, const RunOptions& opt) {
    json r, per = json::array();
    bool ok = true;
    for (i64 p : inert_primes(F, N, 2)) {
        json e;
        e["p"] = p;
        const RepsReport reps = check_reps(F, p, N, opt.threads);
        e["reps"] = json{{"count", reps.count}, {"expected", reps.expected}, {"unitary", reps.all_unitary},
                         {"level", reps.all_level}, {"distinct", reps.distinct}, {"witness", reps.witness}};
        bool pok = reps.passed();
        i64 direct = 0, direct_bad = 0;
        for (int i = 0; i < 4; ++i) {
            const BetaTable bF = beta_from_alpha(random_alpha(opt.seed + 7919 * i + p), opt.k, N);
            const BetaTable bG = beta_Tp(bF, p, F);
            const BetaCheck c = verify_beta_conditions(bG, 30, 60, N);
            if (!c.ok) e["beta_witness"] = c.witness;
            pok = pok && c.ok;
            auto cF = [&](const HermitianCoeffKey& T) {
                const i64 eps = epsilon_T(T);
                return bF(eps, key_ddet(F, T) / (eps * eps));
            };
            const i64 box = p <= 3 ? 3 : 1;
            for (i64 l = 0; l <= box; ++l)
                for (i64 m = 0; m <= box; ++m)
                    for (i64 t1 = -2; t1 <= 2; ++t1)
                        for (i64 t2 = -2; t2 <= 2; ++t2) {
                            const HermitianCoeffKey T{l, m, t1, t2};
                            if ((l | m | t1 | t2) == 0 || key_ddet(F, T) < 0) continue;
                            const i64 eps = epsilon_T(T);
                            ++direct;
                            if (hecke_coeff_direct(F, p, opt.k, cF, T) != bG(eps, key_ddet(F, T) / (eps * eps))) ++direct_bad;
                        }
        }
        e["direct_checked"] = direct;
        e["direct_failures"] = direct_bad;
        pok = pok && direct_bad == 0;
        e["passed"] = pok;
        ok = ok && pok;
        per.push_back(e);
    }
    r["primes"] = per;
    r["passed"] = ok;
    return r;
}

json check_ikeda(const QuadField& F, i64 N, const RunOptions& opt) {
    json r;
    i64 forms = 0, plus_ok = 0, avg_ok = 0, lemma_ok = 0, rho_ok = 0, rho_n = 0, paths = 0;
    std::string err;
    for (int s = 0; s < 20; ++s) {
        const EigenData ed = random_eigendata(F, opt.k - 1, N, opt.seed + 104729 * s, 500);
        ++forms;
        try {
            for (i64 ell : {1, 2}) {
                if (gcd(ell, F.D) != 1) continue;
                for (i64 M = 1; M <= 500; ++M, ++paths) fstar_coeff(ed, ell, M);
            }
            bool pc = fstar_plus_check(ed, 1, 200) && (gcd(2, F.D) != 1 || fstar_plus_check(ed, 2, 200));
            plus_ok += pc;
            const IkedaCheck a = averaging_check(ed, 1, 200);
            avg_ok += a.ok;
            if (!a.ok) err = a.witness;
            const IkedaCheck l = twist_lemma_check(ed, 200);
            lemma_ok += l.ok;
            if (!l.ok) err = l.witness;
            if (F.primes.size() == 1 && F.D % 2 && N == 1) {
                ++rho_n;
                const IkedaCheck c = rho_remark_check(ed, 200);
                rho_ok += c.ok;
                if (!c.ok) err = c.witness;
            }
        } catch (const std::exception& e) {
            err = e.what();
        }
    }
    r["forms"] = forms;
    r["path_comparisons"] = paths;
    r["plus_ok"] = plus_ok;
    r["averaging_ok"] = avg_ok;
    r["twist_lemma_ok"] = lemma_ok;
    r["rho_remark_checked"] = rho_n;
    r["rho_remark_ok"] = rho_ok;
    if (!err.empty()) r["witness"] = err;
    r["passed"] = plus_ok == forms && avg_ok == forms && lemma_ok == forms && rho_ok == rho_n && err.empty();
    return r;
}

json check_plusform(const QuadField& F, i64 N, const RunOptions& opt) {
    json r, pms = json::array();
    bool ok = true;
    for (i64 m : divisors(F.D)) {
        if (gcd(m, F.D / m) != 1) continue;
        const PmMatrix P = build_Pm(F.D, m, N);
        const bool good = check_Pm(P);
        ok = ok && good;
        pms.push_back(json{{"m", m}, {"P", mat_json(P.matrix)}, {"ok", good}});
    }
    r["Pm"] = pms;
    // (g | A) | B = g | AB for the undeterminant-normalized slash
    const QExpansion g = eisenstein_star_full(F, opt.k, 600);
    std::mt19937_64 rng(opt.seed);
    double worst = 0;
    for (int i = 0; i < 6; ++i) {
        const Mat2 A = random_sl2(rng, 2), B{1, i % 3, 0, 1 + i % 2};
        const cplx tau(0.1 + 0.05 * i, 1.3);
        const cplx j = double(B.c) * tau + double(B.d), Bt = (double(B.a) * tau + double(B.b)) / j;
        const cplx lhs = std::pow(j, -g.weight) * slash_eval(g, A, Bt), rhs = slash_eval(g, A * B, tau);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    r["slash_associativity"] = worst;
    r["passed"] = ok && worst < 1e-8;
    return r;
}

}  // namespace

json cyclo_json(const Cyclo& c) {
    json terms = json::array();
    for (const auto& t : c.terms()) terms.push_back(json::array({t.k, t.num, t.den}));
    const auto z = c.embed();
    return json{{"order", c.order()}, {"terms", terms}, {"re", z.real()}, {"im", z.imag()}};
}

Cyclo cyclo_from_json(const json& j) {
    const i64 order = j.at("order").get<i64>();
    Cyclo c;
    for (const auto& t : j.at("terms")) c += Cyclo::root(t.at(0).get<i64>(), order).scaled(t.at(1).get<i64>(), t.at(2).get<i64>());
    return c;
}

json rational_json(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

json criterion_json(const CriterionReport& r) {
    json f = json::array();
    for (const auto& x : r.failures)
        f.push_back(json{{"kind", x.kind}, {"sigma", mat_json(x.sigma)}, {"v", x.v}, {"w", x.w}, {"lhs", x.lhs}, {"expected", x.expected}});
    return json{{"D", r.D},
                {"N", r.N},
                {"seed", r.seed},
                {"float_mode", r.float_mode},
                {"sigmas", r.sigmas},
                {"triples_checked", r.triples_checked},
                {"translate_triples", r.translate_triples},
                {"closed_checked", r.closed_checked},
                {"kappa_checked", r.kappa_checked},
                {"float_checked", r.float_checked},
                {"extras_checked", r.extras_checked},
                {"extras_failed", r.extras_failed},
                {"wall_time", r.wall_time},
                {"failures", f},
                {"passed", r.passed()}};
}

json theta_matrix_json(const ThetaMatrix& M) {
    json entries = json::array(), exact = json::array();
    for (i64 u = 0; u < M.D; ++u) {
        json row = json::array(), erow = json::array();
        for (i64 v = 0; v < M.D; ++v) {
            const Cyclo& c = M.at(static_cast<int>(u), static_cast<int>(v));
            row.push_back(cplx_json(c.embed()));
            json terms = json::array();
            for (const auto& t : c.terms()) terms.push_back(json::array({t.k, t.num, t.den}));
            erow.push_back(json{{"order", c.order()}, {"terms", terms}});
        }
        entries.push_back(row);
        exact.push_back(erow);
    }
    return json{{"D", M.D}, {"sigma", mat_json(M.sigma)}, {"entries", entries}, {"exact", exact}};
}

json maass_table_json(const QuadField& F, i64 N, int k, const AlphaSeries& alpha, i64 bound) {
    json entries = json::array();
    const auto unit = alpha.unit.embed();
    for (const HermitianCoeffKey& key : keys_up_to(F, bound)) {
        const i64 dd = key_ddet(F, key);
        if (alpha.bound >= 0 && dd > alpha.bound) continue;
        const Rational v = maass_coeff(F, N, k, alpha, key);
        const auto z = unit * v.convert_to<double>();
        entries.push_back(json{{"ell", key.ell},
                               {"m", key.m},
                               {"t1", key.t1},
                               {"t2", key.t2},
                               {"eps", epsilon_T(key)},
                               {"ddet", dd},
                               {"value", json{{"coeff", rational_json(v)}, {"re", z.real()}, {"im", z.imag()}}}});
    }
    return json{{"D", F.D}, {"N", N}, {"k", k}, {"unit", cyclo_json(alpha.unit)}, {"entries", entries}};
}

json reps_json(const QuadField& F, i64 p, i64 N) {
    const BezoutPair bz = hecke_bezout(p, N);
    json reps = json::array();
    for (const UnitaryMat4& g : coset_reps(F, p, N)) {
        json rows = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int j = 0; j < 4; ++j) row.push_back(alg_json(g.at(i, j)));
            rows.push_back(row);
        }
        reps.push_back(rows);
    }
    json upper = json::array();
    for (const UpperCoset& u : upper_cosets(F, p)) {
        json d = json::array(), b = json::array();
        for (int i = 0; i < 4; ++i) {
            d.push_back(alg_json(u.Dm[i]));
            b.push_back(alg_json(u.Bm[i]));
        }
        upper.push_back(json{{"D", d}, {"B", b}});
    }
    return json{{"D", F.D}, {"p", p}, {"N", N}, {"xi", bz.xi}, {"lambda", bz.lambda}, {"count", reps.size()},
                {"reps", reps}, {"upper_cosets", upper}};
}

json eigen_json(const EigenData& ed) {
    json ap = json::array();
    for (const auto& [p, a] : ed.ap) {
        const auto z = a.embed();
        ap.push_back(json{{"p", p}, {"re", z.real()}, {"im", z.imag()}, {"exact", cyclo_json(a)}});
    }
    return json{{"D", ed.field.D}, {"weight", ed.weight}, {"level_m", ed.level_m}, {"ap", ap}};
}

EigenData eigen_from_json(const QuadField& F, const json& j) {
    EigenData ed;
    ed.field = F;
    ed.weight = j.at("weight").get<int>();
    ed.level_m = j.value("level_m", i64(1));
    for (const auto& e : j.at("ap")) {
        const i64 p = e.at("p").get<i64>();
        if (e.contains("exact")) {
            ed.ap[p] = cyclo_from_json(e.at("exact"));
            continue;
        }
        const double re = e.at("re").get<double>(), im = e.value("im", 0.0);
        if (re != std::round(re) || im != std::round(im))
            throw std::invalid_argument("ap entries without an exact form must be Gaussian integers");
        ed.ap[p] = Cyclo::rational(static_cast<i64>(re)) + Cyclo::root(1, 4).scaled(static_cast<i64>(im));
    }
    return ed;
}

QExpansion qexp_from_json(const QuadField& F, const json& j, i64 upto) {
    if (j.contains("eisenstein_star")) return eisenstein_star_full(F, j.at("eisenstein_star").get<int>(), upto);
    QExpansion g;
    g.weight = j.at("weight").get<int>();
    g.level = j.value("level", F.D);
    g.disc = F.D;
    if (j.value("denom", i64(1)) != 1) throw std::invalid_argument("plus forms are expansions in e[l tau]: denom must be 1");
    if (j.value("disc", F.D) != F.D) throw std::invalid_argument("disc does not match D");
    const auto& cs = j.at("coeffs");
    const std::size_t n = std::min<std::size_t>(cs.size(), static_cast<std::size_t>(upto + 1));
    g.coeffs.assign(n, std::nullopt);
    for (std::size_t l = 0; l < n; ++l) {
        const json& c = cs[l];
        if (c.is_null()) continue;
        if (c.is_number_integer())
            g.coeffs[l] = Rational(c.get<i64>());
        else if (c.is_string())
            g.coeffs[l] = Rational(c.get<std::string>());
        else
            throw std::invalid_argument("coefficients must be integers, \"p/q\" strings or null");
    }
    return g;
}

Mat2 random_sl2(std::mt19937_64& rng, int length) {
    Mat2 m;
    for (int i = 0; i < length; ++i) {
        const i64 a = static_cast<i64>(rng() % 7) - 3;
        m = m * Mat2{1, a, 0, 1} * kJ;
    }
    return m;
}

const std::vector<std::string>& check_modes() {
    static const std::vector<std::string> modes{"criterion", "theta", "salie", "gauss", "normsum",
                                                "lift",      "hecke", "ikeda", "plusform"};
    return modes;
}

json run_check(const QuadField& F, i64 N, const std::string& mode, const RunOptions& opt) {
    if (N < 1 || gcd(N, F.D) != 1) throw std::invalid_argument("N must be positive and coprime to D");
    const auto t0 = std::chrono::steady_clock::now();
    json r;
    if (mode == "criterion") {
        VerifyOptions v;
        v.seed = opt.seed;
        v.float_mode = opt.float_mode;
        v.threads = opt.threads;
        r = criterion_json(verify_criterion(F, N, v));
    } else if (mode == "theta") {
        r = check_theta(F, opt);
    } else if (mode == "salie") {
        r = check_salie();
    } else if (mode == "gauss") {
        r = check_gauss(F);
    } else if (mode == "normsum") {
        r = check_normsum(F);
    } else if (mode == "lift") {
        r = check_lift(F, N, opt);
    } else if (mode == "hecke") {
        r = check_hecke(F, N, opt);
    } else if (mode == "ikeda") {
        r = check_ikeda(F, N, opt);
    } else if (mode == "plusform") {
        r = check_plusform(F, N, opt);
    } else {
        throw std::invalid_argument("unknown mode " + mode);
    }
    r["mode"] = mode;
    r["D"] = F.D;
    r["N"] = N;
    r["seed"] = opt.seed;
    r["seconds"] = seconds_since(t0);
    return r;
}

}  // namespace hml
