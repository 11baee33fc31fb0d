#include "hml/hecke.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hml {

namespace {

using Block = std::array<AlgInt, 4>;  // row-major 2x2

Rational ppow(i64 p, int e) {
    Rational r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= p;
    return e < 0 ? Rational(1) / r : r;
}

Block block(const UnitaryMat4& g, int bi, int bj) {
    return {g.at(2 * bi, 2 * bj), g.at(2 * bi, 2 * bj + 1), g.at(2 * bi + 1, 2 * bj), g.at(2 * bi + 1, 2 * bj + 1)};
}

Block bmul(const QuadField& F, const Block& x, const Block& y) {
    Block r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[2 * i + j] = alg_add(alg_mul(F, x[2 * i], y[j]), alg_mul(F, x[2 * i + 1], y[2 + j]));
    return r;
}

Block bstar(const QuadField& F, const Block& x) {
    return {alg_conj(F, x[0]), alg_conj(F, x[2]), alg_conj(F, x[1]), alg_conj(F, x[3])};
}

bool divisible(const AlgInt& x, i64 n) { return mod(x.a, n) == 0 && mod(x.b, n) == 0; }

// x + y sqrt(-D) with rational x, y.
struct KE {
    Rational x = 0, y = 0;
};

KE ke_mul(const QuadField& F, const KE& u, const KE& v) { return {u.x * v.x - F.D * u.y * v.y, u.x * v.y + u.y * v.x}; }
KE ke_add(const KE& u, const KE& v) { return {u.x + v.x, u.y + v.y}; }
KE ke_conj(const KE& u) { return {u.x, -u.y}; }

KE ke_from_alg(const QuadField& F, const AlgInt& a) {
    if (F.omega_half) return {Rational(a.a) + Rational(a.b, 2), Rational(a.b, 2)};
    return {Rational(a.a), Rational(a.b, 2)};
}

// t = (i / sqrt D) alpha = alpha sqrt(-D) / D
KE ke_from_t(const QuadField& F, i64 t1, i64 t2) {
    KE a = ke_from_alg(F, AlgInt{t1, t2});
    return {-a.y, a.x / F.D};
}

bool is_int(const Rational& r) { return denominator(r) == 1; }
i64 to_i64(const Rational& r) { return numerator(r).convert_to<i64>(); }

// Coordinates (t1, t2) of t in the inverse different, if it lies there.
std::optional<std::pair<i64, i64>> t_coords(const QuadField& F, const KE& t) {
    const Rational X = t.y * F.D, Y = -t.x;  // alpha = -sqrt(-D) t
    const Rational b = 2 * Y, a = F.omega_half ? X - Y : X;
    if (!is_int(a) || !is_int(b)) return std::nullopt;
    return std::make_pair(to_i64(a), to_i64(b));
}

using KMat = std::array<KE, 4>;

KMat kmul(const QuadField& F, const KMat& x, const KMat& y) {
    KMat r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[2 * i + j] = ke_add(ke_mul(F, x[2 * i], y[j]), ke_mul(F, x[2 * i + 1], y[2 + j]));
    return r;
}

bool kequal(const KMat& x, const KMat& y) {
    for (int i = 0; i < 4; ++i)
        if (x[i].x != y[i].x || x[i].y != y[i].y) return false;
    return true;
}

KMat kstar(const KMat& x) { return {ke_conj(x[0]), ke_conj(x[2]), ke_conj(x[1]), ke_conj(x[3])}; }

KMat kfrom(const QuadField& F, const Block& b) {
    return {ke_from_alg(F, b[0]), ke_from_alg(F, b[1]), ke_from_alg(F, b[2]), ke_from_alg(F, b[3])};
}

Rational cyclo_to_rational(const Cyclo& c) {
    if (c.is_zero()) return 0;
    if (!c.is_rational()) throw std::logic_error("expected a rational phase sum, got " + c.to_string());
    const auto t = c.terms();
    return Rational(t.at(0).num, t.at(0).den);
}

std::vector<AlgInt> residues_mod(i64 p) {
    std::vector<AlgInt> r;
    for (i64 a = 0; a < p; ++a)
        for (i64 b = 0; b < p; ++b) r.push_back(AlgInt{a, b});
    return r;
}

AlgInt ai(i64 a) { return AlgInt{a, 0}; }

void require_inert(const QuadField& F, i64 p, i64 N) {
    if (!is_inert(F, p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not an inert prime");
    if (N < 1 || gcd(p, N) != 1) throw std::invalid_argument("p must not divide N");
}

}  // namespace

UnitaryMat4 mat4_mul(const QuadField& F, const UnitaryMat4& x, const UnitaryMat4& y) {
    UnitaryMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            AlgInt s;
            for (int k = 0; k < 4; ++k) s = alg_add(s, alg_mul(F, x.at(i, k), y.at(k, j)));
            r.at(i, j) = s;
        }
    return r;
}

UnitaryMat4 mat4_conj_transpose(const QuadField& F, const UnitaryMat4& x) {
    UnitaryMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = alg_conj(F, x.at(j, i));
    return r;
}

std::optional<i64> similitude(const QuadField& F, const UnitaryMat4& g) {
    UnitaryMat4 J;
    J.at(0, 2) = ai(-1);
    J.at(1, 3) = ai(-1);
    J.at(2, 0) = ai(1);
    J.at(3, 1) = ai(1);
    const UnitaryMat4 h = mat4_mul(F, mat4_conj_transpose(F, g), mat4_mul(F, J, g));
    const AlgInt mu = h.at(2, 0);
    if (mu.b != 0) return std::nullopt;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            AlgInt want = J.at(i, j);
            want = AlgInt{want.a * mu.a, 0};
            if (!(h.at(i, j) == want)) return std::nullopt;
        }
    return mu.a;
}

UnitaryMat4 unitary_inverse(const QuadField& F, const UnitaryMat4& g) {
    const Block A = block(g, 0, 0), B = block(g, 0, 1), C = block(g, 1, 0), D = block(g, 1, 1);
    const Block blocks[2][2] = {{bstar(F, D), bstar(F, B)}, {bstar(F, C), bstar(F, A)}};
    const int sign[2][2] = {{1, -1}, {-1, 1}};
    UnitaryMat4 r;
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const AlgInt v = blocks[bi][bj][2 * i + j];
                    r.at(2 * bi + i, 2 * bj + j) = sign[bi][bj] > 0 ? v : AlgInt{-v.a, -v.b};
                }
    return r;
}

bool is_inert(const QuadField& F, i64 p) { return is_prime(p) && chi(F, p) == -1; }

BezoutPair hecke_bezout(i64 p, i64 N) {
    i64 xi = inv_mod(p, N);
    if (xi == 0) xi = N;
    return {xi, (p * xi - 1) / N};
}

std::vector<UnitaryMat4> coset_reps(const QuadField& F, i64 p, i64 N) {
    require_inert(F, p, N);
    const auto [xi, lam] = hecke_bezout(p, N);
    const std::vector<AlgInt> res = residues_mod(p);
    std::vector<UnitaryMat4> out;
    auto make = [](std::initializer_list<AlgInt> v) {
        UnitaryMat4 m;
        std::size_t i = 0;
        for (const AlgInt& x : v) m.e[i++] = x;
        return m;
    };
    const AlgInt O = ai(0), I = ai(1), Nn = ai(N), XP = ai(xi * p), L = ai(lam);
    out.push_back(make({XP, O, L, O, O, XP, O, L, Nn, O, I, O, O, Nn, O, I}));
    for (i64 g = 1; g <= p; ++g)
        for (i64 d = 1; d <= p; ++d)
            for (const AlgInt& b : res) {
                const AlgInt bc = alg_conj(F, b);
                out.push_back(make({I, O, ai(g), b, O, I, bc, ai(d), Nn, O, ai(1 + N * g), alg_mul(F, Nn, b), O, Nn,
                                    alg_mul(F, Nn, bc), ai(1 + N * d)}));
            }
    for (i64 g = 1; g <= p; ++g) out.push_back(make({I, O, ai(g), O, O, XP, O, L, O, O, I, O, O, Nn, O, I}));
    for (i64 g = 1; g <= p; ++g)
        for (const AlgInt& d : res) {
            const AlgInt dc = alg_conj(F, d);
            out.push_back(make({XP, O, L, alg_mul(F, L, d), AlgInt{-dc.a, -dc.b}, I, O, ai(g), Nn, O, I, d, O, O, O, I}));
        }
    return out;
}

bool same_coset(const QuadField& F, i64 p, const UnitaryMat4& rho1, const UnitaryMat4& rho2) {
    const Block A1 = block(rho1, 0, 0), B1 = block(rho1, 0, 1);
    const Block A2 = block(rho2, 0, 0), B2 = block(rho2, 0, 1);
    const Block x = bmul(F, A1, bstar(F, B2)), y = bmul(F, B1, bstar(F, A2));
    for (int i = 0; i < 4; ++i)
        if (!divisible(alg_sub(y[i], x[i]), p)) return false;
    return true;
}

RepsReport check_reps(const QuadField& F, i64 p, i64 N, unsigned threads) {
    const std::vector<UnitaryMat4> reps = coset_reps(F, p, N);
    RepsReport rep;
    rep.count = static_cast<i64>(reps.size());
    rep.expected = 1 + p + p * p * p + p * p * p * p;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto mu = similitude(F, reps[i]);
        if (!mu || *mu != 1) {
            if (rep.all_unitary) rep.witness = "representative " + std::to_string(i) + " is not in U(2,2)";
            rep.all_unitary = false;
        }
        const Block C = block(reps[i], 1, 0);
        for (const AlgInt& c : C)
            if (!divisible(c, N)) {
                if (rep.all_level) rep.witness = "representative " + std::to_string(i) + " has C-block not divisible by N";
                rep.all_level = false;
            }
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    // precompute the blocks used by the pairwise test
    std::vector<Block> A(reps.size()), B(reps.size()), As(reps.size()), Bs(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        A[i] = block(reps[i], 0, 0);
        B[i] = block(reps[i], 0, 1);
        As[i] = bstar(F, A[i]);
        Bs[i] = bstar(F, B[i]);
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::optional<std::pair<std::size_t, std::size_t>> clash;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < reps.size();) {
            for (std::size_t j = i + 1; j < reps.size(); ++j) {
                const Block x = bmul(F, A[i], Bs[j]), y = bmul(F, B[i], As[j]);
                bool same = true;
                for (int t = 0; t < 4 && same; ++t) same = divisible(alg_sub(y[t], x[t]), p);
                if (same) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!clash || std::make_pair(i, j) < *clash) clash = std::make_pair(i, j);
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (clash) {
        rep.distinct = false;
        if (rep.witness.empty())
            rep.witness = "representatives " + std::to_string(clash->first) + " and " + std::to_string(clash->second) +
                          " lie in the same coset";
    }
    return rep;
}

bool verify_reps_distinct(const QuadField& F, i64 p, i64 N) { return check_reps(F, p, N).distinct; }

std::vector<UpperCoset> upper_cosets(const QuadField& F, i64 p) {
    if (!is_inert(F, p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not an inert prime");
    const std::vector<AlgInt> res = residues_mod(p);
    const AlgInt O = ai(0), I = ai(1), P = ai(p);
    std::vector<UpperCoset> out;
    out.push_back({{I, O, O, I}, {O, O, O, O}});
    for (i64 g = 1; g <= p; ++g)
        for (i64 d = 1; d <= p; ++d)
            for (const AlgInt& b : res) out.push_back({{P, O, O, P}, {ai(g), b, alg_conj(F, b), ai(d)}});
    for (i64 g = 1; g <= p; ++g) out.push_back({{P, O, O, I}, {ai(g), O, O, O}});
    for (const AlgInt& d : res)
        for (i64 g = 1; g <= p; ++g) out.push_back({{I, d, O, P}, {O, O, O, ai(g)}});
    return out;
}

BetaTable beta_Tp(const BetaTable& beta, i64 p, const QuadField& F) {
    require_inert(F, p, beta.N);
    BetaTable g;
    g.k = beta.k;
    g.N = beta.N;
    const int k = beta.k;
    const Rational c42k = ppow(p, 4 - 2 * k), c1k = ppow(p, 1 - k), c3k = ppow(p, 3 - k);
    g.fn = [beta, p, c42k, c1k, c3k](i64 u, i64 r) {
        const i64 v = val(p, u);
        const i64 q = u / ipow(p, static_cast<int>(v));
        auto bF = [&](i64 e, i64 rr) -> Rational {
            if (e < 0) return 0;
            return beta(checked_mul(ipow(p, static_cast<int>(e)), q), rr);
        };
        Rational s = bF(v - 1, r) + c42k * bF(v + 1, r);
        const i64 p2 = p * p;
        if (r % p2 == 0)
            s += c1k * bF(v + 1, r / p2) + c3k * bF(v - 1, checked_mul(p2, r));
        else if (r % p == 0)
            s += c1k * bF(v, r) + c3k * bF(v - 1, checked_mul(p2, r));
        else
            s += c1k * (p + 1) * bF(v, r) + c1k * (p2 - p) * bF(v - 1, checked_mul(p2, r));
        return s;
    };
    return g;
}

Rational hecke_coeff_direct(const QuadField& F, i64 p, int k, const std::function<Rational(const HermitianCoeffKey&)>& cF,
                            const HermitianCoeffKey& T) {
    // Cosets sharing D share T' = D T D* / p; only the phase e[Tr(T D* B) / p] depends on B.
    struct Group {
        KMat D, Ds;
        i64 det = 0;
        std::vector<KMat> DsB;
    };
    std::vector<Group> groups;
    for (const UpperCoset& uc : upper_cosets(F, p)) {
        const KMat D = kfrom(F, uc.Dm);
        if (groups.empty() || !kequal(groups.back().D, D)) {
            Group g;
            g.D = D;
            g.Ds = kstar(g.D);
            const KE det = ke_add(ke_mul(F, g.D[0], g.D[3]), ke_mul(F, KE{-g.D[1].x, -g.D[1].y}, g.D[2]));
            if (det.y != 0 || !is_int(det.x)) throw std::logic_error("hecke_coeff_direct: det(D) is not a rational integer");
            g.det = to_i64(det.x);
            groups.push_back(std::move(g));
        }
        groups.back().DsB.push_back(kmul(F, groups.back().Ds, kfrom(F, uc.Bm)));
    }
    const KE t = ke_from_t(F, T.t1, T.t2);
    const KMat TM{KE{Rational(T.ell), 0}, t, ke_conj(t), KE{Rational(T.m), 0}};
    Rational total = 0;
    for (const Group& g : groups) {
        const KMat Tp = kmul(F, kmul(F, g.D, TM), g.Ds);
        // T' must lie in S_2, else c_F(T') = 0
        const Rational l2 = Tp[0].x / p, m2 = Tp[3].x / p;
        if (Tp[0].y != 0 || Tp[3].y != 0 || !is_int(l2) || !is_int(m2)) continue;
        const auto tc = t_coords(F, KE{Tp[1].x / p, Tp[1].y / p});
        if (!tc) continue;
        Cyclo phase;
        for (const KMat& X : g.DsB) {
            KE tr{0, 0};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) tr = ke_add(tr, ke_mul(F, TM[2 * i + j], X[2 * j + i]));
            if (tr.y != 0) throw std::logic_error("hecke_coeff_direct: Tr(T D* B) is not rational");
            const Rational ph = tr.x / p;
            phase += Cyclo::root(to_i64(numerator(ph)), to_i64(denominator(ph)));
        }
        const Rational w = cyclo_to_rational(phase);
        if (w == 0) continue;
        total += cF(HermitianCoeffKey{to_i64(l2), to_i64(m2), tc->first, tc->second}) * w / ppow(g.det, k);
    }
    return total;
}

BetaCheck verify_beta_conditions(const BetaTable& beta, i64 umax, i64 dmax, i64 N) {
    BetaCheck rep;
    auto fail = [&](const std::string& s) {
        if (rep.ok) rep.witness = s;
        rep.ok = false;
    };
    const int k = beta.k;
    for (i64 q = 1; q <= umax; ++q) {
        for (i64 p = 2; p * q <= umax; ++p) {
            if (!is_prime(p) || (N * q) % p == 0) continue;
            const Rational pk = ppow(p, k - 1);
            i64 pv = p;
            for (int v = 1; pv * q <= umax; ++v, pv *= p) {
                for (i64 d = 0; d <= dmax; ++d) {
                    const Rational lhs = beta(pv * q, d) - pk * beta(pv / p * q, d);
                    const Rational rhs = beta(q, checked_mul(d, pv * pv));
                    ++rep.checked;
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "p-recursion p=" << p << " q=" << q << " v=" << v << " d=" << d << ": " << lhs << " != " << rhs;
                        fail(os.str());
                    }
                }
            }
        }
    }
    for (i64 u = 2; u <= umax; ++u) {
        bool ok = true;
        for (i64 p : prime_divisors(u)) ok = ok && N % p == 0;
        if (!ok) continue;
        for (i64 d = 0; d <= dmax; ++d) {
            const Rational lhs = beta(u, d), rhs = beta(1, checked_mul(d, u * u));
            ++rep.checked;
            if (lhs != rhs) {
                std::ostringstream os;
                os << "level condition u=" << u << " d=" << d << ": " << lhs << " != " << rhs;
                fail(os.str());
            }
        }
    }
    return rep;
}

}  // namespace hml
