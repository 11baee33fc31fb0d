#include "hml/thetamat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hml {

namespace {

// 4D * (a|g|^2 - Tr(g conj v) + d|v|^2) for points in (R, S) coordinates
i64 exponent_numerator(i64 D, i64 a, i64 d, const KPoint& g, const KPoint& v) {
    i64 gg = checked_add(checked_mul(D, checked_mul(g.R, g.R)), checked_mul(g.S, g.S));
    i64 gv = checked_add(checked_mul(D, checked_mul(g.R, v.R)), checked_mul(g.S, v.S));
    i64 vv = checked_add(checked_mul(D, checked_mul(v.R, v.R)), checked_mul(v.S, v.S));
    return checked_add(checked_add(checked_mul(a, gg), -2 * gv), checked_mul(d, vv));
}

template <class S>
S one_over_i_sqrtD(const QuadField& F) {
    // 1/(i sqrt D) = -i/sqrt(D) = -G(chi_K)/D
    return Ring<S>::scale(Ring<S>::gauss(chi_component(F, F.D), 1), -1, F.D);
}

}  // namespace

template <class S>
ThetaMatrixT<S> theta_matrix_t(const QuadField& F, const Mat2& s) {
    if (s.det() != 1) throw std::invalid_argument("theta_matrix: det(sigma) must be 1");
    const i64 D = F.D;
    auto cls = classes(F);
    ThetaMatrixT<S> M;
    M.D = D;
    M.sigma = s;
    M.entries.assign(static_cast<std::size_t>(D * D), Ring<S>::zero());
    if (s.c == 0) {
        for (auto& v : cls) {
            int u = class_scale(F, v, s.a);
            // e[ab|u|^2] with |u|^2 = dnorm/D mod 1
            M.at(u, v.index) = Ring<S>::scale(Ring<S>::root(s.a * s.b * cls[u].dnorm, D), s.a);
        }
        return M;
    }
    const i64 ac = s.c < 0 ? -s.c : s.c;
    const i64 sgn = s.c < 0 ? -1 : 1;
    const i64 L = 4 * D * ac;
    const S pref = Ring<S>::scale(one_over_i_sqrtD<S>(F), 1, s.c);
    std::vector<KPoint> shifts;
    shifts.reserve(static_cast<std::size_t>(ac * ac));
    for (i64 al = 0; al < ac; ++al)
        for (i64 be = 0; be < ac; ++be) shifts.push_back(to_kpoint(F, {al, be}));
    std::vector<i128> hist(L);
    for (auto& u : cls) {
        KPoint pu = class_point(F, u);
        for (auto& v : cls) {
            KPoint pv = class_point(F, v);
            std::fill(hist.begin(), hist.end(), 0);
            for (auto& sh : shifts) {
                KPoint g{pu.R + sh.R, pu.S + sh.S};
                hist[mod(sgn * mod(exponent_numerator(D, s.a, s.d, g, pv), L), L)] += 1;
            }
            M.at(u.index, v.index) = Ring<S>::from_group_ring(L, hist) * pref;
        }
    }
    return M;
}

template <class S>
ThetaMatrixT<S> theta_matrix_closed_t(const QuadField& F, const Mat2& s) {
    if (s.det() != 1) throw std::invalid_argument("theta_matrix_closed: det(sigma) must be 1");
    if (s.c <= 0 || F.D % s.c != 0) throw std::invalid_argument("theta_matrix_closed: need c | D and c > 0");
    const i64 D = F.D, a = s.a, b = s.b, c = s.c, d = s.d;
    auto cls = classes(F);
    ThetaMatrixT<S> M;
    M.D = D;
    M.sigma = s;
    M.entries.assign(static_cast<std::size_t>(D * D), Ring<S>::zero());
    const S pref = one_over_i_sqrtD<S>(F);
    if (F.e == 0) {
        const S G = Ring<S>::gauss(chi_component(F, c), a);
        for (auto& u : cls)
            for (auto& v : cls) {
                const i64 x = u.x2, y = v.x2;
                if (mod(x - d * y, c) != 0) continue;
                M.at(u.index, v.index) = pref * Ring<S>::root(a * x * x - 2 * x * y + d * y * y, D * c) * G;
            }
        return M;
    }
    const i64 f = val(2, c), cp = c >> f;
    const S G = Ring<S>::gauss(chi_component(F, cp), a * (i64(1) << f));
    const i64 ac = a * cp;
    for (auto& u : cls)
        for (auto& v : cls) {
            const i64 x1 = u.x1, x2 = u.x2, y1 = v.x1, y2 = v.x2;
            if (mod(x2 - d * y2, cp) != 0) continue;
            const i64 Q1 = a * x1 * x1 - 2 * x1 * y1 + d * y1 * y1;
            const i64 Q2 = a * x2 * x2 - 2 * x2 * y2 + d * y2 * y2;
            S t = Ring<S>::root(Q2, D * c);
            if (f == 0) {
                t = t * Ring<S>::root(c * Q1, 4);
            } else if (f == 1) {
                if (mod(x1 - d * y1, 2) != 1 || mod(x2 - d * y2 - D / 4, 2) != 0) continue;
                t = Ring<S>::scale(t * Ring<S>::root(2 * d * b * y1 * y1 + 4 * b * y1 + ac, 8), 2);
            } else {
                // delta mod 2^{f-1}; with f = 2 this is a parity condition
                if (mod(x1 - d * y1, 2) != 0 || mod(x2 - d * y2, i64(1) << (f - 1)) != 0) continue;
                const i64 m = i64(1) << f;
                t = t * Ring<S>::root(d * b * y1 * y1, 4) *
                    (Ring<S>::rat(1) + Ring<S>::root(ac * (D / 4) + ac * (x2 - d * y2), m));
                t = t * (f == 2 ? Ring<S>::rat(1) + Ring<S>::root(ac, m) : Ring<S>::root(ac, m));
                t = Ring<S>::scale(t, i64(1) << (f - 2));
            }
            M.at(u.index, v.index) = t * G * pref;
        }
    return M;
}

template <class S>
ThetaMatrixT<S> theta_product(const ThetaMatrixT<S>& x, const ThetaMatrixT<S>& y) {
    ThetaMatrixT<S> r;
    r.D = x.D;
    r.sigma = x.sigma * y.sigma;
    r.entries.assign(x.entries.size(), Ring<S>::zero());
    const int D = static_cast<int>(x.D);
    for (int i = 0; i < D; ++i)
        for (int k = 0; k < D; ++k) {
            const S& xik = x.at(i, k);
            if (Ring<S>::is_zero(xik)) continue;
            for (int j = 0; j < D; ++j) {
                const S& ykj = y.at(k, j);
                if (Ring<S>::is_zero(ykj)) continue;
                r.at(i, j) += xik * ykj;
            }
        }
    return r;
}

template <class S>
bool theta_equal(const ThetaMatrixT<S>& x, const ThetaMatrixT<S>& y) {
    if (x.D != y.D) return false;
    for (std::size_t i = 0; i < x.entries.size(); ++i)
        if (!Ring<S>::equal(x.entries[i], y.entries[i])) return false;
    return true;
}

template ThetaMatrixT<Cyclo> theta_matrix_t<Cyclo>(const QuadField&, const Mat2&);
template ThetaMatrixT<cplx> theta_matrix_t<cplx>(const QuadField&, const Mat2&);
template ThetaMatrixT<Cyclo> theta_matrix_closed_t<Cyclo>(const QuadField&, const Mat2&);
template ThetaMatrixT<cplx> theta_matrix_closed_t<cplx>(const QuadField&, const Mat2&);
template ThetaMatrixT<Cyclo> theta_product<Cyclo>(const ThetaMatrixT<Cyclo>&, const ThetaMatrixT<Cyclo>&);
template ThetaMatrixT<cplx> theta_product<cplx>(const ThetaMatrixT<cplx>&, const ThetaMatrixT<cplx>&);
template bool theta_equal<Cyclo>(const ThetaMatrixT<Cyclo>&, const ThetaMatrixT<Cyclo>&);
template bool theta_equal<cplx>(const ThetaMatrixT<cplx>&, const ThetaMatrixT<cplx>&);

ThetaMatrix theta_matrix(const QuadField& F, const Mat2& s) { return theta_matrix_t<Cyclo>(F, s); }
ThetaMatrixF theta_matrix_float(const QuadField& F, const Mat2& s) { return theta_matrix_t<cplx>(F, s); }
ThetaMatrix theta_matrix_closed(const QuadField& F, const Mat2& s) { return theta_matrix_closed_t<Cyclo>(F, s); }

ThetaValue theta_eval(const QuadField& F, const DiffClass& u, cplx tau, cplx z, cplx w, int radius) {
    if (tau.imag() <= 0) throw std::invalid_argument("theta_eval: Im(tau) must be positive");
    const double sD = std::sqrt(double(F.D));
    const cplx twopii(0, 2 * std::numbers::pi);
    KPoint pu = class_point(F, u);
    cplx sum = 0;
    double tail = 0;
    for (i64 al = -radius; al <= radius; ++al)
        for (i64 be = -radius; be <= radius; ++be) {
            KPoint g = to_kpoint(F, {al, be});
            double re = (pu.R + g.R) / 2.0, im = (pu.S + g.S) / (2.0 * sD);
            cplx aa(re, im);
            double n2 = re * re + im * im;
            cplx term = std::exp(twopii * (n2 * tau + std::conj(aa) * z + aa * w));
            sum += term;
            if (std::max(std::abs(al), std::abs(be)) == radius) tail = std::max(tail, std::abs(term));
        }
    // the omitted shells decay at least geometrically once the Gaussian dominates;
    // eight times the perimeter maximum times the shell count is a generous envelope
    return {sum, tail * 8.0 * (2 * radius + 1)};
}

double theta_functional_residual(const QuadField& F, const Mat2& s, cplx tau, cplx z, cplx w, int radius) {
    auto cls = classes(F);
    ThetaMatrixF M = theta_matrix_float(F, s);
    const cplx j = double(s.c) * tau + double(s.d);
    const cplx stau = (double(s.a) * tau + double(s.b)) / j;
    const cplx twopii(0, 2 * std::numbers::pi);
    std::vector<cplx> base(cls.size());
    for (auto& v : cls) base[v.index] = theta_eval(F, v, tau, z, w, radius).value;
    double worst = 0;
    for (auto& u : cls) {
        cplx lhs = std::exp(-twopii * double(s.c) * z * w / j) / j * theta_eval(F, u, stau, z / j, w / j, radius).value;
        cplx rhs = 0;
        for (auto& v : cls) rhs += M.at(u.index, v.index) * base[v.index];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace hml
