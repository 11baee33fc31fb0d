#include "hml/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

namespace hml {

namespace {

struct PhiEntry {
    std::vector<i64> dense;                    // Phi_M, lowest degree first
    std::vector<std::pair<i64, i64>> tail;     // nonzero (degree, coeff) below the leading term
    i64 degree = 0;
};

// Append-only memo.  Readers take a shared lock; the first writer for a given M
// computes under the exclusive lock so each polynomial is built exactly once.
class PhiCache {
public:
    const PhiEntry& get(i64 M) {
        {
            std::shared_lock lock(mu_);
            auto it = table_.find(M);
            if (it != table_.end()) return *it->second;
        }
        std::unique_lock lock(mu_);
        return build_locked(M);
    }

private:
    const PhiEntry& build_locked(i64 M) {
        auto it = table_.find(M);
        if (it != table_.end()) return *it->second;
        // x^M - 1 divided by Phi_d for every proper divisor d.
        std::vector<i64> poly(M + 1, 0);
        poly[0] = -1;
        poly[M] = 1;
        for (i64 d : divisors(M)) {
            if (d == M) continue;
            const PhiEntry& sub = build_locked(d);
            // exact division by a monic polynomial
            std::vector<i64> q(poly.size() - sub.dense.size() + 1, 0);
            for (i64 i = static_cast<i64>(poly.size()) - 1; i >= static_cast<i64>(sub.dense.size()) - 1; --i) {
                i64 c = poly[i];
                i64 shift = i - (static_cast<i64>(sub.dense.size()) - 1);
                q[shift] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < sub.dense.size(); ++j) poly[shift + j] -= c * sub.dense[j];
            }
            poly = std::move(q);
        }
        auto entry = std::make_unique<PhiEntry>();
        entry->dense = poly;
        entry->degree = static_cast<i64>(poly.size()) - 1;
        for (i64 j = 0; j < entry->degree; ++j)
            if (poly[j] != 0) entry->tail.emplace_back(j, poly[j]);
        auto& ref = *entry;
        table_.emplace(M, std::move(entry));
        return ref;
    }

    std::shared_mutex mu_;
    std::map<i64, std::unique_ptr<PhiEntry>> table_;
};

PhiCache& phi_cache() {
    static PhiCache cache;
    return cache;
}

i64 to_i64(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("cyclotomic coefficient exceeds int64");
    return static_cast<i64>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

const std::vector<i64>& cyclotomic_polynomial(i64 M) {
    if (M < 1) throw std::domain_error("cyclotomic_polynomial: M must be positive");
    return phi_cache().get(M).dense;
}

i64 euler_phi(i64 M) {
    i64 r = M;
    for (i64 p : prime_divisors(M)) r = r / p * (p - 1);
    return r;
}

std::complex<double> e_complex(double x) {
    double t = 2.0 * std::numbers::pi * (x - std::floor(x));
    return {std::cos(t), std::sin(t)};
}

Cyclo Cyclo::rational(i64 p, i64 q) {
    if (q == 0) throw std::domain_error("zero denominator");
    std::vector<i128> buf{p};
    return from_group_ring(1, std::move(buf), q);
}

Cyclo Cyclo::root(i64 num, i64 den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i64 g = gcd(num, den);
    den /= g;
    num = mod(num / g, den);
    std::vector<i128> buf(den, 0);
    buf[num] = 1;
    return from_group_ring(den, std::move(buf), 1);
}

Cyclo Cyclo::from_group_ring(i64 M, std::vector<i128> coeffs, i64 den) {
    if (static_cast<i64>(coeffs.size()) != M) throw std::invalid_argument("group ring array must have length M");
    if (den < 0) {
        for (auto& c : coeffs) c = -c;
        den = -den;
    }
    return reduce_buffer(M, coeffs, den);
}

Cyclo Cyclo::reduce_buffer(i64 M, std::vector<i128>& buf, i64 den) {
    const PhiEntry& phi = phi_cache().get(M);
    const i64 deg = phi.degree;
    for (i64 i = M - 1; i >= deg; --i) {
        i128 c = buf[i];
        if (c == 0) continue;
        buf[i] = 0;
        const i64 shift = i - deg;
        for (auto [j, pc] : phi.tail) buf[shift + j] -= c * pc;
    }
    Cyclo out;
    out.M_ = M;
    out.den_ = den;
    // common factor of numerators and denominator
    i128 g = den;
    bool any = false;
    for (i64 i = 0; i < deg; ++i)
        if (buf[i] != 0) {
            any = true;
            g = gcd128(g, buf[i]);
        }
    if (!any) return Cyclo{};
    out.den_ = to_i64(den / g);
    out.num_.resize(deg);
    for (i64 i = 0; i < deg; ++i) out.num_[i] = to_i64(buf[i] / g);
    out.normalize();
    return out;
}

std::vector<i128> Cyclo::lift_to(i64 M) const {
    std::vector<i128> buf(M, 0);
    const i64 step = M / M_;
    for (std::size_t k = 0; k < num_.size(); ++k)
        if (num_[k]) buf[static_cast<i64>(k) * step % M] += num_[k];
    return buf;
}

bool Cyclo::try_descend(i64 p) {
    const i64 Mp = M_ / p;
    if (Mp % p == 0) {
        // Phi_M(x) = Phi_{M/p}(x^p): the subfield is spanned by the powers divisible by p
        for (std::size_t k = 0; k < num_.size(); ++k)
            if (k % p != 0 && num_[k] != 0) return false;
        std::vector<i64> nn(num_.size() / p);
        for (std::size_t k = 0; k < nn.size(); ++k) nn[k] = num_[k * p];
        num_ = std::move(nn);
        M_ = Mp;
        return true;
    }
    // p exactly divides M: average over the Galois group of Q(zeta_M)/Q(zeta_{M/p}).
    // e[k/M] = e[k1/p] e[k2/M'] and the trace of e[k1/p] is p-1 or -1.
    const i64 inv_Mp = inv_mod(Mp, p), inv_p = inv_mod(p, Mp);
    std::vector<i128> buf(Mp, 0);
    for (std::size_t k = 0; k < num_.size(); ++k) {
        if (!num_[k]) continue;
        i64 k1 = mod(static_cast<i64>(k) * inv_Mp, p);
        i64 k2 = Mp == 1 ? 0 : mod(static_cast<i64>(k) * inv_p, Mp);
        buf[k2] += static_cast<i128>(num_[k]) * (k1 == 0 ? p - 1 : -1);
    }
    // candidate with denominator den*(p-1), reduced modulo Phi_{M'} (no recursion into normalize)
    const PhiEntry& phi = phi_cache().get(Mp);
    for (i64 i = Mp - 1; i >= phi.degree; --i) {
        i128 c = buf[i];
        if (!c) continue;
        buf[i] = 0;
        for (auto [j, pc] : phi.tail) buf[i - phi.degree + j] -= c * pc;
    }
    // lift back: zeta_{M'} = zeta_M^p, then compare with this * (p-1)
    std::vector<i128> back(M_, 0);
    for (i64 i = 0; i < phi.degree; ++i)
        if (buf[i]) back[i * p % M_] += buf[i];
    const PhiEntry& big = phi_cache().get(M_);
    for (i64 i = M_ - 1; i >= big.degree; --i) {
        i128 c = back[i];
        if (!c) continue;
        back[i] = 0;
        for (auto [j, pc] : big.tail) back[i - big.degree + j] -= c * pc;
    }
    for (std::size_t k = 0; k < num_.size(); ++k)
        if (back[k] != static_cast<i128>(num_[k]) * (p - 1)) return false;
    i128 g = static_cast<i128>(den_) * (p - 1);
    for (i64 i = 0; i < phi.degree; ++i)
        if (buf[i]) g = gcd128(g, buf[i]);
    num_.assign(phi.degree, 0);
    for (i64 i = 0; i < phi.degree; ++i) num_[i] = to_i64(buf[i] / g);
    den_ = to_i64(static_cast<i128>(den_) * (p - 1) / g);
    M_ = Mp;
    return true;
}

void Cyclo::normalize() {
    if (num_.empty()) {
        M_ = 1;
        den_ = 1;
        return;
    }
    bool progress = true;
    while (progress && M_ > 1) {
        progress = false;
        for (i64 p : prime_divisors(M_))
            if (try_descend(p)) {
                progress = true;
                break;
            }
    }
}

std::complex<double> Cyclo::embed() const {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < num_.size(); ++k)
        if (num_[k]) s += static_cast<double>(num_[k]) * e_complex(static_cast<double>(k) / static_cast<double>(M_));
    return s / static_cast<double>(den_);
}

std::vector<Cyclo::Term> Cyclo::terms() const {
    std::vector<Term> out;
    for (std::size_t k = 0; k < num_.size(); ++k) {
        if (!num_[k]) continue;
        i64 g = gcd(num_[k], den_);
        out.push_back({static_cast<i64>(k), num_[k] / g, den_ / g});
    }
    return out;
}

std::string Cyclo::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms()) {
        if (!first) os << " + ";
        first = false;
        os << t.num;
        if (t.den != 1) os << "/" << t.den;
        if (t.k != 0) os << "*e[" << t.k << "/" << M_ << "]";
    }
    return os.str();
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    const i64 M = lcm(M_, o.M_);
    const i64 den = lcm(den_, o.den_);
    auto a = lift_to(M);
    auto b = o.lift_to(M);
    const i64 fa = den / den_, fb = den / o.den_;
    for (i64 i = 0; i < M; ++i) a[i] = a[i] * fa + b[i] * fb;
    return reduce_buffer(M, a, den);
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    if (is_zero() || o.is_zero()) return Cyclo{};
    const i64 M = lcm(M_, o.M_);
    const i64 sa = M / M_, sb = M / o.M_;
    std::vector<i128> buf(M, 0);
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (!num_[i]) continue;
        const i64 ei = static_cast<i64>(i) * sa;
        for (std::size_t j = 0; j < o.num_.size(); ++j) {
            if (!o.num_[j]) continue;
            i64 k = ei + static_cast<i64>(j) * sb;
            if (k >= M) k -= M;
            buf[k] += static_cast<i128>(num_[i]) * o.num_[j];
        }
    }
    return reduce_buffer(M, buf, checked_mul(den_, o.den_));
}

Cyclo Cyclo::scaled(i64 p, i64 q) const {
    if (q == 0) throw std::domain_error("zero denominator");
    if (p == 0 || is_zero()) return Cyclo{};
    if (q < 0) {
        p = -p;
        q = -q;
    }
    std::vector<i128> buf(M_, 0);
    for (std::size_t k = 0; k < num_.size(); ++k) buf[k] = static_cast<i128>(num_[k]) * p;
    return reduce_buffer(M_, buf, checked_mul(den_, q));
}

Cyclo Cyclo::conj() const {
    if (is_zero()) return *this;
    std::vector<i128> buf(M_, 0);
    for (std::size_t k = 0; k < num_.size(); ++k)
        if (num_[k]) buf[mod(-static_cast<i64>(k), M_)] += num_[k];
    return reduce_buffer(M_, buf, den_);
}

}  // namespace hml
