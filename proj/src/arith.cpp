#include "hml/arith.hpp"

#include <algorithm>
#include <cstdlib>

namespace hml {

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
    return r;
}

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
    return r;
}

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / gcd(a, b), b < 0 ? -b : b);
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 val(i64 p, i64 n) {
    if (n == 0) throw std::domain_error("valuation of zero");
    i64 v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

Factorization factorize(i64 n) {
    if (n < 1) throw std::domain_error("factorize expects n >= 1");
    Factorization f;
    f.value = n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> ps;
    for (auto& [p, e] : factorize(n < 0 ? -n : n).factors) ps.push_back(p);
    return ps;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto& [p, e] : factorize(n).factors) {
        std::size_t base = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

i64 egcd(i64 a, i64 b, i64& x, i64& y) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

i64 inv_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 x, y;
    if (egcd(mod(a, m), m, x, y) != 1) throw std::domain_error("inv_mod: not invertible");
    return mod(x, m);
}

int kronecker(i64 a, i64 n) {
    if (a == 0 && n == 0) throw std::domain_error("kronecker(0, 0) is undefined");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // factor out powers of two from n
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        i64 r8 = mod(a, 8);
        if (r8 == 3 || r8 == 5) result = -result;
    }
    // now n odd positive: Jacobi symbol (a|n)
    a = mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r8 = n % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

i64 crt(const std::vector<std::pair<i64, i64>>& residues) {
    i64 x = 0, M = 1;
    for (auto [r, m] : residues) {
        if (m < 1) throw std::domain_error("crt: modulus must be positive");
        r = mod(r, m);
        i64 s, t;
        i64 g = egcd(M, m, s, t);
        if (mod(r - x, g) != 0) throw std::domain_error("crt: inconsistent congruences");
        i64 step = m / g;
        // x + M*k = r (mod m)  =>  k = (r-x)/g * s (mod m/g)
        i64 k = static_cast<i64>(mod(static_cast<i64>((static_cast<i128>((r - x) / g) * s) % step), step));
        i64 newM = checked_mul(M, step);
        x = static_cast<i64>(mod(static_cast<i64>((static_cast<i128>(x) + static_cast<i128>(M) * k) % newM), newM));
        M = newM;
    }
    return x;
}

i64 component(i64 D, i64 mu) {
    i64 r = 1;
    for (i64 p : prime_divisors(mu))
        if (D % p == 0) r *= ipow(p, static_cast<int>(val(p, D)));
    return r;
}

}  // namespace hml
