#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hml {

using i64 = std::int64_t;
using i128 = __int128;

struct Factorization {
    i64 value = 1;
    std::vector<std::pair<i64, int>> factors;  // (prime, exponent), primes increasing
};

Factorization factorize(i64 n);
std::vector<i64> prime_divisors(i64 n);
std::vector<i64> divisors(i64 n);  // ascending, n >= 1
bool is_prime(i64 n);

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
i64 mod(i64 a, i64 m);  // representative in [0, m)
i64 val(i64 p, i64 n);  // p-adic valuation, n != 0
i64 ipow(i64 b, int e);

// Returns g = gcd(a,b) >= 0 and sets x, y with a*x + b*y = g.
i64 egcd(i64 a, i64 b, i64& x, i64& y);
// Inverse of a modulo m (m >= 1); throws if gcd(a, m) != 1.  inv_mod(a, 1) = 0.
i64 inv_mod(i64 a, i64 m);

// Kronecker symbol (a|n).  Throws std::domain_error for (0, 0).
int kronecker(i64 a, i64 n);

// Least non-negative x with x = r_i mod m_i for all i.  Non-coprime moduli are
// accepted when the residues are consistent; otherwise std::domain_error.
i64 crt(const std::vector<std::pair<i64, i64>>& residues);

// The mu-component of D: product of p^{val_p(D)} over primes p | mu.
i64 component(i64 D, i64 mu);

// Overflow-checked primitives; all throw std::overflow_error.
i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);

}  // namespace hml
