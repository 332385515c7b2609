#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace exst {

/// Arbitrary-precision signed integer. Every intermediate value in the
/// normal-form computations is exact; there is no overflow at any step.
using BigInt = mpz_class;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Quotient rounded to the nearest integer (ties toward zero).
/// Used for pivot reduction: |a - div_round(a,b)*b| <= |b|/2.
inline BigInt div_round(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    BigInt r2 = 2 * abs(r);
    if (r2 > abs(b)) q += (sgn(a) == sgn(b)) ? 1 : -1;
    return q;
}

/// Exact quotient; b must divide a.
inline BigInt div_exact(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const BigInt& d, const BigInt& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace exst
