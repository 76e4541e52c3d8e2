#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace galseq {

// Arbitrary precision integer.  All exact arithmetic in the library is built
// on top of this type.
using Integer = mpz_class;

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_abs(const Integer& a) {
    Integer r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Exact division; throws if b does not divide a.
inline Integer int_divexact(const Integer& a, const Integer& b) {
    if (b == 0) throw error("int_divexact: division by zero");
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw error("int_divexact: inexact division");
    return q;
}

// Deterministic primality check for word-sized inputs, probabilistic (with
// enough rounds to be dependable) above that.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline bool is_prime_u64(std::uint64_t n) {
    return is_prime(Integer(static_cast<unsigned long>(n)));
}

inline Integer next_prime(const Integer& n) {
    Integer r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Floor of the square root; also reports whether n is a perfect square.
inline std::pair<Integer, bool> int_sqrt(const Integer& n) {
    if (n < 0) throw error("int_sqrt: negative argument");
    Integer root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    return {root, rem == 0};
}

// Primes up to and including `bound`, in increasing order.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(bound + 1, true);
    sieve[0] = sieve[1] = false;
    for (std::uint64_t p = 2; p * p <= bound; ++p)
        if (sieve[p])
            for (std::uint64_t q = p * p; q <= bound; q += p) sieve[q] = false;
    for (std::uint64_t p = 2; p <= bound; ++p)
        if (sieve[p]) out.push_back(p);
    return out;
}

struct TrialFactorization {
    std::vector<Integer> primes; // distinct primes <= bound dividing n
    Integer cofactor;            // what remains after removing them (>= 1)
};

// Strip every prime factor up to `bound` out of |n|.  The cofactor collects
// whatever is left; it is 1 when n factors completely over the small primes.
inline TrialFactorization trial_division(Integer n, std::uint64_t bound) {
    TrialFactorization out;
    n = int_abs(n);
    if (n == 0) throw error("trial_division: zero has no factorization");
    for (std::uint64_t p : primes_up_to(bound)) {
        if (n == 1) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.primes.emplace_back(static_cast<unsigned long>(p));
            while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    out.cofactor = n;
    return out;
}

inline std::uint64_t to_u64(const Integer& n) {
    if (n < 0 || !n.fits_ulong_p()) throw error("to_u64: out of range");
    return static_cast<std::uint64_t>(n.get_ui());
}

} // namespace galseq
