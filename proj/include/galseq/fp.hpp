#pragma once

#include <cstdint>

#include "errors.hpp"
#include "integer.hpp"

namespace galseq {

// Arithmetic modulo a word-sized prime.  Moduli in this library stay far
// below 2^63, so products fit in unsigned __int128.
inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw zero_divisor_error("mod_inv: zero has no inverse");
    // Extended Euclid on signed words; p < 2^63 keeps everything in range.
    std::int64_t t = 0, newT = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newR = static_cast<std::int64_t>(a);
    while (newR != 0) {
        std::int64_t q = r / newR;
        std::int64_t tmp = t - q * newT;
        t = newT; newT = tmp;
        tmp = r - q * newR;
        r = newR; newR = tmp;
    }
    if (r != 1) throw zero_divisor_error("mod_inv: argument shares a factor with the modulus");
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p))
                 : static_cast<std::uint64_t>(t);
}

// Residue of an arbitrary integer, mapped into [0, p).
inline std::uint64_t mod_reduce(const Integer& n, std::uint64_t p) {
    Integer r = n % Integer(static_cast<unsigned long>(p));
    if (r < 0) r += Integer(static_cast<unsigned long>(p));
    return static_cast<std::uint64_t>(r.get_ui());
}

// Element of F_p that carries its modulus, so that generic matrix code can
// operate on it through the usual inv/is_zero hooks.
struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0; // 0 marks a value-initialized placeholder zero

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint64_t p = common(a, b);
        return p == 0 ? Fp() : Fp(mod_add(a.v, b.v, p), p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint64_t p = common(a, b);
        return p == 0 ? Fp() : Fp(mod_sub(a.v, b.v, p), p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint64_t p = common(a, b);
        return p == 0 ? Fp() : Fp(mod_mul(a.v, b.v, p), p);
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        return a.v == b.v; // placeholder zeros compare equal to true zeros
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

private:
    // Shared modulus of two operands; placeholder zeros (p == 0) adopt the
    // partner's modulus, and two placeholders stay a placeholder.
    static std::uint64_t common(const Fp& a, const Fp& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p)
            throw error("Fp: mixed moduli in arithmetic");
        return a.p != 0 ? a.p : b.p;
    }
};

inline bool is_zero(const Fp& a) { return a.v == 0; }

inline Fp inv(const Fp& a) {
    if (a.p == 0) throw zero_divisor_error("Fp: inverse of placeholder zero");
    return Fp(mod_inv(a.v, a.p), a.p);
}

} // namespace galseq
