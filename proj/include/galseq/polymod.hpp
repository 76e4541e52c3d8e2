#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fp.hpp"
#include "integer.hpp"
#include "polynomial.hpp"

namespace galseq {

// Dense univariate polynomial over F_p, coefficients ascending, trailing
// zeros stripped.  The modulus rides along with the value.
class PolyModP {
public:
    PolyModP() : p_(0) {}
    explicit PolyModP(std::uint64_t p) : p_(p) {}
    PolyModP(std::vector<std::uint64_t> ascending, std::uint64_t p)
        : c_(std::move(ascending)), p_(p) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static PolyModP x(std::uint64_t p) { return PolyModP({0, 1}, p); }
    static PolyModP constant(std::uint64_t v, std::uint64_t p) { return PolyModP({v}, p); }

    // Reduce a rational polynomial mod p.  Requires every denominator to be
    // a unit mod p.
    static PolyModP from_rational(const PolyQ& f, std::uint64_t p) {
        std::vector<std::uint64_t> v(f.coeffs().size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Rational& c = f.coeff(i);
            std::uint64_t den = mod_reduce(c.den(), p);
            if (den == 0)
                throw zero_divisor_error("PolyModP: coefficient denominator divisible by modulus");
            v[i] = mod_mul(mod_reduce(c.num(), p), mod_inv(den, p), p);
        }
        return PolyModP(std::move(v), p);
    }

    std::uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t leading() const {
        if (is_zero()) throw error("PolyModP: zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    friend PolyModP operator+(const PolyModP& a, const PolyModP& b) {
        std::uint64_t p = a.common(b);
        std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_add(a.coeff(i), b.coeff(i), p);
        return PolyModP(std::move(v), p);
    }
    friend PolyModP operator-(const PolyModP& a, const PolyModP& b) {
        std::uint64_t p = a.common(b);
        std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_sub(a.coeff(i), b.coeff(i), p);
        return PolyModP(std::move(v), p);
    }
    friend PolyModP operator*(const PolyModP& a, const PolyModP& b) {
        std::uint64_t p = a.common(b);
        if (a.is_zero() || b.is_zero()) return PolyModP(p);
        std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] = mod_add(v[i + j], mod_mul(a.c_[i], b.c_[j], p), p);
        }
        return PolyModP(std::move(v), p);
    }

    friend bool operator==(const PolyModP& a, const PolyModP& b) { return a.c_ == b.c_; }
    friend bool operator!=(const PolyModP& a, const PolyModP& b) { return !(a == b); }

    PolyModP make_monic() const {
        if (is_zero()) throw error("PolyModP: cannot normalize the zero polynomial");
        std::uint64_t s = mod_inv(leading(), p_);
        std::vector<std::uint64_t> v(c_);
        for (auto& x : v) x = mod_mul(x, s, p_);
        return PolyModP(std::move(v), p_);
    }

    PolyModP derivative() const {
        if (c_.size() <= 1) return PolyModP(p_);
        std::vector<std::uint64_t> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            v[i - 1] = mod_mul(c_[i], i % p_, p_);
        return PolyModP(std::move(v), p_);
    }

    std::uint64_t eval(std::uint64_t x) const {
        std::uint64_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = mod_add(mod_mul(acc, x, p_), c_[i], p_);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::uint64_t common(const PolyModP& o) const {
        std::uint64_t p = p_ != 0 ? p_ : o.p_;
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
            throw error("PolyModP: mixed moduli in arithmetic");
        if (p == 0) throw error("PolyModP: arithmetic on uninitialized polynomials");
        return p;
    }

    std::vector<std::uint64_t> c_;
    std::uint64_t p_;
};

inline std::pair<PolyModP, PolyModP> polymod_divmod(const PolyModP& a, const PolyModP& b) {
    if (b.is_zero()) throw zero_divisor_error("polymod_divmod: division by zero polynomial");
    const std::uint64_t p = b.modulus();
    if (a.degree() < b.degree()) return {PolyModP(p), a};
    std::vector<std::uint64_t> rem(a.coeffs());
    std::vector<std::uint64_t> quo(a.degree() - b.degree() + 1, 0);
    const std::uint64_t lcInv = mod_inv(b.leading(), p);
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        std::uint64_t q = mod_mul(rem[k + b.degree()], lcInv, p);
        quo[static_cast<std::size_t>(k)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= b.degree(); ++j)
            rem[k + j] = mod_sub(rem[k + j], mod_mul(q, b.coeff(j), p), p);
    }
    return {PolyModP(std::move(quo), p), PolyModP(std::move(rem), p)};
}

inline PolyModP operator/(const PolyModP& a, const PolyModP& b) { return polymod_divmod(a, b).first; }
inline PolyModP operator%(const PolyModP& a, const PolyModP& b) { return polymod_divmod(a, b).second; }

inline PolyModP polymod_gcd(PolyModP a, PolyModP b) {
    while (!b.is_zero()) {
        PolyModP r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.make_monic();
}

// base^e mod f, with an arbitrary precision exponent.
inline PolyModP polymod_powmod(PolyModP base, Integer e, const PolyModP& f) {
    if (e < 0) throw error("polymod_powmod: negative exponent");
    PolyModP r = PolyModP::constant(1, f.modulus());
    base = base % f;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % f;
        base = (base * base) % f;
        e >>= 1;
    }
    return r;
}

// One irreducible factor together with its multiplicity.
struct ModFactor {
    PolyModP factor;
    unsigned multiplicity;
};

namespace detail {

// Split a squarefree product of irreducibles, all of the same degree k, into
// its factors (Cantor-Zassenhaus).  `f` must be monic.
inline void equal_degree_split(const PolyModP& f, int k, std::mt19937_64& rng,
                               std::vector<PolyModP>& out) {
    const std::uint64_t p = f.modulus();
    if (f.degree() == k) {
        out.push_back(f);
        return;
    }
    PolyModP g(p);
    while (true) {
        // Random polynomial of degree < 2k (at least degree 1 is fine too;
        // 2k keeps the success probability near 1/2 per try).
        std::vector<std::uint64_t> rv(static_cast<std::size_t>(2 * k), 0);
        for (auto& c : rv) c = rng() % p;
        PolyModP r(std::move(rv), p);
        if (r.degree() < 1) continue;
        g = polymod_gcd(f, r);
        if (g.degree() > 0 && g.degree() < f.degree()) break; // lucky gcd
        if (p == 2) {
            // Trace map: r + r^2 + r^4 + ... + r^(2^(k-1)) mod f.
            PolyModP t(p), cur = r % f;
            for (int i = 0; i < k; ++i) {
                t = (t + cur) % f;
                cur = (cur * cur) % f;
            }
            g = polymod_gcd(f, t);
        } else {
            Integer e = (int_pow(Integer(static_cast<unsigned long>(p)),
                                 static_cast<unsigned long>(k)) - 1) / 2;
            PolyModP t = polymod_powmod(r, e, f);
            t = t - PolyModP::constant(1, p);
            g = polymod_gcd(f, t);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) break;
    }
    equal_degree_split(g, k, rng, out);
    equal_degree_split((f / g).make_monic(), k, rng, out);
}

// Factor a monic squarefree polynomial into monic irreducibles.
inline std::vector<PolyModP> factor_squarefree(const PolyModP& f, std::mt19937_64& rng) {
    const std::uint64_t p = f.modulus();
    std::vector<PolyModP> out;
    PolyModP rest = f;
    // Distinct-degree phase: h runs through x^(p^k) mod rest.
    PolyModP h = polymod_powmod(PolyModP::x(p), Integer(static_cast<unsigned long>(p)), rest);
    for (int k = 1; rest.degree() >= 2 * k; ++k) {
        if (k > 1) h = polymod_powmod(h, Integer(static_cast<unsigned long>(p)), rest);
        PolyModP g = polymod_gcd(rest, h - PolyModP::x(p));
        if (g.degree() > 0) {
            equal_degree_split(g, k, rng, out);
            rest = (rest / g).make_monic();
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.push_back(rest); // leftover is irreducible
    return out;
}

} // namespace detail

// Complete factorization over F_p.  Returns monic irreducible factors with
// multiplicities; the leading coefficient of the input is discarded (callers
// here only ever factor monic images).  Deterministic for a fixed seed.
inline std::vector<ModFactor> polymod_factor(const PolyModP& input, std::uint64_t seed) {
    if (input.degree() < 1)
        throw error("polymod_factor: need a polynomial of positive degree");
    const std::uint64_t p = input.modulus();
    std::mt19937_64 rng(seed);
    std::vector<ModFactor> result;

    // Outer recursion handles non-squarefree input, including the
    // characteristic-p pitfall f' == 0 (then f is a p-th power).
    struct Walker {
        std::mt19937_64& rng;
        std::vector<ModFactor>& result;
        void run(PolyModP f, unsigned mult) {
            const std::uint64_t p = f.modulus();
            f = f.make_monic();
            if (f.degree() < 1) return;
            PolyModP d = f.derivative();
            if (d.is_zero()) {
                // f(x) = g(x^p) = g(x)^p over F_p.
                std::vector<std::uint64_t> g(static_cast<std::size_t>(f.degree() / p) + 1);
                for (std::size_t i = 0; i < g.size(); ++i)
                    g[i] = f.coeff(i * static_cast<std::size_t>(p));
                run(PolyModP(std::move(g), p), mult * static_cast<unsigned>(p));
                return;
            }
            PolyModP c = polymod_gcd(f, d);
            if (c.degree() == 0) {
                for (const PolyModP& irr : detail::factor_squarefree(f, rng))
                    result.push_back({irr, mult});
                return;
            }
            // w holds every irreducible factor of f whose multiplicity is
            // not divisible by p, each exactly once.
            PolyModP w = (f / c).make_monic();
            PolyModP residual = f;
            for (const PolyModP& irr : detail::factor_squarefree(w, rng)) {
                unsigned e = 0;
                while (true) {
                    auto [q, r] = polymod_divmod(residual, irr);
                    if (!r.is_zero()) break;
                    ++e;
                    residual = q;
                }
                result.push_back({irr, mult * e});
            }
            // Whatever is left is a product of factors with multiplicity
            // divisible by p; its derivative vanishes, so the recursion
            // takes the p-th power branch.
            if (residual.degree() > 0) run(residual, mult);
        }
    } walker{rng, result};
    walker.run(input, 1);

    std::sort(result.begin(), result.end(), [](const ModFactor& a, const ModFactor& b) {
        if (a.factor.degree() != b.factor.degree())
            return a.factor.degree() < b.factor.degree();
        return a.factor.coeffs() < b.factor.coeffs();
    });
    return result;
}

} // namespace galseq
