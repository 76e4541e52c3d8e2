#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "polynomial.hpp"

namespace galseq {

// Complex number over GMP floats.  Only a scratch type for root finding;
// nothing numeric ever leaves this module unverified.
struct ComplexF {
    mpf_class re, im;

    explicit ComplexF(unsigned long bits) : re(0, bits), im(0, bits) {}
    ComplexF(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}

    friend ComplexF operator+(const ComplexF& a, const ComplexF& b) {
        return {mpf_class(a.re + b.re), mpf_class(a.im + b.im)};
    }
    friend ComplexF operator-(const ComplexF& a, const ComplexF& b) {
        return {mpf_class(a.re - b.re), mpf_class(a.im - b.im)};
    }
    friend ComplexF operator*(const ComplexF& a, const ComplexF& b) {
        return {mpf_class(a.re * b.re - a.im * b.im), mpf_class(a.re * b.im + a.im * b.re)};
    }
    friend ComplexF operator/(const ComplexF& a, const ComplexF& b) {
        mpf_class d(b.re * b.re + b.im * b.im);
        return {mpf_class((a.re * b.re + a.im * b.im) / d),
                mpf_class((a.im * b.re - a.re * b.im) / d)};
    }

    mpf_class norm2() const { return mpf_class(re * re + im * im); }
    mpf_class abs() const { return sqrt(norm2()); }
};

// Numeric images of the roots of one separable polynomial, all computed at
// the same working precision.
struct EmbeddingSet {
    unsigned long bits = 0;
    PolyQ poly;
    std::vector<ComplexF> roots;
};

namespace detail {

inline mpf_class pow2(long e, unsigned long bits) {
    mpf_class r(1, bits);
    if (e >= 0)
        mpf_mul_2exp(r.get_mpf_t(), r.get_mpf_t(), static_cast<unsigned long>(e));
    else
        mpf_div_2exp(r.get_mpf_t(), r.get_mpf_t(), static_cast<unsigned long>(-e));
    return r;
}

// Fujiwara-style bound on root magnitudes of a monic polynomial, computed
// on exponents so that enormous coefficients cannot overflow.
inline double root_radius(const PolyQ& f) {
    const int d = f.degree();
    double best = 0.5;
    for (int k = 0; k < d; ++k) {
        const Rational& c = f.coeff(static_cast<std::size_t>(k));
        if (c.is_zero()) continue;
        long nexp = 0, dexp = 0;
        double nm = mpz_get_d_2exp(&nexp, c.num().get_mpz_t());
        double dm = mpz_get_d_2exp(&dexp, c.den().get_mpz_t());
        double log2c = std::log2(std::fabs(nm)) + static_cast<double>(nexp) -
                       (std::log2(std::fabs(dm)) + static_cast<double>(dexp));
        best = std::max(best, log2c / static_cast<double>(d - k));
    }
    return std::ldexp(2.0, static_cast<int>(std::ceil(best)));
}

} // namespace detail

// All complex roots of a separable polynomial by simultaneous (Weierstrass /
// Durand-Kerner) iteration at the requested precision.  The result is gated:
// residuals must sit far below the coefficient scale and the roots must be
// pairwise separated, otherwise precision_error asks the caller to retry
// with more bits.
inline EmbeddingSet embed_roots(const PolyQ& f, unsigned long bits) {
    const int d = f.degree();
    if (d < 1) throw error("embed_roots: positive degree required");
    if (!f.is_monic()) throw error("embed_roots: monic polynomial required");

    std::vector<mpf_class> cf(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        const Rational& c = f.coeff(static_cast<std::size_t>(k));
        cf[static_cast<std::size_t>(k)] =
            mpf_class(mpf_class(c.num(), bits) / mpf_class(c.den(), bits));
    }

    auto evalAt = [&](const ComplexF& w) {
        ComplexF acc(bits);
        for (int k = d; k >= 0; --k) {
            acc = acc * w;
            acc.re += cf[static_cast<std::size_t>(k)];
        }
        return acc;
    };

    // Distinct starting points on a circle that encloses every root.
    const double radius = detail::root_radius(f);
    std::vector<ComplexF> w;
    w.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        double angle = 2.0 * 3.14159265358979323846 * k / d + 0.3979;
        ComplexF z(bits);
        z.re = radius * std::cos(angle);
        z.im = radius * std::sin(angle);
        w.push_back(z);
    }

    const mpf_class tolRel = detail::pow2(-static_cast<long>(bits * 3 / 4), bits);
    const unsigned long maxIter = 500 + 40 * static_cast<unsigned long>(d);
    bool converged = false;
    for (unsigned long it = 0; it < maxIter && !converged; ++it) {
        converged = true;
        for (int i = 0; i < d; ++i) {
            ComplexF denom(bits);
            denom.re = 1;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                ComplexF diff = w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)];
                if (diff.re == 0 && diff.im == 0) {
                    // Collision: nudge and keep iterating.
                    diff.re = tolRel;
                    w[static_cast<std::size_t>(i)].re += tolRel;
                }
                denom = denom * diff;
            }
            ComplexF step = evalAt(w[static_cast<std::size_t>(i)]) / denom;
            w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] - step;
            mpf_class scale(w[static_cast<std::size_t>(i)].abs() + 1);
            if (step.abs() > tolRel * scale) converged = false;
        }
    }
    if (!converged)
        throw precision_error("embed_roots: no convergence at " + std::to_string(bits) + " bits");

    // Residual gate, relative to the coefficient scale at each root.
    const mpf_class resTol = detail::pow2(-static_cast<long>(bits / 2), bits);
    for (int i = 0; i < d; ++i) {
        mpf_class mag = w[static_cast<std::size_t>(i)].abs();
        mpf_class scale(0, bits);
        mpf_class p(1, bits);
        for (int k = 0; k <= d; ++k) {
            scale += abs(cf[static_cast<std::size_t>(k)]) * p;
            p *= mag;
        }
        if (scale == 0) scale = 1;
        if (evalAt(w[static_cast<std::size_t>(i)]).abs() > resTol * scale)
            throw precision_error("embed_roots: residual too large at " +
                                  std::to_string(bits) + " bits");
    }

    // Separation gate; the inputs are separable, so collisions mean the
    // precision was not enough to tell two roots apart.
    const mpf_class sepTol = detail::pow2(-static_cast<long>(bits / 4), bits);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if ((w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)]).abs() < sepTol)
                throw precision_error("embed_roots: roots not separated at " +
                                      std::to_string(bits) + " bits");

    // Deterministic presentation order.
    std::sort(w.begin(), w.end(), [](const ComplexF& a, const ComplexF& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    });

    EmbeddingSet out;
    out.bits = bits;
    out.poly = f;
    out.roots = std::move(w);
    return out;
}

} // namespace galseq
