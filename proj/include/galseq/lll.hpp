#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "embeddings.hpp"
#include "errors.hpp"
#include "integer.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace galseq {

// Nearest integer to a rational, halves rounded up.
inline Integer round_nearest(const Rational& a) {
    Integer num = 2 * a.num() + a.den();
    Integer den = 2 * a.den();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

namespace detail {

struct Gso {
    std::vector<std::vector<Rational>> mu; // mu[i][j], j < i
    std::vector<Rational> B;               // squared lengths of the b_i*
};

inline Rational dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Integer acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return Rational(acc);
}

// Full Gram-Schmidt over Q.  Recomputed from scratch after every swap; the
// lattices in this library are small (dimension <= 13), so clarity wins.
inline Gso gram_schmidt(const std::vector<std::vector<Integer>>& b) {
    const std::size_t n = b.size();
    Gso g;
    g.mu.assign(n, {});
    g.B.assign(n, Rational(0));
    // star[i] = b_i - sum_{j<i} mu_ij star_j, kept as exact rationals.
    std::vector<std::vector<Rational>> star(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> v(b[i].size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = Rational(b[i][k]);
        g.mu[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) {
            Rational num(0);
            for (std::size_t k = 0; k < v.size(); ++k)
                num += Rational(b[i][k]) * star[j][k];
            if (g.B[j].is_zero())
                throw error("gram_schmidt: dependent basis vector");
            Rational m = num / g.B[j];
            g.mu[i][j] = m;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= m * star[j][k];
        }
        Rational sq(0);
        for (const auto& x : v) sq += x * x;
        g.B[i] = sq;
        star[i] = std::move(v);
    }
    return g;
}

} // namespace detail

// Exact LLL reduction (delta = 99/100) of an integer row basis, in place.
// The rows must be linearly independent.  The Gram-Schmidt data is kept
// current across swaps with the usual O(n) update formulas; recomputing it
// from scratch each time makes the big lattices of root recognition
// intolerably slow.
inline void lll_reduce(std::vector<std::vector<Integer>>& b) {
    const std::size_t n = b.size();
    if (n <= 1) return;
    const Rational delta(Integer(99), Integer(100));
    detail::Gso g = detail::gram_schmidt(b);
    const Rational half(Integer(1), Integer(2));

    std::size_t k = 1;
    while (k < n) {
        // Size-reduce row k against rows k-1, ..., 0.
        for (std::size_t j = k; j-- > 0;) {
            if (abs(g.mu[k][j]) <= half) continue;
            Integer r = round_nearest(g.mu[k][j]);
            for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
            for (std::size_t t = 0; t < j; ++t)
                g.mu[k][t] -= Rational(r) * g.mu[j][t];
            g.mu[k][j] -= Rational(r);
        }
        // Lovasz condition.
        Rational lhs = g.B[k];
        Rational rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            // Exchanging rows k-1 and k changes only the two stars involved
            // and the projections onto them.
            const Rational m = g.mu[k][k - 1];
            const Rational bOld = g.B[k - 1];
            const Rational bNew = g.B[k] + m * m * bOld;
            if (bNew.is_zero()) throw error("lll_reduce: dependent basis vector");
            const Rational muNew = m * bOld / bNew;
            g.B[k] = g.B[k] * bOld / bNew;
            g.B[k - 1] = bNew;
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(g.mu[k][j], g.mu[k - 1][j]);
            g.mu[k][k - 1] = muNew;
            for (std::size_t i = k + 1; i < n; ++i) {
                Rational t = g.mu[i][k];
                g.mu[i][k] = g.mu[i][k - 1] - m * t;
                g.mu[i][k - 1] = t + muNew * g.mu[i][k];
            }
            k = k > 1 ? k - 1 : 1;
        }
    }
}

// Attempt to express emb.roots[target] as a rational polynomial of degree
// < d in emb.roots[anchor], where d = deg(emb.poly).  Works by integer
// relation finding on the scaled real/imaginary parts; the caller must
// verify the candidate exactly, as the answer is only numerically supported.
inline std::optional<PolyQ> recognize_in_powers(const EmbeddingSet& emb,
                                                std::size_t anchor,
                                                std::size_t target) {
    const int d = emb.poly.degree();
    const unsigned long bits = emb.bits;
    const std::size_t n = static_cast<std::size_t>(d) + 1;

    // Values 1, alpha, ..., alpha^(d-1), beta.
    std::vector<ComplexF> xs;
    xs.reserve(n);
    ComplexF cur(bits);
    cur.re = 1;
    for (int i = 0; i < d; ++i) {
        xs.push_back(cur);
        cur = cur * emb.roots[anchor];
    }
    xs.push_back(emb.roots[target]);

    const mpf_class scale = detail::pow2(static_cast<long>(bits / 2), bits);
    auto toInt = [](const mpf_class& v) {
        mpf_class fl(v + mpf_class(0.5, 64));
        mpf_floor(fl.get_mpf_t(), fl.get_mpf_t());
        Integer r;
        mpz_set_f(r.get_mpz_t(), fl.get_mpf_t());
        return r;
    };

    std::vector<std::vector<Integer>> basis(n, std::vector<Integer>(n + 2, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        basis[i][n] = toInt(mpf_class(xs[i].re * scale));
        basis[i][n + 1] = toInt(mpf_class(xs[i].im * scale));
    }
    lll_reduce(basis);

    // The reduced basis is roughly sorted by length; take the first row that
    // actually involves beta.
    for (const auto& row : basis) {
        const Integer& t = row[static_cast<std::size_t>(d)]; // beta's coefficient
        if (t == 0) continue;
        std::vector<Rational> coeffs(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            coeffs[static_cast<std::size_t>(i)] = Rational(-row[static_cast<std::size_t>(i)], t);
        return PolyQ(std::move(coeffs));
    }
    return std::nullopt;
}

} // namespace galseq
