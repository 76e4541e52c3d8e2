#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace galseq {

namespace detail {
// Free-function form of the zero test; the unqualified call resolves the
// coefficient ring's own is_zero through argument-dependent lookup.
template <class T>
bool coeff_is_zero(const T& c) {
    return is_zero(c);
}
} // namespace detail

// Sparse multivariate polynomial over a coefficient ring K.  A term maps an
// exponent vector (one slot per variable, lexicographic key order) to its
// non-zero coefficient.  K needs +, -, *, is_zero and a zero from K() being
// absorbing under +=; Rational and FieldElement both qualify.
template <class K>
class MultiPolyT {
public:
    using Exponents = std::vector<unsigned char>;

    MultiPolyT() : nvars_(0) {}
    explicit MultiPolyT(int nvars) : nvars_(nvars) {}

    static MultiPolyT constant(int nvars, const K& c) {
        MultiPolyT p(nvars);
        p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }

    static MultiPolyT variable(int nvars, int index, const K& one) {
        if (index < 0 || index >= nvars)
            throw error("MultiPolyT: variable index out of range");
        MultiPolyT p(nvars);
        Exponents e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(index)] = 1;
        p.add_term(std::move(e), one);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, K>& terms() const { return terms_; }

    int total_degree() const {
        int deg = -1;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (unsigned char x : e) d += x;
            if (d > deg) deg = d;
        }
        return deg;
    }

    void add_term(Exponents e, const K& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw error("MultiPolyT: exponent vector has wrong arity");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!is_zero_coeff(c)) terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    MultiPolyT operator-() const {
        MultiPolyT r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, K() - c);
        return r;
    }

    friend MultiPolyT operator+(const MultiPolyT& a, const MultiPolyT& b) {
        a.check_arity(b);
        MultiPolyT r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPolyT operator-(const MultiPolyT& a, const MultiPolyT& b) {
        a.check_arity(b);
        MultiPolyT r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, K() - c);
        return r;
    }
    friend MultiPolyT operator*(const MultiPolyT& a, const MultiPolyT& b) {
        a.check_arity(b);
        MultiPolyT r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t k = 0; k < e.size(); ++k) {
                    unsigned sum = static_cast<unsigned>(e[k]) + eb[k];
                    if (sum > 255) throw error("MultiPolyT: exponent overflow");
                    e[k] = static_cast<unsigned char>(sum);
                }
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    friend MultiPolyT operator*(const MultiPolyT& a, const K& s) {
        MultiPolyT r(a.nvars_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
        return r;
    }

    MultiPolyT& operator+=(const MultiPolyT& o) { return *this = *this + o; }
    MultiPolyT& operator-=(const MultiPolyT& o) { return *this = *this - o; }
    MultiPolyT& operator*=(const MultiPolyT& o) { return *this = *this * o; }

    friend bool operator==(const MultiPolyT& a, const MultiPolyT& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPolyT& a, const MultiPolyT& b) { return !(a == b); }

    // Formal partial derivative in one variable.
    MultiPolyT derivative(int index) const {
        MultiPolyT r(nvars_);
        for (const auto& [e, c] : terms_) {
            unsigned char x = e[static_cast<std::size_t>(index)];
            if (x == 0) continue;
            Exponents d(e);
            --d[static_cast<std::size_t>(index)];
            K scaled = c;
            for (unsigned char k = 1; k < x; ++k) scaled += c; // c * x
            r.add_term(std::move(d), scaled);
        }
        return r;
    }

    // Substitute variables: X_i becomes X_{perm[i]}.
    MultiPolyT relabel(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != nvars_)
            throw error("MultiPolyT: relabeling permutation has wrong arity");
        MultiPolyT r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents m(static_cast<std::size_t>(nvars_), 0);
            for (std::size_t k = 0; k < e.size(); ++k)
                m[static_cast<std::size_t>(perm[k])] = e[k];
            r.add_term(std::move(m), c);
        }
        return r;
    }

    // Evaluate at given values; V must absorb multiplication by K on the
    // left (coeff * value) and carry its own one for the empty product.
    template <class V>
    V eval(const std::vector<V>& values, const V& one) const {
        if (static_cast<int>(values.size()) != nvars_)
            throw error("MultiPolyT: wrong number of values");
        V acc = one - one;
        for (const auto& [e, c] : terms_) {
            V term = one;
            for (std::size_t k = 0; k < e.size(); ++k)
                for (unsigned char t = 0; t < e[k]; ++t) term = term * values[k];
            acc += c * term;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + coeff_str(c) + ")";
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                out += "*" + names[k];
                if (e[k] > 1) out += "^" + std::to_string(static_cast<int>(e[k]));
            }
        }
        return out;
    }

private:
    static bool is_zero_coeff(const K& c) { return detail::coeff_is_zero(c); }
    static std::string coeff_str(const Rational& c) { return c.str(); }
    template <class T>
    static std::string coeff_str(const T& c) { return c.str(); }

    void check_arity(const MultiPolyT& o) const {
        if (nvars_ != o.nvars_) throw error("MultiPolyT: arity mismatch");
    }

    int nvars_;
    std::map<Exponents, K> terms_;
};

using MultiPoly = MultiPolyT<Rational>;

} // namespace galseq
