#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace galseq {

// Dense univariate polynomial over the rationals.  Coefficients are stored
// in ascending order of degree and trailing zeros are stripped, so the zero
// polynomial has an empty coefficient vector and degree -1.
class PolyQ {
public:
    PolyQ() = default;
    PolyQ(std::initializer_list<Rational> ascending)
        : c_(ascending) { trim(); }
    explicit PolyQ(std::vector<Rational> ascending)
        : c_(std::move(ascending)) { trim(); }

    static PolyQ constant(const Rational& a) { return PolyQ({a}); }

    // c * x^k
    static PolyQ monomial(const Rational& c, std::size_t k) {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return PolyQ(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    // Coefficient of x^k (zero beyond the stored range).
    const Rational& coeff(std::size_t k) const {
        static const Rational zero(0);
        return k < c_.size() ? c_[k] : zero;
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    const Rational& leading() const {
        if (is_zero()) throw error("PolyQ: zero polynomial has no leading coefficient");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && leading() == Rational(1); }
    bool has_integer_coeffs() const {
        for (const auto& a : c_)
            if (!a.is_integer()) return false;
        return true;
    }

    PolyQ operator-() const {
        PolyQ r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return PolyQ(std::move(v));
    }
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return PolyQ(std::move(v));
    }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        if (a.is_zero() || b.is_zero()) return PolyQ();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        }
        return PolyQ(std::move(v));
    }
    friend PolyQ operator*(const PolyQ& a, const Rational& s) {
        PolyQ r = a;
        for (auto& x : r.c_) x *= s;
        r.trim();
        return r;
    }
    friend PolyQ operator*(const Rational& s, const PolyQ& a) { return a * s; }

    PolyQ& operator+=(const PolyQ& o) { return *this = *this + o; }
    PolyQ& operator-=(const PolyQ& o) { return *this = *this - o; }
    PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }

    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }
    friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    PolyQ derivative() const {
        if (c_.size() <= 1) return PolyQ();
        std::vector<Rational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            v[i - 1] = c_[i] * Rational(Integer(static_cast<long>(i)));
        return PolyQ(std::move(v));
    }

    PolyQ monic() const {
        if (is_zero()) throw error("PolyQ: cannot normalize the zero polynomial");
        return *this * inv(leading());
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

// Quotient and remainder with deg(rem) < deg(divisor).
inline std::pair<PolyQ, PolyQ> poly_divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw zero_divisor_error("poly_divmod: division by zero polynomial");
    if (a.degree() < b.degree()) return {PolyQ(), a};
    std::vector<Rational> rem(a.coeffs());
    std::vector<Rational> quo(a.degree() - b.degree() + 1);
    const Rational lcInv = inv(b.leading());
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational q = rem[k + b.degree()] * lcInv;
        quo[k] = q;
        if (q.is_zero()) continue;
        for (int j = 0; j <= b.degree(); ++j)
            rem[k + j] -= q * b.coeff(j);
    }
    return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
}

inline PolyQ operator/(const PolyQ& a, const PolyQ& b) { return poly_divmod(a, b).first; }
inline PolyQ operator%(const PolyQ& a, const PolyQ& b) { return poly_divmod(a, b).second; }

// Monic greatest common divisor (Euclid); gcd(0, 0) = 0.
inline PolyQ poly_gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        PolyQ r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// Resultant via the Sylvester matrix, evaluated fraction-free after
// clearing denominators: Res(c*a, b) = c^deg(b) * Res(a, b) and dually.
inline Rational poly_resultant(const PolyQ& a, const PolyQ& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) throw error("poly_resultant: undefined for the zero polynomial");
    if (m == 0 && n == 0) return Rational(1);
    auto clear = [](const PolyQ& p) {
        Integer l = 1;
        for (const auto& c : p.coeffs()) l = int_lcm(l, c.den());
        std::vector<Integer> v(p.coeffs().size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (p.coeff(i) * Rational(l)).to_integer();
        return std::make_pair(v, l);
    };
    auto [ai, al] = clear(a);
    auto [bi, bl] = clear(b);
    Matrix<Integer> syl(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) syl(r, r + j) = ai[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) syl(n + r, r + j) = bi[n - j];
    Rational res(mat_det_bareiss(std::move(syl)));
    // Undo the scaling: rows of a carry the factor al, rows of b carry bl.
    res /= Rational(int_pow(al, static_cast<unsigned long>(n)));
    res /= Rational(int_pow(bl, static_cast<unsigned long>(m)));
    return res;
}

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)
inline Rational poly_discriminant(const PolyQ& f) {
    const int d = f.degree();
    if (d < 1) throw error("poly_discriminant: degree must be at least 1");
    if (d == 1) return Rational(1);
    Rational res = poly_resultant(f, f.derivative());
    Rational disc = res / f.leading();
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0) disc = -disc;
    return disc;
}

inline std::string PolyQ::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rational& a = c_[static_cast<std::size_t>(k)];
        if (a.is_zero()) continue;
        Rational mag = abs(a);
        if (out.empty())
            out += a.sign() < 0 ? "-" : "";
        else
            out += a.sign() < 0 ? " - " : " + ";
        const bool unitCoeff = (mag == Rational(1)) && k > 0;
        if (!unitCoeff) out += mag.str();
        if (k > 0) {
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const PolyQ& p) { return os << p.str(); }

} // namespace galseq
