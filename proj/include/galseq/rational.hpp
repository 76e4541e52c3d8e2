#pragma once

#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"
#include "integer.hpp"

namespace galseq {

// Exact rational number, always kept in lowest terms with positive
// denominator.  Thin wrapper over GMP's mpq_class that enforces
// canonicalization on construction and adds the parsing/printing
// conventions used throughout the library ("n" or "n/d").
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& num, const Integer& den) : v_(num, den) {
        if (den == 0) throw input_error("Rational: zero denominator");
        v_.canonicalize();
    }

    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(Integer(text));
            Integer num(text.substr(0, slash));
            Integer den(text.substr(slash + 1));
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw input_error("Rational: cannot parse '" + text + "'");
        }
    }

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    // Fails loudly if the value is not an integer.
    Integer to_integer() const {
        if (!is_integer()) throw error("Rational: " + str() + " is not an integer");
        return v_.get_num();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw zero_divisor_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // "n" for integers, "n/d" otherwise.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    const mpq_class& raw() const { return v_; }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}

    mpq_class v_;
};

inline Rational inv(const Rational& a) {
    if (a.is_zero()) throw zero_divisor_error("Rational: inverse of zero");
    return Rational(1) / a;
}

inline bool is_zero(const Rational& a) { return a.is_zero(); }

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

inline std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

} // namespace galseq
