#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace galseq {

class FieldElement;

// The quotient ring Q[x]/(F) for a monic integer polynomial F, used as the
// ambient number field.  Separability is enforced at construction; actual
// irreducibility surfaces lazily as zero_divisor_error if an inversion ever
// meets a proper factor.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static std::shared_ptr<const NumberField> create(PolyQ modulus) {
        if (modulus.degree() < 1)
            throw input_error("NumberField: modulus must have positive degree");
        if (!modulus.is_monic())
            throw input_error("NumberField: modulus must be monic");
        if (!modulus.has_integer_coeffs())
            throw input_error("NumberField: modulus must have integer coefficients");
        if (poly_gcd(modulus, modulus.derivative()).degree() != 0)
            throw input_error("NumberField: modulus has repeated roots");
        return std::shared_ptr<const NumberField>(new NumberField(std::move(modulus)));
    }

    const PolyQ& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }

    FieldElement element(PolyQ rep) const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rational& a) const;
    FieldElement gen() const; // the class of x

private:
    explicit NumberField(PolyQ modulus) : modulus_(std::move(modulus)) {}

    PolyQ modulus_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Residue class in Q[x]/(F), stored as the unique representative of degree
// below deg F.
class FieldElement {
public:
    FieldElement() = default; // detached zero; usable only after assignment

    const FieldPtr& field() const { return field_; }
    const PolyQ& rep() const { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rational to_rational() const {
        if (!is_rational())
            throw error("FieldElement: " + rep_.str() + " is not rational");
        return rep_.coeff(0);
    }

    // Coefficient vector in the power basis 1, x, ..., x^(d-1).
    std::vector<Rational> coords() const {
        std::vector<Rational> v(static_cast<std::size_t>(field_->degree()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = rep_.coeff(i);
        return v;
    }

    FieldElement operator-() const { return FieldElement(field_, -rep_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        const FieldPtr& f = a.join(b);
        return FieldElement(f, a.rep_ + b.rep_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        const FieldPtr& f = a.join(b);
        return FieldElement(f, a.rep_ - b.rep_);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        const FieldPtr& f = a.join(b);
        if (!f) return FieldElement(); // both detached zeros
        return FieldElement(f, (a.rep_ * b.rep_) % f->modulus());
    }
    friend FieldElement operator*(const FieldElement& a, const Rational& s) {
        return FieldElement(a.field_, a.rep_ * s);
    }
    friend FieldElement operator*(const Rational& s, const FieldElement& a) { return a * s; }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.rep_ == b.rep_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement pow(unsigned long e) const {
        if (!field_) throw error("FieldElement: pow on detached zero");
        FieldElement r = field_->one();
        FieldElement base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    std::string str(const std::string& var = "x") const { return rep_.str(var); }

private:
    friend class NumberField;
    friend FieldElement inv(const FieldElement&);

    FieldElement(FieldPtr field, PolyQ rep)
        : field_(std::move(field)), rep_(std::move(rep)) {}

    // Common field of two operands; detached zeros (default-constructed)
    // adopt the partner's field.
    const FieldPtr& join(const FieldElement& o) const {
        if (field_ && o.field_) {
            if (field_ != o.field_ && field_->modulus() != o.field_->modulus())
                throw error("FieldElement: operands belong to different fields");
            return field_;
        }
        if (field_) {
            if (!o.rep_.is_zero()) throw error("FieldElement: detached non-zero operand");
            return field_;
        }
        if (!rep_.is_zero()) throw error("FieldElement: detached non-zero operand");
        return o.field_;
    }

    FieldPtr field_;
    PolyQ rep_;
};

inline FieldElement NumberField::element(PolyQ rep) const {
    return FieldElement(shared_from_this(), rep % modulus_);
}
inline FieldElement NumberField::zero() const { return element(PolyQ()); }
inline FieldElement NumberField::one() const { return element(PolyQ::constant(Rational(1))); }
inline FieldElement NumberField::from_rational(const Rational& a) const {
    return element(PolyQ::constant(a));
}
inline FieldElement NumberField::gen() const {
    return element(PolyQ::monomial(Rational(1), 1));
}

inline bool is_zero(const FieldElement& a) { return a.is_zero(); }

// Inverse modulo F by the extended Euclidean algorithm.  If F is reducible
// and the element shares a factor with it, the offending proper factor is
// reported in the exception message.
inline FieldElement inv(const FieldElement& a) {
    if (!a.field() || a.is_zero())
        throw zero_divisor_error("FieldElement: inverse of zero");
    const PolyQ& f = a.field()->modulus();
    // Maintain r = s*a + t*f; when r becomes a non-zero constant, s/r works.
    PolyQ r0 = f, r1 = a.rep();
    PolyQ s0, s1 = PolyQ::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        PolyQ s2 = s0 - q * s1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw zero_divisor_error("FieldElement: modulus is reducible; shared factor " +
                                 r0.monic().str());
    return a.field()->element(s0 * inv(r0.coeff(0)));
}

// g(a) for a rational polynomial g.
inline FieldElement elem_compose(const PolyQ& g, const FieldElement& a) {
    if (!a.field()) throw error("elem_compose: detached element");
    FieldElement acc = a.field()->zero();
    for (int i = g.degree(); i >= 0; --i)
        acc = acc * a + a.field()->from_rational(g.coeff(static_cast<std::size_t>(i)));
    return acc;
}

// Minimal polynomial of a over Q: the lowest-degree monic relation among
// the powers 1, a, a^2, ...; always divides into deg F.
inline PolyQ min_poly(const FieldElement& a) {
    if (!a.field()) throw error("min_poly: detached element");
    const int d = a.field()->degree();
    std::vector<std::vector<Rational>> powers; // coords of a^0, a^1, ...
    FieldElement cur = a.field()->one();
    powers.push_back(cur.coords());
    for (int k = 1; k <= d; ++k) {
        cur = cur * a;
        powers.push_back(cur.coords());
        Matrix<Rational> m(static_cast<std::size_t>(d), static_cast<std::size_t>(k + 1));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= k; ++j)
                m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        auto ker = mat_kernel_vector(m, Rational(1));
        if (!ker) continue;
        // First dependency: the free column is the last one, so the relation
        // is monic after normalizing by the coefficient of a^k.
        std::vector<Rational> rel = *ker;
        Rational lead = rel.back();
        PolyQ mp(std::move(rel));
        return mp * inv(lead);
    }
    throw error("min_poly: no relation found (inconsistent field state)");
}

} // namespace galseq
