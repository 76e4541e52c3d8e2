#pragma once

#include <vector>

#include "errors.hpp"
#include "numberfield.hpp"
#include "polynomial.hpp"

namespace galseq {

// The e-th cyclotomic polynomial, computed by dividing x^e - 1 by the
// cyclotomic polynomials of the proper divisors of e.
inline PolyQ cyclotomic_polynomial(long e) {
    if (e < 1) throw input_error("cyclotomic_polynomial: order must be positive");
    std::vector<Rational> xe(static_cast<std::size_t>(e) + 1);
    xe[0] = Rational(-1);
    xe[static_cast<std::size_t>(e)] = Rational(1);
    PolyQ result(std::move(xe));
    for (long d = 1; d < e; ++d) {
        if (e % d != 0) continue;
        auto [q, r] = poly_divmod(result, cyclotomic_polynomial(d));
        if (!r.is_zero()) throw error("cyclotomic_polynomial: inexact division");
        result = std::move(q);
    }
    return result;
}

// Q(zeta_e) modelled as Q[y]/(Phi_e), with zeta = the class of y.
struct CyclotomicContext {
    long order = 1;
    FieldPtr field;

    static CyclotomicContext make(long e) {
        CyclotomicContext c;
        c.order = e;
        c.field = NumberField::create(cyclotomic_polynomial(e));
        return c;
    }

    FieldElement zeta() const { return field->gen(); }

    // zeta^k for any integer k (negative exponents wrap around).
    FieldElement zeta_pow(long k) const {
        long m = ((k % order) + order) % order;
        return zeta().pow(static_cast<unsigned long>(m));
    }
};

} // namespace galseq
