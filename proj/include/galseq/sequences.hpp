#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "galois.hpp"
#include "groupdet.hpp"
#include "matrix.hpp"
#include "numberfield.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace galseq {

// Monic polynomial whose roots are exactly the translates s(xi), s in G.
// When the translates form a basis this has degree |G| and rational (indeed
// integer, for integral xi) coefficients.
inline PolyQ translate_char_poly(const GaloisGroup& gg, const FieldElement& xi) {
    std::vector<FieldElement> c; // product so far, ascending coefficients
    c.push_back(gg.field->one());
    for (int s = 0; s < gg.order(); ++s) {
        FieldElement root = gg.apply(s, xi);
        c.push_back(gg.field->zero());
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - root * c[k];
        c[0] = -(root * c[0]);
    }
    std::vector<Rational> q;
    q.reserve(c.size());
    for (const auto& e : c) q.push_back(e.to_rational());
    return PolyQ(std::move(q));
}

// Companion matrix of a monic polynomial, acting on state vectors
// (a_n, ..., a_{n+d-1})^T as the shift: state_{n+1} = R state_n.
inline Matrix<Rational> companion_matrix(const PolyQ& f) {
    if (f.degree() < 1 || !f.is_monic())
        throw input_error("companion_matrix: polynomial must be monic of positive degree");
    const std::size_t d = static_cast<std::size_t>(f.degree());
    Matrix<Rational> r(d, d);
    for (std::size_t k = 0; k + 1 < d; ++k) r(k, k + 1) = Rational(1);
    for (std::size_t j = 0; j < d; ++j) r(d - 1, j) = -f.coeff(static_cast<int>(j));
    return r;
}

// Extend a sequence with characteristic polynomial f from its first d terms.
inline std::vector<Rational> recurrence_terms(const std::vector<Rational>& init, const PolyQ& f,
                                              std::size_t count) {
    const std::size_t d = static_cast<std::size_t>(f.degree());
    if (init.size() != d) throw input_error("recurrence_terms: need exactly d initial terms");
    if (!f.is_monic()) throw input_error("recurrence_terms: polynomial must be monic");
    std::vector<Rational> a = init;
    a.reserve(count);
    while (a.size() < count) {
        Rational next(0);
        for (std::size_t k = 0; k < d; ++k)
            next -= f.coeff(static_cast<int>(k)) * a[a.size() - d + k];
        a.push_back(next);
    }
    a.resize(count);
    return a;
}

// Vandermonde-style matrix P(i, s) = (s^{-1} xi)^i; conjugating the
// companion matrix by P diagonalizes it with eigenvalues s^{-1} xi.
inline Matrix<FieldElement> build_P(const GaloisGroup& gg, const FieldElement& xi) {
    const std::size_t n = static_cast<std::size_t>(gg.order());
    std::vector<FieldElement> t(n);
    for (int s = 0; s < gg.order(); ++s)
        t[static_cast<std::size_t>(s)] = gg.apply(gg.group.inverse(s), xi);
    Matrix<FieldElement> p(n, n);
    for (std::size_t j = 0; j < n; ++j) p(0, j) = gg.field->one();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = p(i - 1, j) * t[j];
    return p;
}

// 0/1 membership matrix: kappa(t, j) = 1 iff t lies in the j-th conjugacy class.
inline Matrix<FieldElement> indicator_kappa(const GaloisGroup& gg) {
    const std::size_t n = static_cast<std::size_t>(gg.order());
    const std::size_t r = static_cast<std::size_t>(gg.group.class_count());
    Matrix<FieldElement> kappa(n, r);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t j = 0; j < r; ++j)
            kappa(t, j) = gg.group.class_of(static_cast<int>(t)) == static_cast<int>(j)
                              ? gg.field->one()
                              : gg.field->zero();
    return kappa;
}

// One recurrent sequence per conjugacy class, sharing the characteristic
// polynomial of the xi-translates.  initial(i, j) is the i-th term of the
// class-j sequence; the columns of zcoords are the coordinates of those
// sequences with respect to the geometric-series basis.
struct SequenceFamily {
    GaloisGroup gg;
    FieldElement xi;
    GroupMatrixEval gm;
    PolyQ charpoly;
    Matrix<FieldElement> P;
    Matrix<Rational> initial;
    Matrix<FieldElement> zcoords;

    int degree() const { return charpoly.degree(); }
    int classes() const { return static_cast<int>(initial.cols()); }

    std::vector<Rational> initial_column(int j) const {
        std::vector<Rational> col;
        col.reserve(initial.rows());
        for (std::size_t i = 0; i < initial.rows(); ++i)
            col.push_back(initial(i, static_cast<std::size_t>(j)));
        return col;
    }
};

inline SequenceFamily build_sequence_family(const GaloisGroup& gg, const FieldElement& xi) {
    SequenceFamily f{gg, xi, gamma_eval(gg, xi), PolyQ(), Matrix<FieldElement>(),
                     Matrix<Rational>(), Matrix<FieldElement>()};
    f.charpoly = translate_char_poly(gg, xi);
    f.P = build_P(gg, xi);

    FieldElement detInv = inv(f.gm.det);
    Matrix<FieldElement> z = f.gm.adjugate * indicator_kappa(gg);
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) = z(i, j) * detInv;
    f.zcoords = z;

    Matrix<FieldElement> a = f.P * z;
    f.initial = Matrix<Rational>(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) f.initial(i, j) = a(i, j).to_rational();
    return f;
}

// Term from the closed sum over the group: the i-th term of the class-j
// sequence is (1/det) sum_s s(xi^i) sum_{t in K_j} partials[s t].
inline Rational term_direct(const SequenceFamily& f, int classIdx, unsigned long i) {
    const FiniteGroup& g = f.gg.group;
    FieldElement xi_i = f.xi.pow(i);
    FieldElement acc = f.gg.field->zero();
    for (int s = 0; s < g.order(); ++s) {
        FieldElement inner = f.gg.field->zero();
        for (int t : g.conjugacy_classes()[static_cast<std::size_t>(classIdx)])
            inner += f.gm.partials[static_cast<std::size_t>(g.op(s, t))];
        acc += f.gg.apply(s, xi_i) * inner;
    }
    return (acc * inv(f.gm.det)).to_rational();
}

// Term via traces.  With all translations even the full trace suffices; in
// the mixed-parity case the odd half enters with opposite sign, which the
// difference Tr - delta(Tr) over the even part implements.
inline Rational term_trace_form(const SequenceFamily& f, int classIdx, unsigned long i) {
    const FiniteGroup& g = f.gg.group;
    FieldElement inner = f.gg.field->zero();
    for (int t : g.conjugacy_classes()[static_cast<std::size_t>(classIdx)])
        inner += f.gm.partials[static_cast<std::size_t>(t)];
    inner = f.xi.pow(i) * inner;

    int delta = g.first_odd_element();
    FieldElement val = f.gg.field->zero();
    if (delta < 0) {
        for (int s = 0; s < g.order(); ++s) val += f.gg.apply(s, inner);
    } else {
        FieldElement half = f.gg.field->zero();
        for (int s : g.even_elements()) half += f.gg.apply(s, inner);
        val = half - f.gg.apply(delta, half);
    }
    return (val * inv(f.gm.det)).to_rational();
}

// a_i by running the recurrence from the stored initial terms.
inline Rational term_by_recurrence(const SequenceFamily& f, int classIdx, std::size_t i) {
    auto terms = recurrence_terms(f.initial_column(classIdx), f.charpoly, i + 1);
    return terms[i];
}

// The function s -> sum_t (s t^{-1})(xi) z_t attached to the class-j
// coordinates; for the sequences built here it is the 0/1 class indicator.
inline std::vector<Rational> class_function_values(const SequenceFamily& f, int classIdx) {
    const std::size_t n = f.gm.gamma.rows();
    std::vector<Rational> vals;
    vals.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        FieldElement acc = f.gg.field->zero();
        for (std::size_t t = 0; t < n; ++t)
            acc += f.gm.gamma(s, t) * f.zcoords(t, static_cast<std::size_t>(classIdx));
        vals.push_back(acc.to_rational());
    }
    return vals;
}

} // namespace galseq
