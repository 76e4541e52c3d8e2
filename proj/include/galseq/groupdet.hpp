#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "chartab.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "galois.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "numberfield.hpp"

namespace galseq {

// The group matrix of xi: Gamma(s, t) = (s t^{-1})(xi), rows and columns
// indexed by group elements.  Its determinant is non-zero exactly when the
// translates of xi form a basis, and the adjugate packs the coordinate
// functionals we need: adj(Gamma)(s, t) = partial_{t s^{-1}}, so reading row
// s = identity yields partials[t] directly.
struct GroupMatrixEval {
    Matrix<FieldElement> gamma;
    FieldElement det;
    Matrix<FieldElement> adjugate;
    std::vector<FieldElement> partials;
};

inline GroupMatrixEval gamma_eval(const GaloisGroup& gg, const FieldElement& xi) {
    const int n = gg.order();
    std::vector<FieldElement> translates;
    translates.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) translates.push_back(gg.apply(i, xi));

    GroupMatrixEval r;
    r.gamma = Matrix<FieldElement>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = gg.group.op(i, gg.group.inverse(j));
            r.gamma(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                translates[static_cast<std::size_t>(k)];
        }

    r.det = mat_det(r.gamma);
    if (r.det.is_zero())
        throw not_normal_basis_error("group matrix is singular: the translates of " + xi.str() +
                                     " do not form a basis");
    Matrix<FieldElement> inv = mat_solve(r.gamma, Matrix<FieldElement>::identity(
                                                      static_cast<std::size_t>(n), gg.field->one()));
    r.adjugate = Matrix<FieldElement>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < r.adjugate.rows(); ++i)
        for (std::size_t j = 0; j < r.adjugate.cols(); ++j)
            r.adjugate(i, j) = inv(i, j) * r.det;

    int id = gg.group.identity();
    r.partials.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        r.partials[static_cast<std::size_t>(t)] =
            r.adjugate(static_cast<std::size_t>(id), static_cast<std::size_t>(t));
    return r;
}

// Permutation of variable indices induced by left translation: X_t -> X_{gt}.
inline std::vector<int> left_translation_perm(const FiniteGroup& g, int elem) {
    std::vector<int> perm(static_cast<std::size_t>(g.order()));
    for (int t = 0; t < g.order(); ++t)
        perm[static_cast<std::size_t>(t)] = g.op(elem, t);
    return perm;
}

// The group determinant as a polynomial in one indeterminate X_g per group
// element, together with the normalized partials d_g = (1/|G|) d(det)/dX_g.
// Every variable occurs once in each row, so the normalization turns the
// Jacobi derivative into a single adjugate entry.
struct SymbolicGroupDet {
    MultiPoly det;
    std::vector<MultiPoly> partials;
};

namespace detail {

class LaplaceExpander {
public:
    explicit LaplaceExpander(const FiniteGroup& g) : g_(g), n_(g.order()) {}

    MultiPoly run() {
        if (n_ > 63) throw input_error("group determinant: order too large for bitmask expansion");
        return expand((std::uint64_t(1) << n_) - 1);
    }

private:
    // Determinant of the submatrix on rows (n - popcount(mask))..(n-1) and
    // the column set encoded by mask, expanding along the topmost row.
    MultiPoly expand(std::uint64_t mask) {
        if (mask == 0) return MultiPoly::constant(n_, Rational(1));
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;

        int row = n_ - __builtin_popcountll(mask);
        MultiPoly acc(n_);
        int pos = 0;
        for (int col = 0; col < n_; ++col) {
            std::uint64_t bit = std::uint64_t(1) << col;
            if (!(mask & bit)) continue;
            int entry = g_.op(row, g_.inverse(col));
            MultiPoly term = MultiPoly::variable(n_, entry, Rational(1)) * expand(mask & ~bit);
            if (pos % 2 == 0)
                acc += term;
            else
                acc -= term;
            ++pos;
        }
        memo_.emplace(mask, acc);
        return acc;
    }

    const FiniteGroup& g_;
    int n_;
    std::map<std::uint64_t, MultiPoly> memo_;
};

} // namespace detail

inline SymbolicGroupDet sym_group_det(const FiniteGroup& g, int cap = 8) {
    if (g.order() > cap)
        throw input_error("group determinant: order " + std::to_string(g.order()) +
                          " exceeds the symbolic expansion cap " + std::to_string(cap));
    SymbolicGroupDet r;
    r.det = detail::LaplaceExpander(g).run();
    r.partials.reserve(static_cast<std::size_t>(g.order()));
    Rational invOrder(Integer(1), Integer(g.order()));
    for (int v = 0; v < g.order(); ++v)
        r.partials.push_back(r.det.derivative(v) * invOrder);
    return r;
}

// For abelian groups the determinant splits into linear forms, one per
// character: det = prod_chi (sum_g chi(g) X_g), with coefficients in the
// cyclotomic field of the group exponent.
struct AbelianFactorization {
    CharacterTable table;
    std::vector<MultiPolyT<FieldElement>> forms;
};

inline AbelianFactorization abelian_factorization(const FiniteGroup& g) {
    if (!g.is_abelian())
        throw input_error("abelian factorization requires an abelian group");
    AbelianFactorization r;
    r.table = character_table(g);
    const int n = g.order();
    for (int row = 0; row < r.table.rows(); ++row) {
        MultiPolyT<FieldElement> form(n);
        for (int s = 0; s < n; ++s) {
            auto e = MultiPolyT<FieldElement>::Exponents(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(s)] = 1;
            form.add_term(std::move(e),
                          r.table.values(static_cast<std::size_t>(row),
                                         static_cast<std::size_t>(g.class_of(s))));
        }
        r.forms.push_back(std::move(form));
    }
    return r;
}

namespace detail {

// Elements of L (x) Q(zeta_e), stored as polynomials in z over L and reduced
// modulo the e-th cyclotomic polynomial (which has rational coefficients, so
// the reduction never leaves L-linear combinations).
struct TensorElement {
    std::vector<FieldElement> c; // c[k] multiplies z^k
};

inline TensorElement tensor_mul(const TensorElement& a, const TensorElement& b,
                                const PolyQ& phi, const FieldPtr& base) {
    std::size_t m = static_cast<std::size_t>(phi.degree());
    std::vector<FieldElement> conv(2 * m - 1, base->zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) conv[i + j] += a.c[i] * b.c[j];
    for (std::size_t k = conv.size(); k-- > m;) {
        FieldElement top = conv[k];
        if (top.is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) conv[k - m + j] -= top * phi.coeff(static_cast<int>(j));
        conv[k] = base->zero();
    }
    conv.resize(m);
    return TensorElement{std::move(conv)};
}

} // namespace detail

// Evaluate the product of the linear forms at X_s = s(xi), working in
// L (x) Q(zeta_e); the result must land in L and equal det Gamma.
inline FieldElement abelian_det_value(const GaloisGroup& gg, const FieldElement& xi,
                                      const AbelianFactorization& fac) {
    const PolyQ phi = cyclotomic_polynomial(fac.table.exponent);
    const std::size_t m = static_cast<std::size_t>(phi.degree());
    const FieldPtr& base = gg.field;

    std::vector<FieldElement> translates;
    for (int s = 0; s < gg.order(); ++s) translates.push_back(gg.apply(s, xi));

    detail::TensorElement acc;
    acc.c.assign(m, base->zero());
    acc.c[0] = base->one();
    for (const auto& form : fac.forms) {
        detail::TensorElement t;
        t.c.assign(m, base->zero());
        for (const auto& [e, coeff] : form.terms()) {
            int s = -1;
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) s = static_cast<int>(k);
            auto coords = coeff.coords();
            for (std::size_t k = 0; k < m && k < coords.size(); ++k)
                t.c[k] += translates[static_cast<std::size_t>(s)] * coords[k];
        }
        acc = detail::tensor_mul(acc, t, phi, base);
    }
    for (std::size_t k = 1; k < m; ++k)
        if (!acc.c[k].is_zero())
            throw error("abelian determinant product did not collapse into the base field");
    return acc.c[0];
}

} // namespace galseq
