#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "fp.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "numberfield.hpp"

namespace galseq {

// Multiplication constants of the class sums: a[i][j][k] counts the pairs
// (s, t) in K_i x K_j with s t equal to the fixed representative of K_k.
inline std::vector<std::vector<std::vector<long>>> class_constants(const FiniteGroup& g) {
    const int r = g.class_count();
    std::vector<std::vector<std::vector<long>>> a(
        static_cast<std::size_t>(r),
        std::vector<std::vector<long>>(static_cast<std::size_t>(r),
                                       std::vector<long>(static_cast<std::size_t>(r), 0)));
    // Precompute which elements are class representatives.
    std::vector<int> repOf(static_cast<std::size_t>(g.order()), -1);
    for (int k = 0; k < r; ++k) repOf[static_cast<std::size_t>(g.class_representative(k))] = k;
    for (int i = 0; i < r; ++i)
        for (int s : g.conjugacy_classes()[static_cast<std::size_t>(i)])
            for (int j = 0; j < r; ++j)
                for (int t : g.conjugacy_classes()[static_cast<std::size_t>(j)]) {
                    int k = repOf[static_cast<std::size_t>(g.op(s, t))];
                    if (k >= 0) ++a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                    [static_cast<std::size_t>(k)];
                }
    return a;
}

// Exact character table of a finite group, with values in Q(zeta_e) for
// e the group exponent.  values(row, i) is the value of character `row` on
// the representative of class i; rows are sorted by (degree, value vectors).
struct CharacterTable {
    FiniteGroup group;
    long exponent = 1;
    CyclotomicContext cyclo;
    std::vector<Integer> degrees;
    Matrix<FieldElement> values;
    std::uint64_t modulus = 0; // working prime of the modular computation

    int rows() const { return static_cast<int>(degrees.size()); }
};

namespace detail {

// Smallest prime l with l = 1 (mod e) and l > 2 sqrt(|G|); the congruence
// makes F_l contain the needed roots of unity, the size bound makes small
// integers recoverable from their residues.
inline std::uint64_t dixon_prime(long e, long order) {
    Integer l(e + 1);
    while (true) {
        if (is_prime(l) && l * l > Integer(4 * order)) return to_u64(l);
        l += e;
    }
}

inline std::uint64_t primitive_root(std::uint64_t p) {
    auto fac = trial_division(Integer(static_cast<unsigned long>(p - 1)), 1u << 20);
    if (fac.cofactor != 1) throw error("primitive_root: modulus too large to factor");
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const Integer& q : fac.primes)
            if (mod_pow(g, (p - 1) / to_u64(q), p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw error("primitive_root: none found");
}

// Coordinates of the columns of B in the column span of W (both over F_p,
// columns of W independent).  Throws if some column of B leaves the span.
inline Matrix<Fp> coords_in_span(const Matrix<Fp>& w, const Matrix<Fp>& b) {
    const std::size_t rows = w.rows(), k = w.cols(), m = b.cols();
    Matrix<Fp> aug(rows, k + m);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = w(i, j);
        for (std::size_t j = 0; j < m; ++j) aug(i, k + j) = b(i, j);
    }
    auto pivots = detail::row_reduce(aug, k);
    if (pivots.size() != k) throw error("coords_in_span: dependent spanning set");
    Matrix<Fp> x(k, m);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < m; ++j) x(r, j) = aug(r, k + j);
    // Consistency: rows beyond the pivots must be clean in the B block.
    for (std::size_t r = k; r < rows; ++r)
        for (std::size_t j = 0; j < m; ++j)
            if (!is_zero(aug(r, k + j)))
                throw error("coords_in_span: vector escapes the invariant subspace");
    return x;
}

} // namespace detail

inline CharacterTable character_table(const FiniteGroup& g) {
    const int r = g.class_count();
    const int n = g.order();
    const long e = g.exponent();
    const std::uint64_t l = detail::dixon_prime(e, n);

    auto a = class_constants(g);
    auto asFp = [&](long v) { return Fp(static_cast<std::uint64_t>(((v % static_cast<long>(l)) + static_cast<long>(l))), l); };

    // Class-sum multiplication matrices over F_l.
    std::vector<Matrix<Fp>> m(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        Matrix<Fp> mi(static_cast<std::size_t>(r), static_cast<std::size_t>(r), Fp(0, l));
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                mi(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
                    asFp(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                          [static_cast<std::size_t>(k)]);
        m[static_cast<std::size_t>(i)] = std::move(mi);
    }

    // Split the standard space into common eigenspaces of all the M_i (the
    // identity class contributes the identity matrix and is skipped).
    const int identityClass = g.class_of(g.identity());
    std::vector<Matrix<Fp>> spaces;
    spaces.push_back(Matrix<Fp>::identity(static_cast<std::size_t>(r), Fp(1, l)));
    for (int i = 0; i < r; ++i) {
        if (i == identityClass) continue;
        bool allDone = true;
        for (const auto& w : spaces)
            if (w.cols() > 1) allDone = false;
        if (allDone) break;
        std::vector<Matrix<Fp>> next;
        for (const auto& w : spaces) {
            if (w.cols() == 1) {
                next.push_back(w);
                continue;
            }
            Matrix<Fp> restricted =
                detail::coords_in_span(w, m[static_cast<std::size_t>(i)] * w);
            const std::size_t k = w.cols();
            std::size_t found = 0;
            for (std::uint64_t lambda = 0; lambda < l && found < k; ++lambda) {
                Matrix<Fp> shifted = restricted;
                for (std::size_t t = 0; t < k; ++t)
                    shifted(t, t) = shifted(t, t) - Fp(lambda, l);
                auto kernel = mat_kernel_basis(shifted, Fp(1, l));
                if (kernel.empty()) continue;
                Matrix<Fp> kb(k, kernel.size());
                for (std::size_t c = 0; c < kernel.size(); ++c)
                    for (std::size_t t = 0; t < k; ++t) kb(t, c) = kernel[c][t];
                next.push_back(w * kb);
                found += kernel.size();
            }
            if (found != k)
                throw error("character_table: eigenvalues escaped the base field");
        }
        spaces = std::move(next);
    }
    if (static_cast<int>(spaces.size()) != r)
        throw error("character_table: expected " + std::to_string(r) +
                    " one-dimensional eigenspaces, found " + std::to_string(spaces.size()));

    // Central character vectors, normalized so the identity class reads 1.
    const std::size_t idClass = static_cast<std::size_t>(identityClass);
    std::vector<std::vector<Fp>> omega(static_cast<std::size_t>(r));
    for (int s = 0; s < r; ++s) {
        const Matrix<Fp>& w = spaces[static_cast<std::size_t>(s)];
        if (w.cols() != 1) throw error("character_table: splitting failed");
        if (is_zero(w(idClass, 0)))
            throw error("character_table: eigenvector vanishes on the identity class");
        Fp scale = inv(w(idClass, 0));
        std::vector<Fp> v(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j) v[static_cast<std::size_t>(j)] = w(static_cast<std::size_t>(j), 0) * scale;
        omega[static_cast<std::size_t>(s)] = std::move(v);
    }

    // Degrees: chi(1)^2 = |G| / sum_i omega_i omega_{i'} / n_i, with the
    // integer root pinned by 1 <= chi(1) <= sqrt(|G|) < l/2.
    std::vector<int> classOfInverse(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        classOfInverse[static_cast<std::size_t>(i)] =
            g.class_of(g.inverse(g.class_representative(i)));
    const Integer sqrtG = int_sqrt(Integer(n)).first;
    std::vector<Integer> degrees(static_cast<std::size_t>(r));
    std::vector<std::vector<Fp>> chiMod(static_cast<std::size_t>(r));
    for (int s = 0; s < r; ++s) {
        Fp denom(0, l);
        for (int i = 0; i < r; ++i) {
            int ni = static_cast<int>(g.conjugacy_classes()[static_cast<std::size_t>(i)].size());
            denom += omega[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] *
                     omega[static_cast<std::size_t>(s)]
                           [static_cast<std::size_t>(classOfInverse[static_cast<std::size_t>(i)])] *
                     inv(Fp(static_cast<std::uint64_t>(ni), l));
        }
        Fp d2 = Fp(static_cast<std::uint64_t>(n), l) * inv(denom);
        Integer degree(-1);
        for (Integer t = 1; t <= sqrtG; ++t)
            if (Fp(mod_reduce(t * t, l), l) == d2) {
                degree = t;
                break;
            }
        if (degree < 0) throw error("character_table: no admissible degree");
        degrees[static_cast<std::size_t>(s)] = degree;
        // chi(rho_i) = chi(1) omega_i / n_i mod l.
        std::vector<Fp> row(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
            int ni = static_cast<int>(g.conjugacy_classes()[static_cast<std::size_t>(i)].size());
            row[static_cast<std::size_t>(i)] = Fp(mod_reduce(degree, l), l) *
                                               omega[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] *
                                               inv(Fp(static_cast<std::uint64_t>(ni), l));
        }
        chiMod[static_cast<std::size_t>(s)] = std::move(row);
    }

    // Lift the residues to Q(zeta_e).  The multiplicity of zeta^mu among the
    // eigenvalues of class i is (1/e) sum_s chi(rho_i^s) zeta^(-s mu); these
    // multiplicities are integers in [0, chi(1)], hence readable mod l.
    CyclotomicContext cyclo = CyclotomicContext::make(e);
    const std::uint64_t z = mod_pow(detail::primitive_root(l), (l - 1) / static_cast<std::uint64_t>(e), l);
    const Fp eInv = inv(Fp(static_cast<std::uint64_t>(e), l));
    Matrix<FieldElement> values(static_cast<std::size_t>(r), static_cast<std::size_t>(r),
                                cyclo.field->zero());
    for (int s = 0; s < r; ++s) {
        for (int i = 0; i < r; ++i) {
            int rep = g.class_representative(i);
            FieldElement val = cyclo.field->zero();
            for (long mu = 0; mu < e; ++mu) {
                Fp c(0, l);
                for (long t = 0; t < e; ++t) {
                    int cls = g.class_of(g.power(rep, t));
                    std::uint64_t zpow = mod_pow(z, static_cast<std::uint64_t>(
                        ((e - (t * mu) % e) % e)), l);
                    c += chiMod[static_cast<std::size_t>(s)][static_cast<std::size_t>(cls)] *
                         Fp(zpow, l);
                }
                c = c * eInv;
                // c.v is a genuine multiplicity, bounded by chi(1) < l/2.
                if (c.v > to_u64(degrees[static_cast<std::size_t>(s)]))
                    throw error("character_table: eigenvalue multiplicity out of range");
                if (c.v != 0)
                    val += cyclo.zeta_pow(mu) * Rational(Integer(static_cast<unsigned long>(c.v)));
            }
            values(static_cast<std::size_t>(s), static_cast<std::size_t>(i)) = val;
        }
    }

    // Deterministic row order: by degree, then by the value vectors.
    std::vector<int> rowOrder(static_cast<std::size_t>(r));
    for (int s = 0; s < r; ++s) rowOrder[static_cast<std::size_t>(s)] = s;
    auto rowKey = [&](int s) {
        std::vector<std::vector<Rational>> key;
        key.reserve(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i)
            key.push_back(values(static_cast<std::size_t>(s), static_cast<std::size_t>(i)).coords());
        return key;
    };
    std::sort(rowOrder.begin(), rowOrder.end(), [&](int x, int y) {
        if (degrees[static_cast<std::size_t>(x)] != degrees[static_cast<std::size_t>(y)])
            return degrees[static_cast<std::size_t>(x)] < degrees[static_cast<std::size_t>(y)];
        return rowKey(x) < rowKey(y);
    });

    CharacterTable table;
    table.group = g;
    table.exponent = e;
    table.cyclo = cyclo;
    table.modulus = l;
    table.degrees.resize(static_cast<std::size_t>(r));
    table.values = Matrix<FieldElement>(static_cast<std::size_t>(r), static_cast<std::size_t>(r),
                                        cyclo.field->zero());
    for (int s = 0; s < r; ++s) {
        table.degrees[static_cast<std::size_t>(s)] =
            degrees[static_cast<std::size_t>(rowOrder[static_cast<std::size_t>(s)])];
        for (int i = 0; i < r; ++i)
            table.values(static_cast<std::size_t>(s), static_cast<std::size_t>(i)) =
                values(static_cast<std::size_t>(rowOrder[static_cast<std::size_t>(s)]),
                       static_cast<std::size_t>(i));
    }

    // The table must satisfy both orthogonality relations exactly before it
    // is allowed out.
    const FieldElement zero = cyclo.field->zero();
    for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
            FieldElement acc = zero;
            for (int i = 0; i < r; ++i) {
                int ni = static_cast<int>(g.conjugacy_classes()[static_cast<std::size_t>(i)].size());
                acc += Rational(ni) *
                       table.values(static_cast<std::size_t>(x), static_cast<std::size_t>(i)) *
                       table.values(static_cast<std::size_t>(y),
                                    static_cast<std::size_t>(classOfInverse[static_cast<std::size_t>(i)]));
            }
            FieldElement expect = x == y ? cyclo.field->from_rational(Rational(n)) : zero;
            if (acc != expect) throw error("character_table: first orthogonality failed");
        }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            FieldElement acc = zero;
            for (int s = 0; s < r; ++s)
                acc += table.values(static_cast<std::size_t>(s), static_cast<std::size_t>(i)) *
                       table.values(static_cast<std::size_t>(s),
                                    static_cast<std::size_t>(classOfInverse[static_cast<std::size_t>(j)]));
            FieldElement expect =
                i == j ? cyclo.field->from_rational(
                             Rational(g.centralizer_order(g.class_representative(i))))
                       : zero;
            if (acc != expect) throw error("character_table: second orthogonality failed");
        }

    return table;
}

// Values of the class indicator functions: row j holds the function that is
// 1 on class j and 0 elsewhere, expanded through the character table as
// (1/|Z(rho_j)|) sum_chi chi(rho_j^{-1}) chi(rho_i).  The result of the
// expansion is asserted to be exactly the Kronecker delta.
inline Matrix<Rational> indicator_matrix(const CharacterTable& t) {
    const int r = t.rows();
    const FiniteGroup& g = t.group;
    Matrix<Rational> out(static_cast<std::size_t>(r), static_cast<std::size_t>(r), Rational(0));
    for (int j = 0; j < r; ++j) {
        int invRep = g.inverse(g.class_representative(j));
        int invClass = g.class_of(invRep);
        Rational zInv(Integer(1), Integer(g.centralizer_order(g.class_representative(j))));
        for (int i = 0; i < r; ++i) {
            FieldElement acc = t.cyclo.field->zero();
            for (int s = 0; s < r; ++s)
                acc += t.values(static_cast<std::size_t>(s), static_cast<std::size_t>(invClass)) *
                       t.values(static_cast<std::size_t>(s), static_cast<std::size_t>(i));
            if (!acc.is_rational())
                throw error("indicator_matrix: non-rational indicator value");
            out(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
                acc.to_rational() * zInv;
        }
    }
    return out;
}

} // namespace galseq
