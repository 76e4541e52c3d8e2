#pragma once

// Shared fixtures: small groups given by permutations or tables, and a few
// Galois number fields used across the suites.

#include <algorithm>
#include <vector>

#include "galseq/galois.hpp"
#include "galseq/group.hpp"
#include "galseq/multipoly.hpp"
#include "galseq/numberfield.hpp"
#include "galseq/polynomial.hpp"

namespace fixtures {

// The regular sextic realization of S3 used throughout the tests: identity,
// three involutions, two 3-cycles, acting on six points.
inline std::vector<std::vector<int>> s3_sextic_permutations() {
    return {
        {0, 1, 2, 3, 4, 5},
        {3, 2, 1, 0, 5, 4},
        {1, 0, 5, 4, 3, 2},
        {5, 4, 3, 2, 1, 0},
        {2, 3, 4, 5, 0, 1},
        {4, 5, 0, 1, 2, 3},
    };
}

inline std::vector<std::vector<int>> all_even_permutations_of_4() {
    std::vector<int> p{0, 1, 2, 3};
    std::vector<std::vector<int>> out;
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inversions;
        if (inversions % 2 == 0) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    // Identity first (std::next_permutation starts sorted, so it already is).
    return out;
}

inline galseq::FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return galseq::FiniteGroup::from_table(std::move(t));
}

inline galseq::PolyQ poly_from_ints(const std::vector<long>& ascending) {
    std::vector<galseq::Rational> c;
    c.reserve(ascending.size());
    for (long v : ascending) c.emplace_back(v);
    return galseq::PolyQ(std::move(c));
}

// The published irreducible factors of the S3 group determinant in the
// variable order of s3_sextic_permutations (X0 identity, X1..X3 the
// involutions, X4..X5 the 3-cycles): det = lin * sgn * quad^2, and the
// identity partial carries quad * cubic.
struct S3DetFactors {
    galseq::MultiPoly lin, sgn, quad, cubic;
};

inline S3DetFactors s3_printed_factors() {
    using galseq::MultiPoly;
    using galseq::Rational;
    const int n = 6;
    auto var = [&](int i) { return MultiPoly::variable(n, i, Rational(1)); };

    S3DetFactors f{MultiPoly(n), MultiPoly(n), MultiPoly(n), MultiPoly(n)};
    for (int t = 0; t < n; ++t) f.lin += var(t);
    galseq::FiniteGroup g = galseq::FiniteGroup::from_permutations(s3_sextic_permutations());
    for (int t = 0; t < n; ++t) f.sgn += var(t) * Rational(g.sign(t));

    MultiPoly x0 = var(0);
    MultiPoly invSq(n), invPairs(n);
    for (int i = 1; i <= 3; ++i) {
        invSq += var(i) * var(i);
        for (int j = i + 1; j <= 3; ++j) invPairs += var(i) * var(j);
    }
    MultiPoly rotSum = var(4) + var(5);
    MultiPoly rotSq = var(4) * var(4) + var(5) * var(5);
    MultiPoly rotProd = var(4) * var(5);

    f.quad = x0 * x0 - x0 * rotSum - invSq + invPairs + rotSq - rotProd;
    f.cubic = x0 * x0 * x0 + x0 * x0 * rotSum - x0 * (invSq + invPairs) - x0 * rotProd +
              invPairs * rotSum - rotProd * rotSum;
    return f;
}

// x^2 - x - 1: the golden ratio field, Galois with two automorphisms.
inline galseq::GaloisGroup golden_group() {
    auto field = galseq::NumberField::create(poly_from_ints({-1, -1, 1}));
    return galseq::group_close(field, galseq::discover_automorphisms(field));
}

// x^3 - 3x - 1: cyclic cubic (conductor 9).  Its generator has trace zero,
// so the translates of the generator itself are dependent; 1 + x works.
inline galseq::GaloisGroup cyclic_cubic_group() {
    auto field = galseq::NumberField::create(poly_from_ints({-1, -3, 0, 1}));
    return galseq::group_close(field, galseq::discover_automorphisms(field));
}

// x^6 + 3x^5 + 6x^4 + 3x^3 + 9x + 9: the splitting field of x^3 - 2, Galois
// over Q with group S3 and of mixed parity inside S6.
inline galseq::GaloisGroup s3_sextic_group() {
    auto field = galseq::NumberField::create(poly_from_ints({9, 9, 0, 3, 6, 3, 1}));
    return galseq::group_close(field, galseq::discover_automorphisms(field));
}

} // namespace fixtures
