#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "galseq/embeddings.hpp"
#include "galseq/galois.hpp"
#include "galseq/lll.hpp"
#include "galseq/numberfield.hpp"

using namespace galseq;

namespace {
Rational Q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

// Reference reduction that rebuilds the Gram-Schmidt data from scratch after
// every swap.  Slower by orders of magnitude but independent of the update
// formulas, so the production routine must match it vector for vector.
void lll_reference(std::vector<std::vector<Integer>>& b) {
    const std::size_t n = b.size();
    if (n <= 1) return;
    const Rational delta(Integer(99), Integer(100));
    detail::Gso g = detail::gram_schmidt(b);
    const Rational half(Integer(1), Integer(2));
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            if (abs(g.mu[k][j]) <= half) continue;
            Integer r = round_nearest(g.mu[k][j]);
            for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
            for (std::size_t t = 0; t < j; ++t) g.mu[k][t] -= Rational(r) * g.mu[j][t];
            g.mu[k][j] -= Rational(r);
        }
        if (g.B[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = detail::gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
}
}

TEST_CASE("number field construction enforces the modulus contract") {
    REQUIRE_THROWS_AS(NumberField::create(PolyQ({Q(1)})), input_error);            // constant
    REQUIRE_THROWS_AS(NumberField::create(PolyQ({Q(1), Q(2)})), input_error);      // not monic
    REQUIRE_THROWS_AS(NumberField::create(PolyQ({Q(1, 2), Q(1)})), input_error);   // not integral
    REQUIRE_THROWS_AS(NumberField::create(PolyQ({Q(1), Q(2), Q(1)})), input_error); // (x+1)^2
    REQUIRE_NOTHROW(NumberField::create(PolyQ({Q(-1), Q(-1), Q(1)})));
}

TEST_CASE("arithmetic in Q[x]/(x^2 - x - 1)") {
    auto f = NumberField::create(PolyQ({Q(-1), Q(-1), Q(1)}));
    FieldElement phi = f->gen();

    REQUIRE(phi * phi == phi + f->one()); // x^2 = x + 1
    REQUIRE(phi.pow(4) == f->element(PolyQ({Q(2), Q(3)})));

    // (2x - 1)^2 = 5, so the inverse is (2x - 1)/5.
    FieldElement u = f->element(PolyQ({Q(-1), Q(2)}));
    REQUIRE(u * u == f->from_rational(Q(5)));
    REQUIRE(inv(u) == f->element(PolyQ({Q(-1, 5), Q(2, 5)})));
    REQUIRE(inv(u) * u == f->one());

    REQUIRE_THROWS_AS(inv(f->zero()), zero_divisor_error);

    REQUIRE(elem_compose(f->modulus(), phi).is_zero());
    REQUIRE(phi.is_rational() == false);
    REQUIRE(f->from_rational(Q(7, 3)).to_rational() == Q(7, 3));
    REQUIRE_THROWS_AS(phi.to_rational(), error);
}

TEST_CASE("zero divisors in a reducible quotient are reported with a factor") {
    auto ring = NumberField::create(PolyQ({Q(-1), Q(0), Q(1)})); // x^2 - 1, reducible
    FieldElement u = ring->element(PolyQ({Q(-1), Q(1)}));        // x - 1
    try {
        inv(u);
        FAIL("expected zero_divisor_error");
    } catch (const zero_divisor_error& e) {
        REQUIRE(std::string(e.what()).find("x - 1") != std::string::npos);
    }
}

TEST_CASE("minimal polynomials") {
    auto f = NumberField::create(PolyQ({Q(-1), Q(-1), Q(1)}));
    REQUIRE(min_poly(f->gen()) == f->modulus());
    REQUIRE(min_poly(f->from_rational(Q(7, 2))) == PolyQ({Q(-7, 2), Q(1)}));
    // (1 + x)^2 - 3(1 + x) + 1 = 0 in this field.
    REQUIRE(min_poly(f->one() + f->gen()) == PolyQ({Q(1), Q(-3), Q(1)}));
}

TEST_CASE("numeric roots pass their gates and power sums stay consistent") {
    PolyQ f({Q(-1), Q(-1), Q(1)});
    EmbeddingSet emb = embed_roots(f, 128);
    REQUIRE(emb.roots.size() == 2);
    // Roots are sorted by real part: -0.618..., then 1.618...
    REQUIRE(emb.roots[0].re < 0);
    REQUIRE(emb.roots[1].re > 0);
    // Sum of roots = 1, product = -1 (numerically, far below the gate).
    mpf_class sum(emb.roots[0].re + emb.roots[1].re);
    REQUIRE(abs(sum - 1) < mpf_class(1e-30));

    // Non-monic input is refused.
    REQUIRE_THROWS_AS(embed_roots(PolyQ({Q(1), Q(2)}), 128), error);
}

TEST_CASE("algebraic recognition finds the conjugate expression") {
    PolyQ f({Q(-1), Q(-1), Q(1)});
    auto field = NumberField::create(f);
    EmbeddingSet emb = embed_roots(f, 192);
    auto g = recognize_in_powers(emb, 1, 0); // express small root through phi
    REQUIRE(g.has_value());
    REQUIRE(*g == PolyQ({Q(1), Q(-1)})); // 1 - x
    REQUIRE(elem_compose(f, field->element(*g)).is_zero());
}

TEST_CASE("automorphism discovery and closure on small normal fields") {
    SECTION("quadratic") {
        auto field = NumberField::create(PolyQ({Q(-1), Q(-1), Q(1)}));
        auto images = discover_automorphisms(field, 128, 4096);
        REQUIRE(images.size() == 2);
        REQUIRE(images[0] == field->gen());
        REQUIRE(images[1] == field->one() - field->gen());

        GaloisGroup gg = group_close(field, images);
        REQUIRE(gg.order() == 2);
        REQUIRE(gg.group.class_count() == 2);
        REQUIRE(gg.group.sign(1) == -1); // swap of the two roots is odd
        REQUIRE(gg.images[0] == field->gen());
    }

    SECTION("cyclic cubic x^3 - 3x - 1") {
        auto field = NumberField::create(PolyQ({Q(-1), Q(-3), Q(0), Q(1)}));
        auto images = discover_automorphisms(field, 128, 8192);
        REQUIRE(images.size() == 3);
        GaloisGroup gg = group_close(field, images);
        REQUIRE(gg.order() == 3);
        REQUIRE(gg.group.class_count() == 3); // abelian: singleton classes
        for (int i = 0; i < 3; ++i) REQUIRE(gg.group.sign(i) == 1);
        // Nontrivial automorphisms have full order.
        REQUIRE(gg.group.element_order(1) == 3);
        REQUIRE(gg.group.element_order(2) == 3);
        // Verify one concrete image algebraically.
        for (const auto& img : images)
            REQUIRE(elem_compose(field->modulus(), img).is_zero());
    }

    SECTION("a non-normal cubic is rejected") {
        auto field = NumberField::create(PolyQ({Q(-2), Q(0), Q(0), Q(1)})); // x^3 - 2
        REQUIRE_THROWS_AS(discover_automorphisms(field, 128, 1024), input_error);
    }
}

TEST_CASE("normal basis generator search") {
    auto field = NumberField::create(PolyQ({Q(-1), Q(-1), Q(1)}));
    GaloisGroup gg = group_close(field, discover_automorphisms(field, 128, 4096));
    FieldElement xi = find_normal_basis_generator(gg, 7);
    // The translates of xi must form a basis; for C2 the translate matrix is
    // [[xi, s(xi)], [s(xi), xi]].
    FieldElement c1 = gg.apply(0, xi), c2 = gg.apply(1, xi);
    Matrix<FieldElement> gamma(2, 2);
    gamma(0, 0) = c1; gamma(0, 1) = c2;
    gamma(1, 0) = c2; gamma(1, 1) = c1;
    REQUIRE_FALSE(is_zero(mat_det(gamma)));
    // Both basis vectors of the field are reachable in that basis.
    Matrix<FieldElement> rhs(2, 2);
    rhs(0, 0) = field->one();
    rhs(1, 1) = field->gen();
    rhs(0, 1) = field->zero();
    rhs(1, 0) = field->zero();
    REQUIRE_NOTHROW(mat_solve(gamma, rhs));
}

TEST_CASE("group_close validates its inputs") {
    auto field = NumberField::create(PolyQ({Q(-1), Q(-1), Q(1)}));
    // A corrupted image (not a root) must be rejected.
    REQUIRE_THROWS_AS(group_close(field, {field->gen(), field->gen() + field->one()}),
                      not_a_root_error);
    // Wrong count.
    REQUIRE_THROWS_AS(group_close(field, {field->gen()}), input_error);
    // Duplicates are caught.
    REQUIRE_THROWS_AS(group_close(field, {field->gen(), field->gen()}), input_error);
}

TEST_CASE("incremental lattice reduction matches the from-scratch reference") {
    std::mt19937_64 rng(20260814);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 7;
        std::size_t width = n + trial % 3;
        // Mix of small entries and a few hundred-bit ones.
        std::vector<std::vector<Integer>> basis(n, std::vector<Integer>(width, Integer(0)));
        for (std::size_t i = 0; i < n; ++i) {
            basis[i][i] = 1; // guarantees independence
            for (std::size_t j = 0; j < width; ++j) {
                long small = static_cast<long>(rng() % 2001) - 1000;
                Integer e(small);
                if (trial % 4 == 0) {
                    mpz_mul_2exp(e.get_mpz_t(), e.get_mpz_t(), 100 + rng() % 60);
                    e += static_cast<long>(rng() % 997);
                }
                basis[i][j] += e;
            }
        }
        auto fast = basis;
        auto slow = basis;
        lll_reduce(fast);
        lll_reference(slow);
        REQUIRE(fast == slow);
    }
}
