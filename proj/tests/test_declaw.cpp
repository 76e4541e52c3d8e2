#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "galseq/declaw.hpp"

using namespace galseq;

namespace {

SequenceFamily golden_family() {
    GaloisGroup gg = fixtures::golden_group();
    return build_sequence_family(gg, gg.field->gen());
}

SequenceFamily cubic_family() {
    GaloisGroup gg = fixtures::cyclic_cubic_group();
    return build_sequence_family(gg, gg.field->one() + gg.field->gen());
}

bool splits_mod5(std::uint64_t p) { return p % 5 == 1 || p % 5 == 4; }

} // namespace

TEST_CASE("term residues modulo p") {
    SequenceFamily fam = golden_family();

    // Fibonacci checkpoints: 11 splits (F_12 = 144 = 1), 7 is inert
    // (F_6 = 8 = 1, F_8 = 21 = 0).
    REQUIRE(term_mod_p(fam, 11) == std::vector<long long>{1, 0});
    REQUIRE(term_mod_p(fam, 7) == std::vector<long long>{0, 1});
    REQUIRE_THROWS_AS(term_mod_p(fam, 10), input_error);

    // The cyclic cubic columns all carry denominator 3, so p = 3 skips
    // every class while p = 17 (= -1 mod 9, split) answers cleanly.
    SequenceFamily cubic = cubic_family();
    REQUIRE(term_mod_p(cubic, 3) == std::vector<long long>{-1, -1, -1});
    REQUIRE(term_mod_p(cubic, 17) == std::vector<long long>{1, 0, 0});
}

TEST_CASE("factorization checkpoints for the oracle") {
    // x^2 - x - 1 splits mod 11 as (x - 4)(x - 8) and stays irreducible
    // mod 7; x^2 + 1 is a ramified square mod 2.
    PolyQ f = fixtures::poly_from_ints({-1, -1, 1});
    auto mod11 = polymod_factor(PolyModP::from_rational(f, 11), 1);
    REQUIRE(mod11.size() == 2);
    REQUIRE(mod11[0].factor == PolyModP({3, 1}, 11)); // x - 8
    REQUIRE(mod11[1].factor == PolyModP({7, 1}, 11)); // x - 4
    auto mod7 = polymod_factor(PolyModP::from_rational(f, 7), 1);
    REQUIRE(mod7.size() == 1);
    REQUIRE(mod7[0].factor.degree() == 2);
    auto ram = polymod_factor(PolyModP::from_rational(fixtures::poly_from_ints({1, 0, 1}), 2), 1);
    REQUIRE(ram.size() == 1);
    REQUIRE(ram[0].multiplicity == 2);
}

TEST_CASE("frobenius oracle on the golden field") {
    GaloisGroup gg = fixtures::golden_group();
    SequenceFamily fam = build_sequence_family(gg, gg.field->gen());
    FrobeniusOracle oracle = build_frobenius_oracle(gg, gg.field->gen(), fam.charpoly);

    REQUIRE(frobenius_class(oracle, gg.group, 11, 1).classIdx == 0);
    REQUIRE(frobenius_class(oracle, gg.group, 19, 1).classIdx == 0);
    REQUIRE(frobenius_class(oracle, gg.group, 7, 1).classIdx == 1);
    REQUIRE(frobenius_class(oracle, gg.group, 13, 1).classIdx == 1);

    // Ramified prime is refused.
    OracleOutcome at5 = frobenius_class(oracle, gg.group, 5, 1);
    REQUIRE(at5.classIdx == -1);
    REQUIRE_FALSE(at5.reason.empty());

    // Split primes offer two residue fields; the class cannot depend on
    // which factor represents it.
    for (std::uint64_t p : {11, 19, 29, 31}) {
        int a = frobenius_class(oracle, gg.group, p, 1, 0).classIdx;
        int b = frobenius_class(oracle, gg.group, p, 1, 1).classIdx;
        REQUIRE(a == b);
    }
}

TEST_CASE("golden field classification to 100") {
    SequenceFamily fam = golden_family();
    FrobeniusOracle oracle =
        build_frobenius_oracle(fam.gg, fam.gg.field->gen(), fam.charpoly);

    ClassifyOptions opt;
    opt.maxPrime = 100;
    Classification c = classify_primes(fam, oracle, opt);

    REQUIRE(c.report.predicted == std::vector<std::uint64_t>{5});
    REQUIRE(c.report.observed.empty());
    REQUIRE(c.report.cofactors.empty());

    for (const PrimeVerdict& v : c.verdicts) {
        if (v.p == 5) {
            REQUIRE(v.skipped);
            REQUIRE(v.reason == "divides disc(F)");
            continue;
        }
        REQUIRE_FALSE(v.skipped);
        REQUIRE(v.consistent);
        REQUIRE(v.agree);
        int want = splits_mod5(v.p) ? 0 : 1;
        REQUIRE(v.sequenceClass == want);
        REQUIRE(v.oracleClass == want);
        REQUIRE(v.residues[static_cast<std::size_t>(want)] == 1);
        REQUIRE(v.residues[static_cast<std::size_t>(1 - want)] == 0);
    }
}

TEST_CASE("cyclic cubic classification") {
    SequenceFamily fam = cubic_family();
    FrobeniusOracle oracle =
        build_frobenius_oracle(fam.gg, fam.gg.field->one() + fam.gg.field->gen(), fam.charpoly);

    ClassifyOptions opt;
    opt.maxPrime = 200;
    opt.jobs = 3;
    Classification c = classify_primes(fam, oracle, opt);

    REQUIRE(c.report.predicted == std::vector<std::uint64_t>{3});
    REQUIRE(c.report.observed.empty());

    for (const PrimeVerdict& v : c.verdicts) {
        if (v.p == 3) {
            REQUIRE(v.skipped);
            continue;
        }
        REQUIRE_FALSE(v.skipped);
        REQUIRE(v.consistent);
        REQUIRE(v.agree);
        // Conductor 9: p lands in the identity class exactly when
        // p = +-1 (mod 9).
        bool split = v.p % 9 == 1 || v.p % 9 == 8;
        REQUIRE((v.sequenceClass == 0) == split);
    }

    // Same run single-threaded must reproduce the verdicts bit for bit.
    opt.jobs = 1;
    Classification c1 = classify_primes(fam, oracle, opt);
    REQUIRE(c1.verdicts.size() == c.verdicts.size());
    for (std::size_t i = 0; i < c.verdicts.size(); ++i) {
        REQUIRE(c1.verdicts[i].p == c.verdicts[i].p);
        REQUIRE(c1.verdicts[i].sequenceClass == c.verdicts[i].sequenceClass);
        REQUIRE(c1.verdicts[i].oracleClass == c.verdicts[i].oracleClass);
        REQUIRE(c1.verdicts[i].residues == c.verdicts[i].residues);
    }
}

TEST_CASE("mixed parity sextic classification") {
    GaloisGroup gg = fixtures::s3_sextic_group();
    FieldElement xi = find_normal_basis_generator(gg);
    SequenceFamily fam = build_sequence_family(gg, xi);
    FrobeniusOracle oracle = build_frobenius_oracle(gg, xi, fam.charpoly);

    // Canonical class order: identity, the two 3-cycles, the three
    // involutions.
    auto classes = gg.group.conjugacy_classes();
    REQUIRE(classes[0].size() == 1);
    REQUIRE(classes[1].size() == 2);
    REQUIRE(classes[2].size() == 3);

    ClassifyOptions opt;
    opt.maxPrime = 150;
    opt.jobs = 2;
    Classification c = classify_primes(fam, oracle, opt);

    std::set<std::uint64_t> predicted(c.report.predicted.begin(), c.report.predicted.end());
    REQUIRE(c.report.observed.empty());

    for (const PrimeVerdict& v : c.verdicts) {
        if (v.skipped) {
            REQUIRE(predicted.count(v.p) == 1);
            continue;
        }
        REQUIRE(v.consistent);
        if (v.sequenceClass >= 0 && v.oracleClass >= 0) REQUIRE(v.agree);
        // Splitting in the field of cube roots of 2: primes 2 mod 3 pair
        // into involutions; primes 1 mod 3 split completely exactly when 2
        // is a cube residue.
        if (v.oracleClass >= 0) {
            if (v.p % 3 == 2) {
                REQUIRE(v.oracleClass == 2);
            } else if (v.p % 3 == 1) {
                bool cube = mod_pow(2 % v.p, (v.p - 1) / 3, v.p) == 1;
                REQUIRE(v.oracleClass == (cube ? 0 : 1));
            }
        }
    }
}

TEST_CASE("non integral characteristic polynomial is rejected") {
    GaloisGroup gg = fixtures::golden_group();
    // xi = x/2 is a normal basis generator but not an algebraic integer.
    FieldElement xi = gg.field->gen() * Rational(Integer(1), Integer(2));
    SequenceFamily fam = build_sequence_family(gg, xi);
    REQUIRE_FALSE(fam.charpoly.has_integer_coeffs());
    REQUIRE_THROWS_AS(term_mod_p(fam, 7), input_error);
}
